"""Exact Laurent polynomials over the rationals, plus continuants.

Python ints already are arbitrary precision and ``fractions.Fraction`` keeps
numerator/denominator reduced with a positive denominator, so those two carry
the integer and rational layers.  A monomial is a tuple of ``(var, exp)`` pairs
sorted by variable index with no zero exponents; a polynomial maps monomials to
nonzero coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import (
    DivisionByZero,
    InexactDivision,
    ParseError,
    UnassignedVariable,
    ZeroAssignedToInvertedVariable,
)

Monomial = Tuple[Tuple[int, int], ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_inv(a: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in a)


class LaurentPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = _norm(c)
        self.terms: Dict[Monomial, object] = t
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def var(cls, i: int, exp: int = 1) -> "LaurentPoly":
        return cls({((i, exp),): 1})

    @classmethod
    def monomial(cls, exps: Mapping[int, int], coeff=1) -> "LaurentPoly":
        return cls({tuple(sorted((v, e) for v, e in exps.items() if e)): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = _lift(other)
            if other is None:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return poly_add(other, -self)

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise InexactDivision("negative power of a non-monomial")
            (m, c), = self.terms.items()
            return LaurentPoly({tuple((v, x * e) for v, x in m): Fraction(1) / Fraction(c) ** (-e)})
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return poly_div_exact(self, other)

    def __repr__(self):
        return f"LaurentPoly({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return None


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    t = dict(a.terms)
    for m, c in b.terms.items():
        s = t.get(m, 0) + c
        if s:
            t[m] = _norm(s)
        else:
            t.pop(m, None)
    return LaurentPoly._raw(t)


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if len(a.terms) > len(b.terms):
        a, b = b, a
    t: Dict[Monomial, object] = {}
    bt = list(b.terms.items())
    for ma, ca in a.terms.items():
        for mb, cb in bt:
            m = mono_mul(ma, mb)
            s = t.get(m, 0) + ca * cb
            if s:
                t[m] = s
            else:
                del t[m]
    return LaurentPoly._raw({m: _norm(c) for m, c in t.items()})


def _dense(p: LaurentPoly, index: Dict[int, int]):
    n = len(index)
    out = {}
    for m, c in p.terms.items():
        v = [0] * n
        for var, e in m:
            v[index[var]] = e
        out[tuple(v)] = c
    return out


def _cdiv(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / Fraction(b))


def poly_div_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient q with q*b == a, or InexactDivision.

    Leading terms are eliminated under lex order on exponent vectors, which is
    compatible with multiplication of Laurent monomials.  Per-variable degree
    windows confine the quotient to a finite box, so the loop terminates.
    """
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly()
    if b.is_monomial():
        (mb, cb), = b.terms.items()
        inv = mono_inv(mb)
        return LaurentPoly._raw({mono_mul(m, inv): _cdiv(c, cb) for m, c in a.terms.items()})
    vars_ = sorted(set(a.variables()) | set(b.variables()))
    index = {v: i for i, v in enumerate(vars_)}
    da, db = _dense(a, index), _dense(b, index)
    nv = len(vars_)
    lo = [min(m[i] for m in da) - min(m[i] for m in db) for i in range(nv)]
    hi = [max(m[i] for m in da) - max(m[i] for m in db) for i in range(nv)]
    if any(l > h for l, h in zip(lo, hi)):
        raise InexactDivision("degree window is empty")
    bterms = sorted(db.items(), reverse=True)
    lead_m, lead_c = bterms[0]
    rest = bterms[1:]
    r = dict(da)
    q = {}
    while r:
        m = max(r)
        c = r.pop(m)
        qm = tuple(x - y for x, y in zip(m, lead_m))
        if any(e < l or e > h for e, l, h in zip(qm, lo, hi)):
            raise InexactDivision("quotient term leaves the degree window")
        qc = _cdiv(c, lead_c)
        q[qm] = qc
        for mb, cb in rest:
            mm = tuple(x + y for x, y in zip(qm, mb))
            s = r.get(mm, 0) - qc * cb
            if s:
                r[mm] = s
            else:
                r.pop(mm, None)
    out = {}
    for v, c in q.items():
        out[tuple((vars_[i], e) for i, e in enumerate(v) if e)] = _norm(c)
    return LaurentPoly._raw(out)


def poly_eval(p: LaurentPoly, assignment: Mapping[int, object]):
    total = Fraction(0)
    for m, c in p.terms.items():
        val = Fraction(c)
        for v, e in m:
            if v not in assignment:
                raise UnassignedVariable(f"variable {v} has no value", var=v)
            x = assignment[v]
            if e < 0 and x == 0:
                raise ZeroAssignedToInvertedVariable(f"variable {v} is inverted but set to 0", var=v)
            val *= Fraction(x) ** e
        total += val
    return _norm(total)


def poly_substitute(p: LaurentPoly, assignment: Mapping[int, LaurentPoly]) -> LaurentPoly:
    """Replace variables by polynomials; negative powers need monomial images."""
    out = LaurentPoly()
    for m, c in p.terms.items():
        term = LaurentPoly.const(c)
        for v, e in m:
            img = assignment.get(v)
            if img is None:
                img = LaurentPoly.var(v)
            term = term * (img ** e)
        out = out + term
    return out


def continuant(ys: Sequence, one=1):
    prev, cur = 0, one
    for y in ys:
        prev, cur = cur, y * cur - prev
    return cur


def tridiagonal(ys: Sequence):
    n = len(ys)
    return [[ys[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


# text form -------------------------------------------------------------


def default_name(i: int) -> str:
    return f"x{i}"


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_mono(m: Monomial, names) -> str:
    parts = []
    for v, e in m:
        nm = names(v)
        parts.append(nm if e == 1 else f"{nm}^{e}")
    return "*".join(parts)


def to_text(p: LaurentPoly, names=default_name) -> str:
    """``c*x1^e1*x2^e2 + ...`` in canonical order; parse_poly reads it back."""
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mono = _fmt_mono(m, names)
        neg = Fraction(c) < 0
        mag = abs(Fraction(c))
        if not mono:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(mag)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def parse_poly(text: str, lookup=None) -> LaurentPoly:
    """Inverse of to_text.  ``lookup`` maps a variable name to its index."""
    if lookup is None:
        def lookup(name):
            m = re.fullmatch(r"x(\d+)", name)
            if not m:
                raise ParseError(f"unknown variable {name!r}")
            return int(m.group(1))
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    pieces = re.split(r"(?<![\^*/])\s*([+-])\s*", s)
    sign = 1
    result = LaurentPoly()
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2:
        raise ParseError(f"cannot parse {text!r}")
    for op, body in zip(pieces[0::2], pieces[1::2]):
        sign = -1 if op == "-" else 1
        result = result + _parse_term(body.strip(), lookup) * sign
    return result


def _parse_term(body: str, lookup) -> LaurentPoly:
    if not body:
        raise ParseError("empty term")
    coeff = Fraction(1)
    exps: Dict[int, int] = {}
    for factor in body.split("*"):
        factor = factor.strip()
        if re.fullmatch(r"\d+(/\d+)?", factor):
            coeff *= Fraction(factor)
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?", factor)
        if not m:
            raise ParseError(f"bad factor {factor!r}")
        v = lookup(m.group(1))
        exps[v] = exps.get(v, 0) + int(m.group(2) or 1)
    return LaurentPoly.monomial(exps, coeff)


def to_fraction_text(p: LaurentPoly, names=default_name) -> str:
    """Human form ``(1+x2)/x1``: numerator polynomial over a monomial."""
    if p.is_zero():
        return "0"
    vars_ = p.variables()
    shift = {v: min(dict(m).get(v, 0) for m in p.terms) for v in vars_}
    den = {v: -e for v, e in shift.items() if e < 0}
    inv = tuple(sorted((v, e) for v, e in den.items()))
    num_terms = [(mono_mul(m, inv), c) for m, c in p.terms.items()]

    def key(t):
        m, _ = t
        d = dict(m)
        return (sum(d.values()), [-d.get(v, 0) for v in vars_])

    num_terms.sort(key=key)
    chunks = []
    for m, c in num_terms:
        mono = _fmt_mono(m, names)
        mag = abs(Fraction(c))
        body = _fmt_coeff(mag) if not mono else (mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}")
        if not chunks:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append(("-" if c < 0 else "+") + body)
    num = "".join(chunks)
    if not den:
        return num
    if len(num_terms) > 1:
        num = f"({num})"
    dm = _fmt_mono(inv, names)
    if len(inv) > 1 or any(e != 1 for _, e in inv):
        dm = f"({dm})"
    return f"{num}/{dm}"
