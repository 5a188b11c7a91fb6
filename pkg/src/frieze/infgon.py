"""Arcs of the completed ∞-gon, fountain triangulations on a finite window, half-friezes."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .errors import DiagonalOutOfWindow, NonIntegralEntry, ParseError, ShapeMismatch, WindowTooNarrow

INF = math.inf


@dataclass(frozen=True, order=True)
class InfArc:
    a: int
    b: object  # int or INF

    def __post_init__(self):
        if not self.a < self.b:
            raise ShapeMismatch(f"arc needs a < b, got ({self.a}, {self.b})")

    @property
    def finite(self) -> bool:
        return self.b != INF

    def is_boundary(self) -> bool:
        return self.finite and self.b == self.a + 1

    def __str__(self):
        return f"({self.a},{'∞' if self.b == INF else self.b})"


def crossing_inf(x: InfArc, y: InfArc) -> bool:
    # ∞ sits above every integer, so plain interleaving works
    a, b, c, d = x.a, x.b, y.a, y.b
    return a < c < b < d or c < a < d < b


# arc families ------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d*)(n?)")


def _linear(text: str) -> Tuple[int, int]:
    """'2n+2' -> (2, 2): coefficient of n and constant."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty expression")
    coef = const = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ParseError(f"cannot read {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        num = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            coef += sign * num
        else:
            const += sign * num
        pos = m.end()
    return coef, const


@dataclass(frozen=True)
class ArcFamily:
    first: Tuple[int, int]
    second: Tuple[int, int]
    excluded: frozenset = frozenset()

    def _solve(self, e, x) -> Optional[object]:
        c, k = e
        if c == 0:
            return "any" if k == x else None
        q, r = divmod(x - k, c)
        return None if r else q

    def _match(self, e1, e2, x, y) -> bool:
        n1, n2 = self._solve(e1, x), self._solve(e2, y)
        if n1 is None or n2 is None:
            return False
        if n1 == "any" and n2 == "any":
            return True
        if n1 != "any" and n2 != "any" and n1 != n2:
            return False
        n = n2 if n1 == "any" else n1
        return n not in self.excluded

    def contains(self, x: int, y: int) -> bool:
        return self._match(self.first, self.second, x, y) or self._match(self.first, self.second, y, x)


@dataclass
class FountainTriangulation:
    fountain: int
    predicate: Callable[[int, int], bool]
    window: Tuple[int, int]
    source: str = ""

    def has_arc(self, x: int, y) -> bool:
        if x > y:
            x, y = y, x
        if y == INF:
            return x == self.fountain
        return y == x + 1 or bool(self.predicate(x, y))

    def arcs(self) -> List[InfArc]:
        lo, hi = self.window
        out = [InfArc(self.fountain, INF)]
        for x in range(lo, hi + 1):
            for y in range(x + 1, hi + 1):
                if self.has_arc(x, y):
                    out.append(InfArc(x, y))
        return sorted(out)

    def neighbours(self, v: int) -> List[int]:
        lo, hi = self.window
        return [u for u in range(lo, hi + 1) if u != v and self.has_arc(u, v)]

    def check(self):
        lo, hi = self.window
        f = self.fountain
        if not lo <= f <= hi:
            raise WindowTooNarrow(f"fountain {f} outside the window {lo}..{hi}", needed=f)
        nb = self.neighbours(f)
        if not any(u < f - 1 for u in nb) or not any(u > f + 1 for u in nb):
            raise WindowTooNarrow("the window must show fountain arcs on both sides", window=[lo, hi])
        arcs = self.arcs()
        for p, x in enumerate(arcs):
            for y in arcs[p + 1:]:
                if crossing_inf(x, y):
                    raise ShapeMismatch(f"arcs {x} and {y} cross")


def parse_spec(text: str) -> FountainTriangulation:
    """fountain=0; arcs=(0,2n)|n not in {0,1,-1}; arcs=(2n,2n+2); window=-12..12"""
    fountain, window, families = None, None, []
    for clause in text.split(";"):
        clause = clause.strip()
        if not clause:
            continue
        key, sep, val = clause.partition("=")
        key, val = key.strip(), val.strip()
        if not sep:
            raise ParseError(f"expected key=value, got {clause!r}")
        if key == "fountain":
            try:
                fountain = int(val)
            except ValueError:
                raise ParseError(f"bad fountain {val!r}") from None
        elif key == "window":
            m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", val)
            if not m or int(m.group(1)) >= int(m.group(2)):
                raise ParseError(f"bad window {val!r}")
            window = (int(m.group(1)), int(m.group(2)))
        elif key == "arcs":
            m = re.fullmatch(r"\(([^,()]+),([^,()]+)\)\s*(?:\|\s*n\s+not\s+in\s*\{([^}]*)\})?", val)
            if not m:
                raise ParseError(f"bad arc family {val!r}")
            try:
                excl = frozenset(int(t) for t in m.group(3).split(",") if t.strip()) if m.group(3) else frozenset()
            except ValueError:
                raise ParseError(f"bad exclusion list in {val!r}") from None
            families.append(ArcFamily(_linear(m.group(1)), _linear(m.group(2)), excl))
        else:
            raise ParseError(f"unknown key {key!r}")
    if fountain is None or window is None:
        raise ParseError("both fountain= and window= are required")
    fams = tuple(families)
    T = FountainTriangulation(fountain, lambda x, y: any(F.contains(x, y) for F in fams), window, text)
    return T


def sample_fountain(window=(-12, 12)) -> FountainTriangulation:
    lo, hi = window
    return parse_spec(f"fountain=0; arcs=(0,2n)|n not in {{0,1,-1}}; arcs=(2n,2n+2); window={lo}..{hi}")


# quiddity ----------------------------------------------------------------


def _around(T: FountainTriangulation, v: int) -> List[int]:
    """Neighbours of v in the order met when turning around v: right side up, then left side up."""
    nb = T.neighbours(v)
    return [u for u in nb if u > v] + [u for u in nb if u < v]


def triangle_count(T: FountainTriangulation, v: int) -> int:
    lo, hi = T.window
    if v == T.fountain:
        raise ShapeMismatch("the fountain has infinitely many triangles")
    if not lo < v < hi:
        raise WindowTooNarrow(f"vertex {v} needs both neighbours inside the window", vertex=v)
    ring = _around(T, v)
    for u, w in zip(ring, ring[1:]):
        if not T.has_arc(u, w):
            raise WindowTooNarrow(f"the triangles at {v} leave the window between {u} and {w}", vertex=v)
    return len(ring) - 1


def quiddity_window(T: FountainTriangulation) -> Dict[int, int]:
    T.check()
    lo, hi = T.window
    return {v: triangle_count(T, v) for v in range(lo + 1, hi) if v != T.fountain}


# half-friezes ------------------------------------------------------------


@dataclass
class HalfFriezeWindow:
    window: Tuple[int, int]
    fountain: int
    depth: int
    quiddity: Dict[int, int]
    entries: Dict[Tuple[int, int], Optional[int]] = field(default_factory=dict)

    def rows(self) -> List[List[Tuple[int, int, Optional[int]]]]:
        """Row r holds the cells (i, i+r+1); r = -1 is the zero row, r = 0 the row of ones."""
        out = []
        for r in range(-1, self.depth + 1):
            out.append(sorted((i, j, v) for (i, j), v in self.entries.items() if j - i - 1 == r))
        return out

    def value(self, i: int, j: int):
        return self.entries.get((i, j))

    def complete_diamonds(self):
        for (i, j), v in self.entries.items():
            if v is None:
                continue
            quad = [(i + 1, j + 1), (i, j + 1), (i + 1, j)]
            vals = [self.entries.get(p) for p in quad]
            if all(x is not None for x in vals) and all(p in self.entries for p in quad):
                yield (i, j), v, vals

    def diamonds_ok(self) -> bool:
        return all(a * d - b * c == 1 for _, a, (d, b, c) in self.complete_diamonds())

    def to_text(self) -> str:
        cells = [x for x in self.entries.values() if x is not None]
        width = max(len(str(x)) for x in cells) + 1 if cells else 2
        lo, hi = self.window
        lines = []
        for row in self.rows():
            line = [" " * width] * (2 * hi - 2 * lo + 1)
            for i, j, v in row:
                line[i + j - 2 * lo] = ("·" if v is None else str(v)).rjust(width)
            lines.append("".join(line).rstrip())
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "window": list(self.window),
            "fountain": self.fountain,
            "depth": self.depth,
            "quiddity": {str(v): a for v, a in sorted(self.quiddity.items())},
            "rows": [[[i, j, v] for i, j, v in row] for row in self.rows()],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HalfFriezeWindow":
        H = cls(tuple(obj["window"]), obj["fountain"], obj["depth"],
                {int(v): a for v, a in obj["quiddity"].items()})
        for row in obj["rows"]:
            for i, j, v in row:
                H.entries[(i, j)] = v
        return H


def half_frieze(T: FountainTriangulation, depth: int) -> HalfFriezeWindow:
    if depth < 1:
        raise ShapeMismatch("depth counts rows from the quiddity row and must be at least 1")
    q = quiddity_window(T)
    lo, hi = T.window
    f = T.fountain
    for side in (range(lo + 1, f), range(f + 1, hi)):
        if len(side) < depth:
            raise WindowTooNarrow(f"depth {depth} needs {depth} counted vertices on each side of the fountain",
                                  needed=depth, have=len(side))
    H = HalfFriezeWindow((lo, hi), f, depth, q)
    E = H.entries
    for i in range(lo, hi + 1):
        E[(i, i)] = 0
        if i < hi:
            E[(i, i + 1)] = 1
    for r in range(1, depth + 1):
        for i in range(lo, hi - r):
            j = i + r + 1
            if i < f < j:
                E[(i, j)] = None
                continue
            if r == 1:
                E[(i, j)] = q[i + 1]
                continue
            # m(i,j) m(i+1,j-1)... solved downward: m(i,j) = (m(i,j-1) m(i+1,j) - 1) / m(i+1,j-1)
            num = E[(i, j - 1)] * E[(i + 1, j)] - 1
            den = E[(i + 1, j - 1)]
            if num % den:
                raise NonIntegralEntry(f"entry ({i},{j}) is {num}/{den}", i=i, j=j)
            E[(i, j)] = num // den
            if E[(i, j)] <= 0:
                raise NonIntegralEntry(f"entry ({i},{j}) is not positive", i=i, j=j)
    return H


def penrose_diagonal(H: HalfFriezeWindow, which: str) -> List[int]:
    """which='i=0' walks down the cells (0, j); which='j=5' walks down the cells (i, 5).

    Cells are read from the quiddity row down, stopping at the window or a blank.
    """
    m = re.fullmatch(r"\s*([ij])\s*=\s*(-?\d+)\s*", which)
    if not m:
        raise ParseError(f"diagonal selector must look like i=0 or j=5, got {which!r}")
    axis, v = m.group(1), int(m.group(2))
    lo, hi = H.window
    if not lo <= v <= hi:
        raise DiagonalOutOfWindow(f"{which} is outside the window {lo}..{hi}")
    bits = []
    for r in range(1, H.depth + 1):
        cell = (v, v + r + 1) if axis == "i" else (v - r - 1, v)
        x = H.entries.get(cell)
        if x is None:
            break
        bits.append(1 if x == 1 else 0)
    if not bits:
        raise DiagonalOutOfWindow(f"no cells of {which} inside the window")
    return bits
