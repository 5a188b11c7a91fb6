from .exactalg import LaurentPoly, continuant, parse_poly, poly_div_exact, poly_eval, to_text

__all__ = ["LaurentPoly", "continuant", "parse_poly", "poly_div_exact", "poly_eval", "to_text"]
