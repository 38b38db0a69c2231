from .main import build_parser, run
from .polyspec import SpecError, format_poly, format_spec, parse, parse_poly

__all__ = ["SpecError", "build_parser", "format_poly", "format_spec", "parse", "parse_poly", "run"]
