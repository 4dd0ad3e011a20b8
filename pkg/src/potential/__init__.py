from .expression import Expr, Num, Var, Pi, Neg, BinOp, Pow, Call, parse, to_text, tokenize
from .potential import (
    Approach,
    JumpPoint,
    Piece,
    PiecewiseFunction,
    PiecewisePotential,
    Side,
    derivative,
    evaluate,
    parse_function,
    parse_lines,
    parse_potential,
)

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Pi",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "parse",
    "to_text",
    "tokenize",
    "Approach",
    "JumpPoint",
    "Piece",
    "PiecewiseFunction",
    "PiecewisePotential",
    "Side",
    "derivative",
    "evaluate",
    "parse_function",
    "parse_lines",
    "parse_potential",
]
