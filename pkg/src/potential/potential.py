"""
Piecewise-smooth potentials: representation, validation, evaluation and the
line-oriented source grammar::

    domain [lo, hi]
    floor <eps0>
    piece [a, b]: <expr>
    jump at <c> side <left|right>

Blank lines and ``#`` comments are ignored. Bounds, jump locations and the
floor margin are constant expressions (``1/pi`` and ``0.9 - 1/pi`` are fine).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import get_settings
from src.exceptions import PotentialDomainError, PotentialSyntaxError
from .expression import (
    Expr,
    TokenStream,
    evaluate_constant,
    parse_expression,
    to_text,
    tokenize,
)

logger = logging.getLogger(__name__)

JUMP_THRESHOLD = 1e-12
CONTINUITY_TOL = 1e-12


class Side(Enum):
    """Which one-sided limit a potential takes at a jump"""
    LEFT = "left"
    RIGHT = "right"


class Approach(Enum):
    """How a point is approached when evaluating"""
    AT = "at"
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class JumpPoint:
    """Jump discontinuity at c with its continuity side"""
    c: float
    side: Side = Side.LEFT


@dataclass(frozen=True)
class Piece:
    """One smooth piece of a piecewise function"""
    lo: float
    hi: float
    expr: Expr
    derivative: Expr = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.derivative is None:
            object.__setattr__(self, "derivative", self.expr.differentiate())


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class PiecewiseFunction:
    """
    Piecewise-smooth real function on a closed interval containing [0, 1]

    Pieces tile the domain; internal boundaries are either declared jumps or
    points where the neighbouring pieces agree. Instances are immutable and
    may be shared between worker processes.
    """
    domain: Tuple[float, float]
    pieces: Tuple[Piece, ...]
    jumps: Tuple[JumpPoint, ...] = ()
    source: Optional[str] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self._validate_structure()
        self._validate_pieces_finite()
        object.__setattr__(self, "jumps", self._classify_jumps())

    # ---------- validation ----------
    def _validate_structure(self) -> None:
        lo, hi = self.domain
        if not (lo <= 0.0 and hi >= 1.0):
            raise PotentialDomainError(f"domain [{lo}, {hi}] must contain [0, 1]")
        if not self.pieces:
            raise PotentialDomainError("potential needs at least one piece")
        if self.pieces[0].lo != lo or self.pieces[-1].hi != hi:
            raise PotentialDomainError(
                f"pieces cover [{self.pieces[0].lo}, {self.pieces[-1].hi}], domain is [{lo}, {hi}]"
            )
        for piece in self.pieces:
            if not piece.lo < piece.hi:
                raise PotentialDomainError(f"empty piece [{piece.lo}, {piece.hi}]")
        for left, right in zip(self.pieces, self.pieces[1:]):
            if right.lo < left.hi:
                raise PotentialDomainError(
                    f"overlapping pieces [{left.lo}, {left.hi}] and [{right.lo}, {right.hi}]"
                )
            if right.lo > left.hi:
                raise PotentialDomainError(f"gap between pieces at ({left.hi}, {right.lo})")
        previous = 0.0
        for jump in self.jumps:
            if not 0.0 < jump.c < 1.0:
                raise PotentialDomainError(f"jump point {jump.c} outside (0, 1)")
            if jump.c <= previous:
                raise PotentialDomainError("jump points must be strictly increasing")
            if jump.c not in self.boundaries:
                raise PotentialDomainError(f"jump point {jump.c} is not a piece boundary")
            previous = jump.c

    def _validate_pieces_finite(self) -> None:
        samples = get_settings().floor_samples_per_piece
        for piece in self.pieces:
            xs = np.linspace(piece.lo, piece.hi, samples)
            values = np.asarray(piece.expr.evaluate(xs), dtype=float)
            bad = ~np.isfinite(values)
            if bad.any():
                x_bad = float(xs[np.argmax(bad)])
                raise PotentialDomainError(
                    f"expression {to_text(piece.expr)} is not finite at x={x_bad:.6g}"
                )

    def _classify_jumps(self) -> Tuple[JumpPoint, ...]:
        declared = {j.c: j for j in self.jumps}
        kept: List[JumpPoint] = []
        for index, c in enumerate(self.boundaries):
            left = float(self.pieces[index].expr.evaluate(c))
            right = float(self.pieces[index + 1].expr.evaluate(c))
            if c in declared:
                if abs(right - left) <= JUMP_THRESHOLD:
                    logger.warning(f"Jump at {c} below {JUMP_THRESHOLD:g}; treating as continuous")
                else:
                    kept.append(declared[c])
            elif not _close(left, right, CONTINUITY_TOL):
                raise PotentialDomainError(
                    f"pieces disagree at x={c} ({left} vs {right}) without a jump declaration"
                )
        return tuple(kept)

    # ---------- lookup ----------
    @property
    def boundaries(self) -> Tuple[float, ...]:
        return tuple(p.hi for p in self.pieces[:-1])

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        """Internal boundaries and jumps inside (0, 1), sorted"""
        return tuple(b for b in self.boundaries if 0.0 < b < 1.0)

    @property
    def has_jumps(self) -> bool:
        return bool(self.jumps)

    def _jump_at(self, x: float) -> Optional[JumpPoint]:
        for jump in self.jumps:
            if jump.c == x:
                return jump
        return None

    def _check_domain(self, x: float, approach: Approach) -> None:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise PotentialDomainError(f"x={x} outside domain [{lo}, {hi}]")
        if approach is Approach.LEFT and x <= lo:
            raise PotentialDomainError(f"left limit needs x > {lo}")
        if approach is Approach.RIGHT and x >= hi:
            raise PotentialDomainError(f"right limit needs x < {hi}")

    def piece_for(self, x: float, approach: Approach = Approach.AT) -> Piece:
        """Return the piece governing x under the given approach"""
        self._check_domain(x, approach)
        if approach is Approach.AT:
            jump = self._jump_at(x)
            if jump is not None:
                approach = Approach.LEFT if jump.side is Side.LEFT else Approach.RIGHT
        for piece in self.pieces:
            if approach is Approach.LEFT and piece.lo < x <= piece.hi:
                return piece
            if approach is Approach.RIGHT and piece.lo <= x < piece.hi:
                return piece
            if approach is Approach.AT and piece.lo <= x <= piece.hi:
                return piece
        raise PotentialDomainError(f"no piece covers x={x}")

    # ---------- evaluation ----------
    def eval(self, x: float, approach: Approach = Approach.AT) -> float:
        """
        Evaluate the function at x

        Args:
            x: Point in the domain
            approach: ``AT`` honours the jump side convention; ``LEFT`` and
                ``RIGHT`` return one-sided limits

        Returns:
            Function value
        """
        return float(self.piece_for(x, approach).expr.evaluate(x))

    def derivative(self, x: float, approach: Approach = Approach.AT) -> float:
        """Symbolic derivative of the governing piece evaluated at x"""
        value = float(self.piece_for(x, approach).derivative.evaluate(x))
        if not np.isfinite(value):
            raise PotentialDomainError(f"derivative is not finite at x={x}")
        return value

    def sample(self, xs: Sequence[float]) -> np.ndarray:
        """Vectorised ``eval(x, AT)`` over many points"""
        xs = np.asarray(xs, dtype=float)
        lo, hi = self.domain
        if xs.size and (xs.min() < lo or xs.max() > hi):
            outside = xs[(xs < lo) | (xs > hi)][0]
            raise PotentialDomainError(f"sample point {outside} outside domain [{lo}, {hi}]")
        index = np.searchsorted(np.asarray(self.boundaries), xs, side="left")
        for jump in self.jumps:
            if jump.side is Side.RIGHT:
                index[xs == jump.c] += 1
        values = np.empty_like(xs)
        for i, piece in enumerate(self.pieces):
            mask = index == i
            if mask.any():
                values[mask] = piece.expr.evaluate(xs[mask])
        return values

    def limits_at(self, c: float) -> Tuple[float, float]:
        """One-sided limits (f(c-), f(c+))"""
        return self.eval(c, Approach.LEFT), self.eval(c, Approach.RIGHT)

    def smooth_panels(self, a: float = 0.0, b: float = 1.0) -> List[Tuple[float, float, Piece]]:
        """Split [a, b] at piece boundaries into panels with their piece"""
        panels = []
        for piece in self.pieces:
            left, right = max(a, piece.lo), min(b, piece.hi)
            if left < right:
                panels.append((left, right, piece))
        return panels

    def to_source(self) -> str:
        """Render back into the source grammar"""
        lines = [f"domain [{self.domain[0]!r}, {self.domain[1]!r}]"]
        lines += [f"piece [{p.lo!r}, {p.hi!r}]: {to_text(p.expr)}" for p in self.pieces]
        lines += [f"jump at {j.c!r} side {j.side.value}" for j in self.jumps]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PiecewisePotential(PiecewiseFunction):
    """
    Piecewise function bounded below by 2 + floor_margin

    The floor is checked on a dense grid per piece, which is a heuristic: a
    narrow dip between grid points goes unnoticed.
    """
    floor_margin: float = 1e-3

    def __post_init__(self):
        super().__post_init__()
        if self.floor_margin <= 0:
            raise PotentialDomainError("floor margin must be positive")
        self._validate_floor()

    def _validate_floor(self) -> None:
        samples = get_settings().floor_samples_per_piece
        floor = 2.0 + self.floor_margin
        for piece in self.pieces:
            xs = np.linspace(piece.lo, piece.hi, samples)
            values = np.asarray(piece.expr.evaluate(xs), dtype=float)
            i = int(np.argmin(values))
            if values[i] < floor:
                raise PotentialDomainError(
                    f"f <= 2+eps0 at x={xs[i]:.6g} (f={values[i]:.6g}, eps0={self.floor_margin:g})"
                )

    def to_source(self) -> str:
        return super().to_source() + f"floor {self.floor_margin!r}\n"


# ==================== Source parsing ====================
def _strip_comment(text: str) -> str:
    return text.split("#", 1)[0].rstrip()


def _parse_interval(stream: TokenStream) -> Tuple[float, float]:
    stream.expect("[")
    start = stream.peek()
    lo = _constant(stream, start)
    stream.expect(",")
    start = stream.peek()
    hi = _constant(stream, start)
    stream.expect("]")
    return lo, hi


def _constant(stream: TokenStream, start) -> float:
    expr = parse_expression(stream)
    try:
        return evaluate_constant(expr)
    except ValueError as e:
        raise PotentialSyntaxError(str(e), start.line, start.column)


def _expect_end(stream: TokenStream) -> None:
    if stream.peek().kind != "EOF":
        stream.error(f"unexpected {stream.peek().text!r}")


def parse_lines(
    lines: Iterable[Tuple[int, str]],
    floor_margin: Optional[float] = None,
    require_floor: bool = True,
    source: Optional[str] = None,
) -> PiecewiseFunction:
    """
    Build a validated function from numbered source lines

    Args:
        lines: (line number, text) pairs
        floor_margin: Default eps0 when the source has no ``floor`` line
        require_floor: Build a ``PiecewisePotential`` (f > 2 + eps0) when true,
            a bare ``PiecewiseFunction`` otherwise
        source: Original text kept for reporting

    Returns:
        Validated piecewise function
    """
    settings = get_settings()
    domain: Optional[Tuple[float, float]] = None
    raw_pieces: List[Tuple[float, float, Expr]] = []
    raw_jumps: List[Tuple[float, Side, int, int]] = []
    margin = settings.floor_margin if floor_margin is None else floor_margin

    for number, raw in lines:
        text = _strip_comment(raw)
        if not text.strip():
            continue
        stream = TokenStream(tokenize(text, number))
        head = stream.next()
        if head.text == "domain":
            if domain is not None:
                stream.error("duplicate domain line", head)
            domain = _parse_interval(stream)
            _expect_end(stream)
        elif head.text == "piece":
            lo, hi = _parse_interval(stream)
            stream.expect(":")
            expr = parse_expression(stream)
            _expect_end(stream)
            raw_pieces.append((lo, hi, expr))
        elif head.text == "jump":
            stream.expect("at")
            start = stream.peek()
            c = _constant(stream, start)
            stream.expect("side")
            side_token = stream.next()
            if side_token.text not in ("left", "right"):
                stream.error("side must be 'left' or 'right'", side_token)
            _expect_end(stream)
            raw_jumps.append((c, Side(side_token.text), start.line, start.column))
        elif head.text == "floor":
            margin = _constant(stream, stream.peek())
            _expect_end(stream)
        else:
            stream.error(f"unknown directive {head.text!r}", head)

    if not raw_pieces:
        raise PotentialSyntaxError("no 'piece' line found", 1, 1)
    raw_pieces.sort(key=lambda p: (p[0], p[1]))

    if domain is None:
        # Extend the outer pieces by their own expressions.
        lo = min(settings.default_domain_lo, raw_pieces[0][0])
        hi = max(settings.default_domain_hi, raw_pieces[-1][1])
        raw_pieces[0] = (lo, raw_pieces[0][1], raw_pieces[0][2])
        raw_pieces[-1] = (raw_pieces[-1][0], hi, raw_pieces[-1][2])
        domain = (lo, hi)

    pieces = tuple(Piece(lo, hi, expr) for lo, hi, expr in raw_pieces)
    boundaries = [p.hi for p in pieces[:-1]]
    jumps = []
    for c, side, _, _ in sorted(raw_jumps, key=lambda j: j[0]):
        # Snap to the boundary the jump was written against.
        nearest = min(boundaries, key=lambda b: abs(b - c), default=c)
        jumps.append(JumpPoint(nearest if _close(nearest, c, 1e-12) else c, side))

    if require_floor:
        return PiecewisePotential(domain, pieces, tuple(jumps), source, floor_margin=margin)
    return PiecewiseFunction(domain, pieces, tuple(jumps), source)


def parse_potential(source: str, floor_margin: Optional[float] = None) -> PiecewisePotential:
    """
    Parse and validate a potential from source text

    Args:
        source: Text in the potential grammar
        floor_margin: eps0 override (the source's ``floor`` line wins)

    Returns:
        Validated potential
    """
    lines = list(enumerate(source.splitlines(), start=1))
    return parse_lines(lines, floor_margin=floor_margin, source=source)


def parse_function(source: str) -> PiecewiseFunction:
    """Parse a piecewise function without the f > 2 floor (summands, test functions)"""
    lines = list(enumerate(source.splitlines(), start=1))
    return parse_lines(lines, require_floor=False, source=source)


def evaluate(f: PiecewiseFunction, x: float, approach: Union[str, Approach] = Approach.AT) -> float:
    """Functional form of ``PiecewiseFunction.eval``; accepts 'at'/'left'/'right'"""
    return f.eval(x, Approach(approach) if isinstance(approach, str) else approach)


def derivative(f: PiecewiseFunction, x: float, approach: Union[str, Approach] = Approach.AT) -> float:
    """Functional form of ``PiecewiseFunction.derivative``"""
    return f.derivative(x, Approach(approach) if isinstance(approach, str) else approach)
