"""Finite approximation tables ``f(x, s)`` for ``x < X`` and ``s < S``.

A trace is the finite-horizon stand-in for a computable approximation of a
fuzzy subset of the naturals.  Rows are elements, columns are stages.  The
shape tag records which monotonicity discipline the table obeys:

* ``Sigma1``: starts at 0 and never decreases (approximation from below)
* ``Pi1``: starts at 1 and never increases (approximation from above)
* ``Crisp``: every value is 0 or 1
* ``Delta2``: no constraint beyond totality

"Limits" are read at stage ``S - 1`` together with the stage from which the row
stopped moving; nothing here pretends to know what happens after the horizon.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .numeric import RationalError, UnitRational, as_unit, parse_rational

__all__ = [
    "Shape",
    "ShapeViolation",
    "DimensionMismatch",
    "TraceFormatError",
    "ApproximationTrace",
    "LimitSnapshot",
    "validate",
    "union",
    "intersection",
    "complement",
    "limit_snapshot",
    "grid",
    "enumerate_left_cut",
    "enumerate_right_cut",
    "dumps",
    "loads",
    "read_trace",
    "write_trace",
    "parse_raw",
    "constant",
]


class Shape(enum.Enum):
    DELTA2 = "Delta2"
    SIGMA1 = "Sigma1"
    PI1 = "Pi1"
    CRISP = "Crisp"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> Shape:
        try:
            return cls(text)
        except ValueError:
            names = "|".join(s.value for s in cls)
            raise ValueError(f"unknown shape {text!r} (expected {names})") from None


_COMPLEMENT_SHAPE = {
    Shape.SIGMA1: Shape.PI1,
    Shape.PI1: Shape.SIGMA1,
    Shape.CRISP: Shape.CRISP,
    Shape.DELTA2: Shape.DELTA2,
}


class ShapeViolation(ValueError):
    """A table cell breaks the invariant of the claimed shape.

    ``invariant`` is one of ``"anchor"``, ``"monotonicity"``, ``"crispness"``.
    """

    def __init__(self, x: int, s: int, invariant: str, shape: Shape, detail: str = ""):
        self.x = x
        self.s = s
        self.invariant = invariant
        self.shape = shape
        msg = f"{shape} violated at (x={x}, s={s}): {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DimensionMismatch(ValueError):
    pass


class TraceFormatError(ValueError):
    """The text of a trace file could not be parsed."""


def _first_violation(rows, shape: Shape):
    for x, row in enumerate(rows):
        for s, v in enumerate(row):
            if shape is Shape.CRISP:
                if v != 0 and v != 1:
                    return ShapeViolation(x, s, "crispness", shape, f"value {v}")
            elif shape is Shape.SIGMA1:
                if s == 0 and v != 0:
                    return ShapeViolation(x, s, "anchor", shape, f"f(x,0) = {v} != 0")
                if s > 0 and v < row[s - 1]:
                    return ShapeViolation(
                        x, s, "monotonicity", shape, f"{v} < {row[s - 1]}"
                    )
            elif shape is Shape.PI1:
                if s == 0 and v != 1:
                    return ShapeViolation(x, s, "anchor", shape, f"f(x,0) = {v} != 1")
                if s > 0 and v > row[s - 1]:
                    return ShapeViolation(
                        x, s, "monotonicity", shape, f"{v} > {row[s - 1]}"
                    )
    return None


@dataclass(frozen=True)
class ApproximationTrace:
    """An immutable, total ``X x S`` table of unit rationals with a shape tag.

    Construction checks totality and the shape invariants; a trace object that
    exists is a valid one.
    """

    rows: tuple[tuple[UnitRational, ...], ...]
    shape: Shape = Shape.DELTA2

    def __post_init__(self):
        rows = tuple(tuple(as_unit(v) for v in row) for row in self.rows)
        if not rows:
            raise ValueError("a trace needs at least one element")
        width = len(rows[0])
        if width == 0:
            raise ValueError("a trace needs at least one stage")
        for x, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(
                    f"table is not total: row {x} has {len(row)} stages, expected {width}"
                )
        shape = self.shape if isinstance(self.shape, Shape) else Shape.parse(self.shape)
        err = _first_violation(rows, shape)
        if err is not None:
            raise err
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "shape", shape)

    @property
    def X(self) -> int:
        return len(self.rows)

    @property
    def S(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, key):
        x, s = key
        return self.rows[x][s]

    def row(self, x: int) -> tuple[UnitRational, ...]:
        return self.rows[x]

    def retag(self, shape: Shape) -> ApproximationTrace:
        return ApproximationTrace(self.rows, shape)

    def prefix(self, S: int) -> ApproximationTrace:
        """The same trace cut down to the first ``S`` stages."""
        return ApproximationTrace(tuple(row[:S] for row in self.rows), self.shape)

    def __str__(self):
        return dumps(self)


def validate(raw: Iterable[Sequence], claimed_shape: Shape | str = Shape.DELTA2) -> ApproximationTrace:
    """Build a trace from a raw table, checking it against ``claimed_shape``.

    Cells may be ints, Fractions or ``"p/q"`` strings.  Raises
    :class:`ShapeViolation` naming the first offending ``(x, s)`` in row-major
    order.

    >>> validate([["0", "1/4", "1/2"]], "Sigma1").shape
    <Shape.SIGMA1: 'Sigma1'>
    """
    if isinstance(claimed_shape, str):
        claimed_shape = Shape.parse(claimed_shape)
    return ApproximationTrace(tuple(tuple(row) for row in raw), claimed_shape)


def _check_same_dims(a: ApproximationTrace, b: ApproximationTrace):
    if (a.X, a.S) != (b.X, b.S):
        raise DimensionMismatch(f"X={a.X} S={a.S} vs X={b.X} S={b.S}")


def _binary(a, b, pick) -> ApproximationTrace:
    _check_same_dims(a, b)
    rows = tuple(
        tuple(pick(u, v) for u, v in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)
    )
    shape = a.shape if a.shape is b.shape else Shape.DELTA2
    return ApproximationTrace(rows, shape)


def union(a: ApproximationTrace, b: ApproximationTrace) -> ApproximationTrace:
    """Pointwise max.  The shape survives only when both inputs share it."""
    return _binary(a, b, max)


def intersection(a: ApproximationTrace, b: ApproximationTrace) -> ApproximationTrace:
    """Pointwise min."""
    return _binary(a, b, min)


def complement(a: ApproximationTrace) -> ApproximationTrace:
    rows = tuple(tuple(v.complement() for v in row) for row in a.rows)
    return ApproximationTrace(rows, _COMPLEMENT_SHAPE[a.shape])


@dataclass(frozen=True)
class LimitSnapshot:
    final: tuple[UnitRational, ...]
    stabilization: tuple[int, ...]
    horizon: int

    def stabilized(self, x: int) -> bool:
        """True when row ``x`` settled strictly before the last stage."""
        return self.stabilization[x] < self.horizon - 1


def limit_snapshot(a: ApproximationTrace) -> LimitSnapshot:
    finals = []
    stages = []
    for row in a.rows:
        last = row[-1]
        s = len(row) - 1
        while s > 0 and row[s - 1] == last:
            s -= 1
        finals.append(last)
        stages.append(s)
    return LimitSnapshot(tuple(finals), tuple(stages), a.S)


def grid(max_denominator: int) -> list[UnitRational]:
    """All rationals in ``[0, 1]`` with denominator at most ``max_denominator``,
    ascending (the Farey sequence of that order)."""
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    n = max_denominator
    a, b, c, d = 0, 1, 1, n
    out = [UnitRational(0)]
    while c <= n:
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append(UnitRational(a, b))
    return out


def enumerate_left_cut(a: ApproximationTrace, x: int, max_denominator: int) -> list[UnitRational]:
    """Grid rationals below some stage value of row ``x`` of a Sigma1 trace."""
    if a.shape is not Shape.SIGMA1:
        raise ValueError(f"left cuts need a Sigma1 trace, got {a.shape}")
    top = max(a.row(x))
    return [q for q in grid(max_denominator) if q < top]


def enumerate_right_cut(a: ApproximationTrace, x: int, max_denominator: int) -> list[UnitRational]:
    """Grid rationals above some stage value of row ``x`` of a Pi1 trace."""
    if a.shape is not Shape.PI1:
        raise ValueError(f"right cuts need a Pi1 trace, got {a.shape}")
    bottom = min(a.row(x))
    return [q for q in grid(max_denominator) if q > bottom]


# -- text format ------------------------------------------------------------

def dumps(a: ApproximationTrace) -> str:
    lines = [f"trace X={a.X} S={a.S} shape={a.shape}"]
    lines.extend(" ".join(str(v) for v in row) for row in a.rows)
    return "\n".join(lines) + "\n"


def _header_field(token: str, key: str) -> str:
    prefix = key + "="
    if not token.startswith(prefix):
        raise TraceFormatError(f"expected {prefix}... in header, got {token!r}")
    return token[len(prefix):]


def parse_raw(text: str) -> tuple[list[list[UnitRational]], Shape]:
    """Parse trace text into a raw table and the shape its header claims,
    without checking the shape invariants."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TraceFormatError("empty trace file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "trace":
        raise TraceFormatError(f"bad header line {lines[0]!r}")
    try:
        X = int(_header_field(head[1], "X"))
        S = int(_header_field(head[2], "S"))
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from None
    try:
        shape = Shape.parse(_header_field(head[3], "shape"))
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from None
    if X < 1 or S < 1:
        raise TraceFormatError("X and S must be positive")
    body = lines[1:]
    if len(body) != X:
        raise TraceFormatError(f"header says X={X} but found {len(body)} rows")
    rows = []
    for x, line in enumerate(body):
        cells = line.split()
        if len(cells) != S:
            raise TraceFormatError(f"row {x} has {len(cells)} values, header says S={S}")
        try:
            rows.append([parse_rational(c) for c in cells])
        except RationalError as exc:
            raise TraceFormatError(f"row {x}: {exc}") from None
    return rows, shape


def loads(text: str, shape: Shape | str | None = None) -> ApproximationTrace:
    """Parse trace text; ``shape`` overrides the header's claim."""
    rows, header_shape = parse_raw(text)
    return validate(rows, header_shape if shape is None else shape)


def read_trace(path, shape: Shape | str | None = None) -> ApproximationTrace:
    return loads(Path(path).read_text(), shape)


def write_trace(a: ApproximationTrace, path) -> None:
    Path(path).write_text(dumps(a))


def constant(X: int, S: int, value, shape: Shape = Shape.DELTA2) -> ApproximationTrace:
    v = as_unit(value)
    return ApproximationTrace(tuple((v,) * S for _ in range(X)), shape)

