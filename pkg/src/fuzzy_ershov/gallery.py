"""Example traces: Harkleroad's halting-driven set, oscillators, random
bounded-level traces, and dyadic left-/right-c.e. reals."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .numeric import HALF, ONE, ZERO, UnitRational, as_unit
from .trace import ApproximationTrace, Shape

__all__ = [
    "NEVER",
    "ToyHaltingTable",
    "OscillatorSchedule",
    "harkleroad",
    "oscillator",
    "random_bounded_trace",
    "random_trace",
    "random_crisp_trace",
    "left_ce_real",
    "right_ce_real",
    "dyadic_value",
]

NEVER = None


@dataclass(frozen=True)
class ToyHaltingTable:
    """Finite stand-in for the halting problem: machine ``x`` halts at stage
    ``halts_at[x]``, or never (``None``).

    Stage 1 is when the approximation commits to its default guess 1/2, so a
    machine is observed halting at stage 2 at the earliest.
    """

    halts_at: tuple[int | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "halts_at", tuple(self.halts_at))
        if not self.halts_at:
            raise ValueError("empty halting table")
        for x, h in enumerate(self.halts_at):
            if h is not None and h < 2:
                raise ValueError(f"machine {x}: halts_at={h}, must be >= 2")

    def __len__(self):
        return len(self.halts_at)

    def halts_within(self, x: int, S: int) -> bool:
        h = self.halts_at[x]
        return h is not None and h <= S - 1

    @classmethod
    def parse(cls, text: str) -> ToyHaltingTable:
        """Lines ``x=<int> halts_at=<int|NEVER>``, each index 0..X-1 once."""
        entries = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split()
            try:
                if len(parts) != 2 or not parts[0].startswith("x=") or not parts[1].startswith("halts_at="):
                    raise ValueError
                x = int(parts[0][2:])
                h = parts[1][len("halts_at="):]
                halts = NEVER if h == "NEVER" else int(h)
            except ValueError:
                raise ValueError(f"line {lineno}: malformed entry {line!r}") from None
            if x in entries:
                raise ValueError(f"line {lineno}: machine {x} listed twice")
            entries[x] = halts
        if sorted(entries) != list(range(len(entries))):
            raise ValueError("machine indices must be exactly 0..X-1")
        return cls(tuple(entries[x] for x in range(len(entries))))

    @classmethod
    def read(cls, path) -> ToyHaltingTable:
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "".join(
            f"x={x} halts_at={'NEVER' if h is None else h}\n"
            for x, h in enumerate(self.halts_at)
        )


def harkleroad(table: ToyHaltingTable, S: int) -> ApproximationTrace:
    """0 at stage 0, then 1/2 until the machine halts, then 1."""
    if S < 2:
        raise ValueError("horizon must be at least 2")
    rows = []
    for h in table.halts_at:
        row = [ZERO]
        for s in range(1, S):
            row.append(ONE if h is not None and h <= s else HALF)
        rows.append(tuple(row))
    return ApproximationTrace(tuple(rows), Shape.SIGMA1)


@dataclass(frozen=True)
class OscillatorSchedule:
    center: UnitRational
    amplitude: UnitRational
    oscillation_count: int

    def __post_init__(self):
        object.__setattr__(self, "center", as_unit(self.center))
        object.__setattr__(self, "amplitude", as_unit(self.amplitude))
        if self.oscillation_count < 1:
            raise ValueError("oscillation_count must be positive")
        if self.amplitude == 0:
            raise ValueError("amplitude 0 never oscillates")
        if self.center + self.amplitude > 1 or self.center - self.amplitude < 0:
            raise ValueError(
                f"center {self.center} +/- amplitude {self.amplitude} leaves [0, 1]"
            )

    @property
    def high(self) -> UnitRational:
        return as_unit(self.center + self.amplitude)

    @property
    def low(self) -> UnitRational:
        return as_unit(self.center - self.amplitude)


def oscillator(sched: OscillatorSchedule, S: int) -> ApproximationTrace:
    """Single-element trace ``0, hi, lo, hi, lo, ...`` for ``oscillation_count``
    swings, then held at its last value.  Flips its sign ``2m - 1`` times."""
    m = sched.oscillation_count
    if S < 2 * m + 1:
        raise ValueError(f"horizon {S} too short for {m} swings (need {2 * m + 1})")
    row = [ZERO]
    for j in range(2 * m):
        row.append(sched.high if j % 2 == 0 else sched.low)
    row.extend([row[-1]] * (S - len(row)))
    return ApproximationTrace((tuple(row),), Shape.DELTA2)


def _bounded_row(rng: random.Random, S: int, n: int, denominator: int) -> list[int]:
    # phases alternate up/down; ties inside a phase never add a sign flip
    phases = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, S), min(phases - 1, S - 1)))
    bounds = [0, *cuts, S]
    vals = [0]
    for p in range(len(bounds) - 1):
        going_up = p % 2 == 0
        for _ in range(max(bounds[p], 1), bounds[p + 1]):
            v = vals[-1]
            if rng.random() < 0.25:
                vals.append(v)
            elif going_up:
                vals.append(rng.randint(v, denominator))
            else:
                vals.append(rng.randint(0, v))
    return vals


def random_bounded_trace(seed, X: int, S: int, n: int, denominator: int = 16) -> ApproximationTrace:
    """0-anchored trace whose rows flip their Sigma sign at most ``n - 1``
    times, with values on the ``k / denominator`` grid.  Deterministic in
    ``seed``."""
    if n < 1:
        raise ValueError("level must be >= 1")
    rng = random.Random(seed)
    rows = tuple(
        tuple(UnitRational(v, denominator) for v in _bounded_row(rng, S, n, denominator))
        for _ in range(X)
    )
    return ApproximationTrace(rows, Shape.SIGMA1 if n == 1 else Shape.DELTA2)


def random_trace(seed, X: int, S: int, denominator: int = 16) -> ApproximationTrace:
    """Unconstrained Delta2 trace on the ``k / denominator`` grid."""
    rng = random.Random(seed)
    rows = tuple(
        tuple(UnitRational(rng.randint(0, denominator), denominator) for _ in range(S))
        for _ in range(X)
    )
    return ApproximationTrace(rows, Shape.DELTA2)


def random_crisp_trace(seed, X: int, S: int, flip_rate: float = 0.3) -> ApproximationTrace:
    """0-anchored crisp trace; each stage flips the previous value with
    probability ``flip_rate``."""
    rng = random.Random(seed)
    rows = []
    for _ in range(X):
        row = [ZERO]
        for _ in range(S - 1):
            row.append(row[-1].complement() if rng.random() < flip_rate else row[-1])
        rows.append(tuple(row))
    return ApproximationTrace(tuple(rows), Shape.CRISP)


def dyadic_value(digits) -> Fraction:
    return sum((Fraction(d, 2 ** (j + 1)) for j, d in enumerate(digits)), Fraction(0))


def _check_bits(digits) -> tuple[int, ...]:
    bits = tuple(int(d) for d in digits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"binary digits expected, got {digits!r}")
    return bits


def left_ce_real(digits, S: int) -> ApproximationTrace:
    """Partial sums of ``0.d1 d2 d3 ...``: stage ``s`` knows the first ``s``
    digits.  Converges from below to the value with the tail padded by 0s."""
    bits = _check_bits(digits)
    row = [as_unit(dyadic_value(bits[:s])) for s in range(S)]
    return ApproximationTrace((tuple(row),), Shape.SIGMA1)


def right_ce_real(digits, S: int) -> ApproximationTrace:
    """Upper bounds ``partial + 2^-s`` for ``0.d1 d2 d3 ...``: stage ``s``
    knows the first ``s`` digits and assumes the rest are all 1.  Converges
    from above to the value with the tail padded by 1s.

    ``right_ce_real(d)`` is pointwise ``1 - left_ce_real(~d)`` where ``~d``
    flips every digit.
    """
    bits = _check_bits(digits)
    row = []
    for s in range(S):
        known = bits[:s]
        row.append(as_unit(dyadic_value(known) + Fraction(1, 2 ** len(known))))
    return ApproximationTrace((tuple(row),), Shape.PI1)
