"""Observed levels of the fuzzy difference hierarchy on finite traces.

A finite table can only ever refute membership in a low level, never certify
membership in a level.  Accordingly :func:`classify` reports the *smallest
level the trace is consistent with so far*: a trace whose worst row flipped
its Sigma sign ``c`` times is reported at ``observed_n = c + 1``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .mindchange import pi_profile, sigma_profile, update_profile
from .numeric import HALF, ONE, ZERO
from .trace import ApproximationTrace, DimensionMismatch, Shape

__all__ = [
    "LevelReport",
    "CountingTrace",
    "CountingCheck",
    "CrispBridgeError",
    "classify",
    "threshold_to_crisp",
    "embed_crisp",
    "counting_witness",
    "verify_counting_function",
    "report_csv",
]


@dataclass(frozen=True)
class LevelReport:
    sigma_changes: tuple[int, ...]
    pi_changes: tuple[int, ...]
    updates: tuple[int, ...]
    anchors: tuple[object, ...]
    observed_n: int
    observed_co_n: int
    # None unless the rows start at 0 and never decrease
    observed_update_level: int | None

    @property
    def anchor_zero(self) -> bool:
        return all(a == 0 for a in self.anchors)

    @property
    def anchor_one(self) -> bool:
        return all(a == 1 for a in self.anchors)

    def consistent_with(self, n: int) -> bool:
        """n-c.e. reading: anchored at 0 with at most ``n - 1`` sign flips per row."""
        return self.anchor_zero and self.observed_n <= n

    def co_consistent_with(self, n: int) -> bool:
        return self.anchor_one and self.observed_co_n <= n


def _is_sigma1_shaped(a: ApproximationTrace) -> bool:
    return all(
        row[0] == 0 and all(u <= v for u, v in zip(row, row[1:])) for row in a.rows
    )


def classify(a: ApproximationTrace) -> LevelReport:
    sig = sigma_profile(a).change_count
    pi = pi_profile(a).change_count
    upd = update_profile(a).update_count
    return LevelReport(
        sigma_changes=sig,
        pi_changes=pi,
        updates=upd,
        anchors=tuple(row[0] for row in a.rows),
        observed_n=max(sig) + 1,
        observed_co_n=max(pi) + 1,
        observed_update_level=max(upd) if _is_sigma1_shaped(a) else None,
    )


def threshold_to_crisp(a: ApproximationTrace) -> ApproximationTrace:
    """1 where the value is strictly above 1/2, else 0."""
    rows = tuple(tuple(ONE if v > HALF else ZERO for v in row) for row in a.rows)
    return ApproximationTrace(rows, Shape.CRISP)


class CrispBridgeError(ValueError):
    pass


def embed_crisp(a: ApproximationTrace) -> LevelReport:
    """Read a crisp 0-anchored trace as a fuzzy one and certify its level.

    Each row with ``k`` value flips has ``max(k - 1, 0)`` sign flips: the first
    flip (0 to 1) happens while the guess is already "up", and every later
    flip reverses the guess.
    """
    if a.shape is not Shape.CRISP:
        raise CrispBridgeError(f"expected a Crisp trace, got {a.shape}")
    for x, row in enumerate(a.rows):
        if row[0] != 0:
            raise CrispBridgeError(f"row {x} starts at {row[0]}, expected 0")
    report = classify(a)
    for x, (flips, changes) in enumerate(zip(report.updates, report.sigma_changes)):
        if changes != max(flips - 1, 0):
            raise AssertionError(
                f"row {x}: {flips} flips but {changes} sign changes"
            )
    return report


@dataclass(frozen=True)
class CountingTrace:
    """A natural-number valued counting table, every value below ``bound``.

    Monotonicity is *not* enforced here; :func:`verify_counting_function`
    reports it, so that broken candidates can still be represented.
    """

    rows: tuple[tuple[int, ...], ...]
    bound: int

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        if self.bound < 1:
            raise ValueError("bound must be positive")
        width = len(rows[0]) if rows else 0
        for x, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(f"row {x} has {len(row)} stages, expected {width}")
            for s, v in enumerate(row):
                if not 0 <= v < self.bound:
                    raise ValueError(f"h({x},{s}) = {v} not in 0..{self.bound - 1}")
        object.__setattr__(self, "rows", rows)

    @property
    def X(self) -> int:
        return len(self.rows)

    @property
    def S(self) -> int:
        return len(self.rows[0])

    def replace(self, x: int, s: int, value: int) -> CountingTrace:
        rows = [list(r) for r in self.rows]
        rows[x][s] = value
        return CountingTrace(tuple(map(tuple, rows)), self.bound)


@dataclass(frozen=True)
class CountingCheck:
    ok: bool
    x: int | None = None
    s: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_counting_function(a: ApproximationTrace, h: CountingTrace) -> CountingCheck:
    """Check that ``h`` never increases and drops at every Sigma sign flip.

    A violation is located at the transition ``s -> s + 1`` and reported as
    ``(x, s + 1)``; non-monotonicity is checked before the flip condition at
    each transition.
    """
    if (a.X, a.S) != (h.X, h.S):
        raise DimensionMismatch(f"trace is {a.X}x{a.S}, counting table is {h.X}x{h.S}")
    prof = sigma_profile(a)
    for x in range(a.X):
        signs = prof.signs[x]
        hr = h.rows[x]
        for s in range(a.S - 1):
            if hr[s + 1] > hr[s]:
                return CountingCheck(False, x, s + 1, f"h increases {hr[s]} -> {hr[s + 1]}")
            if signs[s + 1] != signs[s] and hr[s + 1] == hr[s]:
                return CountingCheck(False, x, s + 1, f"sign flips but h stays at {hr[s]}")
    return CountingCheck(True)


def counting_witness(a: ApproximationTrace, bound: int | None = None) -> CountingTrace:
    """Start every row at ``bound - 1`` and step down once per sign flip.

    ``bound`` defaults to the observed level; a smaller bound than that is
    impossible and raises ``ValueError``.
    """
    prof = sigma_profile(a)
    need = prof.max_changes() + 1
    if bound is None:
        bound = need
    if bound < need:
        raise ValueError(f"no counting function below {bound}: trace needs {need}")
    rows = []
    for x in range(a.X):
        v = bound - 1
        row = [v]
        for s in range(a.S - 1):
            if prof.signs[x][s + 1] != prof.signs[x][s]:
                v -= 1
            row.append(v)
        rows.append(tuple(row))
    return CountingTrace(tuple(rows), bound)


def _anchor_label(r: LevelReport) -> str:
    if r.anchor_zero:
        return "zero"
    if r.anchor_one:
        return "one"
    return "mixed"


def report_csv(r: LevelReport) -> str:
    """Per-element rows followed by a single summary row."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "anchor", "sigma_changes", "pi_changes", "updates"])
    for x, (anc, sg, pi, up) in enumerate(
        zip(r.anchors, r.sigma_changes, r.pi_changes, r.updates)
    ):
        w.writerow([x, str(anc), sg, pi, up])
    level = "NA" if r.observed_update_level is None else r.observed_update_level
    w.writerow([
        "summary",
        f"anchors={_anchor_label(r)}",
        f"observed_n={r.observed_n}",
        f"observed_co_n={r.observed_co_n}",
        f"update_level={level}",
    ])
    return buf.getvalue()
