"""Boolean decomposition of bounded-mind-change traces into Sigma1 pairs.

A 0-anchored trace whose rows flip their Sigma sign at most ``n - 1`` times is
split into ``k + 1`` pairs ``(A_i, B_i)`` of Sigma1 traces, ``n in {2k+1, 2k+2}``,
such that

    D(x, s) = max_i min(A_i(x, s), 1 - B_i(x, s))

has the same limit and again at most ``n - 1`` sign flips per row.  ``A_i``
follows the row during its ``i``-th rising phase and then freezes; ``B_i`` is 0
until the ``i``-th falling phase, follows ``1 - f`` there, and is 1 afterwards.

Phase boundaries come from the prefix flip count, which can be read in two
ways (see :func:`fuzzy_ershov.mindchange.change_count_prefix`):

* ``lookahead=False`` (default) counts flips into stages ``<= s``.  ``A_i`` then
  freezes at the top of its rising phase and ``D`` reproduces ``f`` exactly.
* ``lookahead=True`` counts flips out of stages ``<= s`` as well, so each phase
  is detected one stage early.  ``A_i`` freezes one stage *before* the top, and
  when the row ends inside a falling phase the recomposed limit can fall short
  of the row's limit, e.g. ``[0, 1/2, 1/4, 1/4]`` with ``n = 2`` recomposes to
  ``0``.  Kept for reproducing hand computations made with that reading.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .hierarchy import classify
from .mindchange import prefix_counts, sigma_profile
from .numeric import ONE, ZERO
from .trace import (
    ApproximationTrace,
    DimensionMismatch,
    Shape,
    limit_snapshot,
    read_trace,
    write_trace,
)

__all__ = [
    "BooleanDecomposition",
    "TheoremReport",
    "CheckFailure",
    "LevelExceeded",
    "BundleError",
    "level_k",
    "decompose",
    "recompose",
    "barrier_sets",
    "verify_theorem",
    "write_bundle",
    "read_bundle",
    "render_report",
]


def level_k(n: int) -> int:
    """The ``k`` with ``n in {2k+1, 2k+2}``."""
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    return (n - 1) // 2


class LevelExceeded(ValueError):
    def __init__(self, x: int, reason: str):
        self.x = x
        super().__init__(f"x={x}: {reason}")


@dataclass(frozen=True)
class BooleanDecomposition:
    n: int
    pairs: tuple[tuple[ApproximationTrace, ApproximationTrace], ...]
    lookahead: bool = False

    def __post_init__(self):
        k = level_k(self.n)
        if len(self.pairs) != k + 1:
            raise ValueError(f"n={self.n} needs {k + 1} pairs, got {len(self.pairs)}")
        dims = {(p.X, p.S) for pair in self.pairs for p in pair}
        if len(dims) != 1:
            raise DimensionMismatch(f"pairs disagree on dimensions: {sorted(dims)}")
        for i, pair in enumerate(self.pairs, 1):
            for name, p in zip("AB", pair):
                if p.shape is not Shape.SIGMA1:
                    raise ValueError(f"{name}_{i} must be Sigma1, got {p.shape}")
        if self.n % 2 == 1:
            last_b = self.pairs[-1][1]
            if any(v != 0 for row in last_b.rows for v in row):
                raise ValueError(f"n={self.n} is odd but B_{k + 1} is not identically 0")

    @property
    def k(self) -> int:
        return level_k(self.n)

    @property
    def X(self) -> int:
        return self.pairs[0][0].X

    @property
    def S(self) -> int:
        return self.pairs[0][0].S


def decompose(f: ApproximationTrace, n: int, *, lookahead: bool = False) -> BooleanDecomposition:
    """Split ``f`` into Sigma1 pairs; raises :class:`LevelExceeded` naming the
    first element that is not 0-anchored or flips more than ``n - 1`` times."""
    k = level_k(n)
    prof = sigma_profile(f)
    for x in range(f.X):
        if f[x, 0] != 0:
            raise LevelExceeded(x, f"f(x,0) = {f[x, 0]}, expected 0")
        if prof.change_count[x] > n - 1:
            raise LevelExceeded(
                x, f"{prof.change_count[x]} sign changes exceed n - 1 = {n - 1}"
            )

    a_rows = [[] for _ in range(k + 1)]
    b_rows = [[] for _ in range(k + 1)]
    for x in range(f.X):
        counts = prefix_counts(prof, x, lookahead)
        row = f.row(x)
        for i in range(1, k + 2):
            rise, fall = 2 * i - 2, 2 * i - 1
            ha, hb = [], []
            for s, c in enumerate(counts):
                if c < rise:
                    ha.append(ZERO)
                elif c == rise:
                    ha.append(row[s])
                else:
                    # a 0-anchored row has no flip before stage 1
                    assert s > 0, "frozen A-phase at stage 0"
                    ha.append(ha[-1])
                if c < fall:
                    hb.append(ZERO)
                elif c == fall:
                    hb.append(row[s].complement())
                else:
                    hb.append(ONE)
            a_rows[i - 1].append(tuple(ha))
            b_rows[i - 1].append(tuple(hb))

    pairs = tuple(
        (
            ApproximationTrace(tuple(a_rows[i]), Shape.SIGMA1),
            ApproximationTrace(tuple(b_rows[i]), Shape.SIGMA1),
        )
        for i in range(k + 1)
    )
    return BooleanDecomposition(n, pairs, lookahead)


def recompose(d: BooleanDecomposition) -> ApproximationTrace:
    rows = []
    for x in range(d.X):
        row = []
        for s in range(d.S):
            row.append(max(min(A[x, s], B[x, s].complement()) for A, B in d.pairs))
        rows.append(tuple(row))
    return ApproximationTrace(tuple(rows), Shape.DELTA2)


def barrier_sets(d: BooleanDecomposition, x: int) -> tuple[frozenset[int], ...]:
    """``X_s`` for each stage: the 1-based pair indices already past their peak,
    i.e. those with ``1 - B_i(x, s) < A_i(x, s)``."""
    return tuple(
        frozenset(
            i for i, (A, B) in enumerate(d.pairs, 1) if B[x, s].complement() < A[x, s]
        )
        for s in range(d.S)
    )


@dataclass(frozen=True)
class CheckFailure:
    check: str
    x: int
    s: int
    detail: str

    def __str__(self):
        return f"FAIL {self.check} x={self.x} s={self.s}: {self.detail}"


@dataclass(frozen=True)
class TheoremReport:
    n: int
    decomposition: BooleanDecomposition
    recomposition: ApproximationTrace
    # None marks an element whose input had not settled before the horizon
    limits_match: tuple[bool | None, ...]
    recomposition_observed_n: int
    barrier_history: tuple[tuple[frozenset[int], ...], ...]
    failures: tuple[CheckFailure, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed_checks(self) -> set[str]:
        return {f.check for f in self.failures}


def verify_theorem(f: ApproximationTrace, n: int, *, lookahead: bool = False) -> TheoremReport:
    """Decompose, recompose and check the four guarantees.

    ``limit``: the recomposed final value equals ``f``'s on every element whose
    row settled before the horizon.  ``level``: the recomposition flips at most
    ``n - 1`` times per row.  ``barrier``: ``X_s`` only grows.  ``barrier_size``:
    the final ``X`` has at most ``k + 1`` members (``n`` even) or ``k`` (``n`` odd).
    """
    d = decompose(f, n, lookahead=lookahead)
    h = recompose(d)
    k = d.k
    size_cap = k + 1 if n % 2 == 0 else k
    snap_f = limit_snapshot(f)
    snap_h = limit_snapshot(h)
    prof_h = sigma_profile(h)
    failures = []

    limits = []
    for x in range(f.X):
        if not snap_f.stabilized(x):
            limits.append(None)
            continue
        same = snap_h.final[x] == snap_f.final[x]
        limits.append(same)
        if not same:
            failures.append(CheckFailure(
                "limit", x, f.S - 1,
                f"recomposed final {snap_h.final[x]} != input final {snap_f.final[x]}",
            ))

    for x in range(f.X):
        stages = prof_h.change_stages[x]
        if len(stages) > n - 1:
            failures.append(CheckFailure(
                "level", x, stages[n - 1] + 1,
                f"recomposition flips {len(stages)} times, allowed {n - 1}",
            ))

    history = tuple(barrier_sets(d, x) for x in range(f.X))
    for x, hist in enumerate(history):
        for s in range(len(hist) - 1):
            if not hist[s] <= hist[s + 1]:
                lost = sorted(hist[s] - hist[s + 1])
                failures.append(CheckFailure(
                    "barrier", x, s + 1, f"indices {lost} left the barrier set"
                ))
                break
        if len(hist[-1]) > size_cap:
            failures.append(CheckFailure(
                "barrier_size", x, len(hist) - 1,
                f"|X| = {len(hist[-1])} exceeds {size_cap}",
            ))

    return TheoremReport(
        n=n,
        decomposition=d,
        recomposition=h,
        limits_match=tuple(limits),
        recomposition_observed_n=classify(h).observed_n,
        barrier_history=history,
        failures=tuple(failures),
    )


def _fmt_set(xs: frozenset[int]) -> str:
    return "{" + ",".join(map(str, sorted(xs))) + "}"


def render_report(r: TheoremReport) -> str:
    d = r.decomposition
    lines = [
        f"theorem n={r.n} k={d.k} pairs={len(d.pairs)} "
        f"lookahead={int(d.lookahead)} recomposition_observed_n={r.recomposition_observed_n}"
    ]
    for x, (lim, hist) in enumerate(zip(r.limits_match, r.barrier_history)):
        lim_s = "inconclusive" if lim is None else ("match" if lim else "MISMATCH")
        barrier = " ".join(_fmt_set(b) for b in hist)
        lines.append(f"x={x} limit={lim_s} barrier={barrier}")
    lines.extend(str(fl) for fl in r.failures)
    lines.append("OK" if r.ok else f"FAILED {len(r.failures)} check(s)")
    return "\n".join(lines) + "\n"


# -- bundles ----------------------------------------------------------------

MANIFEST = "manifest"


class BundleError(ValueError):
    pass


def _pair_names(i: int) -> tuple[str, str]:
    return f"A_{i}.trace", f"B_{i}.trace"


def write_bundle(d: BooleanDecomposition, directory) -> None:
    """Write ``manifest`` plus ``A_i.trace`` / ``B_i.trace`` into ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / MANIFEST).write_text(f"decomp n={d.n} k={d.k} pairs={len(d.pairs)}\n")
    for i, (A, B) in enumerate(d.pairs, 1):
        a_name, b_name = _pair_names(i)
        write_trace(A, out / a_name)
        write_trace(B, out / b_name)


def read_bundle(directory) -> BooleanDecomposition:
    src = Path(directory)
    line = (src / MANIFEST).read_text().strip()
    parts = line.split()
    try:
        if len(parts) != 4 or parts[0] != "decomp":
            raise ValueError
        fields = dict(p.split("=", 1) for p in parts[1:])
        n, k, npairs = int(fields["n"]), int(fields["k"]), int(fields["pairs"])
    except (ValueError, KeyError):
        raise BundleError(f"bad manifest line {line!r}") from None
    if k != level_k(n) or npairs != k + 1:
        raise BundleError(f"inconsistent manifest {line!r}")
    pairs = []
    for i in range(1, npairs + 1):
        a_name, b_name = _pair_names(i)
        pairs.append((read_trace(src / a_name), read_trace(src / b_name)))
    return BooleanDecomposition(n, tuple(pairs))
