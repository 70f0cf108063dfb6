"""Mind-change and update bookkeeping for approximation traces.

The sign of a row is its current monotonicity guess: ``+1`` while the row is
believed to be going up, ``-1`` while going down.  A strict move against the
current guess flips it; ties and moves in the guessed direction keep it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .trace import ApproximationTrace

__all__ = [
    "Variant",
    "MindChangeProfile",
    "UpdateProfile",
    "sign_sequence",
    "sigma_profile",
    "pi_profile",
    "update_profile",
    "change_count_prefix",
    "prefix_counts",
    "render_profile",
]


class Variant(enum.Enum):
    SIGMA = "Sigma"
    PI = "Pi"

    @property
    def initial_sign(self) -> int:
        return 1 if self is Variant.SIGMA else -1


def sign_sequence(row, initial: int) -> tuple[int, ...]:
    signs = [initial]
    for prev, cur in zip(row, row[1:]):
        m = signs[-1]
        if m == 1 and prev > cur:
            m = -1
        elif m == -1 and prev < cur:
            m = 1
        signs.append(m)
    return tuple(signs)


@dataclass(frozen=True)
class MindChangeProfile:
    variant: Variant
    signs: tuple[tuple[int, ...], ...]
    # s is listed when signs[x][s + 1] != signs[x][s]
    change_stages: tuple[tuple[int, ...], ...]

    @property
    def X(self) -> int:
        return len(self.signs)

    @property
    def S(self) -> int:
        return len(self.signs[0])

    @property
    def change_count(self) -> tuple[int, ...]:
        return tuple(len(st) for st in self.change_stages)

    def max_changes(self) -> int:
        return max(self.change_count)


def _profile(a: ApproximationTrace, variant: Variant) -> MindChangeProfile:
    signs = tuple(sign_sequence(row, variant.initial_sign) for row in a.rows)
    stages = tuple(
        tuple(s for s in range(len(sg) - 1) if sg[s + 1] != sg[s]) for sg in signs
    )
    return MindChangeProfile(variant, signs, stages)


def sigma_profile(a: ApproximationTrace) -> MindChangeProfile:
    return _profile(a, Variant.SIGMA)


def pi_profile(a: ApproximationTrace) -> MindChangeProfile:
    return _profile(a, Variant.PI)


@dataclass(frozen=True)
class UpdateProfile:
    # s is listed when f(x, s + 1) != f(x, s)
    update_stages: tuple[tuple[int, ...], ...]

    @property
    def update_count(self) -> tuple[int, ...]:
        return tuple(len(st) for st in self.update_stages)


def update_profile(a: ApproximationTrace) -> UpdateProfile:
    return UpdateProfile(
        tuple(
            tuple(s for s in range(len(row) - 1) if row[s + 1] != row[s])
            for row in a.rows
        )
    )


def change_count_prefix(p: MindChangeProfile, x: int, s: int, lookahead: bool = True) -> int:
    """Number of sign flips of row ``x`` counted up to stage ``s``.

    With ``lookahead`` (the default) this is ``|{t <= s : m(t+1) != m(t)}|``,
    which already sees the transition out of stage ``s``.  At ``s = S - 1`` the
    next sign is past the horizon and is taken to equal the last one.

    Without ``lookahead`` only transitions into stages ``<= s`` are counted,
    i.e. ``|{t < s : m(t+1) != m(t)}|``; this depends on the trace up to
    stage ``s`` alone.
    """
    if not 0 <= s < p.S:
        raise IndexError(f"stage {s} outside 0..{p.S - 1}")
    if not 0 <= x < p.X:
        raise IndexError(f"element {x} outside 0..{p.X - 1}")
    limit = s if lookahead else s - 1
    return sum(1 for t in p.change_stages[x] if t <= limit)


def prefix_counts(p: MindChangeProfile, x: int, lookahead: bool = True) -> list[int]:
    """``change_count_prefix`` for every stage of row ``x`` in one pass."""
    flips = set(p.change_stages[x])
    out = []
    c = 0
    for s in range(p.S):
        if not lookahead and s > 0 and (s - 1) in flips:
            c += 1
        if lookahead and s in flips:
            c += 1
        out.append(c)
    return out


def _sign_char(m: int) -> str:
    return "+" if m == 1 else "-"


def render_profile(p: MindChangeProfile, updates: UpdateProfile | None = None) -> str:
    """One line per element: sign string, flip stages, counts."""
    lines = [f"profile variant={p.variant.value} X={p.X} S={p.S}"]
    for x in range(p.X):
        signs = "".join(_sign_char(m) for m in p.signs[x])
        stages = ",".join(map(str, p.change_stages[x])) or "-"
        line = f"x={x} signs={signs} changes={stages} count={p.change_count[x]}"
        if updates is not None:
            line += f" updates={updates.update_count[x]}"
        lines.append(line)
    return "\n".join(lines) + "\n"
