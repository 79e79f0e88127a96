"""Canonical ``{F | G}`` sides of finite-birthday surreals.

The options of ``s`` are its proper initial segments, split by whether they
lie below or above ``s``.  For a sequence of rows the limit is represented by
the options that are eventually always on the same side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple

from .limits import Explicit, slim
from .real_bridge import Unsupported
from .sign import SignExpansion, truncate


@dataclass(frozen=True)
class CanonicalSides:
    left: Tuple[SignExpansion, ...]
    right: Tuple[SignExpansion, ...]

    def max_left(self) -> Optional[SignExpansion]:
        return max(self.left) if self.left else None

    def min_right(self) -> Optional[SignExpansion]:
        return min(self.right) if self.right else None


def canonical_sides(s: SignExpansion) -> CanonicalSides:
    if not s.is_finite():
        raise Unsupported(f"{s} has transfinite birthday")
    segments = [truncate(s, k) for k in range(int(s.birthday))]
    return CanonicalSides(
        tuple(t for t in segments if t < s),
        tuple(t for t in segments if t > s),
    )


def _eventual(sides: Sequence[FrozenSet[SignExpansion]]) -> FrozenSet[SignExpansion]:
    # union over b of the intersection of all sides from b on
    out: FrozenSet[SignExpansion] = frozenset()
    for b in range(len(sides)):
        out |= frozenset.intersection(*sides[b:])
    return out


def limit_sides(rows: Explicit) -> CanonicalSides:
    per_row = [canonical_sides(r) for r in rows.rows]
    F = _eventual([frozenset(c.left) for c in per_row])
    G = _eventual([frozenset(c.right) for c in per_row])
    return CanonicalSides(tuple(sorted(F)), tuple(sorted(G)))


def limit_sides_check(rows: Explicit) -> bool:
    """Every eventual left option lies below the limit and every right one above."""
    sides = limit_sides(rows)
    lim = slim(rows).value
    return all(f < lim for f in sides.left) and all(lim < g for g in sides.right)
