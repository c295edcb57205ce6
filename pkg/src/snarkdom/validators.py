"""Membership predicates for the domination variants and copy-weight patterns.

Every public predicate takes a :class:`FlowerSnark` and a candidate.  The
``*_mask`` twins work on raw integer bit masks and are what the solvers call
in their inner loops.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import FlowerSnark, VertexSet, connected_mask, iter_bits


class Variant(str, enum.Enum):
    DOMINATION = "domination"
    INDEPENDENT = "independent"
    TWO_DOMINATION = "two_domination"
    TOTAL = "total"
    CONNECTED = "connected"
    MINIMAL = "minimal"
    UPPER = "upper"
    SECURE = "secure"
    ROMAN = "roman"
    WEAK_ROMAN = "weak_roman"

    @property
    def takes_guards(self) -> bool:
        return self in (Variant.ROMAN, Variant.WEAK_ROMAN)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GuardFunction:
    """Guard counts in {0, 1, 2}, one per vertex."""

    values: tuple[int, ...]

    def __post_init__(self):
        if any(x not in (0, 1, 2) for x in self.values):
            raise ValueError("guard counts must lie in {0, 1, 2}")

    @classmethod
    def from_masks(cls, ones: int, twos: int, universe: int) -> GuardFunction:
        if ones & twos:
            raise ValueError("a vertex cannot carry both one and two guards")
        return cls(tuple((ones >> v & 1) + 2 * (twos >> v & 1) for v in range(universe)))

    @classmethod
    def indicator(cls, s: VertexSet) -> GuardFunction:
        return cls.from_masks(s.mask, 0, s.universe)

    @classmethod
    def constant(cls, value: int, universe: int) -> GuardFunction:
        return cls((value,) * universe)

    @property
    def weight(self) -> int:
        return sum(self.values)

    @property
    def universe(self) -> int:
        return len(self.values)

    def masks(self) -> tuple[int, int]:
        ones = twos = 0
        for v, x in enumerate(self.values):
            if x == 1:
                ones |= 1 << v
            elif x == 2:
                twos |= 1 << v
        return ones, twos

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]


def _check_universe(g: FlowerSnark, size: int) -> None:
    if size != g.num_vertices:
        raise ValueError(f"candidate has {size} entries, graph has {g.num_vertices} vertices")


def cover_mask(g: FlowerSnark, mask: int) -> int:
    """Union of closed neighbourhoods of the vertices in ``mask``."""
    closed = g.closed_masks
    out = 0
    for v in iter_bits(mask):
        out |= closed[v]
    return out


def open_cover_mask(g: FlowerSnark, mask: int) -> int:
    opens = g.open_masks
    out = 0
    for v in iter_bits(mask):
        out |= opens[v]
    return out


# ---------------------------------------------------------------- mask level


def dominating_mask(g: FlowerSnark, mask: int) -> bool:
    return cover_mask(g, mask) == g.full_mask


def independent_dominating_mask(g: FlowerSnark, mask: int) -> bool:
    return open_cover_mask(g, mask) & mask == 0 and dominating_mask(g, mask)


def two_dominating_mask(g: FlowerSnark, mask: int) -> bool:
    opens = g.open_masks
    for v in iter_bits(g.full_mask & ~mask):
        m = opens[v] & mask
        if m & (m - 1) == 0:
            return False
    return True


def total_dominating_mask(g: FlowerSnark, mask: int) -> bool:
    return open_cover_mask(g, mask) == g.full_mask


def connected_dominating_mask(g: FlowerSnark, mask: int) -> bool:
    return dominating_mask(g, mask) and connected_mask(g, mask)


def minimal_dominating_mask(g: FlowerSnark, mask: int) -> bool:
    if not dominating_mask(g, mask):
        return False
    for w in iter_bits(mask):
        if dominating_mask(g, mask & ~(1 << w)):
            return False
    return True


def secure_dominating_mask(g: FlowerSnark, mask: int) -> bool:
    if not dominating_mask(g, mask):
        return False
    opens = g.open_masks
    for v in iter_bits(g.full_mask & ~mask):
        for w in iter_bits(opens[v] & mask):
            if dominating_mask(g, (mask & ~(1 << w)) | (1 << v)):
                break
        else:
            return False
    return True


def undefended_mask(g: FlowerSnark, ones: int, twos: int) -> int:
    positive = ones | twos
    return g.full_mask & ~positive & ~open_cover_mask(g, positive)


def roman_mask(g: FlowerSnark, ones: int, twos: int) -> bool:
    zeros = g.full_mask & ~(ones | twos)
    return zeros & ~open_cover_mask(g, twos) == 0


def weak_roman_mask(g: FlowerSnark, ones: int, twos: int) -> bool:
    opens = g.open_masks
    positive = ones | twos
    for v in iter_bits(g.full_mask & ~positive):
        vbit = 1 << v
        for w in iter_bits(opens[v] & positive):
            wbit = 1 << w
            # move one guard w -> v
            if twos & wbit:
                new_ones, new_twos = ones | wbit | vbit, twos & ~wbit
            else:
                new_ones, new_twos = (ones & ~wbit) | vbit, twos
            if undefended_mask(g, new_ones, new_twos) == 0:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------- public API


def is_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    _check_universe(g, s.universe)
    return dominating_mask(g, s.mask)


def is_independent_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    _check_universe(g, s.universe)
    return independent_dominating_mask(g, s.mask)


def is_2_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    _check_universe(g, s.universe)
    return two_dominating_mask(g, s.mask)


def is_total_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    _check_universe(g, s.universe)
    return total_dominating_mask(g, s.mask)


def is_connected_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    _check_universe(g, s.universe)
    return connected_dominating_mask(g, s.mask)


def is_minimal_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    """Dominating, and no single member can be dropped.

    Single removals suffice because supersets of dominating sets dominate.
    """
    _check_universe(g, s.universe)
    return minimal_dominating_mask(g, s.mask)


def is_secure_dominating(g: FlowerSnark, s: VertexSet) -> bool:
    _check_universe(g, s.universe)
    return secure_dominating_mask(g, s.mask)


def is_roman_function(g: FlowerSnark, f: GuardFunction) -> bool:
    _check_universe(g, f.universe)
    return roman_mask(g, *f.masks())


def undefended_set(g: FlowerSnark, f: GuardFunction) -> VertexSet:
    _check_universe(g, f.universe)
    return VertexSet(undefended_mask(g, *f.masks()), g.num_vertices)


def is_weak_roman_function(g: FlowerSnark, f: GuardFunction) -> bool:
    """Every zero vertex can receive a guard from a neighbour without leaving
    any vertex undefended.  Only neighbours holding at least one guard may move."""
    _check_universe(g, f.universe)
    return weak_roman_mask(g, *f.masks())


SET_PREDICATES = {
    Variant.DOMINATION: dominating_mask,
    Variant.INDEPENDENT: independent_dominating_mask,
    Variant.TWO_DOMINATION: two_dominating_mask,
    Variant.TOTAL: total_dominating_mask,
    Variant.CONNECTED: connected_dominating_mask,
    Variant.MINIMAL: minimal_dominating_mask,
    Variant.UPPER: minimal_dominating_mask,
    Variant.SECURE: secure_dominating_mask,
}

GUARD_PREDICATES = {
    Variant.ROMAN: roman_mask,
    Variant.WEAK_ROMAN: weak_roman_mask,
}


def validate(g: FlowerSnark, variant: Variant | str, candidate: VertexSet | GuardFunction) -> bool:
    variant = Variant(variant)
    if variant.takes_guards:
        if not isinstance(candidate, GuardFunction):
            raise TypeError(f"{variant} expects a GuardFunction")
        _check_universe(g, candidate.universe)
        return GUARD_PREDICATES[variant](g, *candidate.masks())
    if not isinstance(candidate, VertexSet):
        raise TypeError(f"{variant} expects a VertexSet")
    _check_universe(g, candidate.universe)
    return SET_PREDICATES[variant](g, candidate.mask)


def guard_copy_weights(n: int, f: GuardFunction) -> tuple[int, ...]:
    return tuple(sum(f.values[4 * i : 4 * i + 4]) for i in range(n))


def _parse_pattern(pattern: str | Iterable[int]) -> tuple[int, ...]:
    if isinstance(pattern, str):
        return tuple(int(ch) for ch in pattern)
    return tuple(pattern)


def has_cyclic_pattern(
    weights: Sequence[int], pattern: str | Iterable[int], cyclic: bool = True
) -> bool:
    """Whether ``pattern`` occurs in ``weights`` as consecutive entries, read
    forwards or backwards.  With ``cyclic`` the weight vector wraps around."""
    pat = _parse_pattern(pattern)
    w = tuple(weights)
    n, m = len(w), len(pat)
    if m > n:
        raise ValueError(f"pattern of length {m} longer than weight vector of length {n}")
    if m == 0:
        return True
    starts = range(n) if cyclic else range(n - m + 1)
    for p in (pat, pat[::-1]):
        for s in starts:
            if all(w[(s + j) % n] == p[j] for j in range(m)):
                return True
    return False
