"""Canonical table of the 26 three-hyperedge motifs and triple classification.

A connected triple ``(e_i, e_j, e_k)`` is described by the emptiness of its
seven Venn regions, taken in this order::

    0: e_i - e_j - e_k     4: e_j & e_k - e_i
    1: e_j - e_k - e_i     5: e_k & e_i - e_j
    2: e_k - e_i - e_j     6: e_i & e_j & e_k
    3: e_i & e_j - e_k

The 7-bit pattern is read as a binary number with region 0 as the most
significant bit, so region ``r`` contributes ``1 << (6 - r)``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import ClassificationError

N_MOTIFS = 26
N_REGIONS = 7
OPEN_IDS = tuple(range(17, 23))

EMPTY_HYPEREDGE = "empty-hyperedge"
DUPLICATE_HYPEREDGES = "duplicate-hyperedges"
DISCONNECTED = "disconnected"

# regions that make up each hyperedge, by hyperedge position 0/1/2
_EDGE_REGIONS = ((0, 3, 5, 6), (1, 3, 4, 6), (2, 4, 5, 6))
# pairwise-only region for each unordered position pair
_PAIR_REGION = {(0, 1): 3, (1, 2): 4, (0, 2): 5}


def _bit(region: int) -> int:
    return 1 << (N_REGIONS - 1 - region)


def pattern_from_bits(bits) -> int:
    """Encode a length-7 0/1 vector as a pattern value."""
    if len(bits) != N_REGIONS:
        raise ValueError("pattern needs 7 entries")
    return sum(_bit(r) for r, b in enumerate(bits) if b)


def pattern_to_bits(pattern: int) -> tuple[int, ...]:
    return tuple(int(bool(pattern & _bit(r))) for r in range(N_REGIONS))


def _region_of(members: frozenset) -> int:
    """Region index for a set of hyperedge positions (non-empty)."""
    if len(members) == 3:
        return 6
    if len(members) == 1:
        return next(iter(members))
    return _PAIR_REGION[tuple(sorted(members))]


def _region_permutation(perm: tuple[int, int, int]) -> tuple[int, ...]:
    """Image of each region when hyperedge position ``x`` moves to ``perm[x]``."""
    out = []
    for r in range(N_REGIONS):
        members = frozenset(x for x in range(3) if r in _EDGE_REGIONS[x])
        out.append(_region_of(frozenset(perm[x] for x in members)))
    return tuple(out)


_REGION_PERMS = tuple(_region_permutation(p) for p in itertools.permutations(range(3)))


def permute_pattern(pattern: int, region_perm: tuple[int, ...]) -> int:
    bits = pattern_to_bits(pattern)
    out = [0] * N_REGIONS
    for r, b in enumerate(bits):
        out[region_perm[r]] = b
    return pattern_from_bits(out)


def _nonempty_intersections(bits) -> int:
    count = 0
    for (x, y), only in _PAIR_REGION.items():
        if bits[only] or bits[6]:
            count += 1
    return count


def invalid_reason(pattern: int) -> str | None:
    """Why ``pattern`` cannot describe three distinct connected hyperedges."""
    bits = pattern_to_bits(pattern)
    for regions in _EDGE_REGIONS:
        if not any(bits[r] for r in regions):
            return EMPTY_HYPEREDGE
    for x, y in ((0, 1), (1, 2), (0, 2)):
        x_minus_y = set(_EDGE_REGIONS[x]) - set(_EDGE_REGIONS[y])
        y_minus_x = set(_EDGE_REGIONS[y]) - set(_EDGE_REGIONS[x])
        if not any(bits[r] for r in x_minus_y | y_minus_x):
            return DUPLICATE_HYPEREDGES
    if _nonempty_intersections(bits) < 2:
        return DISCONNECTED
    return None


@dataclass(frozen=True)
class MotifTable:
    """Lookup from the 128 patterns to motif ids 1..26.

    Attributes:
        lookup: ``int8[128]``; motif id of each pattern, ``0`` when invalid.
        reasons: invalidity reason per pattern (``None`` for valid ones).
        orbits: for motif ``t``, ``orbits[t - 1]`` lists every pattern that
            maps to ``t``; the first entry is the canonical representative.
        open_mask: ``bool[27]``; ``open_mask[t]`` is true for open motifs.
    """

    lookup: np.ndarray
    reasons: tuple
    orbits: tuple
    open_mask: np.ndarray

    def motif_id(self, pattern: int) -> int:
        t = int(self.lookup[pattern])
        if t == 0:
            raise ClassificationError(
                f"pattern {pattern_to_bits(pattern)} is invalid: {self.reasons[pattern]}"
            )
        return t

    def is_open(self, t: int) -> bool:
        _check_motif(t)
        return bool(self.open_mask[t])

    def representative(self, t: int) -> int:
        _check_motif(t)
        return self.orbits[t - 1][0]

    @property
    def wedges_per_instance(self) -> np.ndarray:
        """``float[27]`` hyperwedges per instance (2 open, 3 closed, 0 pad)."""
        w = np.where(self.open_mask, 2.0, 3.0)
        w[0] = 0.0
        return w

    def rows(self) -> list[dict]:
        return [
            {
                "motif": t,
                "open": self.is_open(t),
                "pattern": list(pattern_to_bits(self.representative(t))),
                "pattern_value": self.representative(t),
                "orbit": list(self.orbits[t - 1]),
            }
            for t in range(1, N_MOTIFS + 1)
        ]


def _check_motif(t: int) -> None:
    if not 1 <= t <= N_MOTIFS:
        raise ValueError(f"motif id must lie in 1..{N_MOTIFS}, got {t}")


def build_motif_table() -> MotifTable:
    """Enumerate all 128 patterns, filter invalid ones and number the orbits.

    Open orbits (exactly two non-empty pairwise intersections) receive ids
    17..22, closed orbits receive 1..16 and 23..26; within each group ids
    follow the ascending minimal pattern value of the orbit.
    """
    reasons = tuple(invalid_reason(p) for p in range(1 << N_REGIONS))
    orbit_of: dict[int, tuple[int, ...]] = {}
    for p in range(1 << N_REGIONS):
        if reasons[p] is not None or p in orbit_of:
            continue
        images = sorted({permute_pattern(p, rp) for rp in _REGION_PERMS})
        for q in images:
            assert reasons[q] is None
            orbit_of[q] = tuple(images)
    orbits = sorted(set(orbit_of.values()))
    is_open = [_nonempty_intersections(pattern_to_bits(o[0])) == 2 for o in orbits]
    open_orbits = [o for o, op in zip(orbits, is_open) if op]
    closed_orbits = [o for o, op in zip(orbits, is_open) if not op]
    if len(orbits) != N_MOTIFS or len(open_orbits) != len(OPEN_IDS):
        raise AssertionError(
            f"expected 26 orbits / 6 open, got {len(orbits)} / {len(open_orbits)}"
        )
    closed_ids = [t for t in range(1, N_MOTIFS + 1) if t not in OPEN_IDS]
    numbered = sorted(
        list(zip(closed_ids, closed_orbits)) + list(zip(OPEN_IDS, open_orbits))
    )
    lookup = np.zeros(1 << N_REGIONS, dtype=np.int8)
    for t, orbit in numbered:
        lookup[list(orbit)] = t
    open_mask = np.zeros(N_MOTIFS + 1, dtype=bool)
    open_mask[list(OPEN_IDS)] = True
    lookup.setflags(write=False)
    open_mask.setflags(write=False)
    return MotifTable(
        lookup=lookup,
        reasons=reasons,
        orbits=tuple(orbit for _, orbit in numbered),
        open_mask=open_mask,
    )


@functools.lru_cache(maxsize=None)
def motif_table() -> MotifTable:
    """Process-wide cached :func:`build_motif_table`."""
    return build_motif_table()


class RegionCardinalities(NamedTuple):
    i_only: int
    j_only: int
    k_only: int
    ij_only: int
    jk_only: int
    ki_only: int
    ijk: int

    @property
    def pattern(self) -> int:
        return pattern_from_bits([c > 0 for c in self])


def regions_from_overlaps(size_i, size_j, size_k, w_ij, w_jk, w_ki, w_ijk) -> RegionCardinalities:
    """Seven region sizes from hyperedge sizes and intersection sizes."""
    return RegionCardinalities(
        size_i - w_ij - w_ki + w_ijk,
        size_j - w_ij - w_jk + w_ijk,
        size_k - w_ki - w_jk + w_ijk,
        w_ij - w_ijk,
        w_jk - w_ijk,
        w_ki - w_ijk,
        w_ijk,
    )


def _pair_overlap(G, P, a: int, b: int) -> int:
    if P is not None:
        w = P.weight(a, b)
        if w is not None:
            return w
        return 0
    return len(G.edge_set(a) & G.edge_set(b))


def _triple_overlap(G, i: int, j: int, k: int) -> int:
    smallest, x, y = sorted((i, j, k), key=lambda e: len(G.edge(e)))
    sx, sy = G.edge_set(x), G.edge_set(y)
    return sum(1 for v in G.edge(smallest).tolist() if v in sx and v in sy)


def region_cardinalities(G, P, i: int, j: int, k: int) -> RegionCardinalities:
    """Region sizes of ``(e_i, e_j, e_k)`` by inclusion-exclusion.

    Pairwise overlaps come from the projection ``P`` (or from the member sets
    when ``P`` is ``None``); the triple overlap is found by probing the
    smallest hyperedge against the other two.
    """
    if len({i, j, k}) != 3:
        raise ClassificationError(f"hyperedge ids must be distinct, got {(i, j, k)}")
    for e in (i, j, k):
        if not 0 <= e < G.n_edges:
            raise ClassificationError(f"hyperedge id {e} out of range")
    w_ij = _pair_overlap(G, P, i, j)
    w_jk = _pair_overlap(G, P, j, k)
    w_ki = _pair_overlap(G, P, k, i)
    if (w_ij > 0) + (w_jk > 0) + (w_ki > 0) < 2:
        raise ClassificationError(f"hyperedges {(i, j, k)} are not connected")
    w_ijk = _triple_overlap(G, i, j, k) if min(w_ij, w_jk, w_ki) > 0 else 0
    sizes = G.sizes
    return regions_from_overlaps(
        int(sizes[i]), int(sizes[j]), int(sizes[k]), w_ij, w_jk, w_ki, w_ijk
    )


def classify_triple(G, P, i: int, j: int, k: int) -> int:
    """Motif id (1..26) of the connected hyperedge triple ``{e_i, e_j, e_k}``.

    Raises:
        ClassificationError: repeated ids, disconnected or duplicated hyperedges.
    """
    regions = region_cardinalities(G, P, i, j, k)
    return motif_table().motif_id(regions.pattern)
