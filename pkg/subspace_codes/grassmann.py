"""Counting and enumeration over the projective geometry PG(v-1, F_2).

Subspaces are always produced in the canonical order: dimension, then the
pivot vector read as an integer, then the rref rows. Cached tables keep each
Grassmannian together with a numpy array of point masks so that intersection
dimensions against a whole Grassmannian are one vectorised popcount.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

import numpy as np

from .exceptions import ParameterError
from .linalg2 import MAX_WIDTH, Subspace, dual

logger = logging.getLogger(__name__)


def gaussian_binomial(v: int, k: int, q: int = 2) -> int:
    if q < 2:
        raise ParameterError(f'q must be at least 2, got {q}')
    if not 0 <= k <= v:
        raise ParameterError(f'k={k} outside 0..{v}')
    num = den = 1
    for i in range(k):
        num *= q ** (v - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def count_all_subspaces(v: int, q: int = 2) -> int:
    return sum(gaussian_binomial(v, k, q) for k in range(v + 1))


def _deposit(t: int, positions: list[int]) -> int:
    out = 0
    for j, pos in enumerate(positions):
        if t >> j & 1:
            out |= 1 << pos
    return out


def _pivot_masks(v: int, k: int) -> list[int]:
    return sorted(sum(1 << b for b in combo) for combo in combinations(range(v), k))


class GrassmannIter:
    """Single-pass iterator over G[v,k]_2 in canonical order."""

    def __init__(self, v: int, k: int):
        if not 1 <= v <= MAX_WIDTH:
            raise ParameterError(f'ambient width must be in 1..{MAX_WIDTH}, got {v}')
        if not 0 <= k <= v:
            raise ParameterError(f'k={k} outside 0..{v}')
        self.v = v
        self.k = k
        self._gen = self._generate()

    def __iter__(self):
        return self

    def __next__(self) -> Subspace:
        return next(self._gen)

    def __len__(self):
        return gaussian_binomial(self.v, self.k)

    def _generate(self) -> Iterator[Subspace]:
        v = self.v
        for mask in _pivot_masks(v, self.k):
            pivots = [b for b in range(v - 1, -1, -1) if mask >> b & 1]
            free_cols = [b for b in range(v) if not mask >> b & 1]
            per_row = []
            for p in pivots:
                free = [b for b in free_cols if b < p]
                per_row.append([(1 << p) | _deposit(t, free) for t in range(1 << len(free))])
            for rows in product(*per_row):
                yield Subspace(v, rows)


def enumerate_subspaces(v: int, k: int) -> GrassmannIter:
    return GrassmannIter(v, k)


def mask_words(v: int) -> int:
    return max(1, (1 << v) // 64)


def mask_array(s: Subspace) -> np.ndarray:
    """Point mask of ``s`` split into 64-bit words, low word first."""
    m = s.point_mask
    return np.array([(m >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(mask_words(s.v))], dtype=np.uint64)


def span_vectors(rows: np.ndarray) -> np.ndarray:
    """All 2^k vectors of each row's span; ``rows`` has shape (N, k)."""
    n, k = rows.shape
    vecs = np.zeros((n, 1 << k), dtype=np.int64)
    for j in range(k):
        step = 1 << j
        vecs[:, step:2 * step] = vecs[:, :step] ^ rows[:, [j]]
    return vecs


def masks_from_rows(rows: np.ndarray, v: int) -> np.ndarray:
    vecs = span_vectors(rows)
    n = vecs.shape[0]
    masks = np.zeros((n, mask_words(v)), dtype=np.uint64)
    idx = np.arange(n)
    one = np.uint64(1)
    for c in range(1, vecs.shape[1]):
        x = vecs[:, c]
        masks[idx, x >> 6] |= np.left_shift(one, (x & 63).astype(np.uint64))
    return masks


def dims_from_counts(counts: np.ndarray) -> np.ndarray:
    # a subspace of dimension i has 2^i - 1 nonzero vectors
    return np.rint(np.log2(np.asarray(counts, dtype=np.float64) + 1)).astype(np.int64)


@dataclass(frozen=True, eq=False)
class GrassmannTable:
    v: int
    k: int
    subspaces: tuple[Subspace, ...]
    rows: np.ndarray
    masks: np.ndarray
    index: dict

    def __len__(self):
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def position(self, s: Subspace) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise ParameterError(f'{s} is not a {self.k}-subspace of F_2^{self.v}') from None


@lru_cache(maxsize=None)
def grassmannian(v: int, k: int) -> GrassmannTable:
    subspaces = tuple(GrassmannIter(v, k))
    rows = np.array([s.rows for s in subspaces], dtype=np.int64).reshape(len(subspaces), k)
    masks = masks_from_rows(rows, v)
    logger.debug('built G[%d,%d] table with %d subspaces', v, k, len(subspaces))
    return GrassmannTable(v, k, subspaces, rows, masks, {s: i for i, s in enumerate(subspaces)})


def all_subspaces(v: int) -> Iterator[Subspace]:
    for k in range(v + 1):
        yield from grassmannian(v, k).subspaces


def canonical_index(s: Subspace) -> int:
    """Position of ``s`` among all subspaces of F_2^v in canonical order."""
    offset = sum(gaussian_binomial(s.v, j) for j in range(s.k))
    return offset + grassmannian(s.v, s.k).position(s)


def subspace_at(v: int, index: int) -> Subspace:
    for k in range(v + 1):
        size = gaussian_binomial(v, k)
        if index < size:
            return grassmannian(v, k).subspaces[index]
        index -= size
    raise ParameterError(f'no subspace of F_2^{v} with that canonical index')


def intersection_dims(s: Subspace, table: GrassmannTable) -> np.ndarray:
    counts = np.bitwise_count(table.masks & mask_array(s)).sum(axis=1, dtype=np.int64)
    return dims_from_counts(counts)


def distances(s: Subspace, table: GrassmannTable) -> np.ndarray:
    return s.k + table.k - 2 * intersection_dims(s, table)


def incident(a: Subspace, b: Subspace) -> bool:
    if a.k <= b.k:
        return b.contains(a)
    return a.contains(b)


def ball(center: Subspace, r: int) -> tuple[Subspace, ...]:
    if not 0 <= r <= center.v:
        raise ParameterError(f'radius {r} outside 0..{center.v}')
    out: list[Subspace] = []
    for k in range(max(0, center.k - r), min(center.v, center.k + r) + 1):
        table = grassmannian(center.v, k)
        hits = np.flatnonzero(distances(center, table) <= r)
        out.extend(table.subspaces[i] for i in hits)
    return tuple(out)


def subspaces_contained(w: Subspace, k: int) -> tuple[Subspace, ...]:
    if not 0 <= k <= w.k:
        raise ParameterError(f'no {k}-subspaces inside a {w.k}-subspace')
    if w.k == 0:
        return (w,)
    found = []
    for coords in GrassmannIter(w.k, k):
        vecs = []
        for x in coords.rows:
            vec = 0
            for j, row in enumerate(w.rows):
                if x >> (w.k - 1 - j) & 1:
                    vec ^= row
            vecs.append(vec)
        found.append(Subspace.span(w.v, vecs))
    return tuple(sorted(found))


def subspaces_containing(w: Subspace, k: int) -> tuple[Subspace, ...]:
    if not w.k <= k <= w.v:
        raise ParameterError(f'no {k}-subspaces contain a {w.k}-subspace')
    return tuple(sorted(dual(u) for u in subspaces_contained(dual(w), w.v - k)))


def points(v: int) -> tuple[Subspace, ...]:
    return grassmannian(v, 1).subspaces


def hyperplanes(v: int) -> tuple[Subspace, ...]:
    return grassmannian(v, v - 1).subspaces


def sorted_subspaces(items: Iterable[Subspace]) -> list[Subspace]:
    return sorted(items, key=lambda s: s.sort_key)
