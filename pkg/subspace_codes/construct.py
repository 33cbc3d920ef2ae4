"""Code constructions: lifted Gabidulin codes, spreads, Echelon-Ferrers unions
and distance-preserving extensions."""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .codes import SubspaceCode, min_distance
from .exceptions import ParameterError, PreconditionError
from .grassmann import (
    GrassmannTable,
    dims_from_counts,
    distances,
    grassmannian,
    intersection_dims,
    mask_array,
)
from .linalg2 import (
    BitMatrix,
    ExtFieldCtx,
    MAX_EXTENSION_DEGREE,
    Subspace,
    bits_to_str,
    rank_of,
    str_to_bits,
)

logger = logging.getLogger(__name__)

MAX_CODE_SIZE = 1 << 20
MAX_FERRERS_CELLS = 10
DEFAULT_MAX_NODES = 2_000_000


@dataclass(frozen=True)
class GabidulinSpec:
    """Parameters of the lifted Gabidulin code G_{v,k,delta}.

    The k-dimensional F_2-subspace W of F_{2^n} is spanned by the first k
    powers of the polynomial-basis generator, so codes are reproducible
    bit for bit for a given modulus.
    """

    v: int
    k: int
    delta: int
    modulus: int | None = None

    def __post_init__(self):
        if not 1 <= self.delta <= self.k or 2 * self.k > self.v:
            raise ParameterError(f'need 1 <= delta <= k <= v/2, got v={self.v} k={self.k} delta={self.delta}')
        if self.n > MAX_EXTENSION_DEGREE:
            raise ParameterError(f'v-k={self.n} exceeds the largest supported extension degree {MAX_EXTENSION_DEGREE}')
        if self.expected_size > MAX_CODE_SIZE:
            raise ParameterError(f'{self.expected_size} codewords is too many to materialize')

    @property
    def n(self) -> int:
        return self.v - self.k

    @cached_property
    def ctx(self) -> ExtFieldCtx:
        return ExtFieldCtx(self.n, self.modulus)

    @property
    def expected_size(self) -> int:
        return 2 ** ((self.k - self.delta + 1) * self.n)

    @property
    def expected_distance(self) -> int:
        return 2 * self.delta

    @property
    def exact_cover_dim(self) -> int:
        return self.k - self.delta + 1

    @property
    def point_multiplicity(self) -> int:
        return 2 ** (self.n * (self.k - self.delta))


def gabidulin_matrices(spec: GabidulinSpec) -> list[BitMatrix]:
    """The k x n matrices of the Gabidulin code, one per linearized polynomial of q-degree <= k-delta."""
    ctx = spec.ctx
    gf = ctx.field
    m = spec.k - spec.delta + 1
    basis = gf(np.array([1 << i for i in range(spec.k)], dtype=np.int64))
    powers = gf(np.stack([np.asarray(basis ** (1 << j), dtype=np.int64) for j in range(m)]))
    coeffs = np.array(list(product(range(ctx.order), repeat=m)), dtype=np.int64)
    values = np.asarray(gf(coeffs) @ powers, dtype=np.int64)
    return [BitMatrix(spec.n, tuple(int(x) for x in row)) for row in values]


def lift(matrices: Iterable[BitMatrix], min_rank_distance: int | None = None) -> SubspaceCode:
    """Map each k x n matrix M to the row space of (I_k | M)."""
    matrices = list(matrices)
    if not matrices:
        raise ParameterError('nothing to lift')
    k, n = matrices[0].nrows, matrices[0].v
    for m in matrices:
        if m.nrows != k or m.v != n:
            raise ParameterError('all lifted matrices must share one shape')
    if len(set(matrices)) != len(matrices):
        raise ParameterError('duplicate matrices')
    if min_rank_distance is not None:
        for a, b in combinations(matrices, 2):
            if rank_of((x ^ y for x, y in zip(a.rows, b.rows)), n) < min_rank_distance:
                raise ParameterError(f'matrices {a} and {b} are closer than rank distance {min_rank_distance}')
    v = k + n
    words = [Subspace(v, tuple((1 << (v - 1 - i)) | row for i, row in enumerate(m.rows))) for m in matrices]
    return SubspaceCode(v, frozenset(words))


def gabidulin(spec: GabidulinSpec) -> SubspaceCode:
    code = lift(gabidulin_matrices(spec))
    logger.info('lifted Gabidulin code v=%d k=%d delta=%d: M=%d', spec.v, spec.k, spec.delta, code.M)
    return code


def special_subspace(v: int, k: int) -> Subspace:
    """S = {0} x F_2^{v-k}, the subspace every lifted codeword meets trivially."""
    return Subspace(v, tuple(1 << (v - k - 1 - j) for j in range(v - k)))


def cover_count(lmrd: SubspaceCode, s: Subspace, t: int) -> dict[int, int]:
    """Histogram: number of codewords containing a t-subspace -> how many such t-subspaces.

    Only t-subspaces meeting ``s`` trivially are counted.
    """
    top = max((w.k for w in lmrd.words), default=0)
    if not 0 <= t <= top:
        raise ParameterError(f't={t} outside 0..{top}')
    table = grassmannian(lmrd.v, t)
    disjoint = intersection_dims(s, table) == 0
    full = (1 << t) - 1
    counts = np.zeros(len(table), dtype=np.int64)
    for w in lmrd.words:
        inside = np.bitwise_count(table.masks & mask_array(w)).sum(axis=1, dtype=np.int64)
        counts += inside == full
    return dict(sorted(Counter(counts[disjoint].tolist()).items()))


def spread(v: int) -> SubspaceCode:
    """Desarguesian spread: the lifted Gabidulin code G_{v,m,m} plus its special subspace."""
    if v % 2 or not 2 <= v <= 2 * MAX_EXTENSION_DEGREE:
        raise ParameterError(f'spreads need an even v in 2..{2 * MAX_EXTENSION_DEGREE}, got {v}')
    m = v // 2
    return gabidulin(GabidulinSpec(v, m, m)).union([special_subspace(v, m)])


@dataclass(frozen=True)
class PivotProfile:
    v: int
    pivots: int
    target: int | None = None

    def __post_init__(self):
        if not 0 <= self.pivots < 1 << self.v:
            raise ParameterError(f'pivot vector does not fit in {self.v} bits')

    @classmethod
    def from_string(cls, text: str, target: int | None = None) -> 'PivotProfile':
        return cls(len(text), str_to_bits(text), target)

    @property
    def k(self) -> int:
        return self.pivots.bit_count()

    @property
    def pivot_columns(self) -> list[int]:
        return [b for b in range(self.v - 1, -1, -1) if self.pivots >> b & 1]

    @property
    def free_columns(self) -> list[int]:
        return [b for b in range(self.v - 1, -1, -1) if not self.pivots >> b & 1]

    @property
    def ferrers(self) -> tuple[int, ...]:
        """Free cells per row: non-pivot columns right of that row's pivot."""
        return tuple(sum(1 for b in self.free_columns if b < p) for p in self.pivot_columns)

    @property
    def cells(self) -> list[tuple[int, int]]:
        return [(i, b) for i, p in enumerate(self.pivot_columns) for b in self.free_columns if b < p]

    @property
    def is_rectangle(self) -> bool:
        return all(f == self.v - self.k for f in self.ferrers)

    def __str__(self):
        return bits_to_str(self.pivots, self.v)


PROFILES_8_5 = (
    PivotProfile(8, 0b11110000, 256),
    PivotProfile(8, 0b01001100, 4),
    PivotProfile(8, 0b10101011, 2),
    PivotProfile(8, 0b00010111, 1),
)


@dataclass(frozen=True)
class EchelonFerrersResult:
    code: SubspaceCode
    profiles: tuple[PivotProfile, ...]
    achieved: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.achieved)

    @property
    def shortfalls(self) -> list[PivotProfile]:
        return [p for p, n in zip(self.profiles, self.achieved) if p.target is not None and n < p.target]


def _rectangle_fill(p: PivotProfile, delta: int) -> list[tuple[int, ...]]:
    k, n, v = p.k, p.v - p.k, p.v
    if delta > min(k, n):
        mats = [BitMatrix(n, (0,) * k)]
    elif k <= n:
        mats = gabidulin_matrices(GabidulinSpec(v, k, delta))
    else:
        mats = [m.transpose() for m in gabidulin_matrices(GabidulinSpec(v, n, delta))]
    if p.target is not None:
        mats = mats[:p.target]
    return [tuple((1 << (v - 1 - i)) | row for i, row in enumerate(m.rows)) for m in mats]


def _ferrers_candidates(p: PivotProfile) -> Iterable[tuple[int, ...]]:
    cells = p.cells
    base = [1 << c for c in p.pivot_columns]
    for t in range(1 << len(cells)):
        rows = list(base)
        for j, (i, b) in enumerate(cells):
            if t >> j & 1:
                rows[i] |= 1 << b
        yield tuple(rows)


def _close(a: tuple[int, ...], b: tuple[int, ...], delta: int, width: int) -> bool:
    return rank_of((x ^ y for x, y in zip(a, b)), width) < delta


def _greedy_fill(p: PivotProfile, delta: int) -> list[tuple[int, ...]]:
    chosen: list[tuple[int, ...]] = []
    for cand in _ferrers_candidates(p):
        if all(not _close(cand, c, delta, p.v) for c in chosen):
            chosen.append(cand)
            if p.target is not None and len(chosen) >= p.target:
                break
    return chosen


def _backtrack_fill(p: PivotProfile, delta: int, max_nodes: int) -> list[tuple[int, ...]]:
    cands = list(_ferrers_candidates(p))
    n = len(cands)
    compat = [0] * n
    for i, j in combinations(range(n), 2):
        if not _close(cands[i], cands[j], delta, p.v):
            compat[i] |= 1 << j
    target = p.target if p.target is not None else n
    best: list[int] = []
    chosen: list[int] = []
    # one remaining-candidate bitset per depth
    stack = [(1 << n) - 1]
    nodes = 1
    while stack:
        cand = stack[-1]
        if not cand or len(best) >= target or nodes > max_nodes \
                or len(chosen) + cand.bit_count() <= len(best):
            stack.pop()
            if chosen:
                chosen.pop()
            continue
        j = (cand & -cand).bit_length() - 1
        stack[-1] = cand & (cand - 1)
        chosen.append(j)
        stack.append(stack[-1] & compat[j])
        nodes += 1
        if len(chosen) > len(best):
            best = list(chosen)
    if nodes > max_nodes:
        logger.warning('profile %s: node limit reached with %d of %s', p, len(best), p.target)
    return [cands[j] for j in best]


def echelon_ferrers(profiles: Sequence[PivotProfile], d: int, max_nodes: int = DEFAULT_MAX_NODES) -> EchelonFerrersResult:
    """Union of lifted Ferrers-diagram rank-metric codes over the given pivot vectors."""
    profiles = tuple(profiles)
    if not profiles:
        raise ParameterError('no pivot profiles given')
    v = profiles[0].v
    for a, b in combinations(profiles, 2):
        if a.v != b.v:
            raise ParameterError('pivot vectors of different lengths')
        if (a.pivots ^ b.pivots).bit_count() < d:
            raise ParameterError(f'pivot vectors {a} and {b} are at Hamming distance < {d}')
    delta = (d + 1) // 2
    words: list[Subspace] = []
    achieved = []
    for p in profiles:
        if p.k in (0, p.v):
            rows = [tuple(1 << c for c in p.pivot_columns)]
        elif p.is_rectangle:
            rows = _rectangle_fill(p, delta)
        elif len(p.cells) <= MAX_FERRERS_CELLS:
            rows = _backtrack_fill(p, delta, max_nodes)
        else:
            rows = _greedy_fill(p, delta)
        if p.target is not None and len(rows) < p.target:
            logger.warning('profile %s reached %d of target %d', p, len(rows), p.target)
        achieved.append(len(rows))
        words.extend(Subspace(v, r) for r in rows)
        logger.info('profile %s ferrers=%s filled with %d subspaces', p, p.ferrers, len(rows))
    return EchelonFerrersResult(SubspaceCode(v, frozenset(words)), profiles, tuple(achieved))


def _compatible_rows(masks: np.ndarray, k: int, c: SubspaceCode, d: int) -> np.ndarray:
    idx = np.arange(len(masks))
    for wm, wk in zip(c.masks, c.dims):
        if not len(idx):
            break
        counts = np.bitwise_count(masks[idx] & wm).sum(axis=1, dtype=np.int64)
        idx = idx[k + wk - 2 * dims_from_counts(counts) >= d]
    return idx


def compatible_indices(c: SubspaceCode, table: GrassmannTable, d: int, threads: int = 1) -> np.ndarray:
    """Indices into ``table`` of subspaces at distance >= d from every codeword."""
    if threads <= 1 or len(table) < 4096:
        return _compatible_rows(table.masks, table.k, c, d)
    bounds = np.linspace(0, len(table), threads + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(
            lambda lo_hi: lo_hi[0] + _compatible_rows(table.masks[lo_hi[0]:lo_hi[1]], table.k, c, d),
            zip(bounds[:-1], bounds[1:]),
        ))
    return np.concatenate(parts)


def compatible_extensions(c: SubspaceCode, d: int, dims: Iterable[int], threads: int = 1) -> list[Subspace]:
    """Every subspace with dimension in ``dims`` that could join ``c`` on its own, canonical order."""
    out: list[Subspace] = []
    for k in sorted(set(dims)):
        table = grassmannian(c.v, k)
        out.extend(table.subspaces[i] for i in compatible_indices(c, table, d, threads))
    logger.info('%d single-subspace extensions at distance >= %d', len(out), d)
    return out


def extend_greedy(c: SubspaceCode, d: int, dims: Iterable[int], threads: int = 1) -> SubspaceCode:
    """Add candidates first-fit in canonical order until no further one fits."""
    if min_distance(c) < d:
        raise PreconditionError(f'input code already has minimum distance below {d}')
    words = set(c.words)
    current = c
    for k in sorted(set(dims)):
        table = grassmannian(c.v, k)
        alive = np.zeros(len(table), dtype=bool)
        alive[compatible_indices(current, table, d, threads)] = True
        for i in np.flatnonzero(alive):
            if not alive[i]:
                continue
            u = table.subspaces[i]
            words.add(u)
            alive &= distances(u, table) >= d
        current = SubspaceCode(c.v, frozenset(words))
    logger.info('greedy extension added %d codewords', current.M - c.M)
    return current
