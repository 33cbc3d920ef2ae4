"""Divisible multisets of points and extendability of lifted MRD codes in F_2^8."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from .codes import SubspaceCode, point_degrees
from .construct import GabidulinSpec, gabidulin, special_subspace
from .exceptions import CodeFormatError, MultiplicityError, OutOfScopeError, ParameterError, PreconditionError
from .grassmann import grassmannian, mask_array
from .linalg2 import Subspace, bits_to_str, intersection_dim, rank_of, str_to_bits

logger = logging.getLogger(__name__)

MAX_ENUMERATION = 10_000_000
ENUMERATION_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class PointMultiset:
    """chi[x] is the multiplicity of the point spanned by the nonzero vector x."""

    v: int
    chi: np.ndarray

    def __post_init__(self):
        chi = np.array(self.chi, dtype=np.int64)
        if chi.shape != (1 << self.v,):
            raise ParameterError(f'a multiset on F_2^{self.v} needs {1 << self.v} entries')
        if (chi < 0).any():
            raise ParameterError('multiplicities must be non-negative')
        if chi[0]:
            raise ParameterError('the zero vector is not a point')
        chi.flags.writeable = False
        object.__setattr__(self, 'chi', chi)

    @classmethod
    def zero(cls, v: int) -> 'PointMultiset':
        return cls(v, np.zeros(1 << v, dtype=np.int64))

    @classmethod
    def of_subspace(cls, s: Subspace, multiplicity: int = 1) -> 'PointMultiset':
        chi = np.zeros(1 << s.v, dtype=np.int64)
        chi[list(s.vectors[1:])] = multiplicity
        return cls(s.v, chi)

    @classmethod
    def from_points(cls, v: int, points: Mapping[int, int]) -> 'PointMultiset':
        chi = np.zeros(1 << v, dtype=np.int64)
        for x, m in points.items():
            chi[x] += m
        return cls(v, chi)

    @property
    def cardinality(self) -> int:
        return int(self.chi.sum())

    def __len__(self):
        return self.cardinality

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.chi))

    @property
    def max_multiplicity(self) -> int:
        return int(self.chi.max())

    def __getitem__(self, x: int) -> int:
        return int(self.chi[x])

    def items(self) -> Iterator[tuple[int, int]]:
        for x in self.support:
            yield x, int(self.chi[x])

    def _same_space(self, other: 'PointMultiset') -> None:
        if not isinstance(other, PointMultiset):
            raise TypeError(f'cannot combine a point multiset with {type(other).__name__}')
        if other.v != self.v:
            raise ParameterError(f'multisets live in F_2^{self.v} and F_2^{other.v}')

    def __add__(self, other: 'PointMultiset') -> 'PointMultiset':
        self._same_space(other)
        return PointMultiset(self.v, self.chi + other.chi)

    def __sub__(self, other: 'PointMultiset') -> 'PointMultiset':
        self._same_space(other)
        return PointMultiset(self.v, self.chi - other.chi)

    def __mul__(self, factor: int) -> 'PointMultiset':
        if factor < 0:
            raise ParameterError('multiplicities must be non-negative')
        return PointMultiset(self.v, self.chi * int(factor))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PointMultiset):
            return NotImplemented
        return self.v == other.v and np.array_equal(self.chi, other.chi)

    __hash__ = None

    def __repr__(self):
        return f'PointMultiset(v={self.v}, cardinality={self.cardinality}, support={len(self.support)})'


def points_of_code(c: SubspaceCode) -> PointMultiset:
    """Every codeword replaced by its points, counted with multiplicity."""
    return PointMultiset(c.v, point_degrees(c))


@lru_cache(maxsize=None)
def hyperplane_parity(v: int) -> np.ndarray:
    """Row a marks the vectors x with a.x = 1, the complement of the hyperplane a-perp."""
    xs = np.arange(1 << v, dtype=np.uint64)
    rows = np.bitwise_count(np.arange(1, 1 << v, dtype=np.uint64)[:, None] & xs[None, :]) & 1
    return rows.astype(np.int64)


def hyperplane_sums(p: PointMultiset) -> np.ndarray:
    """Number of points (with multiplicity) in each hyperplane, hyperplanes ordered by normal vector."""
    return p.cardinality - hyperplane_parity(p.v) @ p.chi


def is_divisible(p: PointMultiset, r: int) -> bool:
    """True when every hyperplane sees the cardinality modulo 2^r."""
    if r < 0:
        raise ParameterError(f'r must be non-negative, got {r}')
    if r == 0:
        return True
    outside = hyperplane_parity(p.v) @ p.chi
    return bool((outside % (1 << r) == 0).all())


def divisibility_order(p: PointMultiset, limit: int = 16) -> int:
    """Largest r <= ``limit`` such that ``p`` is 2^r-divisible."""
    r = 0
    while r < limit and is_divisible(p, r + 1):
        r += 1
    return r


def complement(p: PointMultiset, level: int) -> PointMultiset:
    """The level-complement: chi'(P) = level - chi(P)."""
    if p.max_multiplicity > level:
        worst = int(np.argmax(p.chi))
        raise MultiplicityError(f'point {bits_to_str(worst, p.v)} has multiplicity {p[worst]} > {level}')
    chi = level - p.chi
    chi[0] = 0
    return PointMultiset(p.v, chi)


def recognize_subspace(p: PointMultiset, r: int) -> Subspace | None:
    """The (r+1)-subspace whose point set is ``p``.

    Returns None unless ``p`` has 2^(r+1) - 1 points and is 2^r-divisible.
    """
    if r < 1 or p.cardinality != (1 << (r + 1)) - 1 or not is_divisible(p, r):
        return None
    support = p.support
    if p.max_multiplicity != 1 or rank_of(support, p.v) != r + 1:
        raise PreconditionError('a divisible multiset of this size must be the point set of a subspace')
    s = Subspace.span(p.v, support)
    if set(s.vectors[1:]) != set(support):
        raise PreconditionError('a divisible multiset of this size must be the point set of a subspace')
    return s


def enumerate_divisible_multisets(v: int, size: int, r: int) -> Iterator[PointMultiset]:
    """Every 2^r-divisible multiset of ``size`` points in F_2^v, by exhaustive search."""
    n_points = (1 << v) - 1
    total = comb(n_points + size - 1, size)
    if total > MAX_ENUMERATION:
        raise OutOfScopeError(f'{total} multisets exceed the enumeration limit {MAX_ENUMERATION}')
    parity = hyperplane_parity(v)
    modulus = 1 << r
    combos = itertools.combinations_with_replacement(range(1, n_points + 1), size)
    checked = found = 0
    while True:
        chunk = list(itertools.islice(combos, ENUMERATION_CHUNK))
        if not chunk:
            break
        picks = np.array(chunk, dtype=np.int64)
        chi = np.zeros((len(picks), 1 << v), dtype=np.int64)
        np.add.at(chi, (np.repeat(np.arange(len(picks)), size), picks.ravel()), 1)
        ok = ((chi @ parity.T) % modulus == 0).all(axis=1)
        checked += len(picks)
        for row in np.flatnonzero(ok):
            found += 1
            yield PointMultiset(v, chi[row])
    logger.info('checked %d multisets of %d points in F_2^%d: %d are 2^%d-divisible', checked, size, v, found, r)


def _check_lmrd_input(c: SubspaceCode, s: Subspace) -> None:
    if c.v != 8 or s.v != 8 or s.k != 4:
        raise PreconditionError('LMRD extension works with solids in F_2^8')
    if any(w.k != 4 for w in c):
        raise PreconditionError('every codeword must be a solid')
    if any(intersection_dim(w, s) for w in c):
        raise PreconditionError('every codeword must meet the special solid trivially')
    if c.M not in (254, 255):
        raise PreconditionError(f'need 254 or 255 codewords, got {c.M}')
    words = c.sorted_words
    masks = c.masks
    for i, w in enumerate(words[:-1]):
        meet = np.bitwise_count(masks[i + 1:] & mask_array(w)).sum(axis=1)
        if (meet > 1).any():
            raise PreconditionError('codewords must pairwise share at most a point')


def missing_lines(c: SubspaceCode, s: Subspace) -> tuple[Subspace, ...]:
    """Lines disjoint from ``s`` contained in no codeword."""
    table = grassmannian(c.v, 2)
    covered = np.zeros(len(table), dtype=bool)
    for w in c:
        covered |= np.bitwise_count(table.masks & mask_array(w)).sum(axis=1) == 3
    touches_s = np.bitwise_count(table.masks & mask_array(s)).sum(axis=1) > 0
    return tuple(table.subspaces[i] for i in np.flatnonzero(~covered & ~touches_s))


def _hole_multiset(c: SubspaceCode, s: Subspace) -> PointMultiset:
    covered = points_of_code(c) + PointMultiset.of_subspace(s, 16)
    return complement(covered, 16)


def _extends(c: SubspaceCode, u: Subspace, s: Subspace) -> bool:
    return intersection_dim(u, s) == 0 and bool((c.distances_from(u) >= 6).all())


def lmrd_extend(c: SubspaceCode, s: Subspace | None = None) -> tuple[Subspace, ...]:
    """Solids completing 254 or 255 solids of a lifted MRD code back to 256.

    The points missed by the code (16-complement with ``s`` filled in) form a
    2^3-divisible multiset of 15 or 30 points, which is the point set of one
    solid or the union of two.
    """
    s = s or special_subspace(8, 4)
    _check_lmrd_input(c, s)
    holes = _hole_multiset(c, s)
    if not is_divisible(holes, 3):
        raise PreconditionError('the uncovered points are not 2^3-divisible')

    if c.M == 255:
        u = recognize_subspace(holes, 3)
        if u is None or not _extends(c, u, s):
            raise PreconditionError('uncovered points do not form an extending solid')
        logger.info('completed 255 solids by %s', u)
        return (u,)

    lines = missing_lines(c, s)
    line_points = PointMultiset.zero(8)
    for line in lines:
        line_points = line_points + PointMultiset.of_subspace(line)
    if len(lines) != 70 or line_points != 7 * holes:
        raise PreconditionError(f'{len(lines)} uncovered lines do not match the 30 uncovered points')

    table = grassmannian(8, 4)
    support = PointMultiset(8, (holes.chi > 0).astype(np.int64))
    first = holes.support[0]
    outside = ~support.chi.astype(bool)
    outside[0] = False
    outside_mask = np.packbits(outside, bitorder='little').view(np.uint64)
    through_first = (table.masks[:, first // 64] >> np.uint64(first % 64)) & np.uint64(1)
    fits = (np.bitwise_count(table.masks & outside_mask).sum(axis=1) == 0) & (through_first == 1)
    for i in np.flatnonzero(fits):
        u = table.subspaces[i]
        rest = holes - PointMultiset.of_subspace(u)
        other = recognize_subspace(rest, 3)
        if other is None or intersection_dim(u, other) > 1:
            continue
        if _extends(c, u, s) and _extends(c, other, s):
            pair = tuple(sorted((u, other)))
            logger.info('completed 254 solids by %s and %s', *pair)
            return pair
    raise PreconditionError('no pair of solids covers the uncovered points')


LISTED_EXTENSIONS = (
    ('00001010', '00000101'),
    ('00000010', '00000001'),
    ('00000100', '00000010', '00000001'),
    ('00001000', '00000100', '00000010', '00000001'),
    ('00010000', '00001000', '00000100', '00000010'),
    ('00010000', '00001000', '00000100', '00000010', '00000001'),
    ('00100000', '00010000', '00001000', '00000100', '00000010', '00000001'),
    ('10010000', '01010000', '00001000', '00000100', '00000010', '00000001'),
)


@dataclass(frozen=True)
class ExtensionCheck:
    subspace: Subspace
    min_distance: int
    meet_special: int

    @property
    def inside_special(self) -> bool:
        return self.meet_special == self.subspace.k

    @property
    def ok(self) -> bool:
        if self.min_distance < 6:
            return False
        return self.subspace.k > 3 or self.inside_special


@dataclass(frozen=True)
class ExtensionReport:
    checks: tuple[ExtensionCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(check.subspace.k for check in self.checks)


def check_extension(code: SubspaceCode, u: Subspace, s: Subspace) -> ExtensionCheck:
    return ExtensionCheck(u, int(code.distances_from(u).min()), intersection_dim(u, s))


def verify_theorem_extensions() -> ExtensionReport:
    """Check the eight single-subspace extensions of the (8,256,6;4) lifted Gabidulin code."""
    code = gabidulin(GabidulinSpec(8, 4, 3))
    s = special_subspace(8, 4)
    checks = tuple(check_extension(code, Subspace.from_strings(rows), s) for rows in LISTED_EXTENSIONS)
    for check in checks:
        logger.debug('extension %s: distance %d, meets S in dimension %d', check.subspace,
                     check.min_distance, check.meet_special)
    return ExtensionReport(checks)


def parse_multiset(text: str, source: str = '<string>') -> PointMultiset:
    v = None
    points: dict[int, int] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('v='):
            try:
                v = int(line[2:])
            except ValueError:
                raise CodeFormatError(f'bad ambient dimension {line[2:]!r}', line_no, source) from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CodeFormatError(f'expected "point multiplicity", got {line!r}', line_no, source)
        word, count = parts
        if v is None:
            v = len(word)
        if len(word) != v:
            raise CodeFormatError(f'point {word!r} does not have {v} coordinates', line_no, source)
        try:
            x, m = str_to_bits(word), int(count)
        except (ValueError, ParameterError):
            raise CodeFormatError(f'bad entry {line!r}', line_no, source) from None
        if x == 0 or m < 0:
            raise CodeFormatError(f'bad entry {line!r}', line_no, source)
        points[x] = points.get(x, 0) + m
    if v is None:
        raise CodeFormatError('empty multiset file needs a "v=<int>" header', None, source)
    return PointMultiset.from_points(v, points)


def read_multiset(path) -> PointMultiset:
    path = Path(path)
    return parse_multiset(path.read_text(encoding='utf-8'), str(path))


def format_multiset(p: PointMultiset) -> str:
    lines = [f'v={p.v}'] + [f'{bits_to_str(x, p.v)} {m}' for x, m in p.items()]
    return '\n'.join(lines) + '\n'


def write_multiset(p: PointMultiset, path) -> Path:
    path = Path(path)
    path.write_text(format_multiset(p), encoding='utf-8')
    return path
