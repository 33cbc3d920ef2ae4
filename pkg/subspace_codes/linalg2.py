"""Exact linear algebra over GF(2) on bit-packed rows, plus extension fields.

Row vectors are plain ints. Coordinate 1 (the leftmost column of a matrix)
is the most significant of the ``v`` bits, so with ``v=4`` the first unit
vector is ``0b1000``. Files written by this package rely on that convention.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

import galois
import numpy as np

from .exceptions import (
    AmbientMismatchError,
    FieldRangeError,
    ParameterError,
)

logger = logging.getLogger(__name__)

MAX_WIDTH = 16
MAX_EXTENSION_DEGREE = 8


def bits_to_str(x: int, v: int) -> str:
    return format(x, f'0{v}b') if v else ''


def str_to_bits(text: str) -> int:
    if not text or set(text) - {'0', '1'}:
        raise ParameterError(f'not a binary row: {text!r}')
    return int(text, 2)


def _check_width(v: int) -> None:
    if not 1 <= v <= MAX_WIDTH:
        raise ParameterError(f'ambient width must be in 1..{MAX_WIDTH}, got {v}')


def _check_ambient(x, y) -> None:
    if x.v != y.v:
        raise AmbientMismatchError(x.v, y.v)


def _echelon(rows: Iterable[int], width: int) -> list[int]:
    """Reduced echelon basis of the span of ``rows``, pivots taken from the left."""
    work = [r for r in rows if r]
    basis: list[int] = []
    for col in range(width - 1, -1, -1):
        bit = 1 << col
        pivot = next((i for i, r in enumerate(work) if r & bit), None)
        if pivot is None:
            continue
        p = work.pop(pivot)
        work = [r ^ p if r & bit else r for r in work]
        work = [r for r in work if r]
        basis = [r ^ p if r & bit else r for r in basis]
        basis.append(p)
        if not work:
            break
    return basis


def rank_of(rows: Iterable[int], width: int) -> int:
    return len(_echelon(rows, width))


def _reduce(x: int, basis: Sequence[int]) -> int:
    for r in basis:
        if x >> (r.bit_length() - 1) & 1:
            x ^= r
    return x


def vec_mul(x: int, m: 'BitMatrix') -> int:
    """Row vector times matrix; ``x`` has as many coordinates as ``m`` has rows."""
    n = len(m.rows)
    out = 0
    for j, row in enumerate(m.rows):
        if x >> (n - 1 - j) & 1:
            out ^= row
    return out


@dataclass(frozen=True)
class BitMatrix:
    """A general binary matrix with ``v`` columns; rows may be dependent."""

    v: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        _check_width(self.v)
        rows = tuple(int(r) for r in self.rows)
        limit = 1 << self.v
        for r in rows:
            if not 0 <= r < limit:
                raise ParameterError(f'row {r:#x} does not fit in {self.v} bits')
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def from_strings(cls, strings: Iterable[str], v: int | None = None) -> 'BitMatrix':
        strings = [s.strip() for s in strings]
        if v is None:
            if not strings:
                raise ParameterError('cannot infer the width of an empty matrix')
            v = len(strings[0])
        for s in strings:
            if len(s) != v:
                raise ParameterError(f'row {s!r} has width {len(s)}, expected {v}')
        return cls(v, tuple(str_to_bits(s) for s in strings))

    @classmethod
    def identity(cls, v: int) -> 'BitMatrix':
        return cls(v, tuple(1 << (v - 1 - i) for i in range(v)))

    @classmethod
    def from_array(cls, array) -> 'BitMatrix':
        array = np.asarray(array, dtype=np.uint8) & 1
        if array.ndim != 2:
            raise ParameterError('expected a two-dimensional 0/1 array')
        weights = 1 << np.arange(array.shape[1] - 1, -1, -1, dtype=np.int64)
        return cls(array.shape[1], tuple(int(x) for x in array.astype(np.int64) @ weights))

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.v) for r in self.rows]

    def to_array(self) -> np.ndarray:
        shifts = np.arange(self.v - 1, -1, -1)
        rows = np.asarray(self.rows, dtype=np.int64).reshape(-1, 1)
        return ((rows >> shifts) & 1).astype(np.uint8)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.v

    def rank(self) -> int:
        return len(_echelon(self.rows, self.v))

    def transpose(self) -> 'BitMatrix':
        if not self.rows:
            raise ParameterError('cannot transpose a matrix without rows')
        n = self.nrows
        cols = []
        for j in range(self.v):
            shift = self.v - 1 - j
            col = 0
            for i, row in enumerate(self.rows):
                if row >> shift & 1:
                    col |= 1 << (n - 1 - i)
            cols.append(col)
        return BitMatrix(n, tuple(cols))

    def __matmul__(self, other: 'BitMatrix') -> 'BitMatrix':
        if self.v != other.nrows:
            raise ParameterError(f'cannot multiply {self.nrows}x{self.v} by {other.nrows}x{other.v}')
        return BitMatrix(other.v, tuple(vec_mul(r, other) for r in self.rows))

    def __str__(self):
        return ';'.join(self.to_strings()) or '-'


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_2^v held by its reduced row echelon generator matrix."""

    v: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        _check_width(self.v)
        rows = tuple(int(r) for r in self.rows)
        prev = self.v
        pivots = 0
        for r in rows:
            lead = r.bit_length() - 1
            if r <= 0 or lead >= prev:
                raise ParameterError('rows are not in reduced row echelon form; use Subspace.span')
            prev = lead
            pivots |= 1 << lead
        for r in rows:
            if r & pivots != 1 << (r.bit_length() - 1):
                raise ParameterError('rows are not in reduced row echelon form; use Subspace.span')
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def span(cls, v: int, vectors: Iterable[int]) -> 'Subspace':
        _check_width(v)
        vectors = list(vectors)
        if any(not 0 <= x < 1 << v for x in vectors):
            raise ParameterError(f'vector does not fit in {v} bits')
        return cls(v, tuple(_echelon(vectors, v)))

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> 'Subspace':
        return cls.span(m.v, m.rows)

    @classmethod
    def from_strings(cls, strings: Iterable[str], v: int | None = None) -> 'Subspace':
        return cls.from_matrix(BitMatrix.from_strings(strings, v))

    @classmethod
    def zero(cls, v: int) -> 'Subspace':
        return cls(v, ())

    @classmethod
    def full(cls, v: int) -> 'Subspace':
        return cls(v, BitMatrix.identity(v).rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def matrix(self) -> BitMatrix:
        return BitMatrix(self.v, self.rows)

    @cached_property
    def pivot_mask(self) -> int:
        mask = 0
        for r in self.rows:
            mask |= 1 << (r.bit_length() - 1)
        return mask

    @cached_property
    def vectors(self) -> tuple[int, ...]:
        """All 2^k vectors of the span, the zero vector first."""
        vecs = [0]
        for r in reversed(self.rows):
            vecs += [x ^ r for x in vecs]
        return tuple(vecs)

    @cached_property
    def point_mask(self) -> int:
        mask = 0
        for x in self.vectors[1:]:
            mask |= 1 << x
        return mask

    @property
    def sort_key(self) -> tuple:
        return (self.k, self.pivot_mask, self.rows)

    def __lt__(self, other: 'Subspace') -> bool:
        return self.sort_key < other.sort_key

    def __contains__(self, x: int) -> bool:
        return 0 <= x < 1 << self.v and _reduce(x, self.rows) == 0

    def contains(self, other: 'Subspace') -> bool:
        _check_ambient(self, other)
        return other.k <= self.k and all(r in self for r in other.rows)

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.v) for r in self.rows]

    def __str__(self):
        return ';'.join(self.to_strings()) or '-'


def rref(m: BitMatrix) -> tuple[BitMatrix, int]:
    basis = _echelon(m.rows, m.v)
    return BitMatrix(m.v, tuple(basis)), len(basis)


def pivot_vector(s: Subspace) -> int:
    return s.pivot_mask


def meet(x: Subspace, y: Subspace) -> Subspace:
    _check_ambient(x, y)
    v = x.v
    rows = [(r << v) | r for r in x.rows] + [r << v for r in y.rows]
    low = (1 << v) - 1
    basis = _echelon(rows, 2 * v)
    return Subspace.span(v, (r & low for r in basis if r >> v == 0))


def join(x: Subspace, y: Subspace) -> Subspace:
    _check_ambient(x, y)
    return Subspace(x.v, tuple(_echelon(x.rows + y.rows, x.v)))


def intersection_dim(x: Subspace, y: Subspace) -> int:
    _check_ambient(x, y)
    return x.k + y.k - len(_echelon(x.rows + y.rows, x.v))


def subspace_distance(x: Subspace, y: Subspace) -> int:
    _check_ambient(x, y)
    return 2 * len(_echelon(x.rows + y.rows, x.v)) - x.k - y.k


def dual(s: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    basis = []
    for col in range(s.v):
        if s.pivot_mask >> col & 1:
            continue
        vec = 1 << col
        for r in s.rows:
            if r >> col & 1:
                vec |= 1 << (r.bit_length() - 1)
        basis.append(vec)
    return Subspace.span(s.v, basis)


def transform(s: Subspace, g: BitMatrix) -> Subspace:
    """Image of ``s`` under the row-vector action x -> x g."""
    if not g.is_square or g.v != s.v:
        raise AmbientMismatchError(s.v, g.v)
    return Subspace.span(s.v, (vec_mul(r, g) for r in s.rows))


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    return a @ b


def inverse(g: BitMatrix) -> BitMatrix:
    if not g.is_square:
        raise ParameterError('only square matrices have inverses')
    v = g.v
    aug = [(row << v) | (1 << (v - 1 - i)) for i, row in enumerate(g.rows)]
    basis = _echelon(aug, 2 * v)
    if len(basis) < v or any(r >> v == 0 for r in basis):
        raise ParameterError('matrix is singular')
    low = (1 << v) - 1
    return BitMatrix(v, tuple(r & low for r in basis))


def rank_distance(a: BitMatrix, b: BitMatrix) -> int:
    if a.v != b.v or a.nrows != b.nrows:
        raise ParameterError('rank distance needs matrices of equal shape')
    return len(_echelon((x ^ y for x, y in zip(a.rows, b.rows)), a.v))


def gl_order(v: int, q: int = 2) -> int:
    return prod(q ** v - q ** i for i in range(v))


def invertible_matrices(v: int) -> Iterator[BitMatrix]:
    """All of GL(v,2) in lexicographic row order; only offered for v <= 4."""
    if not 1 <= v <= 4:
        raise ParameterError(f'enumerating GL({v},2) is limited to v <= 4')
    full = 1 << v

    def extend(rows, span):
        if len(rows) == v:
            yield BitMatrix(v, tuple(rows))
            return
        for x in range(1, full):
            if x not in span:
                yield from extend(rows + [x], span | {s ^ x for s in span})

    yield from extend([], frozenset({0}))


@lru_cache(maxsize=None)
def default_modulus(n: int) -> int:
    """Lexicographically smallest irreducible binary polynomial of degree n."""
    if not 1 <= n <= MAX_EXTENSION_DEGREE:
        raise FieldRangeError(f'extension degree must be in 1..{MAX_EXTENSION_DEGREE}, got {n}')
    return int(galois.irreducible_poly(2, n, method='min'))


class ExtFieldCtx:
    """Arithmetic in F_{2^n}; elements are n-bit ints in the polynomial basis."""

    def __init__(self, n: int, modulus: int | None = None):
        if not 1 <= n <= MAX_EXTENSION_DEGREE:
            raise FieldRangeError(f'extension degree must be in 1..{MAX_EXTENSION_DEGREE}, got {n}')
        if modulus is None:
            modulus = default_modulus(n)
        poly = galois.Poly.Int(int(modulus))
        if poly.degree != n or not poly.is_irreducible():
            raise FieldRangeError(f'{poly} is not an irreducible polynomial of degree {n}')
        self.n = n
        self.modulus = int(modulus)
        self.order = 1 << n
        if n == 1:
            self.field = galois.GF(2)
        else:
            self.field = galois.GF(self.order, irreducible_poly=poly)

    def __repr__(self):
        return f'ExtFieldCtx(n={self.n}, modulus={self.modulus:#b})'

    def check(self, *values) -> None:
        for value in values:
            arr = np.asarray(value)
            if arr.size and (arr.min() < 0 or arr.max() >= self.order):
                raise FieldRangeError(f'element out of range for F_2^{self.n}: {value}')

    def element(self, value):
        self.check(value)
        return self.field(np.asarray(value, dtype=np.int64))

    def mul(self, a: int, b: int) -> int:
        return int(self.element(a) * self.element(b))

    def frobenius(self, x, i: int = 1):
        """x -> x^(2^i), applied elementwise."""
        return self.element(x) ** (1 << i)


def linpoly_eval(ctx: ExtFieldCtx, coeffs: Sequence[int], x):
    """Evaluate f(x) = sum_i a_i x^(2^i); ``x`` may be an int or an array of ints."""
    if len(coeffs) > ctx.n:
        raise FieldRangeError(f'a linearized polynomial over F_2^{ctx.n} has at most {ctx.n} coefficients')
    ctx.check(*coeffs)
    xs = ctx.element(x)
    total = ctx.field(np.zeros(xs.shape, dtype=np.int64))
    power = xs
    for a in coeffs:
        if a:
            total = total + ctx.field(int(a)) * power
        power = power ** 2
    if np.ndim(total) == 0:
        return int(total)
    return np.asarray(total, dtype=np.int64)
