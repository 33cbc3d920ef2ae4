"""Subspace codes: metric statistics, verification, fingerprints and file I/O."""
from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import astuple, dataclass, field
from functools import cached_property, total_ordering
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .exceptions import (
    AmbientMismatchError,
    CodeFormatError,
    OutOfScopeError,
    ParameterError,
)
from .grassmann import dims_from_counts, mask_array
from .linalg2 import BitMatrix, Subspace, dual, invertible_matrices, str_to_bits, transform

logger = logging.getLogger(__name__)

HEADER_RE = re.compile(r'^v\s*=\s*(\d+)\s+q\s*=\s*2$')


@total_ordering
class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash('INF')

    def __repr__(self):
        return 'INF'

    __str__ = __repr__


INF = _Infinity()


@dataclass(frozen=True)
class DimDistribution:
    counts: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(k for k, n in enumerate(self.counts) if n)

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def reversed(self) -> 'DimDistribution':
        return DimDistribution(self.counts[::-1])

    def __str__(self):
        return '(' + ','.join(map(str, self.counts)) + ')'


@dataclass(frozen=True)
class SubspaceCode:
    v: int
    words: frozenset[Subspace] = frozenset()

    def __post_init__(self):
        words = frozenset(self.words)
        for w in words:
            if w.v != self.v:
                raise AmbientMismatchError(self.v, w.v)
        object.__setattr__(self, 'words', words)

    @classmethod
    def of(cls, v: int, words: Iterable[Subspace]) -> 'SubspaceCode':
        return cls(v, frozenset(words))

    def __len__(self):
        return len(self.words)

    @property
    def M(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.sorted_words)

    def __contains__(self, s: Subspace) -> bool:
        return s in self.words

    @cached_property
    def sorted_words(self) -> tuple[Subspace, ...]:
        return tuple(sorted(self.words))

    @cached_property
    def dim_distribution(self) -> DimDistribution:
        counts = [0] * (self.v + 1)
        for w in self.words:
            counts[w.k] += 1
        return DimDistribution(tuple(counts))

    @cached_property
    def masks(self) -> np.ndarray:
        if not self.words:
            return np.zeros((0, 1), dtype=np.uint64)
        return np.stack([mask_array(w) for w in self.sorted_words])

    @cached_property
    def dims(self) -> np.ndarray:
        return np.array([w.k for w in self.sorted_words], dtype=np.int64)

    def union(self, other: Iterable[Subspace]) -> 'SubspaceCode':
        return SubspaceCode(self.v, self.words | frozenset(other))

    def without(self, other: Iterable[Subspace]) -> 'SubspaceCode':
        return SubspaceCode(self.v, self.words - frozenset(other))

    def dual(self) -> 'SubspaceCode':
        return SubspaceCode(self.v, frozenset(dual(w) for w in self.words))

    def transformed(self, g: BitMatrix) -> 'SubspaceCode':
        return SubspaceCode(self.v, frozenset(transform(w, g) for w in self.words))

    def distances_from(self, s: Subspace) -> np.ndarray:
        """Subspace distance from ``s`` to every codeword, in canonical order."""
        counts = np.bitwise_count(self.masks & mask_array(s)).sum(axis=1, dtype=np.int64)
        return s.k + self.dims - 2 * dims_from_counts(counts)


def _pair_distances(c: SubspaceCode) -> Iterator[tuple[int, np.ndarray]]:
    words = c.sorted_words
    for i in range(len(words) - 1):
        sub = c.masks[i + 1:] & c.masks[i]
        counts = np.bitwise_count(sub).sum(axis=1, dtype=np.int64)
        yield i, words[i].k + c.dims[i + 1:] - 2 * dims_from_counts(counts)


def min_distance(c: SubspaceCode):
    best = INF
    for _, dist in _pair_distances(c):
        low = int(dist.min())
        if best is INF or low < best:
            best = low
    return best


def distance_distribution(c: SubspaceCode) -> dict[int, int]:
    hist: Counter = Counter()
    for _, dist in _pair_distances(c):
        hist.update(dist.tolist())
    return dict(sorted(hist.items()))


@dataclass
class VerifyReport:
    v: int
    M: int
    d: int
    dims: frozenset[int] | None
    min_distance: object
    dim_distribution: DimDistribution
    distance_violations: list[tuple[Subspace, Subspace, int]] = field(default_factory=list)
    dimension_violations: list[Subspace] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.distance_violations and not self.dimension_violations

    def summary(self) -> str:
        status = 'pass' if self.ok else 'FAIL'
        return (f'{status} M={self.M} d={self.min_distance} required_d={self.d} '
                f'dims={self.dim_distribution}')


def verify(c: SubspaceCode, d: int, dims: Iterable[int] | None = None, limit: int = 100) -> VerifyReport:
    """Check that ``c`` is a (v, M, >=d; T) code; at most ``limit`` violations of each kind are listed."""
    allowed = frozenset(dims) if dims is not None else None
    report = VerifyReport(c.v, c.M, d, allowed, min_distance(c), c.dim_distribution)
    if allowed is not None:
        report.dimension_violations = [w for w in c.sorted_words if w.k not in allowed][:limit]
    words = c.sorted_words
    for i, dist in _pair_distances(c):
        for j in np.flatnonzero(dist < d):
            if len(report.distance_violations) >= limit:
                break
            report.distance_violations.append((words[i], words[i + 1 + j], int(dist[j])))
    logger.debug('verified code v=%d M=%d against d=%d: %s', c.v, c.M, d, report.ok)
    return report


def point_degrees(c: SubspaceCode) -> np.ndarray:
    """chi[x] = number of codewords containing the nonzero vector x; chi[0] = 0."""
    chi = np.zeros(1 << c.v, dtype=np.int64)
    for w in c.words:
        chi[list(w.vectors[1:])] += 1
    return chi


@dataclass(frozen=True, order=True)
class Fingerprint:
    v: int
    M: int
    dims: tuple[int, ...]
    distances: tuple[tuple[int, int], ...]
    point_degrees: tuple[int, ...]
    hyperplane_degrees: tuple[int, ...]


def fingerprint(c: SubspaceCode) -> Fingerprint:
    """GL(v,2)-invariant summary; equal fingerprints do not prove isomorphism."""
    return Fingerprint(
        c.v,
        c.M,
        c.dim_distribution.counts,
        tuple(distance_distribution(c).items()),
        tuple(sorted(point_degrees(c)[1:].tolist())),
        # codewords inside the hyperplane x.h = 0 are the codewords whose duals contain h
        tuple(sorted(point_degrees(c.dual())[1:].tolist())),
    )


def fingerprint_with_duality(c: SubspaceCode) -> Fingerprint:
    """Invariant under GL(v,2) and under taking orthogonal complements."""
    return min(fingerprint(c), fingerprint(c.dual()), key=astuple)


def is_isomorphic_bruteforce(c1: SubspaceCode, c2: SubspaceCode, allow_duality: bool = False) -> bool:
    if c1.v != c2.v:
        raise AmbientMismatchError(c1.v, c2.v)
    if c1.v > 4:
        raise OutOfScopeError('brute-force isomorphism testing is limited to v <= 4')
    fp = fingerprint_with_duality if allow_duality else fingerprint
    if fp(c1) != fp(c2):
        return False
    targets = [c2.words]
    if allow_duality:
        targets.append(c2.dual().words)
    for g in invertible_matrices(c1.v):
        image = c1.transformed(g).words
        if any(image == t for t in targets):
            return True
    return False


@dataclass
class ParsedCode:
    code: SubspaceCode
    warnings: list[str]


def _parse_rows(text: str, v: int, line_no: int, source: str) -> list[int]:
    parts = [p.strip() for p in text.split(';')]
    rows = []
    for part in parts:
        if len(part) != v:
            raise CodeFormatError(f'row {part!r} has width {len(part)}, expected {v}', line_no, source)
        try:
            rows.append(str_to_bits(part))
        except ParameterError as exc:
            raise CodeFormatError(str(exc), line_no, source) from None
    return rows


def _read_header(lines: list[str], source: str) -> tuple[int, int]:
    for line_no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        match = HEADER_RE.match(line)
        if not match:
            raise CodeFormatError(f'expected header "v=<int> q=2", got {line!r}', line_no, source)
        v = int(match.group(1))
        if not 1 <= v <= 16:
            raise CodeFormatError(f'ambient dimension {v} outside 1..16', line_no, source)
        return v, line_no
    raise CodeFormatError('missing header line', None, source)


def parse_code(text: str, source: str = '<string>') -> ParsedCode:
    lines = text.splitlines()
    v, header_line = _read_header(lines, source)
    words: dict[Subspace, int] = {}
    warnings: list[str] = []
    for line_no, raw in enumerate(lines[header_line:], header_line + 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if line == '-':
            s = Subspace.zero(v)
        else:
            rows = _parse_rows(line, v, line_no, source)
            s = Subspace.span(v, rows)
            if s.rows != tuple(rows):
                warnings.append(f'{source}:{line_no}: rows not in reduced row echelon form, normalized to {s}')
        if s in words:
            warnings.append(f'{source}:{line_no}: duplicate of the subspace on line {words[s]}, dropped')
            continue
        words[s] = line_no
    for message in warnings:
        logger.warning(message)
    return ParsedCode(SubspaceCode(v, frozenset(words)), warnings)


def read_code(path) -> SubspaceCode:
    path = Path(path)
    return parse_code(path.read_text(encoding='utf-8'), str(path)).code


def format_code(c: SubspaceCode, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f'# {line}' for line in comment.splitlines())
    lines.append(f'v={c.v} q=2')
    lines.extend(str(w) for w in c.sorted_words)
    return '\n'.join(lines) + '\n'


def write_code(c: SubspaceCode, path, comment: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_code(c, comment), encoding='utf-8')
    logger.info('wrote %d codewords to %s', c.M, path)
    return path
