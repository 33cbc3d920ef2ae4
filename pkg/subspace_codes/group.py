"""Finite matrix groups over GF(2) acting on subspaces by x -> x g."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .codes import SubspaceCode
from .exceptions import (
    CodeFormatError,
    GroupError,
    GroupTooLargeError,
    ParameterError,
    SingularGeneratorError,
)
from .grassmann import grassmannian
from .linalg2 import BitMatrix, Subspace, gl_order, invertible_matrices, str_to_bits, transform

logger = logging.getLogger(__name__)

DEFAULT_ELEMENT_CAP = 1_000_000


@dataclass(frozen=True)
class MatrixGroup:
    v: int
    generators: tuple[BitMatrix, ...]
    elements: tuple[BitMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[BitMatrix]:
        return frozenset(self.elements)

    def __contains__(self, g: BitMatrix) -> bool:
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def apply(self, g: BitMatrix, c: SubspaceCode) -> SubspaceCode:
        return c.transformed(g)


def closure(generators: Sequence[BitMatrix], v: int | None = None, cap: int = DEFAULT_ELEMENT_CAP) -> MatrixGroup:
    """Smallest subgroup of GL(v,2) containing ``generators``."""
    generators = tuple(generators)
    if v is None:
        if not generators:
            raise ParameterError('the ambient dimension is needed for an empty generator list')
        v = generators[0].v
    for g in generators:
        if not g.is_square or g.v != v:
            raise GroupError(f'generator {g} is not a {v}x{v} matrix')
        if g.rank() < v:
            raise SingularGeneratorError(f'generator {g} is singular')
    identity = BitMatrix.identity(v)
    seen = {identity}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for g in generators:
            product = h @ g
            if product not in seen:
                seen.add(product)
                if len(seen) > cap:
                    raise GroupTooLargeError(f'group closure exceeded {cap} elements')
                queue.append(product)
    elements = tuple(sorted(seen, key=lambda m: m.rows))
    if gl_order(v) % len(elements):
        raise GroupError(f'order {len(elements)} does not divide |GL({v},2)|')
    logger.info('closed %d generators in GL(%d,2): order %d', len(generators), v, len(elements))
    return MatrixGroup(v, generators, elements)


def general_linear_group(v: int) -> MatrixGroup:
    mats = tuple(invertible_matrices(v))
    return MatrixGroup(v, (), mats)


@dataclass(frozen=True)
class OrbitDecomposition:
    v: int
    k: int
    orbits: tuple[tuple[Subspace, ...], ...]
    labels: np.ndarray

    @property
    def representatives(self) -> tuple[Subspace, ...]:
        return tuple(orbit[0] for orbit in self.orbits)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(orbit) for orbit in self.orbits)

    def __len__(self):
        return len(self.orbits)

    def orbit_of(self, s: Subspace) -> tuple[Subspace, ...]:
        return self.orbits[int(self.labels[grassmannian(self.v, self.k).position(s)])]


def orbits(group: MatrixGroup, k: int) -> OrbitDecomposition:
    """Partition G[v,k] into orbits; representatives are canonical minima."""
    table = grassmannian(group.v, k)
    moves = group.generators or group.elements
    labels = np.full(len(table), -1, dtype=np.int64)
    found: list[tuple[Subspace, ...]] = []
    for start in range(len(table)):
        if labels[start] >= 0:
            continue
        label = len(found)
        labels[start] = label
        members = [start]
        queue = deque([table.subspaces[start]])
        while queue:
            s = queue.popleft()
            for g in moves:
                i = table.index[transform(s, g)]
                if labels[i] < 0:
                    labels[i] = label
                    members.append(i)
                    queue.append(table.subspaces[i])
        orbit = tuple(table.subspaces[i] for i in sorted(members))
        if group.order % len(orbit):
            raise GroupError(f'orbit of size {len(orbit)} does not divide the group order {group.order}')
        found.append(orbit)
    logger.info('G[%d,%d] splits into %d orbits under a group of order %d', group.v, k, len(found), group.order)
    return OrbitDecomposition(group.v, k, tuple(found), labels)


def fixed_subspaces(group: MatrixGroup, k: int) -> tuple[Subspace, ...]:
    return tuple(orbit[0] for orbit in orbits(group, k).orbits if len(orbit) == 1)


def stabilizer_order(group: MatrixGroup, c: SubspaceCode) -> int:
    """Number of supplied group elements mapping ``c`` onto itself."""
    if group.v != c.v:
        raise ParameterError(f'group acts on F_2^{group.v}, code lives in F_2^{c.v}')
    return sum(1 for g in group.elements if c.transformed(g).words == c.words)


def burnside_orbit_count(group: MatrixGroup, k: int) -> Fraction:
    """Average number of k-subspaces fixed by an element; equals the orbit count."""
    table = grassmannian(group.v, k)
    fixed = sum(1 for g in group.elements for s in table.subspaces if transform(s, g) == s)
    return Fraction(fixed, group.order)


def parse_generators(text: str, source: str = '<string>') -> tuple[int, list[BitMatrix]]:
    v = None
    gens: list[BitMatrix] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if v is None:
            if not line.startswith('v='):
                raise CodeFormatError(f'expected header "v=<int>", got {line!r}', line_no, source)
            try:
                v = int(line[2:])
            except ValueError:
                raise CodeFormatError(f'bad ambient dimension {line[2:]!r}', line_no, source) from None
            continue
        parts = [p.strip() for p in line.split(';')]
        if len(parts) != v or any(len(p) != v for p in parts):
            raise CodeFormatError(f'a generator needs {v} rows of width {v}', line_no, source)
        try:
            gens.append(BitMatrix(v, tuple(str_to_bits(p) for p in parts)))
        except ParameterError as exc:
            raise CodeFormatError(str(exc), line_no, source) from None
    if v is None:
        raise CodeFormatError('missing header line', None, source)
    return v, gens


def read_generators(path) -> tuple[int, list[BitMatrix]]:
    path = Path(path)
    return parse_generators(path.read_text(encoding='utf-8'), str(path))


def write_generators(v: int, generators: Iterable[BitMatrix], path) -> Path:
    path = Path(path)
    lines = [f'v={v}'] + [';'.join(g.to_strings()) for g in generators]
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return path


def packaged_generators(name: str) -> tuple[int, list[BitMatrix]]:
    """Generator files shipped in ``subspace_codes/data``."""
    return read_generators(Path(__file__).resolve().parent / 'data' / f'{name}.gen')
