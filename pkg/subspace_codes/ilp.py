"""Integer programming models for maximum subspace codes.

Binary variables are named ``x_<i>`` where ``i`` is the canonical index of
the subspace (or of the orbit representative after a Kramer-Mesner style
reduction). Dimension counters are general integers ``delta_<k>``.
"""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .bounds import a_constant_dimension
from .clique import CliqueProblem, max_weight_clique
from .codes import SubspaceCode
from .exceptions import ModelError, ParameterError
from .grassmann import canonical_index, distances, gaussian_binomial, grassmannian, intersection_dims
from .group import MatrixGroup, orbits
from .linalg2 import Subspace

logger = logging.getLogger(__name__)

SENSES = ('<=', '>=', '=')
MODEL_KINDS = ('packing', 'ambient8', 'hyperplane7')
CUT_FAMILIES = ('ie_add', 'even')
OMEGA_CAP = 7


@dataclass(frozen=True)
class Variable:
    name: str
    members: tuple[Subspace, ...] = ()
    kind: str = 'binary'

    @property
    def is_binary(self) -> bool:
        return self.kind == 'binary'

    @property
    def representative(self) -> Subspace:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[str, int], ...]
    sense: str
    rhs: int

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ModelError(f'unknown constraint sense {self.sense!r}')

    @property
    def family(self) -> str:
        return self.name.rsplit('_', 1)[0]

    def lhs(self, values: Mapping[str, int]) -> int:
        return sum(c * values.get(name, 0) for name, c in self.terms)

    def holds(self, values: Mapping[str, int]) -> bool:
        lhs = self.lhs(values)
        if self.sense == '<=':
            return lhs <= self.rhs
        if self.sense == '>=':
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    v: int
    d: int
    dims: frozenset[int]
    variables: list[Variable] = field(default_factory=list)
    objective: dict[str, int] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)
    fixed: dict[str, int] = field(default_factory=dict)
    offset: int = 0
    group_order: int = 1
    cuts: tuple[str, ...] = ()
    kind: str = 'packing'
    prescribed: tuple[Subspace, ...] = ()

    def __post_init__(self):
        self.dims = frozenset(self.dims)
        if self.kind not in MODEL_KINDS:
            raise ModelError(f'unknown model kind {self.kind!r}')

    def variable_map(self) -> dict[str, Variable]:
        return {var.name: var for var in self.variables}

    def member_index(self) -> dict[Subspace, str]:
        return {s: var.name for var in self.variables for s in var.members}

    @property
    def binaries(self) -> list[Variable]:
        return [var for var in self.variables if var.is_binary]

    @property
    def generals(self) -> list[Variable]:
        return [var for var in self.variables if not var.is_binary]

    def check(self) -> None:
        known = self.variable_map()
        for name in list(self.objective) + list(self.fixed):
            if name not in known:
                raise ModelError(f'unknown variable {name!r}')
        for row in self.constraints:
            for name, _ in row.terms:
                if name not in known:
                    raise ModelError(f'constraint {row.name} uses unknown variable {name!r}')

    def family_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for row in self.constraints:
            counts[row.family] = counts.get(row.family, 0) + 1
        return counts

    def effective_objective(self) -> dict[str, int]:
        """Objective over binaries, with every ``delta`` replaced by its defining row."""
        definitions = _general_definitions(self)
        out: dict[str, int] = {}
        for name, coef in self.objective.items():
            for sub, c in definitions.get(name, ((name, 1),)):
                out[sub] = out.get(sub, 0) + coef * c
        return {name: c for name, c in out.items() if c}

    def complete_values(self, chosen: Mapping[str, int]) -> dict[str, int]:
        """Binary assignment plus the implied values of the general variables."""
        values = {var.name: 0 for var in self.binaries}
        values.update(self.fixed)
        values.update(chosen)
        for name, terms in _general_definitions(self).items():
            values[name] = sum(c * values.get(sub, 0) for sub, c in terms)
        return values

    def evaluate(self, values: Mapping[str, int]) -> int:
        return self.offset + sum(c * values.get(name, 0) for name, c in self.objective.items())

    def violations(self, values: Mapping[str, int]) -> list[str]:
        broken = [name for name, value in self.fixed.items() if values.get(name, 0) != value]
        broken += [row.name for row in self.constraints if not row.holds(values)]
        return broken

    def is_feasible(self, values: Mapping[str, int]) -> bool:
        return not self.violations(values)


def _general_definitions(m: IlpModel) -> dict[str, tuple[tuple[str, int], ...]]:
    """For each general variable g, the row ``g - sum(c x) = 0`` read as g = sum(c x)."""
    generals = {var.name for var in m.generals}
    found: dict[str, tuple[tuple[str, int], ...]] = {}
    for row in m.constraints:
        if row.sense != '=' or row.rhs != 0:
            continue
        heads = [(name, c) for name, c in row.terms if name in generals]
        if len(heads) != 1 or heads[0][1] not in (1, -1) or heads[0][0] in found:
            continue
        head, sign = heads[0]
        found[head] = tuple((name, -sign * c) for name, c in row.terms if name != head)
    return found


def var_name(index: int) -> str:
    return f'x_{index}'


def name_index(name: str) -> int:
    return int(name.split('_', 1)[1])


def _term_key(term: tuple[str, int]):
    name = term[0]
    if name.startswith('x_'):
        return (1, name_index(name), name)
    return (0, 0, name)


def _ordered(acc: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted(((n, c) for n, c in acc.items() if c), key=_term_key))


def _collect(index: Mapping[Subspace, str], items: Iterable[tuple[Subspace, int]]) -> tuple[tuple[str, int], ...]:
    acc: dict[str, int] = {}
    for s, coef in items:
        name = index.get(s)
        if name is not None:
            acc[name] = acc.get(name, 0) + coef
    return _ordered(acc)


def _offsets(v: int) -> list[int]:
    out, total = [], 0
    for k in range(v + 1):
        out.append(total)
        total += gaussian_binomial(v, k)
    return out


def _incident_positions(w: Subspace, k: int) -> np.ndarray:
    """Positions in G[v,k] of the subspaces incident with ``w``."""
    meet = intersection_dims(w, grassmannian(w.v, k))
    return np.flatnonzero(meet == min(w.k, k))


def _cdc_upper(v: int, d: int, k: int) -> int:
    if d > v or not 0 <= k <= v:
        return 1
    return a_constant_dimension(2, v, d, k).upper


def _check_dims(v: int, dims) -> frozenset[int]:
    dims = frozenset(range(v + 1)) if dims is None else frozenset(dims)
    if not dims or not dims <= set(range(v + 1)):
        raise ParameterError(f'dimension set must be a non-empty subset of 0..{v}')
    return dims


def build_base_model(v: int, d: int, dims=None) -> IlpModel:
    """Packing model for odd ``d``: every ball of radius (d-1)/2 holds at most one codeword."""
    if v < 1 or not 1 <= d <= v:
        raise ParameterError(f'need 1 <= d <= v, got v={v} d={d}')
    if d % 2 == 0:
        raise ParameterError('the base model needs odd d; even d is built from the d-1 model')
    dims = _check_dims(v, dims)
    r = (d - 1) // 2
    offsets = _offsets(v)
    model_dims = [k for k in range(v + 1) if min(abs(k - t) for t in dims) <= r]

    m = IlpModel(v, d, dims)
    for k in model_dims:
        table = grassmannian(v, k)
        for i, s in enumerate(table.subspaces):
            name = var_name(offsets[k] + i)
            m.variables.append(Variable(name, (s,)))
            if k not in dims:
                m.fixed[name] = 0

    for kw in range(v + 1):
        for iw, w in enumerate(grassmannian(v, kw).subspaces):
            terms: list[tuple[str, int]] = []
            for ku in model_dims:
                if abs(ku - kw) > r:
                    continue
                if r == 0:
                    terms.append((var_name(offsets[kw] + iw), 1))
                    continue
                hits = np.flatnonzero(distances(w, grassmannian(v, ku)) <= r)
                terms.extend((var_name(offsets[ku] + int(i)), 1) for i in hits)
            if terms:
                m.constraints.append(Constraint(f'ball_{offsets[kw] + iw}', tuple(terms), '<=', 1))

    for k in model_dims:
        delta = f'delta_{k}'
        m.variables.append(Variable(delta, kind='general'))
        size = gaussian_binomial(v, k)
        terms = ((delta, 1),) + tuple((var_name(offsets[k] + i), -1) for i in range(size))
        m.constraints.append(Constraint(f'dim_{k}', terms, '=', 0))
    m.objective = {f'delta_{k}': 1 for k in sorted(dims) if k in model_dims}
    logger.info('base model v=%d d=%d: %d variables, %d rows', v, d, len(m.variables), len(m.constraints))
    return m


def default_cut_triples(v: int, d: int, dims=None) -> list[tuple[int, int, int]]:
    """(k, l, a) incidence cuts whose local bound a is at least 2 and not implied by counting."""
    dims = _check_dims(v, dims)
    triples = []
    for k in range(1, v):
        if k not in dims:
            continue
        for l in range(1, v):
            if l == k:
                continue
            if k < l:
                a = _cdc_upper(l, d, k)
                incident = gaussian_binomial(l, k)
            else:
                a = _cdc_upper(v - l, d, k - l)
                incident = gaussian_binomial(v - l, k - l)
            if 2 <= a < incident:
                triples.append((k, l, a))
    return triples


def add_incidence_cuts(m: IlpModel, triples: Iterable[tuple[int, int, int]]) -> IlpModel:
    """For every l-subspace L: a x_L (when |k-l| < d) + sum of incident k-subspaces <= a."""
    index = m.member_index()
    offsets = _offsets(m.v)
    for k, l, a in triples:
        if not (0 <= k <= m.v and 0 <= l <= m.v) or k == l:
            raise ParameterError(f'bad incidence triple {(k, l, a)}')
        if a < 1:
            raise ParameterError(f'incidence bound must be positive, got {a}')
        table_k = grassmannian(m.v, k)
        for il, w in enumerate(grassmannian(m.v, l).subspaces):
            items = [(table_k.subspaces[i], 1) for i in _incident_positions(w, k)]
            if abs(k - l) < m.d:
                items.append((w, a))
            terms = _collect(index, items)
            if terms:
                m.constraints.append(Constraint(f'ie_{k}_{l}_{a}_{offsets[l] + il}', terms, '<=', a))
    if 'ie_add' not in m.cuts:
        m.cuts = m.cuts + ('ie_add',)
    _dedupe(m)
    return m


def even_cut_triples(v: int, d: int) -> list[tuple[int, int, int]]:
    """(a, b, i) with a < b and a + b - 2i = d - 1."""
    out = []
    for i in range(v + 1):
        for a in range(i, v + 1):
            b = d - 1 + 2 * i - a
            if a < b <= v:
                out.append((a, b, i))
    return out


def add_even_d_cuts(m: IlpModel, d: int) -> IlpModel:
    """Turn the model for d-1 into one for even d.

    Pairs at distance exactly d-1 have dimensions a < b with a common
    i-subspace W, a + b - 2i = d - 1. Around each W at most one a-subspace
    through W is chosen, and then no b-subspace through W; otherwise the
    b-subspaces through W form a code in F^(v-i).
    """
    if d % 2:
        raise ParameterError(f'even-distance cuts need even d, got {d}')
    if m.d != d - 1:
        raise ModelError(f'even-distance cuts for d={d} need the d={d - 1} model, got d={m.d}')
    index = m.member_index()
    present = {s.k for s in index}
    offsets = _offsets(m.v)
    for a, b, i in even_cut_triples(m.v, d):
        if a not in present or b not in present:
            continue
        lam = _cdc_upper(m.v - i, d, b - i)
        table_a, table_b = grassmannian(m.v, a), grassmannian(m.v, b)
        for iw, w in enumerate(grassmannian(m.v, i).subspaces):
            items = [(table_a.subspaces[j], lam) for j in _incident_positions(w, a)]
            items += [(table_b.subspaces[j], 1) for j in _incident_positions(w, b)]
            terms = _collect(index, items)
            if terms:
                m.constraints.append(Constraint(f'even_{a}_{b}_{i}_{offsets[i] + iw}', terms, '<=', lam))
    m.d = d
    if 'even' not in m.cuts:
        m.cuts = m.cuts + ('even',)
    _dedupe(m)
    return m


def build_model(v: int, d: int, dims=None, cuts: Iterable[str] = ()) -> IlpModel:
    cuts = tuple(cuts)
    for cut in cuts:
        if cut not in CUT_FAMILIES:
            raise ParameterError(f'unknown cut family {cut!r}; choose from {", ".join(CUT_FAMILIES)}')
    if d % 2:
        m = build_base_model(v, d, dims)
        if 'even' in cuts:
            logger.warning('even-distance cuts ignored for odd d=%d', d)
    else:
        m = add_even_d_cuts(build_base_model(v, d - 1, dims), d)
    if 'ie_add' in cuts:
        add_incidence_cuts(m, default_cut_triples(v, m.d, m.dims))
    return m


def _dedupe(m: IlpModel) -> None:
    seen = set()
    kept = []
    for row in m.constraints:
        key = (row.terms, row.sense, row.rhs)
        if key in seen:
            continue
        seen.add(key)
        kept.append(row)
    m.constraints = kept


def reduce_kramer_mesner(m: IlpModel, group: MatrixGroup) -> IlpModel:
    """Merge each group orbit of subspaces into one variable."""
    if group.v != m.v:
        raise ParameterError(f'group acts on F_2^{group.v}, model lives in F_2^{m.v}')
    if any(var.size > 1 for var in m.binaries):
        raise ModelError('model is already orbit-reduced')
    if group.order == 1:
        return dataclasses.replace(m, variables=list(m.variables), constraints=list(m.constraints),
                                   objective=dict(m.objective), fixed=dict(m.fixed))
    rename: dict[str, str] = {}
    new_vars: list[Variable] = []
    present_dims = sorted({var.representative.k for var in m.binaries})
    index = m.member_index()
    for k in present_dims:
        for orbit in orbits(group, k).orbits:
            if any(s not in index for s in orbit):
                raise ModelError(f'model holds part of an orbit of {k}-subspaces only')
            name = var_name(canonical_index(orbit[0]))
            new_vars.append(Variable(name, orbit))
            for s in orbit:
                rename[index[s]] = name
    new_vars += m.generals

    constraints = []
    for row in m.constraints:
        acc: dict[str, int] = {}
        for name, c in row.terms:
            target = rename.get(name, name)
            acc[target] = acc.get(target, 0) + c
        terms = _ordered(acc)
        if terms:
            constraints.append(Constraint(row.name, terms, row.sense, row.rhs))
    fixed = {}
    for name, value in m.fixed.items():
        fixed[rename.get(name, name)] = value
    objective: dict[str, int] = {}
    for name, c in m.objective.items():
        target = rename.get(name, name)
        objective[target] = objective.get(target, 0) + c
    reduced = IlpModel(m.v, m.d, m.dims, new_vars, objective, constraints, fixed, m.offset,
                       group.order, m.cuts, m.kind, m.prescribed)
    _dedupe(reduced)
    logger.info('orbit reduction: %d -> %d binaries, %d -> %d rows', len(m.binaries),
                len(reduced.binaries), len(m.constraints), len(reduced.constraints))
    return reduced


def expand_solution(m: IlpModel, values: Mapping[str, float]) -> SubspaceCode:
    words = []
    for var in m.binaries:
        if values.get(var.name, 0) >= 0.5:
            words.extend(var.members)
    return SubspaceCode.of(m.v, words)


def prescribe(m: IlpModel, code: SubspaceCode) -> IlpModel:
    """Fix the variables holding the codewords of ``code`` to one."""
    if code.v != m.v:
        raise ParameterError(f'prescribed code lives in F_2^{code.v}, model in F_2^{m.v}')
    index = m.member_index()
    for s in code:
        name = index.get(s)
        if name is None:
            raise ModelError(f'no variable holds the prescribed codeword {s}')
        if m.fixed.get(name) == 0:
            raise ModelError(f'prescribed codeword {s} has a dimension outside the model')
        m.fixed[name] = 1
    return m


def add_incidence_caps(m: IlpModel, cap_point: int | None = None, cap_hyperplane: int | None = None) -> IlpModel:
    """At most ``cap_point`` codewords through each point, ``cap_hyperplane`` inside each hyperplane."""
    index = m.member_index()
    dims = sorted({s.k for s in index})
    for cap, kw, family in ((cap_point, 1, 'cap_point'), (cap_hyperplane, m.v - 1, 'cap_hyperplane')):
        if cap is None:
            continue
        if cap < 0:
            raise ParameterError(f'{family} must be non-negative')
        for iw, w in enumerate(grassmannian(m.v, kw).subspaces):
            items = []
            for k in dims:
                if (kw == 1 and k >= 1) or (kw == m.v - 1 and k <= m.v - 1):
                    table = grassmannian(m.v, k)
                    items += [(table.subspaces[i], 1) for i in _incident_positions(w, k)]
            terms = _collect(index, items)
            if terms:
                m.constraints.append(Constraint(f'{family}_{iw}', terms, '<=', cap))
    _dedupe(m)
    return m


def add_dimension_bound(m: IlpModel, dims: Iterable[int], bound: int) -> IlpModel:
    """Sum of the ``delta`` counters over ``dims`` is at most ``bound``."""
    dims = sorted(set(dims))
    known = m.variable_map()
    terms = tuple((f'delta_{k}', 1) for k in dims if f'delta_{k}' in known)
    if not terms:
        raise ModelError(f'model has no dimension counters for {dims}')
    m.constraints.append(Constraint('dimsum_' + '_'.join(map(str, dims)), terms, '<=', bound))
    return m


# hyperplane models


def _check_solids(f: SubspaceCode, v: int) -> None:
    if f.v != v:
        raise ParameterError(f'the fixed code must live in F_2^{v}, got F_2^{f.v}')
    if any(s.k != 4 for s in f):
        raise ParameterError('the fixed code must consist of solids (4-subspaces)')


def build_ambient8_model(f_code: SubspaceCode, f: int) -> IlpModel:
    """Solids of F^8 at distance >= 6 completing ``f_code``, with point and hyperplane degrees <= f."""
    _check_solids(f_code, 8)
    if f < 1:
        raise ParameterError(f'the degree cap must be positive, got {f}')
    v, offsets = 8, _offsets(8)
    m = IlpModel(v, 6, {4}, kind='ambient8', prescribed=f_code.sorted_words)
    table = grassmannian(v, 4)
    for i, s in enumerate(table.subspaces):
        m.variables.append(Variable(var_name(offsets[4] + i), (s,)))
    m.objective = {var.name: 1 for var in m.variables}
    for s in f_code:
        m.fixed[var_name(offsets[4] + table.position(s))] = 1
    for kw, rhs in ((1, f), (2, 1), (6, 1), (7, f)):
        for iw, w in enumerate(grassmannian(v, kw).subspaces):
            terms = tuple((var_name(offsets[4] + int(i)), 1) for i in _incident_positions(w, 4))
            m.constraints.append(Constraint(f'inc{kw}_{iw}', terms, '<=', rhs))
    logger.info('ambient model: %d variables, %d rows', len(m.variables), len(m.constraints))
    return m


@lru_cache(maxsize=64)
def hyperplane_variables(f_code: SubspaceCode) -> tuple[Subspace, ...]:
    """Planes of F^7 meeting every solid of ``f_code`` in at most a point."""
    table = grassmannian(7, 3)
    ok = np.ones(len(table), dtype=bool)
    for s in f_code:
        ok &= intersection_dims(s, table) <= 1
    return tuple(table.subspaces[i] for i in np.flatnonzero(ok))


@lru_cache(maxsize=4096)
def omega(f_code: SubspaceCode, w: Subspace, cap: int = OMEGA_CAP) -> int:
    """Largest number of admissible planes inside ``w`` pairwise meeting in at most a point."""
    cands = [u for u in hyperplane_variables(f_code) if w.contains(u)]
    n = len(cands)
    if n == 0:
        return 0
    compatible = [0] * n
    masks = [u.point_mask for u in cands]
    for i in range(n):
        for j in range(i + 1, n):
            if (masks[i] & masks[j]).bit_count() <= 1:
                compatible[i] |= 1 << j
                compatible[j] |= 1 << i
    result = max_weight_clique(CliqueProblem.from_compatibility(n, compatible), stop_at=cap)
    return min(result.value or 0, cap)


def build_hyperplane7_model(f_code: SubspaceCode) -> IlpModel:
    """Planes of a hyperplane H = F^7 completing the traces of 16 or 17 solids."""
    _check_solids(f_code, 7)
    nf = len(f_code)
    if nf not in (16, 17):
        raise ParameterError(f'the hyperplane model needs 16 or 17 solids in H, got {nf}')
    v, offsets = 7, _offsets(7)
    admissible = hyperplane_variables(f_code)
    table3 = grassmannian(v, 3)
    m = IlpModel(v, 4, {3}, kind='hyperplane7', offset=nf, prescribed=f_code.sorted_words)
    for u in admissible:
        m.variables.append(Variable(var_name(offsets[3] + table3.position(u)), (u,)))
    m.objective = {var.name: 1 for var in m.variables}
    index = m.member_index()
    solids = f_code.sorted_words

    def row(w):
        return _collect(index, ((table3.subspaces[i], 1) for i in _incident_positions(w, 3)))

    for iw, w in enumerate(grassmannian(v, 1).subspaces):
        through = sum(1 for s in solids if w.rows[0] in s)
        terms = row(w)
        if terms:
            m.constraints.append(Constraint(f'h_point_{iw}', terms, '<=', nf - through))
    for iw, w in enumerate(grassmannian(v, 2).subspaces):
        if any(s.contains(w) for s in solids):
            continue
        terms = row(w)
        if terms:
            m.constraints.append(Constraint(f'h_line_{iw}', terms, '<=', 1))
    for iw, w in enumerate(grassmannian(v, 4).subspaces):
        if w in f_code:
            continue
        terms = row(w)
        if terms:
            m.constraints.append(Constraint(f'h_solid_{iw}', terms, '<=', 1))
    for iw, w in enumerate(grassmannian(v, 5).subspaces):
        if any(w.contains(s) for s in solids):
            continue
        terms = row(w)
        if terms:
            m.constraints.append(Constraint(f'h_five_{iw}', terms, '<=', omega(f_code, w)))
    for iw, w in enumerate(grassmannian(v, 6).subspaces):
        inside = sum(1 for s in solids if w.contains(s))
        terms = row(w)
        if terms:
            m.constraints.append(Constraint(f'h_six_{iw}', terms, '<=', 2 * (nf - inside)))
    m.constraints.append(Constraint('h_count', tuple((var.name, 1) for var in m.variables), '>=', 255 - nf))
    logger.info('hyperplane model with %d solids: %d planes, %d rows', nf, len(m.variables), len(m.constraints))
    return m


def hyperplane_trace(f_code: SubspaceCode) -> SubspaceCode:
    """Codewords of a solid code in F^8 lying in H = {x_8 = 0}, mapped into F^7."""
    if f_code.v != 8:
        raise ParameterError('hyperplane traces are taken from codes in F_2^8')
    inside = [s for s in f_code if all(r & 1 == 0 for r in s.rows)]
    return SubspaceCode.of(7, [Subspace.span(7, [r >> 1 for r in s.rows]) for s in inside])


def build_hyperplane_model(f_code: SubspaceCode, mode: str = 'hyperplane7', f: int | None = None) -> IlpModel:
    if mode == 'ambient8':
        if f is None:
            raise ParameterError('the ambient model needs a degree cap f')
        return build_ambient8_model(f_code, f)
    if mode == 'hyperplane7':
        if f_code.v == 8:
            f_code = hyperplane_trace(f_code)
        return build_hyperplane7_model(f_code)
    raise ParameterError(f'unknown hyperplane model {mode!r}')
