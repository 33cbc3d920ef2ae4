"""Solvers for :class:`IlpModel` instances.

``solve_exact`` turns a model into a weighted clique problem and runs the
in-house branch and bound; ``solve_highs`` and ``solve_relaxation`` hand the
same model to SciPy's HiGHS bindings.
"""
from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from .clique import CliqueProblem, Row, max_weight_clique
from .codes import SubspaceCode, verify
from .exceptions import ParameterError, SolverError, UnsupportedModelError
from .grassmann import distances, grassmannian
from .ilp import IlpModel, _general_definitions, expand_solution

logger = logging.getLogger(__name__)

DEFAULT_TIME_LIMIT = 600.0


class SolveStatus(str, enum.Enum):
    OPTIMAL = 'optimal'
    FEASIBLE = 'feasible'
    INFEASIBLE = 'infeasible'
    UNKNOWN = 'unknown'

    def __str__(self):
        return self.value


@dataclass
class SolveResult:
    status: SolveStatus
    value: int | None
    code: SubspaceCode | None
    method: str
    nodes: int = 0
    wall_time: float = 0.0
    relaxation: float | None = None
    values: dict[str, int] = field(default_factory=dict)

    @property
    def summary(self) -> str:
        value = '-' if self.value is None else self.value
        return f'optimum={value} status={self.status}'


@dataclass
class CliqueForm:
    problem: CliqueProblem
    names: list[str]
    fixed_on: list[str]
    offset: int
    infeasible: bool = False


def _substituted_rows(m: IlpModel):
    """Rows over binaries only, plus the objective, after eliminating general variables."""
    definitions = _general_definitions(m)
    generals = {var.name for var in m.generals}
    undefined = generals - set(definitions)
    if undefined:
        raise UnsupportedModelError(f'general variables without a defining row: {", ".join(sorted(undefined))}')
    rows = []
    consumed = set()
    for row in m.constraints:
        heads = [(n, c) for n, c in row.terms if n in generals]
        if row.sense == '=' and row.rhs == 0 and len(heads) == 1 and heads[0][0] not in consumed \
                and heads[0][1] in (1, -1):
            consumed.add(heads[0][0])
            continue
        acc: dict[str, int] = {}
        for name, c in row.terms:
            for sub, sc in definitions.get(name, ((name, 1),)):
                acc[sub] = acc.get(sub, 0) + c * sc
        rows.append((row.name, {n: c for n, c in acc.items() if c}, row.sense, row.rhs))
    return rows, m.effective_objective()


def to_clique_form(m: IlpModel) -> CliqueForm:
    """Encode the model as a weighted clique problem with capacity and demand rows.

    Needs non-negative coefficients in every <= and >= row and in the objective.
    A pair of variables conflicts when their coefficients alone overflow a row.
    Rows not fully described by their conflicts stay as capacity rows.
    """
    rows, objective = _substituted_rows(m)
    fixed_on = [name for name, value in m.fixed.items() if value == 1]
    fixed_off = {name for name, value in m.fixed.items() if value == 0}
    names = [var.name for var in m.binaries if var.name not in m.fixed]
    position = {name: i for i, name in enumerate(names)}
    n = len(names)
    on = set(fixed_on)

    if any(c < 0 for c in objective.values()):
        raise UnsupportedModelError('negative objective coefficients are not supported by the clique solver')
    weights = [objective.get(name, 0) for name in names]
    offset = m.offset + sum(objective.get(name, 0) for name in fixed_on)

    conflicts = [0] * n
    capacity: list[Row] = []
    demand: list[Row] = []
    banned = 0
    infeasible = False
    for label, terms, sense, rhs in rows:
        free: dict[int, int] = {}
        for name, c in terms.items():
            if name in on:
                rhs -= c
            elif name not in fixed_off:
                free[position[name]] = c
        if sense == '=':
            if not free:
                infeasible |= rhs != 0
                continue
            raise UnsupportedModelError(f'equality row {label} is not a variable definition')
        if any(c < 0 for c in free.values()):
            raise UnsupportedModelError(f'row {label} has negative coefficients')
        if sense == '>=':
            if sum(free.values()) < rhs:
                infeasible = True
            elif rhs > 0:
                demand.append(Row(free, rhs))
            continue
        if rhs < 0:
            infeasible = True
            continue
        for i, c in free.items():
            if c > rhs:
                banned |= 1 << i
        live = {i: c for i, c in free.items() if c <= rhs}
        if sum(live.values()) <= rhs:
            continue
        groups = sorted({c for c in live.values()}, reverse=True)
        above: dict[int, int] = {}
        for c in groups:
            above[c] = 0
        for i, c in live.items():
            above[c] |= 1 << i
        for c in groups:
            threshold = rhs - c
            clash = 0
            for g in groups:
                if g > threshold:
                    clash |= above[g]
            if not clash:
                continue
            for i in live:
                if live[i] == c:
                    conflicts[i] |= clash & ~(1 << i)
        if not _captured(live, rhs):
            capacity.append(Row(live, rhs))

    problem = CliqueProblem(n, weights, conflicts, capacity, demand)
    if banned:
        problem.capacity_rows.append(Row({i: 1 for i in _bits(banned)}, 0))
    logger.info('clique form: %d vertices, %d capacity rows, %d demand rows', n, len(capacity), len(demand))
    return CliqueForm(problem, names, fixed_on, offset, infeasible)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _captured(live: dict[int, int], rhs: int) -> bool:
    """True when the pairwise conflicts already enforce the row."""
    heavy = [c for c in live.values() if 2 * c > rhs]
    light = [c for c in live.values() if 2 * c <= rhs]
    if sum(light) > rhs:
        return False
    for h in set(heavy):
        if h + sum(c for c in light if h + c <= rhs) > rhs:
            return False
    return True


def _verify_incumbent(m: IlpModel, code: SubspaceCode, values: dict[str, int]) -> None:
    broken = m.violations(values)
    if broken:
        raise SolverError(f'incumbent violates {len(broken)} rows, first {broken[0]}')
    report = verify(code, m.d, m.dims)
    if not report.ok:
        raise SolverError(f'incumbent code fails verification: {report.summary()}')


def solve_exact(m: IlpModel, time_limit: float | None = DEFAULT_TIME_LIMIT, node_limit: int | None = None) -> SolveResult:
    started = time.monotonic()
    form = to_clique_form(m)
    if form.infeasible:
        return SolveResult(SolveStatus.INFEASIBLE, None, None, 'clique', 0, time.monotonic() - started)
    result = max_weight_clique(form.problem, time_limit=time_limit, node_limit=node_limit)
    wall = time.monotonic() - started
    if result.value is None:
        status = SolveStatus.INFEASIBLE if result.complete else SolveStatus.UNKNOWN
        return SolveResult(status, None, None, 'clique', result.nodes, wall)
    chosen = {form.names[i]: 1 for i in result.vertices}
    chosen.update({name: 1 for name in form.fixed_on})
    values = m.complete_values(chosen)
    code = expand_solution(m, values)
    _verify_incumbent(m, code, values)
    value = form.offset + result.value
    if value != m.evaluate(values):
        raise SolverError(f'objective mismatch: search {value}, model {m.evaluate(values)}')
    status = SolveStatus.OPTIMAL if result.complete else SolveStatus.FEASIBLE
    logger.info('exact solve: %s value=%d nodes=%d %.2fs', status, value, result.nodes, wall)
    return SolveResult(status, value, code, 'clique', result.nodes, wall, values=values)


def max_clique(v: int, d: int, dims=None, time_limit: float | None = DEFAULT_TIME_LIMIT) -> SolveResult:
    """Largest code by direct clique search on the compatibility graph of G[v,T]."""
    if v < 1 or not 1 <= d <= v:
        raise ParameterError(f'need 1 <= d <= v, got v={v} d={d}')
    dims = sorted(range(v + 1) if dims is None else set(dims))
    started = time.monotonic()
    words = [s for k in dims for s in grassmannian(v, k).subspaces]
    n = len(words)
    compatible = [0] * n
    for i, s in enumerate(words):
        far = np.concatenate([distances(s, grassmannian(v, k)) >= d for k in dims])
        mask = int.from_bytes(np.packbits(far, bitorder='little').tobytes(), 'little')
        compatible[i] = mask & ~(1 << i)
    result = max_weight_clique(CliqueProblem.from_compatibility(n, compatible), time_limit=time_limit)
    code = SubspaceCode.of(v, (words[i] for i in result.vertices))
    report = verify(code, d, dims)
    if not report.ok:
        raise SolverError(f'clique is not a code: {report.summary()}')
    status = SolveStatus.OPTIMAL if result.complete else SolveStatus.FEASIBLE
    return SolveResult(status, result.value, code, 'clique', result.nodes, time.monotonic() - started)


def _matrix_form(m: IlpModel):
    names = [var.name for var in m.variables]
    col = {name: j for j, name in enumerate(names)}
    c = np.zeros(len(names))
    for name, coef in m.objective.items():
        c[col[name]] = coef
    data, ri, ci = [], [], []
    lower, upper = [], []
    for r, row in enumerate(m.constraints):
        for name, coef in row.terms:
            data.append(coef)
            ri.append(r)
            ci.append(col[name])
        lower.append(-np.inf if row.sense == '<=' else row.rhs)
        upper.append(np.inf if row.sense == '>=' else row.rhs)
    a = sparse.csr_matrix((data, (ri, ci)), shape=(len(m.constraints), len(names)))
    var_lb = np.zeros(len(names))
    var_ub = np.array([1.0 if var.is_binary else np.inf for var in m.variables])
    for name, value in m.fixed.items():
        var_lb[col[name]] = var_ub[col[name]] = value
    integrality = np.ones(len(names))
    return names, c, a, np.array(lower), np.array(upper), var_lb, var_ub, integrality


def solve_relaxation(m: IlpModel) -> float:
    """Optimum of the LP relaxation, offset included."""
    _, c, a, lower, upper, var_lb, var_ub, _ = _matrix_form(m)
    eq = lower == upper
    le = np.isinf(lower)
    ge = np.isinf(upper)
    a_ub = sparse.vstack([a[le], -a[ge]]).tocsr()
    b_ub = np.concatenate([upper[le], -lower[ge]])
    a_eq, b_eq = a[eq], upper[eq]
    bounds = [(lo, None if np.isinf(hi) else hi) for lo, hi in zip(var_lb, var_ub)]
    res = linprog(
        -c,
        A_ub=a_ub if b_ub.size else None,
        b_ub=b_ub if b_ub.size else None,
        A_eq=a_eq if b_eq.size else None,
        b_eq=b_eq if b_eq.size else None,
        bounds=bounds,
        method='highs',
    )
    if res.status == 2:
        raise SolverError('LP relaxation is infeasible')
    if res.status != 0:
        raise SolverError(f'LP relaxation failed: {res.message}')
    value = m.offset - res.fun
    logger.info('LP relaxation: %.4f', value)
    return float(value)


def solve_highs(m: IlpModel, time_limit: float | None = DEFAULT_TIME_LIMIT) -> SolveResult:
    started = time.monotonic()
    names, c, a, lower, upper, var_lb, var_ub, integrality = _matrix_form(m)
    options = {'disp': False}
    if time_limit is not None:
        options['time_limit'] = time_limit
    res = milp(-c, constraints=[LinearConstraint(a, lower, upper)], integrality=integrality,
               bounds=Bounds(var_lb, var_ub), options=options)
    wall = time.monotonic() - started
    if res.status == 2:
        return SolveResult(SolveStatus.INFEASIBLE, None, None, 'highs', wall_time=wall)
    if res.x is None:
        return SolveResult(SolveStatus.UNKNOWN, None, None, 'highs', wall_time=wall)
    values = {name: int(round(x)) for name, x in zip(names, res.x)}
    code = expand_solution(m, values)
    _verify_incumbent(m, code, values)
    status = SolveStatus.OPTIMAL if res.status == 0 else SolveStatus.FEASIBLE
    value = m.evaluate(values)
    logger.info('HiGHS: %s value=%d %.2fs', status, value, wall)
    return SolveResult(status, value, code, 'highs', wall_time=wall, values=values)


BACKENDS = {'clique': solve_exact, 'highs': solve_highs}


def solve(m: IlpModel, backend: str = 'clique', time_limit: float | None = DEFAULT_TIME_LIMIT,
          relax: bool = False) -> SolveResult:
    try:
        solver = BACKENDS[backend]
    except KeyError:
        raise ParameterError(f'unknown backend {backend!r}; choose from {", ".join(BACKENDS)}') from None
    result = solver(m, time_limit=time_limit)
    if relax:
        result.relaxation = solve_relaxation(m)
    return result
