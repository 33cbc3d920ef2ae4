"""Weighted maximum clique by branch and bound over int bitsets.

Vertices are 0..n-1 in the caller's order; conflicts are the complement of the
compatibility graph. Besides pairwise conflicts the search tracks capacity
rows (sum of coefficients of chosen vertices <= rhs) and demand rows (a
feasible clique must reach a minimum coefficient sum). Pruning uses a greedy
colouring of the candidate set: each colour class holds pairwise conflicting
vertices, so a clique gains at most the heaviest weight of every class.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

TIME_CHECK_INTERVAL = 256


@dataclass
class Row:
    coefs: dict[int, int]
    rhs: int

    def grouped(self) -> list[tuple[int, int]]:
        """(coefficient, bitset of vertices) pairs, largest coefficient first."""
        groups: dict[int, int] = {}
        for v, c in self.coefs.items():
            groups[c] = groups.get(c, 0) | (1 << v)
        return sorted(groups.items(), reverse=True)


@dataclass
class CliqueProblem:
    n: int
    weights: list[int]
    conflicts: list[int]
    capacity_rows: list[Row] = field(default_factory=list)
    demand_rows: list[Row] = field(default_factory=list)

    @classmethod
    def from_compatibility(cls, n: int, compatible: list[int], weights: list[int] | None = None) -> 'CliqueProblem':
        everyone = (1 << n) - 1
        conflicts = [everyone & ~compatible[i] & ~(1 << i) for i in range(n)]
        return cls(n, weights or [1] * n, conflicts)


@dataclass
class CliqueResult:
    vertices: list[int]
    value: int | None
    complete: bool
    timed_out: bool
    nodes: int
    wall_time: float


class CliqueSearch:
    """Deterministic search: vertices branch in index order, inclusion first."""

    def __init__(self, problem: CliqueProblem, time_limit: float | None = None,
                 stop_at: int | None = None, node_limit: int | None = None):
        self.p = problem
        self.time_limit = time_limit
        self.stop_at = stop_at
        self.node_limit = node_limit
        self.compatible = [((1 << problem.n) - 1) & ~c & ~(1 << i) for i, c in enumerate(problem.conflicts)]
        self.cap_groups = [row.grouped() for row in problem.capacity_rows]
        self.cap_of: list[list[tuple[int, int]]] = [[] for _ in range(problem.n)]
        for r, row in enumerate(problem.capacity_rows):
            for v, c in row.coefs.items():
                self.cap_of[v].append((r, c))
        self.demand_groups = [row.grouped() for row in problem.demand_rows]
        self.demand_of: list[list[tuple[int, int]]] = [[] for _ in range(problem.n)]
        for r, row in enumerate(problem.demand_rows):
            for v, c in row.coefs.items():
                self.demand_of[v].append((r, c))

    def colour_bound(self, cand: int) -> int:
        weights = self.p.weights
        conflicts = self.p.conflicts
        total = 0
        rest = cand
        while rest:
            klass = rest
            heaviest = 0
            while klass:
                low = klass & -klass
                v = low.bit_length() - 1
                if weights[v] > heaviest:
                    heaviest = weights[v]
                rest &= ~low
                klass &= conflicts[v] & ~low
            total += heaviest
        return total

    def _demand_reachable(self, cand: int) -> bool:
        for r, row in enumerate(self.p.demand_rows):
            reach = self.demand_load[r]
            if reach >= row.rhs:
                continue
            for coef, bits in self.demand_groups[r]:
                reach += coef * (cand & bits).bit_count()
                if reach >= row.rhs:
                    break
            if reach < row.rhs:
                return False
        return True

    def _demand_met(self) -> bool:
        return all(self.demand_load[r] >= row.rhs for r, row in enumerate(self.p.demand_rows))

    def run(self, start: list[int] | None = None) -> CliqueResult:
        p = self.p
        self.started = time.monotonic()
        self.nodes = 0
        self.timed_out = False
        self.stopped = False
        self.best_value: int | None = None
        self.best: list[int] = []
        self.load = [0] * len(p.capacity_rows)
        self.demand_load = [0] * len(p.demand_rows)

        cand = (1 << p.n) - 1
        for r, row in enumerate(p.capacity_rows):
            for coef, bits in self.cap_groups[r]:
                if coef > row.rhs:
                    cand &= ~bits
        chosen: list[int] = []
        weight = 0
        for v in start or []:
            if not cand >> v & 1:
                logger.info('forced vertex %d is infeasible', v)
                return self._result(complete=True)
            cand = self._include(v, cand & self.compatible[v])
            chosen.append(v)
            weight += p.weights[v]
        self._expand(cand, weight, chosen)
        return self._result(complete=not (self.timed_out or self.stopped))

    def _result(self, complete: bool) -> CliqueResult:
        wall = time.monotonic() - self.started
        logger.info('clique search: value=%s nodes=%d complete=%s %.2fs', self.best_value, self.nodes, complete, wall)
        return CliqueResult(sorted(self.best), self.best_value, complete, self.timed_out, self.nodes, wall)

    def _include(self, v: int, cand: int) -> int:
        for r, c in self.cap_of[v]:
            self.load[r] += c
            slack = self.p.capacity_rows[r].rhs - self.load[r]
            for coef, bits in self.cap_groups[r]:
                if coef <= slack:
                    break
                cand &= ~bits
        for r, c in self.demand_of[v]:
            self.demand_load[r] += c
        return cand

    def _exclude(self, v: int) -> None:
        for r, c in self.cap_of[v]:
            self.load[r] -= c
        for r, c in self.demand_of[v]:
            self.demand_load[r] -= c

    def _halt(self) -> bool:
        if self.timed_out or self.stopped:
            return True
        if self.nodes % TIME_CHECK_INTERVAL == 0:
            if self.time_limit is not None and time.monotonic() - self.started > self.time_limit:
                self.timed_out = True
            if self.node_limit is not None and self.nodes >= self.node_limit:
                self.stopped = True
        return self.timed_out or self.stopped

    def _visit(self, weight: int, chosen: list[int]) -> None:
        self.nodes += 1
        if (self.best_value is None or weight > self.best_value) and self._demand_met():
            self.best_value = weight
            self.best = list(chosen)
            logger.debug('incumbent %d after %d nodes', weight, self.nodes)
            if self.stop_at is not None and weight >= self.stop_at:
                self.stopped = True

    def _pruned(self, cand: int, weight: int) -> bool:
        if self.best_value is not None and weight + self.colour_bound(cand) <= self.best_value:
            return True
        return self.demand_rows_present and not self._demand_reachable(cand)

    def _expand(self, cand: int, weight: int, chosen: list[int]) -> None:
        """Depth-first search on an explicit stack; cliques may hold thousands of vertices.

        A frame is ``[remaining candidates, weight, vertex that opened it]``; the
        root frame has no vertex, so forced start vertices stay chosen.
        """
        weights = self.p.weights
        stack = [[cand, weight, -1]]
        self._visit(weight, chosen)
        while stack:
            frame = stack[-1]
            cand, weight, _ = frame
            if not cand or self._halt() or self._pruned(cand, weight):
                stack.pop()
                if frame[2] >= 0:
                    chosen.pop()
                    self._exclude(frame[2])
                continue
            low = cand & -cand
            v = low.bit_length() - 1
            frame[0] = cand ^ low
            sub = self._include(v, frame[0] & self.compatible[v])
            chosen.append(v)
            stack.append([sub, weight + weights[v], v])
            self._visit(weight + weights[v], chosen)

    @property
    def demand_rows_present(self) -> bool:
        return bool(self.p.demand_rows)


def max_weight_clique(problem: CliqueProblem, time_limit: float | None = None,
                      stop_at: int | None = None, node_limit: int | None = None) -> CliqueResult:
    return CliqueSearch(problem, time_limit, stop_at, node_limit).run()
