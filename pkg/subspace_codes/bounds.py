"""Closed-form values and standard inequalities for A_q(v,d;T), plus the
ledger of best known binary values for v <= 8.

Ledger ranges are stored verbatim and are never tightened here; solver runs
recorded in the database are reported next to them instead.
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Sequence

from .exceptions import IncompatibleBoundsError, OutOfScopeError, ParameterError
from .grassmann import gaussian_binomial

logger = logging.getLogger(__name__)

RELATIONS = ('union', 'monotone_d', 'monotone_T', 'duality')


@dataclass(frozen=True)
class BoundEntry:
    q: int
    v: int
    d: int
    lower: int
    upper: int
    exact: bool
    provenance: str
    types: int | None = None
    dims: frozenset[int] | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ParameterError(f'lower bound {self.lower} exceeds upper bound {self.upper}')
        if self.exact and self.lower != self.upper:
            raise ParameterError('an exact entry needs lower == upper')
        if self.dims is not None:
            object.__setattr__(self, 'dims', frozenset(self.dims))

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    @property
    def dim_set(self) -> frozenset[int]:
        return self.dims if self.dims is not None else frozenset(range(self.v + 1))

    def __str__(self):
        value = str(self.lower) if self.exact else f'{self.lower}-{self.upper}'
        if self.types is not None:
            value += f'({self.types})'
        return value


def _entry(q, v, d, lower, upper, provenance, dims=None, types=None) -> BoundEntry:
    return BoundEntry(q, v, d, lower, upper, lower == upper, provenance, types, dims)


def _check(q: int, v: int, d: int) -> None:
    if q < 2:
        raise ParameterError(f'q must be at least 2, got {q}')
    if v < 1 or not 1 <= d <= v:
        raise ParameterError(f'need 1 <= d <= v, got v={v} d={d}')


def a_closed_form(q: int, v: int, d: int) -> BoundEntry:
    """Exact values or intervals for A_q(v,d) where a formula is known."""
    _check(q, v, d)
    if d == 1:
        total = sum(gaussian_binomial(v, i, q) for i in range(v + 1))
        return _entry(q, v, d, total, total, 'all-subspaces')
    if d == 2:
        even = sum(gaussian_binomial(v, i, q) for i in range(0, v + 1, 2))
        odd = sum(gaussian_binomial(v, i, q) for i in range(1, v + 1, 2))
        best = max(even, odd)
        return _entry(q, v, d, best, best, 'parity-layers')
    if d == v:
        value = 2 if v % 2 else q ** (v // 2) + 1
        return _entry(q, v, d, value, value, 'spread' if v % 2 == 0 else 'two-codewords')
    if d == v - 1:
        if v % 2 == 0:
            value = q ** (v // 2) + 1
        elif v >= 5:
            value = q ** ((v + 1) // 2) + 1
        else:
            raise OutOfScopeError(f'no closed form for A_q({v},{d})')
        return _entry(q, v, d, value, value, 'distance-v-1')
    if d == v - 2:
        if v % 2:
            k = (v - 1) // 2
            low, high = 2 * q ** (k + 1) + 1, 2 * q ** (k + 1) + 2
            if v == 5 or (q, v) == (2, 7):
                low = high
            return _entry(q, v, d, low, high, 'distance-v-2')
        known = {(2, 6): 77, (2, 8): 257}
        if (q, v) in known:
            value = known[(q, v)]
            return _entry(q, v, d, value, value, 'distance-v-2', types=None)
    raise OutOfScopeError(f'no closed form for A_{q}({v},{d})')


def mrd_bound(q: int, m: int, n: int, delta: int) -> int:
    if not 1 <= delta <= min(m, n):
        raise ParameterError(f'delta={delta} outside 1..{min(m, n)}')
    return q ** (max(m, n) * (min(m, n) - delta + 1))


# binary constant-dimension values keyed by (v, d, k) with k <= v/2
_KNOWN_CDC = {
    (6, 4, 3): (77, 77),
    (7, 4, 3): (333, 381),
    (8, 6, 4): (257, 257),
    (8, 4, 4): (4801, 6477),
    (7, 6, 3): (17, 17),
    (8, 6, 3): (34, 34),
}


@lru_cache(maxsize=None)
def a_constant_dimension(q: int, v: int, d: int, k: int) -> BoundEntry:
    """Bounds on A_q(v,d;k), the largest code of k-subspaces with distance >= d."""
    _check(q, v, max(d, 1))
    if not 0 <= k <= v:
        raise ParameterError(f'k={k} outside 0..{v}')
    dims = frozenset({k})
    if d % 2:
        d += 1
    delta = d // 2
    if delta > min(k, v - k):
        return _entry(q, v, d, 1, 1, 'trivial', dims)
    if 2 * k > v:
        entry = a_constant_dimension(q, v, d, v - k)
        return replace(entry, dims=dims, provenance=entry.provenance + '+duality')
    if delta == 1:
        value = gaussian_binomial(v, k, q)
        return _entry(q, v, d, value, value, 'grassmannian', dims)
    lower = q ** ((v - k) * (k - delta + 1))
    if q == 2 and (v, d, k) in _KNOWN_CDC:
        low, high = _KNOWN_CDC[(v, d, k)]
        return _entry(q, v, d, max(low, lower), high, 'known', dims)
    if delta == k:
        if v % k == 0:
            value = (q ** v - 1) // (q ** k - 1)
            return _entry(q, v, d, value, value, 'spread', dims)
        if k == 2:
            value = (q ** v - q ** 3) // (q ** 2 - 1) + 1
            return _entry(q, v, d, value, value, 'partial-line-spread', dims)
    inner = a_constant_dimension(q, v - 1, d, k - 1)
    upper = (q ** v - 1) * inner.upper // (q ** k - 1)
    return _entry(q, v, d, min(lower, upper), upper, 'johnson', dims)


def _require_same(entries: Sequence[BoundEntry], *fields: str) -> None:
    first = entries[0]
    for e in entries[1:]:
        for name in fields:
            if getattr(e, name) != getattr(first, name):
                raise IncompatibleBoundsError(f'entries differ in {name}: {getattr(first, name)} != {getattr(e, name)}')


def combine(entries: Iterable[BoundEntry], relation: str, target: int | Iterable[int] | None = None) -> BoundEntry:
    """Derive one entry from others.

    ``union``: disjoint dimension sets, upper bounds add up.
    ``monotone_d``: bound the entry at distance ``target`` (default: largest d).
    ``monotone_T``: bound the entry for dimension set ``target`` (default: smallest set).
    ``duality``: map the dimension set T to v - T.
    """
    entries = list(entries)
    if not entries:
        raise IncompatibleBoundsError('nothing to combine')
    if relation not in RELATIONS:
        raise ParameterError(f'unknown relation {relation!r}; expected one of {", ".join(RELATIONS)}')
    q, v = entries[0].q, entries[0].v
    _require_same(entries, 'q', 'v')
    if relation == 'union':
        _require_same(entries, 'd')
        seen: set[int] = set()
        for e in entries:
            if seen & e.dim_set:
                raise IncompatibleBoundsError('union needs disjoint dimension sets')
            seen |= e.dim_set
        return _entry(q, v, entries[0].d, max(e.lower for e in entries), sum(e.upper for e in entries),
                      'union', frozenset(seen))
    if relation == 'duality':
        if len(entries) != 1:
            raise IncompatibleBoundsError('duality maps exactly one entry')
        e = entries[0]
        return replace(e, dims=frozenset(v - k for k in e.dim_set), provenance=e.provenance + '+duality')
    if relation == 'monotone_d':
        _require_same(entries, 'dims')
        d = target if target is not None else max(e.d for e in entries)
        uppers = [e.upper for e in entries if e.d <= d]
        lowers = [e.lower for e in entries if e.d >= d]
        if not uppers or not lowers:
            raise IncompatibleBoundsError(f'no entries bracket distance {d}')
        return _entry(q, v, d, max(lowers), min(uppers), 'monotone-d', entries[0].dims)
    _require_same(entries, 'd')
    dims = frozenset(target) if target is not None else min((e.dim_set for e in entries), key=len)
    uppers = [e.upper for e in entries if e.dim_set >= dims]
    lowers = [e.lower for e in entries if e.dim_set <= dims]
    if not uppers:
        raise IncompatibleBoundsError('no entry covers the requested dimension set')
    return _entry(q, v, entries[0].d, max(lowers, default=0), min(uppers), 'monotone-T', dims)


# (v, d) -> (lower, upper, isomorphism types or None)
_TABLE = {
    (1, 1): (2, 2, 1),
    (2, 1): (5, 5, 1), (2, 2): (3, 3, 1),
    (3, 1): (16, 16, 1), (3, 2): (8, 8, 2), (3, 3): (2, 2, 2),
    (4, 1): (67, 67, 1), (4, 2): (37, 37, 1), (4, 3): (5, 5, 4), (4, 4): (5, 5, 1),
    (5, 1): (374, 374, 1), (5, 2): (187, 187, 2), (5, 3): (18, 18, 48217), (5, 4): (9, 9, 14),
    (5, 5): (2, 2, 3),
    (6, 1): (2825, 2825, 1), (6, 2): (1521, 1521, 1), (6, 3): (108, 117, None), (6, 4): (77, 77, 5),
    (6, 5): (9, 9, 5), (6, 6): (9, 9, 1),
    (7, 1): (29212, 29212, 1), (7, 2): (14606, 14606, 2), (7, 3): (614, 776, None),
    (7, 4): (334, 407, None), (7, 5): (34, 34, 39), (7, 6): (17, 17, 1856), (7, 7): (2, 2, 4),
    (8, 1): (417199, 417199, 1), (8, 2): (222379, 222379, 2), (8, 3): (5687, 9268, None),
    (8, 4): (4803, 6479, None), (8, 5): (263, 326, None), (8, 6): (257, 257, 8), (8, 7): (17, 17, 572),
    (8, 8): (17, 17, 8),
}


def table_ledger() -> list[BoundEntry]:
    return [_entry(2, v, d, low, high, 'table', types=types) for (v, d), (low, high, types) in sorted(_TABLE.items())]


def ledger_lookup(q: int, v: int, d: int) -> BoundEntry:
    if q != 2 or (v, d) not in _TABLE:
        raise OutOfScopeError(f'the ledger covers q=2, 1 <= d <= v <= 8; got q={q} v={v} d={d}')
    low, high, types = _TABLE[(v, d)]
    return _entry(2, v, d, low, high, 'table', types=types)


def best_upper(q: int, v: int, d: int) -> int:
    """Smallest known upper bound for A_q(v,d)."""
    candidates = []
    try:
        candidates.append(ledger_lookup(q, v, d).upper)
    except OutOfScopeError:
        pass
    try:
        candidates.append(a_closed_form(q, v, d).upper)
    except OutOfScopeError:
        pass
    if not candidates:
        raise OutOfScopeError(f'no upper bound known for A_{q}({v},{d})')
    return min(candidates)


CSV_FIELDS = ('q', 'v', 'd', 'lower', 'upper', 'exact', 'types')


def render_csv(entries: Iterable[BoundEntry], extra: dict | None = None) -> str:
    buf = io.StringIO()
    fields = CSV_FIELDS + (('recorded',) if extra is not None else ())
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(fields)
    for e in entries:
        row = [e.q, e.v, e.d, e.lower, e.upper, int(e.exact), '' if e.types is None else e.types]
        if extra is not None:
            row.append(extra.get((e.v, e.d), ''))
        writer.writerow(row)
    return buf.getvalue()


def render_text(entries: Sequence[BoundEntry], extra: dict | None = None) -> str:
    """Aligned grid: one row per v, one column per d."""
    vmax = max((e.v for e in entries), default=0)
    cells = {(e.v, e.d): str(e) for e in entries}
    if extra:
        for key, value in extra.items():
            if key in cells:
                cells[key] += f' [{value}]'
    width = max((len(c) for c in cells.values()), default=1) + 2
    lines = ['v\\d'.ljust(4) + ''.join(str(d).rjust(width) for d in range(1, vmax + 1))]
    for v in range(1, vmax + 1):
        lines.append(str(v).ljust(4) + ''.join(cells.get((v, d), '').rjust(width) for d in range(1, v + 1)))
    return '\n'.join(lines) + '\n'
