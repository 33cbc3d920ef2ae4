"""CPLEX LP text format for :class:`IlpModel`.

Model metadata travels in ``\\`` comment lines so that a written file parses
back into an equal model.
"""
from __future__ import annotations

import logging
import re
from pathlib import Path

from .exceptions import CodeFormatError
from .grassmann import canonical_index, subspace_at
from .ilp import Constraint, IlpModel, Variable, name_index

logger = logging.getLogger(__name__)

LINE_WIDTH = 200
COMMENT_INDENT = '\\   '
SECTIONS = {
    'maximize': 'objective',
    'maximise': 'objective',
    'subject to': 'constraints',
    'st': 'constraints',
    'bounds': 'bounds',
    'general': 'general',
    'generals': 'general',
    'binary': 'binary',
    'binaries': 'binary',
    'end': 'end',
}
LABEL_RE = re.compile(r'^\s*([A-Za-z_][\w.]*)\s*:(.*)$')
TOKEN_RE = re.compile(r'<=|>=|=<|=>|=|<|>|[+-]|\d+(?:\.\d+)?|[A-Za-z_][\w.]*')
SENSE_TOKENS = {'<=': '<=', '=<': '<=', '<': '<=', '>=': '>=', '=>': '>=', '>': '>=', '=': '='}


def _expression(terms) -> list[str]:
    tokens = []
    for pos, (name, coef) in enumerate(terms):
        sign = '-' if coef < 0 else '+'
        mag = abs(coef)
        body = name if mag == 1 else f'{mag} {name}'
        if pos == 0:
            tokens.append(body if sign == '+' else f'- {body}')
        else:
            tokens.append(f'{sign} {body}')
    return tokens


def _wrap(head: str, tokens: list[str], indent: str = '   ') -> list[str]:
    lines = []
    line = head
    for token in tokens:
        if len(line) + len(token) + 1 > LINE_WIDTH and line.strip(' \\'):
            lines.append(line)
            line = indent
        line = f'{line} {token}' if line.strip(' \\') else f'{line}{token}'
    lines.append(line)
    return lines


def format_lp(m: IlpModel) -> str:
    dims = ','.join(str(k) for k in sorted(m.dims))
    cuts = ','.join(m.cuts) or '-'
    out = [
        f'\\ subspace-model kind={m.kind} v={m.v} d={m.d} dims={dims} offset={m.offset} '
        f'group_order={m.group_order} cuts={cuts}',
    ]
    for var in m.binaries:
        if var.size != 1 or var.name != f'x_{canonical_index(var.representative)}':
            members = ' '.join(str(canonical_index(s)) for s in var.members)
            out += _wrap(f'\\ orbit {var.name} =', members.split(), COMMENT_INDENT)
    if m.prescribed:
        out += _wrap('\\ prescribed', [str(canonical_index(s)) for s in m.prescribed], COMMENT_INDENT)
    out.append('Maximize')
    out += _wrap(' obj:', _expression(m.objective.items()) or ['0'])
    out.append('Subject To')
    for row in m.constraints:
        out += _wrap(f' {row.name}:', _expression(row.terms) + [row.sense, str(row.rhs)])
    if m.fixed:
        out.append('Bounds')
        out += [f' {name} = {value}' for name, value in m.fixed.items()]
    if m.generals:
        out.append('General')
        out += _wrap('', [var.name for var in m.generals])
    if m.binaries:
        out.append('Binary')
        out += _wrap('', [var.name for var in m.binaries])
    out.append('End')
    return '\n'.join(out) + '\n'


def export_lp(m: IlpModel, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_lp(m), encoding='utf-8')
    logger.info('wrote %s: %d variables, %d rows', path, len(m.variables), len(m.constraints))
    return path


def _parse_terms(text: str):
    terms: list[tuple[str, int]] = []
    sense = None
    rhs = None
    sign, coef = 1, None
    for tok in TOKEN_RE.findall(text):
        if tok in ('+', '-'):
            sign = -1 if tok == '-' else 1
        elif tok in SENSE_TOKENS:
            sense = SENSE_TOKENS[tok]
            sign = 1
        elif tok[0].isdigit():
            if sense is not None:
                rhs = sign * int(float(tok))
            else:
                coef = int(float(tok))
        else:
            terms.append((tok, sign * (1 if coef is None else coef)))
            sign, coef = 1, None
    return terms, sense, rhs


_META_RE = re.compile(r'(\w+)=(\S+)')


def parse_lp(text: str, source: str = '<string>') -> IlpModel:
    meta: dict[str, str] = {}
    orbits: dict[str, list[int]] = {}
    prescribed: list[int] = []
    section = None
    objective_text: list[str] = []
    rows: list[list] = []
    fixed: dict[str, int] = {}
    generals: list[str] = []
    binaries: list[str] = []
    last_comment = None

    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('\\'):
            body = line[1:].strip()
            if body.startswith('subspace-model'):
                meta.update(_META_RE.findall(body))
                last_comment = None
            elif body.startswith('orbit '):
                name, _, members = body[len('orbit '):].partition('=')
                last_comment = orbits.setdefault(name.strip(), [])
                last_comment += [int(t) for t in members.split()]
            elif body.startswith('prescribed'):
                last_comment = prescribed
                prescribed += [int(t) for t in body[len('prescribed'):].split()]
            elif last_comment is not None and body[:1].isdigit():
                last_comment += [int(t) for t in body.split()]
            continue
        last_comment = None
        key = line.lower()
        if key in SECTIONS:
            section = SECTIONS[key]
            if section == 'end':
                break
            continue
        if section == 'objective':
            match = LABEL_RE.match(line)
            objective_text.append(match.group(2) if match else line)
        elif section == 'constraints':
            match = LABEL_RE.match(line)
            if match:
                rows.append([match.group(1), match.group(2), line_no])
            elif rows:
                rows[-1][1] += ' ' + line
            else:
                raise CodeFormatError('constraint text before any label', line_no, source)
        elif section == 'bounds':
            terms, sense, rhs = _parse_terms(line)
            if sense != '=' or len(terms) != 1 or rhs is None:
                raise CodeFormatError(f'only fixings "x = value" are supported, got {line!r}', line_no, source)
            fixed[terms[0][0]] = rhs
        elif section == 'general':
            generals += line.split()
        elif section == 'binary':
            binaries += line.split()
        else:
            raise CodeFormatError(f'unexpected line {line!r}', line_no, source)

    if 'v' not in meta:
        raise CodeFormatError('missing subspace-model metadata comment', None, source)
    v = int(meta['v'])
    variables = []
    for name in binaries:
        indices = orbits.get(name) or [name_index(name)]
        variables.append(Variable(name, tuple(subspace_at(v, i) for i in indices)))
    variables += [Variable(name, kind='general') for name in generals]

    objective_terms, _, _ = _parse_terms(' '.join(objective_text))
    objective: dict[str, int] = {}
    for name, c in objective_terms:
        objective[name] = objective.get(name, 0) + c
    constraints = []
    for name, body, line_no in rows:
        terms, sense, rhs = _parse_terms(body)
        if sense is None or rhs is None:
            raise CodeFormatError(f'constraint {name} lacks a sense or right-hand side', line_no, source)
        constraints.append(Constraint(name, tuple(terms), sense, rhs))

    dims = frozenset(int(k) for k in meta.get('dims', '').split(',') if k)
    cuts = tuple(c for c in meta.get('cuts', '-').split(',') if c and c != '-')
    m = IlpModel(
        v=v,
        d=int(meta.get('d', 1)),
        dims=dims,
        variables=variables,
        objective=objective,
        constraints=constraints,
        fixed=fixed,
        offset=int(meta.get('offset', 0)),
        group_order=int(meta.get('group_order', 1)),
        cuts=cuts,
        kind=meta.get('kind', 'packing'),
        prescribed=tuple(subspace_at(v, i) for i in prescribed),
    )
    m.check()
    return m


def import_lp(path) -> IlpModel:
    path = Path(path)
    return parse_lp(path.read_text(encoding='utf-8'), str(path))
