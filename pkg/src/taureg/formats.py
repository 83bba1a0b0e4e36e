"""Text formats for algebras (.alg) and modules (.mod).

Algebra files::

    # comments run to the end of the line
    vertices 3
    arrow a 2 1
    arrow b 3 2
    relation a*b
    relation 2*c*d - e*f        # coefficients are integers
    max_path_length 12          # optional search bound

Paths are arrow names joined by ``*`` in composition order: ``a*b`` is
"a after b".

Module files::

    dims 1 2 1
    matrix a
    1 0
    matrix b
    1
    0

Each ``matrix NAME`` is followed by d_t(a) rows of d_s(a) integers.
When either dimension is zero the block has no rows.  Arrows that are
not listed act by zero.  Entries are reduced mod p.
"""

from __future__ import annotations

import re

from .algebra import Algebra, AlgebraPresentation, Arrow, Quiver, Relation
from .errors import InvalidPresentation, ParseError
from .linalg import Matrix
from .rep import Representation

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|([*+-]))")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok, no, path, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", no, path) from None


def parse_relation(expr: str, no=None, path=None) -> Relation:
    tokens = []
    pos = 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {expr[pos:].strip()[:1]!r} in relation", no, path)
        num, name, op = m.groups()
        tokens.append(("num", int(num)) if num else ("name", name) if name else ("op", op))
        pos = m.end()
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        kind, val = tokens[i]
        if expect_term:
            if kind == "op" and val in "+-":
                sign = -sign if val == "-" else sign
                i += 1
                continue
            coef = 1
            if kind == "num":
                coef = val
                i += 1
                if i >= len(tokens) or tokens[i] != ("op", "*"):
                    raise ParseError("coefficient must be followed by '*'", no, path)
                i += 1
            word = []
            while True:
                if i >= len(tokens) or tokens[i][0] != "name":
                    raise ParseError("expected an arrow name", no, path)
                word.append(tokens[i][1])
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "*"):
                    i += 1
                    continue
                break
            terms.append((sign * coef, tuple(word)))
            sign = 1
            expect_term = False
        else:
            if kind != "op" or val == "*":
                raise ParseError(f"expected '+' or '-', got {val!r}", no, path)
            sign = -1 if val == "-" else 1
            expect_term = True
            i += 1
    if expect_term:
        raise ParseError("relation ends without a term", no, path)
    return Relation(tuple(terms))


def parse_algebra(text: str, path=None) -> AlgebraPresentation:
    n = None
    arrows = []
    relations = []
    max_len = None
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertices":
            if n is not None:
                raise ParseError("duplicate 'vertices' line", no, path)
            n = _int(rest, no, path)
            if n < 1:
                raise ParseError("need at least one vertex", no, path)
        elif head == "arrow":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError("usage: arrow NAME SOURCE TARGET", no, path)
            name, s, t = parts
            arrows.append((Arrow(name, _int(s, no, path), _int(t, no, path)), no))
        elif head == "relation":
            if not rest:
                raise ParseError("empty relation", no, path)
            relations.append((parse_relation(rest, no, path), no))
        elif head == "max_path_length":
            max_len = _int(rest, no, path)
        else:
            raise ParseError(f"unknown directive {head!r}", no, path)
    if n is None:
        raise ParseError("missing 'vertices' line", None, path)
    try:
        quiver = Quiver(n, tuple(a for a, _ in arrows))
    except InvalidPresentation as exc:
        raise ParseError(str(exc), None, path) from exc
    for rel, no in relations:
        for _, w in rel.terms:
            try:
                quiver.path_endpoints(w)
            except InvalidPresentation as exc:
                raise ParseError(str(exc), no, path) from exc
    return AlgebraPresentation(quiver, tuple(r for r, _ in relations), max_len)


def dump_algebra(pres: AlgebraPresentation) -> str:
    out = [f"vertices {pres.quiver.n}"]
    for a in pres.quiver.arrows:
        out.append(f"arrow {a.name} {a.source} {a.target}")
    for rel in pres.relations:
        parts = []
        for k, (c, w) in enumerate(rel.terms):
            path = "*".join(w)
            term = path if abs(c) == 1 else f"{abs(c)}*{path}"
            if k == 0:
                parts.append(term if c >= 0 else f"- {term}")
            else:
                parts.append(("+ " if c >= 0 else "- ") + term)
        out.append("relation " + " ".join(parts))
    if pres.max_path_length:
        out.append(f"max_path_length {pres.max_path_length}")
    return "\n".join(out) + "\n"


def parse_module(text: str, alg: Algebra, path=None) -> Representation:
    p = alg.p
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty module file", None, path)
    no, first = lines[0]
    head, _, rest = first.partition(" ")
    if head != "dims":
        raise ParseError("module file must start with 'dims'", no, path)
    dims = [_int(x, no, path) for x in rest.split()]
    if len(dims) != alg.n:
        raise ParseError(f"expected {alg.n} dimensions, got {len(dims)}", no, path)
    if any(d < 0 for d in dims):
        raise ParseError("negative dimension", no, path)
    maps = {}
    k = 1
    while k < len(lines):
        no, line = lines[k]
        head, _, name = line.partition(" ")
        name = name.strip()
        if head != "matrix" or not name:
            raise ParseError("expected 'matrix NAME'", no, path)
        try:
            a = alg.quiver.arrow(name)
        except InvalidPresentation:
            raise ParseError(f"unknown arrow {name!r}", no, path) from None
        if name in maps:
            raise ParseError(f"duplicate matrix for {name}", no, path)
        rows, cols = dims[a.target - 1], dims[a.source - 1]
        k += 1
        data = []
        if rows and cols:
            for r in range(rows):
                if k >= len(lines):
                    raise ParseError(f"matrix {name}: expected {rows} rows", None, path)
                rno, rline = lines[k]
                vals = [_int(x, rno, path) % p for x in rline.split()]
                if len(vals) != cols:
                    raise ParseError(f"matrix {name}: expected {cols} entries, got {len(vals)}", rno, path)
                data.append(vals)
                k += 1
        maps[name] = Matrix(rows, cols, data if rows and cols else [[0] * cols for _ in range(rows)], p)
    return Representation(alg, dims, maps)


def dump_module(M: Representation) -> str:
    out = ["dims " + " ".join(str(d) for d in M.dims)]
    for a in M.algebra.quiver.arrows:
        m = M.maps[a.name]
        out.append(f"matrix {a.name}")
        if m.rows and m.cols:
            for row in m.data:
                out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


def read_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), path)


def read_module(path, alg):
    with open(path, encoding="utf-8") as fh:
        return parse_module(fh.read(), alg, path)
