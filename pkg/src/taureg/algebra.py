"""Quivers, presentations A = KQ/I and the finite-dimensional algebras they define.

Paths are tuples of arrow names in composition order: ``("a", "b")``
is "a after b", so b is traversed first and t(b) = s(a).  Trivial paths
are represented by the empty word together with their vertex.

The algebra is built degree by degree.  In degree l the candidate
paths are a*x with x a basis path of degree l-1; the ideal in degree l
is spanned by the relations of length l and by (pi - nf(pi))*a for
every degree l-1 path pi that was eliminated.  Row reduction of that
span gives the normal forms, and the surviving paths form the basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

from .errors import (
    InvalidPresentation,
    NonHomogeneousRelation,
    NotAdmissible,
    NotFiniteDimensional,
)
from .linalg import DEFAULT_PRIME, cokernel, echelon, Matrix, nullspace

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.n < 0:
            raise InvalidPresentation("negative vertex count")
        seen = set()
        for a in self.arrows:
            if not _NAME_RE.match(a.name):
                raise InvalidPresentation(f"bad arrow name {a.name!r}")
            if a.name in seen:
                raise InvalidPresentation(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            for v in (a.source, a.target):
                if not 1 <= v <= self.n:
                    raise InvalidPresentation(f"arrow {a.name}: vertex {v} out of range 1..{self.n}")

    @cached_property
    def _by_name(self):
        return {a.name: a for a in self.arrows}

    def arrow(self, name) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise InvalidPresentation(f"unknown arrow {name!r}") from None

    def out_arrows(self, v):
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a.target == v]

    def path_endpoints(self, word):
        """(source, target) of a nonempty composable word, else error."""
        arrows = [self.arrow(x) for x in word]
        for left, right in zip(arrows, arrows[1:]):
            if right.target != left.source:
                raise InvalidPresentation(
                    f"path {'*'.join(word)} is not composable at {left.name}*{right.name}")
        return arrows[-1].source, arrows[0].target

    def vertices(self):
        return range(1, self.n + 1)


@dataclass(frozen=True)
class Relation:
    """A linear combination sum c * path; paths are arrow-name tuples."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(c), tuple(w)) for c, w in self.terms))

    @classmethod
    def path(cls, *names):
        return cls(((1, tuple(names)),))

    def reversed(self):
        return Relation(tuple((c, w[::-1]) for c, w in self.terms))

    def __str__(self):
        parts = []
        for c, w in self.terms:
            s = "*".join(w)
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple = ()
    max_path_length: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))

    @property
    def n(self):
        return self.quiver.n

    def default_max_length(self):
        longest = max((len(w) for r in self.relations for _, w in r.terms), default=1)
        return 2 * max(longest, 1) * max(self.quiver.n, 1)


class BasisPath(NamedTuple):
    source: int
    target: int
    word: tuple

    def __str__(self):
        return "*".join(self.word) if self.word else f"e{self.source}"


def _normalize_relation(rel, quiver, p):
    """Combine like terms mod p; return (source, target, length, terms) or None."""
    acc = {}
    for c, w in rel.terms:
        if not w:
            raise NotAdmissible(f"relation {rel} contains a trivial path")
        acc[w] = (acc.get(w, 0) + c) % p
    terms = [(c, w) for w, c in acc.items() if c]
    if not terms:
        return None
    ends = {quiver.path_endpoints(w) for _, w in terms}
    lengths = {len(w) for _, w in terms}
    if len(lengths) > 1:
        raise NonHomogeneousRelation(f"relation {rel} mixes path lengths {sorted(lengths)}")
    if len(ends) > 1:
        raise InvalidPresentation(f"relation {rel} is not a combination of parallel paths")
    (length,) = lengths
    if length < 2:
        raise NotAdmissible(f"relation {rel} has length {length} < 2")
    (s, t), = ends
    return s, t, length, terms


class Algebra:
    """A finite-dimensional quotient KQ/I with an explicit path basis.

    ``basis`` lists BasisPath values; ``block(i, j)`` gives the indices of
    basis paths from i to j, i.e. a basis of e_j A e_i.  Elements are
    sparse dicts {basis index: coefficient}.
    """

    def __init__(self, presentation: AlgebraPresentation, p: int = DEFAULT_PRIME, vertex_labels=None):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.n = self.quiver.n
        self.p = p
        self.vertex_labels = tuple(vertex_labels) if vertex_labels else tuple(range(1, self.n + 1))
        self._opposite = None
        self._mult_cache = {}
        self._reduce_cache = {}
        self._left_cache = {}
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        q, p = self.quiver, self.p
        pres = self.presentation
        max_len = pres.max_path_length or pres.default_max_length()
        rels_by_len = {}
        clean = []
        for rel in pres.relations:
            norm = _normalize_relation(rel, q, p)
            if norm is None:
                continue
            s, t, length, terms = norm
            rels_by_len.setdefault(length, []).append(terms)
            clean.append(Relation(tuple(terms)))
        self.relations = tuple(clean)

        basis = [BasisPath(i, i, ()) for i in q.vertices()]
        self.idempotent = {i: i - 1 for i in q.vertices()}
        prev = []
        for a in q.arrows:
            basis.append(BasisPath(a.source, a.target, (a.name,)))
            prev.append(len(basis) - 1)
        # nf[word] = {basis index: coeff} for every candidate word of each degree
        self._nf = {(a.name,): {self.idempotent_count() + k: 1} for k, a in enumerate(q.arrows)}
        self._cand_index = {1: {(a.name,): k for k, a in enumerate(q.arrows)}}
        self._basis = basis
        self._pivot_words = {1: []}
        self.vanishing_degree = None
        if not prev:
            self.vanishing_degree = 1
        length = 1
        while prev:
            length += 1
            if length > max_len:
                raise NotFiniteDimensional(
                    f"no vanishing degree found up to path length {max_len}")
            prev = self._build_degree(length, prev, rels_by_len.get(length, []))
            if not prev:
                self.vanishing_degree = length
        for rl in rels_by_len:
            if self.vanishing_degree is not None and rl > self.vanishing_degree:
                # relations longer than the vanishing degree are automatically in I
                pass
        self.basis = tuple(basis)
        blocks = {}
        for idx, bp in enumerate(basis):
            blocks.setdefault((bp.source, bp.target), []).append(idx)
        self._blocks = {k: tuple(v) for k, v in blocks.items()}
        self._pos_in_block = {}
        for k, v in self._blocks.items():
            for pos, idx in enumerate(v):
                self._pos_in_block[idx] = pos
        self.dim = len(basis)

    def idempotent_count(self):
        return self.n

    def _build_degree(self, length, prev, rels):
        q, p = self.quiver, self.p
        basis = self._basis
        cand = []
        for b in prev:
            bp = basis[b]
            for a in q.arrows:
                if a.source == bp.target:
                    cand.append((a.name,) + bp.word)
        cidx = {w: k for k, w in enumerate(cand)}
        self._cand_index[length] = cidx

        def to_cand(word):
            # word of this length -> sparse vector over candidates
            head, rest = word[0], word[1:]
            out = {}
            for b, c in self.reduce(rest).items():
                k = cidx[(head,) + basis[b].word]
                out[k] = (out.get(k, 0) + c) % p
            return out

        gens = []
        for terms in rels:
            v = {}
            for c, w in terms:
                for k, x in to_cand(w).items():
                    v[k] = (v.get(k, 0) + c * x) % p
            gens.append(v)
        for pw in self._pivot_words[length - 1]:
            nf = self._nf[pw]
            src = q.path_endpoints(pw)[0]
            for a in q.in_arrows(src):
                v = to_cand(pw + (a.name,))
                for b, c in nf.items():
                    for k, x in to_cand(basis[b].word + (a.name,)).items():
                        v[k] = (v.get(k, 0) - c * x) % p
                gens.append(v)

        # split candidates and generators by (source, target) block
        cand_block = {}
        for k, w in enumerate(cand):
            cand_block.setdefault(q.path_endpoints(w), []).append(k)
        gens_by_block = {}
        for v in gens:
            v = {k: c for k, c in v.items() if c}
            if not v:
                continue
            key = q.path_endpoints(cand[next(iter(v))])
            gens_by_block.setdefault(key, []).append(v)

        new_prev = []
        pivots_here = []
        new_index = {}
        for key, members in cand_block.items():
            pos = {k: j for j, k in enumerate(members)}
            rows = []
            for v in gens_by_block.get(key, []):
                row = [0] * len(members)
                for k, c in v.items():
                    row[pos[k]] = c
                rows.append(row)
            pivots = echelon(rows, len(members), p) if rows else []
            pivset = set(pivots)
            for j, k in enumerate(members):
                if j not in pivset:
                    basis.append(BasisPath(key[0], key[1], cand[k]))
                    new_index[k] = len(basis) - 1
                    new_prev.append(len(basis) - 1)
                    self._nf[cand[k]] = {len(basis) - 1: 1}
            for r, j in enumerate(pivots):
                w = cand[members[j]]
                nf = {}
                for jj, x in enumerate(rows[r]):
                    if x and jj != j:
                        nf[new_index[members[jj]]] = -x % p
                self._nf[w] = nf
                pivots_here.append(w)
        self._pivot_words[length] = pivots_here
        return new_prev

    # -- arithmetic --------------------------------------------------------

    def reduce(self, word) -> dict:
        """Normal form of a nonempty path word as a sparse vector."""
        word = tuple(word)
        hit = self._nf.get(word)
        if hit is not None:
            return hit
        hit = self._reduce_cache.get(word)
        if hit is not None:
            return hit
        vd = self.vanishing_degree
        if vd is not None and len(word) >= vd:
            out = {}
        elif len(word) == 1:
            raise InvalidPresentation(f"unknown arrow {word[0]!r}")
        else:
            p = self.p
            head, rest = word[0], word[1:]
            out = {}
            for b, c in self.reduce(rest).items():
                for k, x in self._nf[(head,) + self._basis[b].word].items():
                    out[k] = (out.get(k, 0) + c * x) % p
            out = {k: c for k, c in out.items() if c}
        self._reduce_cache[word] = out
        return out

    def mult(self, x: int, y: int) -> dict:
        """Product of basis elements x*y (x after y) as a sparse vector."""
        key = (x, y)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        bx, by = self.basis[x], self.basis[y]
        if by.target != bx.source:
            out = {}
        elif not bx.word:
            out = {y: 1}
        elif not by.word:
            out = {x: 1}
        else:
            out = self.reduce(bx.word + by.word)
        self._mult_cache[key] = out
        return out

    def multiply(self, u: dict, v: dict) -> dict:
        p = self.p
        out = {}
        for x, c in u.items():
            for y, d in v.items():
                for k, e in self.mult(x, y).items():
                    out[k] = (out.get(k, 0) + c * d * e) % p
        return {k: c for k, c in out.items() if c}

    def element_of_word(self, word, vertex=None) -> dict:
        if not word:
            return {self.idempotent[vertex]: 1}
        return dict(self.reduce(word))

    # -- bookkeeping -------------------------------------------------------

    def block(self, source, target):
        """Basis indices of paths from source to target (a basis of e_t A e_s)."""
        return self._blocks.get((source, target), ())

    def position_in_block(self, idx):
        return self._pos_in_block[idx]

    def block_dim(self, source, target):
        return len(self.block(source, target))

    def degree(self, idx):
        return len(self.basis[idx].word)

    def cartan(self):
        """Matrix C with C[j][i] = dim e_j A e_i (paths i -> j)."""
        return [[self.block_dim(i, j) for i in self.quiver.vertices()] for j in self.quiver.vertices()]

    def graded_dims(self):
        out = {}
        for bp in self.basis:
            key = (bp.source, bp.target, len(bp.word))
            out[key] = out.get(key, 0) + 1
        return out

    def left_action(self, i, arrow_name):
        """Matrix of left multiplication by an arrow on P(i) = A e_i.

        Maps coordinates of block(i, s(a)) to block(i, t(a)).
        """
        key = (i, arrow_name)
        hit = self._left_cache.get(key)
        if hit is not None:
            return hit
        a = self.quiver.arrow(arrow_name)
        src = self.block(i, a.source)
        tgt = self.block(i, a.target)
        pos = {idx: r for r, idx in enumerate(tgt)}
        m = Matrix.zeros(len(tgt), len(src), self.p)
        arrow_idx = self._nf[(arrow_name,)]
        (aidx,) = arrow_idx
        for c, x in enumerate(src):
            for k, v in self.mult(aidx, x).items():
                m.data[pos[k]][c] = v
        self._left_cache[key] = m
        return m

    def to_opposite(self, u: dict) -> dict:
        """Image of an element under the anti-isomorphism A -> A^op."""
        op = opposite(self)
        p = self.p
        out = {}
        for idx, c in u.items():
            bp = self.basis[idx]
            if not bp.word:
                v = {op.idempotent[bp.source]: 1}
            else:
                v = op.reduce(bp.word[::-1])
            for k, x in v.items():
                out[k] = (out.get(k, 0) + c * x) % p
        return {k: c for k, c in out.items() if c}

    def __repr__(self):
        return f"Algebra(n={self.n}, dim={self.dim}, arrows={[a.name for a in self.quiver.arrows]})"


def build_algebra(pres: AlgebraPresentation, p: int = DEFAULT_PRIME, vertex_labels=None) -> Algebra:
    return Algebra(pres, p, vertex_labels)


def opposite(alg: Algebra) -> Algebra:
    """The opposite algebra; arrows keep their names with reversed direction."""
    if alg._opposite is None:
        q = alg.quiver
        arrows = tuple(Arrow(a.name, a.target, a.source) for a in q.arrows)
        pres = AlgebraPresentation(
            Quiver(q.n, arrows),
            tuple(r.reversed() for r in alg.presentation.relations),
            alg.presentation.max_path_length,
        )
        op = Algebra(pres, alg.p, alg.vertex_labels)
        op._opposite = alg
        alg._opposite = op
    return alg._opposite


def ideal_block_projection(alg: Algebra, removed, i, j):
    """Cokernel projection of the block e_j A e_i modulo (A e A)."""
    block = alg.block(i, j)
    pos = {idx: r for r, idx in enumerate(block)}
    cols = []
    for r in removed:
        for y in alg.block(i, r):
            for x in alg.block(r, j):
                v = alg.mult(x, y)
                if v:
                    col = [0] * len(block)
                    for k, c in v.items():
                        col[pos[k]] = c
                    cols.append(col)
    span = Matrix.from_columns(cols, len(block), alg.p)
    proj, _ = cokernel(span)
    return proj, pos


def ideal_dimension(alg: Algebra, removed) -> int:
    """dim of A e A where e is the sum of the idempotents at ``removed``."""
    removed = set(removed)
    total = 0
    for i in alg.quiver.vertices():
        for j in alg.quiver.vertices():
            if i in removed or j in removed:
                total += alg.block_dim(i, j)
            else:
                proj, _ = ideal_block_projection(alg, removed, i, j)
                total += alg.block_dim(i, j) - proj.rows
    return total


def quotient_by_idempotent(alg: Algebra, removed):
    """Presentation and algebra of B = A/AeA, e = sum of e_v for v in removed.

    Kept vertices are relabelled 1..m in increasing order; the original
    labels are recorded in ``B.vertex_labels``.
    """
    removed = set(removed)
    q, p = alg.quiver, alg.p
    kept = [v for v in q.vertices() if v not in removed]
    if not kept:
        raise InvalidPresentation("cannot remove every vertex")
    if not removed <= set(q.vertices()):
        raise InvalidPresentation("removed vertices out of range")
    relabel = {v: k + 1 for k, v in enumerate(kept)}
    arrows = [a for a in q.arrows if a.source in relabel and a.target in relabel]
    projs = {}

    def image(word):
        s, t = q.path_endpoints(word)
        if (s, t) not in projs:
            projs[(s, t)] = ideal_block_projection(alg, removed, s, t)
        proj, pos = projs[(s, t)]
        vec = [0] * len(pos)
        for k, c in alg.reduce(word).items():
            vec[pos[k]] = c
        return (s, t), proj.apply(vec)

    relations = []
    words = [(a.name,) for a in arrows]
    while words:
        cand = []
        for w in words:
            t = q.arrow(w[0]).target
            for a in arrows:
                if a.source == t:
                    cand.append((a.name,) + w)
        groups = {}
        for w in cand:
            key, img = image(w)
            if not any(img):
                relations.append(Relation(((1, w),)))
            else:
                groups.setdefault(key, []).append((w, img))
        words = []
        for key, members in groups.items():
            words.extend(w for w, _ in members)
            ncols = len(members)
            rows = [[img[r] for _, img in members] for r in range(len(members[0][1]))]
            for vec in nullspace(rows, ncols, p):
                terms = tuple((c, members[k][0]) for k, c in enumerate(vec) if c)
                relations.append(Relation(terms))
    bq = Quiver(len(kept), tuple(Arrow(a.name, relabel[a.source], relabel[a.target]) for a in arrows))
    pres = AlgebraPresentation(bq, tuple(relations))
    labels = tuple(alg.vertex_labels[v - 1] for v in kept)
    return pres, Algebra(pres, p, labels)


# -- combinatorial classifiers -----------------------------------------------

def is_triangular(q: Quiver):
    """(True, order) if Q has no oriented cycle, else (False, None).

    The order lists vertices so that every arrow goes from a later vertex
    to an earlier one; sinks come first.
    """
    placed = []
    done = set()
    remaining = set(q.vertices())
    while remaining:
        ready = sorted(v for v in remaining
                       if all(a.target in done for a in q.out_arrows(v)))
        if not ready:
            return False, None
        v = ready[0]
        placed.append(v)
        done.add(v)
        remaining.discard(v)
    return True, tuple(placed)


def _monomial_length_two(pres: AlgebraPresentation):
    """The set of relation words if every relation is a length-2 path, else None."""
    out = set()
    for rel in pres.relations:
        terms = [(c, w) for c, w in rel.terms if c]
        if len(terms) != 1 or len(terms[0][1]) != 2:
            return None
        out.add(terms[0][1])
    return out


def is_gentle(pres: AlgebraPresentation) -> bool:
    q = pres.quiver
    rels = _monomial_length_two(pres)
    if rels is None:
        return False
    for w in rels:
        q.path_endpoints(w)
    for v in q.vertices():
        if len(q.out_arrows(v)) > 2 or len(q.in_arrows(v)) > 2:
            return False
    for a in q.arrows:
        # arrows b leaving t(a): exactly one of b*a in I when there are two
        outs = q.out_arrows(a.target)
        for b, c in combinations(outs, 2):
            if ((b.name, a.name) in rels) == ((c.name, a.name) in rels):
                return False
        ins = q.in_arrows(a.source)
        for b, c in combinations(ins, 2):
            if ((a.name, b.name) in rels) == ((a.name, c.name) in rels):
                return False
    return True


def chen_lu_gentle_gorenstein(pres: AlgebraPresentation) -> bool:
    """Combinatorial 1-Iwanaga-Gorenstein test for gentle algebras.

    Every relation a_t*a_1 must close up into a chain a_1, a_2, ..., a_t
    with each a_i*a_{i+1} again a relation.
    """
    from .errors import NotGentle

    if not is_gentle(pres):
        raise NotGentle("presentation is not gentle")
    return chen_lu_trace(pres)[0]


def chen_lu_trace(pres: AlgebraPresentation):
    """(verdict, list of (relation, chain or None)) for the Chen-Lu test."""
    rels = _monomial_length_two(pres) or set()
    q = pres.quiver
    trace = []
    ok = True
    for last, first in sorted(rels):
        chain = [first]
        cur = first
        seen = {first}
        found = cur == last
        while not found:
            nxt = [a.name for a in q.in_arrows(q.arrow(cur).source) if (cur, a.name) in rels]
            if not nxt or nxt[0] in seen:
                break
            cur = nxt[0]
            seen.add(cur)
            chain.append(cur)
            found = cur == last
        trace.append(((last, first), chain if found else None))
        ok = ok and found
    return ok, trace


def nakayama_symmetry_criterion(n: int, t: int) -> bool:
    """Whether J^t on the cyclic quiver with n vertices has Irr^tau = Irr^tau-."""
    if n < 1 or t < 2:
        raise ValueError("need n >= 1 and t >= 2")
    if (t - (n - 1)) % n:
        return False
    r = (t - (n - 1)) // n
    if r < 0:
        return False
    if n == 1:
        return r >= 2
    if n == 2:
        return r >= 1
    return True


def cyclic_nakayama_parameters(alg: Algebra):
    """(n, t) when A is KQ/J^t for the oriented cycle Q; t is None if I is not a power of J.

    Raises NotNakayama when the quiver is not an oriented cycle.
    """
    from .errors import NotNakayama

    q = alg.quiver
    n = q.n
    if n == 0 or len(q.arrows) != n:
        raise NotNakayama("quiver is not an oriented cycle")
    for v in q.vertices():
        if len(q.out_arrows(v)) != 1 or len(q.in_arrows(v)) != 1:
            raise NotNakayama("quiver is not an oriented cycle")
    # connectedness: follow the arrows from vertex 1
    seen, v = set(), 1
    while v not in seen:
        seen.add(v)
        v = q.out_arrows(v)[0].target
    if len(seen) != n:
        raise NotNakayama("quiver is a disjoint union of cycles")
    lengths = {sum(alg.block_dim(i, j) for j in q.vertices()) for i in q.vertices()}
    if len(lengths) != 1:
        return n, None
    (t,) = lengths
    return n, t
