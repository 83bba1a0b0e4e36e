"""Projective pairs, generic ranks and generic cokernels.

r(P1, P0) is the maximal rank of a map P1 -> P0.  It is estimated by
evaluating random elements of Hom(P1, P0): over GF(p) with p ~ 2^61 a
random element misses the generic rank with probability at most
dim(P0)/p per trial, so the reported value is a lower bound that is
attained with overwhelming probability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InternalInconsistency, RelationViolation
from .rep import (
    ProjMap,
    Representation,
    hom_dim,
    identity_projmap,
    minimal_projective_presentation,
    mult_vector,
    vertices_of,
    g_vector,
)

DEFAULT_SEED = 20240611
RESAMPLE_CAP = 32


def default_rng(rng=None):
    return rng if rng is not None else random.Random(DEFAULT_SEED)


@dataclass(frozen=True)
class ProjectivePair:
    algebra: object
    p1_mult: tuple
    p0_mult: tuple

    def __post_init__(self):
        object.__setattr__(self, "p1_mult", tuple(self.p1_mult))
        object.__setattr__(self, "p0_mult", tuple(self.p0_mult))

    @property
    def source(self):
        return vertices_of(self.p1_mult)

    @property
    def target(self):
        return vertices_of(self.p0_mult)

    def hom_basis(self):
        """Basis of Hom(P1, P0): one unit ProjMap per (target slot, source slot, path)."""
        alg = self.algebra
        src, tgt = self.source, self.target
        out = []
        for l, j in enumerate(tgt):
            for k, i in enumerate(src):
                for idx in alg.block(j, i):
                    entries = [[{} for _ in src] for _ in tgt]
                    entries[l][k] = {idx: 1}
                    out.append(ProjMap(alg, src, tgt, entries, check=False))
        return out

    def hom_dim(self):
        alg = self.algebra
        n = alg.n
        return sum(self.p1_mult[i - 1] * self.p0_mult[j - 1] * alg.block_dim(j, i)
                   for i in range(1, n + 1) for j in range(1, n + 1))


@dataclass
class GenericSample:
    coefficients: tuple
    map: ProjMap
    rank: int
    vertex_ranks: tuple
    cok_dims: tuple

    @property
    def morphism(self):
        return self.map.to_morphism()


def random_projmap(pair: ProjectivePair, rng):
    """A uniformly random element of Hom(P1, P0) and its coefficient vector."""
    alg = pair.algebra
    src, tgt = pair.source, pair.target
    coeffs = []
    entries = []
    for j in tgt:
        row = []
        for i in src:
            u = {}
            for idx in alg.block(j, i):
                c = rng.randrange(alg.p)
                coeffs.append(c)
                if c:
                    u[idx] = c
            row.append(u)
        entries.append(row)
    return tuple(coeffs), ProjMap(alg, src, tgt, entries, check=False)


def _sample(pair, rng):
    coeffs, f = random_projmap(pair, rng)
    m = f.to_morphism()
    vr = m.vertex_ranks()
    cok = tuple(d - r for d, r in zip(m.target.dims, vr))
    return GenericSample(coeffs, f, sum(vr), vr, cok)


def generic_rank(pair: ProjectivePair, trials: int = 5, rng=None):
    """(r, witness): the largest rank seen over ``trials`` random maps.

    The witness attains the coordinatewise maximum of the per-vertex
    ranks; if no sample does, more are drawn (up to RESAMPLE_CAP).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = default_rng(rng)
    samples = [_sample(pair, rng) for _ in range(trials)]
    best = tuple(max(s.vertex_ranks[v] for s in samples) for v in range(pair.algebra.n))
    for _ in range(RESAMPLE_CAP):
        for s in samples:
            if s.vertex_ranks == best:
                return s.rank, s
        s = _sample(pair, rng)
        samples.append(s)
        best = tuple(max(a, b) for a, b in zip(best, s.vertex_ranks))
    raise InternalInconsistency("no sample attains all per-vertex maximal ranks")


def cokernel_module(f: ProjMap):
    """(Cok f, projection) with the relations of A re-verified."""
    C, epi = f.cokernel()
    try:
        C.check_relations()
    except RelationViolation as exc:
        raise InternalInconsistency(f"cokernel violates a relation: {exc}") from exc
    return C, epi


@dataclass(frozen=True)
class PresentationDecomposition:
    p1_min: tuple
    p0_min: tuple
    identity_part: tuple
    pf_part: tuple
    module: Representation


def decompose_presentation(f: ProjMap) -> PresentationDecomposition:
    """Split f as (minimal presentation of Cok f) + (1_P) + (P_f -> 0), up to multiplicities."""
    alg = f.algebra
    n = alg.n
    M, _ = cokernel_module(f)
    pres = minimal_projective_presentation(M)
    g = g_vector(M)
    p1 = mult_vector(f.source, n)
    p0 = mult_vector(f.target, n)
    pf = tuple(a - b - c for a, b, c in zip(p1, p0, g))
    ident = tuple(a - b - c for a, b, c in zip(p1, pres.p1_mult, pf))
    if any(x < 0 for x in pf + ident):
        raise InternalInconsistency(f"negative multiplicities in decomposition: P={ident}, P_f={pf}")
    if tuple(a - b for a, b in zip(p0, pres.p0_mult)) != ident:
        raise InternalInconsistency("identity part does not match on the P0 side")
    return PresentationDecomposition(pres.p1_mult, pres.p0_mult, ident, pf, M)


def pair_generic_rank(alg, p1_mult, p0_mult, trials=5, rng=None):
    return generic_rank(ProjectivePair(alg, p1_mult, p0_mult), trials, rng)[0]


def maxrank_criterion(f: ProjMap, trials: int = 5, rng=None) -> bool:
    """rk f = r(P1, P0), checked against: f_M of maximal rank and Hom(P_f, Cok f) = 0."""
    from .rep import projective_sum

    rng = default_rng(rng)
    alg = f.algebra
    n = alg.n
    lhs = f.rank() == pair_generic_rank(alg, mult_vector(f.source, n), mult_vector(f.target, n), trials, rng)
    dec = decompose_presentation(f)
    M = dec.module
    pres = minimal_projective_presentation(M)
    min_ok = pres.map.rank() == pair_generic_rank(alg, pres.p1_mult, pres.p0_mult, trials, rng)
    pf_ok = hom_dim(projective_sum(alg, vertices_of(dec.pf_part)), M) == 0
    rhs = min_ok and pf_ok
    if lhs != rhs:
        raise InternalInconsistency("maximal rank criterion: the two sides disagree")
    return lhs


def presentation_with_extras(f: ProjMap, identity_vertices=(), pf_vertices=()) -> ProjMap:
    """f + 1_P + (P_f -> 0): a non-minimal presentation of the same cokernel."""
    alg = f.algebra
    out = f
    if identity_vertices:
        out = out.direct_sum(identity_projmap(alg, identity_vertices))
    if pf_vertices:
        out = out.direct_sum(ProjMap(alg, tuple(pf_vertices), (), [], check=False))
    return out


def random_module(alg, rng, max_p0=2, max_p1=2, sparsity=0.5, max_dim=None):
    """Cokernel of a sparse random map between small sums of projectives."""
    n = alg.n
    for _ in range(100):
        k0 = rng.randint(1, max_p0)
        k1 = rng.randint(0, max_p1)
        tgt = tuple(sorted(rng.randint(1, n) for _ in range(k0)))
        src = tuple(sorted(rng.randint(1, n) for _ in range(k1)))
        entries = []
        for j in tgt:
            row = []
            for i in src:
                u = {}
                for idx in alg.block(j, i):
                    if rng.random() < sparsity:
                        u[idx] = rng.randrange(1, alg.p) if rng.random() < 0.7 else rng.randint(1, 3)
                row.append(u)
            entries.append(row)
        M, _ = cokernel_module(ProjMap(alg, src, tgt, entries, check=False))
        if max_dim is None or M.dim <= max_dim:
            return M
    return M
