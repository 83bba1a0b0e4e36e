"""tau-regularity and the component-level procedures built on it.

A module M is tau-regular exactly when its minimal presentation
f_M : P1 -> P0 has the maximal rank r(P1, P0).  Everything here is
phrased in those terms: components are produced as generic cokernels,
identified by g-vectors, and moved around by adding a simple projective
to one side of the presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .algebra import Algebra, is_triangular, quotient_by_idempotent
from .errors import (
    InternalInconsistency,
    NotSimpleProjective,
    NotTriangular,
    SimpleNotInSupport,
    ValidationError,
)
from .presentations import (
    ProjectivePair,
    cokernel_module,
    decompose_presentation,
    default_rng,
    generic_rank,
    pair_generic_rank,
)
from .rep import (
    ProjMap,
    Representation,
    direct_sum,
    dual,
    ext1,
    g_vector,
    hom_dim,
    injective,
    invariants_E,
    inj_summands,
    minimal_projective_presentation,
    power,
    proj_dim_at_most,
    inj_dim_at_most,
    proj_summands,
    projective,
    quotient_representation,
    radical,
    simple,
    socle,
    tau,
    tau_minus,
    zero_module,
)
from .linalg import Matrix


def is_tau_regular(M: Representation, trials: int = 5, rng=None) -> bool:
    """rk(f_M) = r(P1^M, P0^M)."""
    pres = minimal_projective_presentation(M)
    if not pres.p1:
        return True
    r = pair_generic_rank(M.algebra, pres.p1_mult, pres.p0_mult, trials, default_rng(rng))
    # a sample can only under-estimate r; f_M itself is one more sample
    return pres.map.rank() >= r


def is_tau_minus_regular(M: Representation, trials: int = 5, rng=None) -> bool:
    return is_tau_regular(dual(M), trials, rng)


@dataclass
class ComponentDescriptor:
    algebra: Algebra
    gvec: tuple
    dimvec: tuple
    generic_witness: Representation
    E_value: int
    pair: tuple

    def key(self):
        return (self.gvec, self.dimvec, self.E_value)


@dataclass
class TauRegularPair:
    component: ComponentDescriptor
    proj: tuple


@dataclass
class TauMinusRegularPair:
    witness: Representation
    inj: tuple


def describe(M: Representation, trials: int = 5, rng=None) -> ComponentDescriptor:
    """Descriptor of the component whose generic module is M (M must be tau-regular)."""
    if not is_tau_regular(M, trials, rng):
        raise InternalInconsistency("generic witness is not tau-regular")
    pres = minimal_projective_presentation(M)
    g = g_vector(M)
    p1, p0 = pres.p1_mult, pres.p0_mult
    if any(a and b for a, b in zip(p1, p0)):
        raise InternalInconsistency(f"presentation terms share summands: {p1} / {p0}")
    E = hom_dim(M, tau(M))
    return ComponentDescriptor(M.algebra, g, M.dims, M, E, (p1, p0))


def zero_component(alg: Algebra) -> ComponentDescriptor:
    z = (0,) * alg.n
    return ComponentDescriptor(alg, z, z, zero_module(alg), 0, (z, z))


def component_from_gvector(alg: Algebra, z, trials: int = 5, rng=None) -> TauRegularPair:
    """The tau-regular pair (Z, P) with g(Z) + [P] = z."""
    rng = default_rng(rng)
    z = tuple(int(x) for x in z)
    if len(z) != alg.n:
        raise ValidationError(f"g-vector {z} has the wrong length")
    p1 = tuple(max(x, 0) for x in z)
    p0 = tuple(max(-x, 0) for x in z)
    _, sample = generic_rank(ProjectivePair(alg, p1, p0), trials, rng)
    dec = decompose_presentation(sample.map)
    if any(dec.identity_part):
        raise InternalInconsistency("generic presentation with disjoint terms has an identity part")
    comp = describe(dec.module, trials, rng)
    proj = dec.pf_part
    if tuple(a + b for a, b in zip(comp.gvec, proj)) != z:
        raise InternalInconsistency("g(Z) + [P_f] differs from z")
    if any(a and b for a, b in zip(proj, comp.dimvec)):
        raise InternalInconsistency("P_f is not Hom-orthogonal to the generic module")
    return TauRegularPair(comp, proj)


# -- moving between A and B = A/AeA -------------------------------------------

def quotient_algebra(alg: Algebra, removed) -> Algebra:
    removed = frozenset(removed)
    if not removed:
        return alg
    cache = alg.__dict__.setdefault("_quotients", {})
    if removed not in cache:
        cache[removed] = quotient_by_idempotent(alg, removed)[1]
    return cache[removed]


def transport(M: Representation, target: Algebra) -> Representation:
    """Move a module between quotients of a common algebra, matching vertex labels.

    Vertices of ``target`` missing from M's algebra get dimension 0; the
    module must vanish on vertices of M's algebra missing from ``target``.
    """
    src_alg = M.algebra
    where = {lab: k for k, lab in enumerate(src_alg.vertex_labels)}
    dims = []
    for lab in target.vertex_labels:
        dims.append(M.dims[where[lab]] if lab in where else 0)
    kept = set(target.vertex_labels)
    for lab, d in zip(src_alg.vertex_labels, M.dims):
        if d and lab not in kept:
            raise ValidationError(f"module is supported at removed vertex {lab}")
    maps = {}
    for a in target.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        if dims[s] and dims[t]:
            maps[a.name] = M.maps[a.name]
    return Representation(target, dims, maps)


def reduction_check(alg: Algebra, removed, M: Representation, trials: int = 5, rng=None):
    """(tau_A-regular?, tau_B-regular?) for M supported away from ``removed``."""
    rng = default_rng(rng)
    B = quotient_algebra(alg, removed)
    MB = transport(M, B)
    a = is_tau_regular(M, trials, rng)
    b = is_tau_regular(MB, trials, rng)
    if a != b:
        raise InternalInconsistency(f"reduction changed the verdict: A {a}, B {b}")
    return a, b


# -- generic extensions and quotients by a simple projective -----------------

def _random_element(alg, source, target, rng):
    """Random element of e_target A e_source (paths source -> target)."""
    u = {}
    for idx in alg.block(source, target):
        c = rng.randrange(alg.p)
        if c:
            u[idx] = c
    return u


def _require_sink(alg, i):
    if not 1 <= i <= alg.n:
        raise ValidationError(f"vertex {i} out of range")
    if alg.quiver.out_arrows(i):
        raise NotSimpleProjective(f"S({i}) is not projective")


def generic_ext_simple_proj(Z: ComponentDescriptor, i: int, trials: int = 5, rng=None) -> ComponentDescriptor:
    """epsilon+: the component of generic extensions of Z by the simple projective S(i).

    Its presentation is (f; g) : P1 -> P0 + S(i) with f = f_M for the
    generic witness and g random.  Replacing the sampled f by f_M only
    moves it inside its Aut(P1) x Aut(P0)-orbit, which is absorbed by
    the uniformly random g.
    """
    rng = default_rng(rng)
    alg = Z.algebra
    _require_sink(alg, i)
    f = minimal_projective_presentation(Z.generic_witness).map
    row = tuple(_random_element(alg, i, v, rng) for v in f.source)
    h = ProjMap(alg, f.source, f.target + (i,), list(f.entries) + [row], check=False)
    M, _ = cokernel_module(h)
    out = describe(M, trials, rng)
    e = [0] * alg.n
    e[i - 1] = 1
    if out.gvec != tuple(a - b for a, b in zip(Z.gvec, e)):
        raise InternalInconsistency("epsilon+ did not lower the g-vector by [S]")
    if out.dimvec != tuple(a + b for a, b in zip(Z.dimvec, e)):
        raise InternalInconsistency("epsilon+ did not add the dimension vector of S")
    return out


def generic_quot_simple_proj(Z: ComponentDescriptor, i: int, trials: int = 5, rng=None) -> ComponentDescriptor:
    """epsilon-: generic quotients of Z by the simple projective S(i)."""
    rng = default_rng(rng)
    alg = Z.algebra
    _require_sink(alg, i)
    if Z.dimvec[i - 1] < 1:
        raise SimpleNotInSupport(f"S({i}) does not occur in the component")
    f = minimal_projective_presentation(Z.generic_witness).map
    entries = [list(row) + [_random_element(alg, v, i, rng)] for row, v in zip(f.entries, f.target)]
    h = ProjMap(alg, f.source + (i,), f.target, entries, check=False)
    if h.rank() != f.rank() + 1:
        raise InternalInconsistency("adding S to P1 did not raise the rank by one")
    M, _ = cokernel_module(h)
    out = describe(M, trials, rng)
    e = [0] * alg.n
    e[i - 1] = 1
    if out.gvec != tuple(a + b for a, b in zip(Z.gvec, e)):
        raise InternalInconsistency("epsilon- did not raise the g-vector by [S]")
    if out.dimvec != tuple(a - b for a, b in zip(Z.dimvec, e)):
        raise InternalInconsistency("epsilon- did not remove the dimension vector of S")
    return out


# -- triangular algebras ------------------------------------------------------

def triangular_chain(alg: Algebra):
    """[(B(k), local index of the k-th vertex)] for k = 1..n in topological order."""
    ok, order = is_triangular(alg.quiver)
    if not ok:
        raise NotTriangular("quiver has an oriented cycle")
    chain = []
    for k in range(len(order)):
        removed = frozenset(order[:k])
        B = quotient_algebra(alg, removed)
        kept = [v for v in alg.quiver.vertices() if v not in removed]
        chain.append((B, kept.index(order[k]) + 1, order[k]))
    return chain


def triangular_unique_component(alg: Algebra, d, trials: int = 5, rng=None) -> ComponentDescriptor:
    """The unique generically tau-regular component with dimension vector d."""
    rng = default_rng(rng)
    d = tuple(d)
    if len(d) != alg.n or any(x < 0 for x in d):
        raise ValidationError(f"bad dimension vector {d}")
    chain = triangular_chain(alg)
    Z = None
    for B, local, v in reversed(chain):
        Z = zero_component(B) if Z is None else describe(transport(Z.generic_witness, B), trials, rng)
        for _ in range(d[v - 1]):
            Z = generic_ext_simple_proj(Z, local, trials, rng)
    return Z


def triangular_components(alg: Algebra, max_total: int, trials: int = 5, rng=None):
    """All Z_d with |d| <= max_total, each over its home algebra B(k).

    Returns {d: (descriptor, local vertex)} where k is the first position
    in the topological order with d nonzero there.
    """
    rng = default_rng(rng)
    chain = triangular_chain(alg)
    n = alg.n
    pos = {v: k for k, (_, _, v) in enumerate(chain)}
    out = {}

    def home(d):
        for k, (_, _, v) in enumerate(chain):
            if d[v - 1]:
                return k
        return None

    def key_order(d):
        return sum(d)

    vecs = [d for d in product(range(max_total + 1), repeat=n) if sum(d) <= max_total]
    for d in sorted(vecs, key=key_order):
        k = home(d)
        if k is None:
            continue
        B, local, v = chain[k]
        prev = list(d)
        prev[v - 1] -= 1
        prev = tuple(prev)
        if any(prev):
            Zp, _ = out[prev]
            if Zp.algebra is not B:
                Zp = describe(transport(Zp.generic_witness, B), trials, rng)
        else:
            Zp = zero_component(B)
        out[d] = (generic_ext_simple_proj(Zp, local, trials, rng), local)
    return out


def arrow_ranks(M: Representation):
    from .linalg import rank

    return {a.name: rank(M.maps[a.name]) for a in M.algebra.quiver.arrows}


# -- algebra-level checks -----------------------------------------------------

def hereditary_check(alg: Algebra) -> bool:
    return all(proj_dim_at_most(simple(alg, i), 1) for i in alg.quiver.vertices())


def ig1_check(alg: Algebra) -> bool:
    for i in alg.quiver.vertices():
        if not proj_dim_at_most(injective(alg, i), 1):
            return False
        if not inj_dim_at_most(projective(alg, i), 1):
            return False
    return True


def ig1_all_quotients(alg: Algebra):
    """(True, None) if every A/AeA is 1-Iwanaga-Gorenstein, else (False, removed set)."""
    verts = list(alg.quiver.vertices())
    for k in range(len(verts)):
        for removed in combinations(verts, k):
            if not ig1_check(quotient_algebra(alg, removed)):
                return False, set(removed)
    return True, None


# -- the bijection between tau-regular and tau^- -regular pairs --------------

def _sum_with(M, alg, mult, builder):
    parts = [M] + [power(builder(alg, i), k) for i, k in zip(alg.quiver.vertices(), mult) if k]
    return direct_sum(*parts)


def sigma_pair_bijection(pair: TauRegularPair, trials: int = 5, rng=None) -> TauMinusRegularPair:
    """(Z, P) -> (tau Z + nu P, nu P_Z)."""
    rng = default_rng(rng)
    M = pair.component.generic_witness
    alg = M.algebra
    PZ = proj_summands(M)
    W = _sum_with(tau(M), alg, pair.proj, injective)
    if not is_tau_minus_regular(W, trials, rng):
        raise InternalInconsistency("sigma produced a module that is not tau^- -regular")
    if any(k and d for k, d in zip(PZ, W.dims)):
        raise InternalInconsistency("sigma: Hom(witness, nu P_Z) is nonzero")
    return TauMinusRegularPair(W, PZ)


def sigma_inverse(pair: TauMinusRegularPair, trials: int = 5, rng=None) -> TauRegularPair:
    """(Z', I) -> (tau^- Z' + nu^- I, nu^- I_Z')."""
    rng = default_rng(rng)
    W = pair.witness
    alg = W.algebra
    IW = inj_summands(W)
    N = _sum_with(tau_minus(W), alg, pair.inj, projective)
    if any(k and d for k, d in zip(IW, N.dims)):
        raise InternalInconsistency("sigma inverse: Hom(nu^- I, witness) is nonzero")
    return TauRegularPair(describe(N, trials, rng), IW)


# -- witnesses for Irr^tau != Irr^tau- ---------------------------------------

def default_pool(alg: Algebra):
    """P(i), I(i), S(i), rad P(i), P(i)/soc P(i), skipping zero modules."""
    pool = []
    verts = list(alg.quiver.vertices())
    for i in verts:
        pool.append((f"P({i})", projective(alg, i)))
    for i in verts:
        pool.append((f"I({i})", injective(alg, i)))
    for i in verts:
        pool.append((f"S({i})", simple(alg, i)))
    for i in verts:
        R, _ = radical(projective(alg, i))
        if R.dim:
            pool.append((f"rad P({i})", R))
    for i in verts:
        P = projective(alg, i)
        soc, incl = socle(P)
        Q, _ = quotient_representation(P, list(incl.blocks))
        if Q.dim:
            pool.append((f"P({i})/soc", Q))
    return pool


def interval_pool(alg: Algebra):
    """All quotients P(i)/rad^l P(i), l >= 1: the indecomposables of a Nakayama algebra."""
    pool = []
    p = alg.p
    for i in alg.quiver.vertices():
        P = projective(alg, i)
        top_len = max(alg.degree(x) for w in alg.quiver.vertices() for x in alg.block(i, w))
        for l in range(1, top_len + 2):
            bases = []
            for w in alg.quiver.vertices():
                blk = alg.block(i, w)
                cols = [[1 if r == c else 0 for r in range(len(blk))]
                        for c, x in enumerate(blk) if alg.degree(x) >= l]
                bases.append(Matrix.from_columns(cols, len(blk), p))
            Q, _ = quotient_representation(P, bases)
            pool.append((f"P({i})/rad^{l}", Q))
    return pool


@dataclass
class AsymmetryWitness:
    module: Representation
    labels: tuple
    E: int
    E_minus: int
    e: int

    @property
    def kind(self):
        if self.E == 0:
            return "tau-rigid but not tau^- -rigid"
        return "tau^- -rigid but not tau-rigid"


def witness_search(alg: Algebra, max_summands: int = 4, pool=None):
    """First direct sum of at most ``max_summands`` distinct pool modules with
    ext1 = 0 and exactly one of E, E- zero; None if there is none.

    Multiplicities are not searched: E, E- and ext1 of X^a + Y^b vanish
    exactly when they vanish for X + Y.
    """
    if pool is None:
        pool = default_pool(alg)
    m = len(pool)
    mods = [M for _, M in pool]
    taus = [tau(M) for M in mods]
    taums = [tau_minus(M) for M in mods]
    Et = [[hom_dim(mods[i], taus[j]) for j in range(m)] for i in range(m)]
    Em = [[hom_dim(taums[i], mods[j]) for j in range(m)] for i in range(m)]
    ex = [[ext1(mods[i], mods[j]) for j in range(m)] for i in range(m)]
    for size in range(1, max_summands + 1):
        for combo in combinations(range(m), size):
            e = sum(ex[i][j] for i in combo for j in combo)
            if e:
                continue
            E = sum(Et[i][j] for i in combo for j in combo)
            Emin = sum(Em[i][j] for i in combo for j in combo)
            if (E == 0) != (Emin == 0):
                M = direct_sum(*(mods[i] for i in combo))
                return AsymmetryWitness(M, tuple(pool[i][0] for i in combo), E, Emin, e)
    return None
