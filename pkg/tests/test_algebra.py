import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from taureg import catalog
from taureg.algebra import (
    AlgebraPresentation,
    Arrow,
    Quiver,
    Relation,
    build_algebra,
    chen_lu_gentle_gorenstein,
    cyclic_nakayama_parameters,
    ideal_dimension,
    is_gentle,
    is_triangular,
    nakayama_symmetry_criterion,
    opposite,
    quotient_by_idempotent,
)
from taureg.errors import (
    InvalidPresentation,
    NonHomogeneousRelation,
    NotAdmissible,
    NotFiniteDimensional,
    NotGentle,
    NotNakayama,
)


def pres(n, arrows, rels=()):
    return AlgebraPresentation(Quiver(n, tuple(Arrow(*a) for a in arrows)),
                               tuple(r if isinstance(r, Relation) else Relation.path(*r) for r in rels))


def count_paths(n, arrows, forbidden=()):
    """Oracle: enumerate paths avoiding forbidden subwords (monomial algebras)."""
    forbidden = [tuple(w) for w in forbidden]
    total = n
    frontier = [(a.name,) for a in arrows]
    by_name = {a.name: a for a in arrows}
    while frontier:
        total += len(frontier)
        nxt = []
        for w in frontier:
            for a in arrows:
                if a.source == by_name[w[0]].target:
                    cand = (a.name,) + w
                    if not any(cand[i:i + len(f)] == f for f in forbidden for i in range(len(cand))):
                        nxt.append(cand)
        frontier = nxt
        if total > 10_000:
            raise RuntimeError("too many paths")
    return total


def test_build_examples():
    A = build_algebra(catalog.abc())
    assert A.dim == 5
    assert sorted(str(b) for b in A.basis) == ["a", "b", "e1", "e2", "e3"]
    L = build_algebra(catalog.truncated_loop(3))
    assert [str(b) for b in L.basis] == ["e1", "a", "a*a"]
    T = build_algebra(catalog.two_cycle())
    assert T.dim == 4


def test_build_errors():
    with pytest.raises(NotFiniteDimensional):
        build_algebra(pres(1, [("a", 1, 1)]))
    with pytest.raises(NonHomogeneousRelation):
        build_algebra(pres(2, [("a", 1, 1), ("b", 1, 1)],
                           [Relation(((1, ("a", "a")), (1, ("b", "b", "b"))))]))
    with pytest.raises(NotAdmissible):
        build_algebra(pres(2, [("a", 1, 2)], [("a",)]))
    with pytest.raises(InvalidPresentation):
        build_algebra(pres(3, [("a", 2, 1), ("b", 3, 2)], [("b", "a")]))
    with pytest.raises(InvalidPresentation):
        Quiver(2, (Arrow("a", 1, 3),))
    with pytest.raises(InvalidPresentation):
        Quiver(2, (Arrow("a", 1, 2), Arrow("a", 2, 1)))


def test_cancelling_relation_is_dropped():
    rel = Relation(((1, ("a", "a")), (-1, ("a", "a"))))
    L = build_algebra(pres(1, [("a", 1, 1)], [rel, ("a", "a", "a")]))
    assert L.dim == 3


def test_idempotents_and_products():
    A = build_algebra(catalog.two_cycle_aba())
    e1, e2 = A.idempotent[1], A.idempotent[2]
    assert A.mult(e1, e2) == {}
    assert A.mult(e1, e1) == {e1: 1}
    # sum of idempotents is the identity on every basis element
    for x in range(A.dim):
        left = {}
        for e in (e1, e2):
            for k, c in A.mult(e, x).items():
                left[k] = left.get(k, 0) + c
        assert left == {x: 1}
    for bp in A.basis:
        if bp.word:
            assert A.reduce(bp.word) == {A.basis.index(bp): 1}


def test_associativity_on_catalog():
    for name in ("twocycle_aba", "square", "loop3", "nak_n2_t3"):
        A = catalog.algebra(name)
        for x, y, z in itertools.product(range(A.dim), repeat=3):
            assert A.multiply(A.multiply({x: 1}, {y: 1}), {z: 1}) == A.multiply({x: 1}, A.multiply({y: 1}, {z: 1}))


def test_commutative_square():
    A = catalog.algebra("square")
    assert A.dim == 9
    ab = A.reduce(("a", "b"))
    cd = A.reduce(("c", "d"))
    assert ab == cd and ab


@st.composite
def acyclic_quivers(draw):
    n = draw(st.integers(1, 5))
    m = draw(st.integers(0, 6))
    arrows = []
    for k in range(m):
        s = draw(st.integers(2, n)) if n > 1 else None
        if s is None:
            break
        t = draw(st.integers(1, s - 1))
        arrows.append(Arrow(f"x{k}", s, t))
    return n, arrows


@settings(max_examples=60, deadline=None)
@given(acyclic_quivers())
def test_path_algebra_dimension_matches_path_count(data):
    n, arrows = data
    A = build_algebra(AlgebraPresentation(Quiver(n, tuple(arrows))))
    assert A.dim == count_paths(n, arrows)
    assert A.dim == sum(A.block_dim(i, j) for i in range(1, n + 1) for j in range(1, n + 1))


@pytest.mark.parametrize("name", ["abc", "twocycle", "threecycle", "double_arrow_gentle", "loop2arm",
                                  "nak_n2_t3", "nak_n3_t2", "twocycle_legs"])
def test_monomial_dimension_matches_enumeration(name):
    p = catalog.CATALOG[name]()
    forbidden = [w for r in p.relations for _, w in r.terms]
    assert build_algebra(p).dim == count_paths(p.quiver.n, p.quiver.arrows, forbidden)


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_opposite_is_involution(name):
    A = catalog.algebra(name)
    op = opposite(A)
    assert op.dim == A.dim
    assert opposite(op) is A
    flipped = {(t, s, l): c for (s, t, l), c in A.graded_dims().items()}
    assert op.graded_dims() == flipped
    fresh = build_algebra(op.presentation)
    assert fresh.graded_dims() == op.graded_dims()


def test_opposite_of_abc():
    op = opposite(catalog.algebra("abc"))
    assert {(a.name, a.source, a.target) for a in op.quiver.arrows} == {("a", 1, 2), ("b", 2, 3)}
    assert op.presentation.relations[0].terms == ((1, ("b", "a")),)


def test_quotient_examples():
    A = catalog.algebra("abc")
    pres_b, B = quotient_by_idempotent(A, {1})
    assert B.dim == 3 and B.n == 2 and not B.relations
    assert B.vertex_labels == (2, 3)
    _, B = quotient_by_idempotent(catalog.algebra("twocycle"), {2})
    assert B.dim == 1
    _, B = quotient_by_idempotent(catalog.algebra("a3"), {1, 2})
    assert B.dim == 1
    with pytest.raises(InvalidPresentation):
        quotient_by_idempotent(A, {1, 2, 3})


def test_quotient_kills_loop_through_removed_vertex():
    # 1 <-> 2 with aba = 0: removing 2 leaves only e1 (no loop at 1)
    _, B = quotient_by_idempotent(catalog.algebra("twocycle_aba"), {2})
    assert B.dim == 1
    # removing 1 leaves e2 only as well; ab passes through 1
    _, B = quotient_by_idempotent(catalog.algebra("twocycle_aba"), {1})
    assert B.dim == 1


def _subsets(n):
    for k in range(1, n):
        yield from itertools.combinations(range(1, n + 1), k)


@pytest.mark.parametrize("name", ["abc", "square", "twocycle_legs", "double_arrow_gentle", "nak_n3_t2",
                                  "twocycle_aba", "loop2arm", "threecycle"])
def test_quotient_dimension_oracle(name):
    A = catalog.algebra(name)
    for removed in _subsets(A.n):
        _, B = quotient_by_idempotent(A, removed)
        assert B.dim == A.dim - ideal_dimension(A, removed)


@pytest.mark.parametrize("name", ["square", "twocycle_legs", "nak_n3_t2", "a3"])
def test_quotients_compose(name):
    A = catalog.algebra(name)
    for first, second in itertools.permutations(range(1, A.n + 1), 2):
        _, B = quotient_by_idempotent(A, {first})
        local = B.vertex_labels.index(second) + 1
        _, C = quotient_by_idempotent(B, {local})
        _, D = quotient_by_idempotent(A, {first, second})
        assert C.vertex_labels == D.vertex_labels
        assert C.graded_dims() == D.graded_dims()


def test_is_triangular():
    assert is_triangular(catalog.abc().quiver) == (True, (1, 2, 3))
    assert is_triangular(catalog.two_cycle().quiver) == (False, None)
    assert is_triangular(catalog.truncated_loop(2).quiver) == (False, None)
    ok, order = is_triangular(catalog.commutative_square().quiver)
    pos = {v: k for k, v in enumerate(order)}
    assert ok and all(pos[a.target] < pos[a.source] for a in catalog.commutative_square().quiver.arrows)


def test_is_gentle():
    assert is_gentle(catalog.abc())
    assert is_gentle(catalog.two_cycle())
    assert is_gentle(catalog.double_arrow_gentle())
    assert is_gentle(catalog.three_cycle())
    assert not is_gentle(catalog.truncated_loop(3))
    assert not is_gentle(catalog.commutative_square())
    # two arrows out of a vertex, both composing to zero: condition fails
    assert not is_gentle(pres(3, [("a", 1, 2), ("b", 2, 3), ("c", 2, 3)], [("b", "a"), ("c", "a")]))


def test_chen_lu():
    assert chen_lu_gentle_gorenstein(catalog.two_cycle())
    assert chen_lu_gentle_gorenstein(catalog.three_cycle())
    assert not chen_lu_gentle_gorenstein(catalog.abc())
    assert chen_lu_gentle_gorenstein(catalog.truncated_loop(2))
    with pytest.raises(NotGentle):
        chen_lu_gentle_gorenstein(catalog.truncated_loop(3))


def test_nakayama_criterion():
    assert nakayama_symmetry_criterion(2, 3)
    assert not nakayama_symmetry_criterion(2, 2)
    assert nakayama_symmetry_criterion(3, 5)
    assert not nakayama_symmetry_criterion(3, 4)
    assert nakayama_symmetry_criterion(3, 2)
    assert [t for t in range(2, 12) if nakayama_symmetry_criterion(1, t)] == list(range(2, 12))
    assert [t for t in range(2, 12) if nakayama_symmetry_criterion(2, t)] == [3, 5, 7, 9, 11]
    assert [t for t in range(2, 12) if nakayama_symmetry_criterion(3, t)] == [2, 5, 8, 11]
    with pytest.raises(ValueError):
        nakayama_symmetry_criterion(0, 3)


def test_cyclic_nakayama_parameters():
    assert cyclic_nakayama_parameters(catalog.algebra("nak_n2_t3")) == (2, 3)
    assert cyclic_nakayama_parameters(catalog.algebra("loop3")) == (1, 3)
    assert cyclic_nakayama_parameters(catalog.algebra("twocycle_aba")) == (2, None)
    with pytest.raises(NotNakayama):
        cyclic_nakayama_parameters(catalog.algebra("abc"))
