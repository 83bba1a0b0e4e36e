"""Small example algebras and modules used by the tests and the CLI fixtures."""

from __future__ import annotations

from .algebra import Algebra, AlgebraPresentation, Arrow, Quiver, Relation, build_algebra
from .linalg import DEFAULT_PRIME, Matrix
from .rep import Representation, direct_sum, projective, simple


def _pres(n, arrows, relations=(), **kw):
    rels = []
    for r in relations:
        if isinstance(r, Relation):
            rels.append(r)
        else:
            rels.append(Relation.path(*r))
    return AlgebraPresentation(Quiver(n, tuple(Arrow(*a) for a in arrows)), tuple(rels), **kw)


def a2():
    """K[1 <- 2]."""
    return _pres(2, [("a", 2, 1)])


def a3():
    """K[1 <- 2 <- 3]."""
    return _pres(3, [("a", 2, 1), ("b", 3, 2)])


def abc():
    """[1 <-a- 2 <-b- 3]/(ab)."""
    return _pres(3, [("a", 2, 1), ("b", 3, 2)], [("a", "b")])


def loop_with_arm():
    """Loop a at 1 with a^2 = 0 and an arrow b: 2 -> 1."""
    return _pres(2, [("a", 1, 1), ("b", 2, 1)], [("a", "a")])


def two_cycle():
    """[1 <-> 2]/(ab, ba) with a: 1 -> 2, b: 2 -> 1."""
    return _pres(2, [("a", 1, 2), ("b", 2, 1)], [("a", "b"), ("b", "a")])


def two_cycle_aba():
    """[1 <-> 2]/(aba)."""
    return _pres(2, [("a", 1, 2), ("b", 2, 1)], [("a", "b", "a")])


def truncated_loop(m):
    """K[a]/(a^m)."""
    return _pres(1, [("a", 1, 1)], [("a",) * m])


def double_arrow_gentle():
    """1 <= 2 <= 3 with arrows a, c: 2 -> 1 and b, d: 3 -> 2, relations ab, cd."""
    return _pres(3, [("a", 2, 1), ("c", 2, 1), ("b", 3, 2), ("d", 3, 2)], [("a", "b"), ("c", "d")])


def three_cycle():
    """a: 1 -> 2, b: 2 -> 3, c: 3 -> 1 with ba, cb, ac."""
    return _pres(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)], [("b", "a"), ("c", "b"), ("a", "c")])


def two_cycle_with_legs():
    """The 2-cycle (ab, ba) on 1, 2 with extra arrows c: 3 -> 1 and d: 4 -> 2."""
    return _pres(4, [("a", 1, 2), ("b", 2, 1), ("c", 3, 1), ("d", 4, 2)], [("a", "b"), ("b", "a")])


def commutative_square():
    """Arrows 2 -> 1, 4 -> 2, 3 -> 1, 4 -> 3 with ab = cd."""
    return _pres(4, [("a", 2, 1), ("b", 4, 2), ("c", 3, 1), ("d", 4, 3)],
                 [Relation(((1, ("a", "b")), (-1, ("c", "d"))))])


def cyclic_nakayama(n, t):
    """Oriented n-cycle a_i: i -> i+1 (mod n) with all paths of length t zero."""
    arrows = [(f"a{i}", i, i % n + 1) for i in range(1, n + 1)]
    rels = []
    for start in range(1, n + 1):
        word = []
        v = start
        for _ in range(t):
            word.append(f"a{v}")
            v = v % n + 1
        rels.append(tuple(reversed(word)))
    return _pres(n, arrows, rels)


CATALOG = {
    "a2": a2,
    "a3": a3,
    "abc": abc,
    "loop2arm": loop_with_arm,
    "twocycle": two_cycle,
    "twocycle_aba": two_cycle_aba,
    "loop2": lambda: truncated_loop(2),
    "loop3": lambda: truncated_loop(3),
    "double_arrow_gentle": double_arrow_gentle,
    "threecycle": three_cycle,
    "twocycle_legs": two_cycle_with_legs,
    "square": commutative_square,
    "nak_n2_t3": lambda: cyclic_nakayama(2, 3),
    "nak_n3_t2": lambda: cyclic_nakayama(3, 2),
}

TRIANGULAR = ("a2", "a3", "abc", "double_arrow_gentle", "square")


def algebra(name, p=DEFAULT_PRIME) -> Algebra:
    return build_algebra(CATALOG[name](), p)


def _rep(alg, dims, maps):
    p = alg.p
    return Representation(alg, dims, {k: Matrix.from_rows(v, p, cols=dims[alg.quiver.arrow(k).source - 1])
                                      for k, v in maps.items()})


def abc_modules(alg):
    """M1 = S(1) + P(3), M2 = P(2) + S(3), M3 = S(1) + S(2) + S(3)."""
    S = [simple(alg, i) for i in (1, 2, 3)]
    return {
        "M1": direct_sum(S[0], projective(alg, 3)),
        "M2": direct_sum(projective(alg, 2), S[2]),
        "M3": direct_sum(*S),
    }


def loop_with_arm_modules(alg):
    """The five modules with dimension vector (2, 1).

    M1 = P(2) (2 over 1 over 1), M2 = (1 2 over 1), M3 = (1 over 1) + 2,
    M4 = 1 + (2 over 1), M5 = 1 + 1 + 2.
    """
    nil = [[0, 0], [1, 0]]
    zero_a = [[0, 0], [0, 0]]
    return {
        "M1": _rep(alg, (2, 1), {"a": nil, "b": [[1], [0]]}),
        "M2": _rep(alg, (2, 1), {"a": nil, "b": [[0], [1]]}),
        "M3": _rep(alg, (2, 1), {"a": nil, "b": [[0], [0]]}),
        "M4": _rep(alg, (2, 1), {"a": zero_a, "b": [[1], [0]]}),
        "M5": _rep(alg, (2, 1), {"a": zero_a, "b": [[0], [0]]}),
    }
