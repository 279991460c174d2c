"""The test corpus: small smooth proper algebras and the bimodules built on them."""

from hhtrace.algebra import (
    AlgebraMorphism,
    Quiver,
    cyclic_group_algebra,
    ground_field,
    kronecker_quiver,
    linear_quiver,
    matrix_algebra,
    path_algebra,
    quiver_automorphism,
    split_semisimple,
    vertex_idempotent,
)
from hhtrace.linalg import QQ
from hhtrace.perf import diagonal_bimodule, graph_bimodule, projective_bimodule

A3_SINK = Quiver.make([1, 2, 3], [("a", 1, 2), ("b", 3, 2)])
QUIVERS = {
    "A2": linear_quiver(2),
    "A3": linear_quiver(3),
    "A3sink": A3_SINK,
    "Kronecker": kronecker_quiver(),
}


def algebras(field=QQ):
    """Name -> algebra for the whole corpus."""
    out = {
        "k": ground_field(field),
        "kxk": split_semisimple(2, field),
        "kxkxk": split_semisimple(3, field),
        "M2": matrix_algebra(2, field),
        "QZ2": cyclic_group_algebra(2, field),
        "QZ3": cyclic_group_algebra(3, field),
    }
    for name, q in QUIVERS.items():
        out[name] = path_algebra(q, field)
    return out


CORPUS = algebras()


def swap_kxk():
    a = CORPUS["kxk"]
    return AlgebraMorphism(a, a, [{1: 1}, {0: 1}], "swap")


def cycle_kxkxk():
    a = CORPUS["kxkxk"]
    return AlgebraMorphism(a, a, [{1: 1}, {2: 1}, {0: 1}], "cycle")


def square_z3():
    a = CORPUS["QZ3"]
    return AlgebraMorphism(a, a, [a.element("1"), a.element("g^2"), a.element("g")], "square")


def conjugate_m2():
    """Conjugation by the permutation matrix swapping the two coordinates."""
    a = CORPUS["M2"]
    # E_ij -> E_{s(i)s(j)}
    images = [{3: 1}, {2: 1}, {1: 1}, {0: 1}]
    return AlgebraMorphism(a, a, images, "conjugate")


def reflection_a3sink():
    a = CORPUS["A3sink"]
    return quiver_automorphism(a, A3_SINK, {"1": "3", "3": "1"}, {"a": "b", "b": "a"})


def arrow_swap():
    a = CORPUS["Kronecker"]
    return quiver_automorphism(a, QUIVERS["Kronecker"], {}, {"a": "b", "b": "a"})


def automorphisms():
    return [swap_kxk(), cycle_kxkxk(), square_z3(), conjugate_m2(), reflection_a3sink(), arrow_swap()]


def idempotent(name, v):
    return vertex_idempotent(CORPUS[name], QUIVERS[name], v)


def projective_bimodules():
    """Rank-one projective bimodules ``A e (x) f B``."""
    a2, a3 = CORPUS["A2"], CORPUS["A3"]
    return [
        projective_bimodule(a2, a2, idempotent("A2", 1), idempotent("A2", 1)),
        projective_bimodule(a3, a3, idempotent("A3", 2), idempotent("A3", 1)),
    ]


def corpus_bimodules():
    """Diagonals, every automorphism graph and two projective bimodules."""
    out = [diagonal_bimodule(CORPUS[n]) for n in ("kxk", "QZ3", "A2", "A3", "Kronecker", "M2")]
    out += [graph_bimodule(phi) for phi in automorphisms()]
    out += projective_bimodules()
    return out


def paths_between(q: Quiver, i, j) -> int:
    """Number of paths from ``i`` to ``j``, counted by walking the arrows."""
    i, j = str(i), str(j)
    total = 1 if i == j else 0
    for _, s, t in q.arrows:
        if s == i:
            total += paths_between(q, t, j)
    return total
