from hypothesis import given, settings, strategies as st

from hhtrace.algebra import AlgebraMorphism, identity_morphism, opposite, tensor
from hhtrace.hochschild import hh_dims
from hhtrace.invariants import (
    class_of,
    euler_class,
    euler_class_bimodule,
    euler_class_prime,
    gram_matrix,
    induced_map_direct,
    kunneth_of_prime,
    pairing,
    verify_functoriality,
    verify_hrr,
    verify_lfp,
    verify_main_lemma,
    verify_nondegenerate,
    verify_pairing_symmetry,
)
from hhtrace.linalg import SparseMatrix, is_invertible
from hhtrace.perf import cone_of_identity, diagonal_bimodule, direct_sum, free_module, graph_bimodule, idempotent_module

from corpus import (
    CORPUS,
    QUIVERS,
    arrow_swap,
    automorphisms,
    corpus_bimodules,
    cycle_kxkxk,
    idempotent,
    paths_between,
    reflection_a3sink,
    square_z3,
    swap_kxk,
)


def unit_chain(a):
    return {(k,): x for k, x in a.unit.items()}


def coords(a, chain):
    return class_of(a, chain, 0).coords


def left_module(name, v):
    """``A e_v`` as a right module over ``A^op``."""
    a = CORPUS[name]
    return idempotent_module(opposite(a), idempotent(name, v), name="Ae%s" % v)


def right_module(name, v):
    return idempotent_module(CORPUS[name], idempotent(name, v), name="e%sA" % v)


# Euler classes


def test_euler_class_of_free_module():
    a = CORPUS["A3"]
    assert euler_class(free_module(a)).coords == coords(a, unit_chain(a))


def test_euler_class_of_idempotent_module():
    a = CORPUS["A2"]
    assert euler_class(right_module("A2", 1)).coords == coords(a, {(a.index("e1"),): 1})


def test_euler_class_of_cone_vanishes():
    assert euler_class(cone_of_identity(free_module(CORPUS["A2"]))).is_zero()


@given(st.sampled_from(sorted(QUIVERS)), st.integers(-3, 3), st.data())
@settings(max_examples=20, deadline=None)
def test_euler_class_alternates_under_shift(name, k, data):
    v = data.draw(st.sampled_from(QUIVERS[name].vertices))
    n = right_module(name, v)
    base = euler_class(n).coords
    sign = -1 if k % 2 else 1
    assert euler_class(n.shift(k)).coords == [sign * x for x in base]
    both = direct_sum([n, n.shift(k)])
    assert euler_class(both).coords == [(1 + sign) * x for x in base]


# Eu'


def test_prime_of_diagonal_on_split_algebra():
    a = CORPUS["kxk"]
    ep = euler_class_prime(diagonal_bimodule(a))
    aop = opposite(a)
    expected = [[0, 0], [0, 0]]
    for i in range(2):
        u, v = coords(aop, {(i,): 1}), coords(a, {(i,): 1})
        for p in range(2):
            for q in range(2):
                expected[p][q] += u[p] * v[q]
    assert ep.matrix(0) == expected


def test_prime_of_identity_on_ground_field():
    k = CORPUS["k"]
    ep = euler_class_prime(graph_bimodule(identity_morphism(k)))
    assert ep.matrix(0) == [[1]]


def test_prime_of_swap_is_permuted():
    a = CORPUS["kxk"]
    ep = euler_class_prime(graph_bimodule(swap_kxk()))
    aop = opposite(a)
    expected = [[0, 0], [0, 0]]
    for i, j in ((0, 1), (1, 0)):
        u, v = coords(aop, {(i,): 1}), coords(a, {(j,): 1})
        for p in range(2):
            for q in range(2):
                expected[p][q] += u[p] * v[q]
    assert ep.matrix(0) == expected


def test_kunneth_recovers_euler_class():
    for x in corpus_bimodules():
        ep = euler_class_prime(x)
        assert kunneth_of_prime(ep) == list(ep.euler.coords), x.name


def test_bimodule_euler_class_lives_in_enveloping_algebra():
    x = diagonal_bimodule(CORPUS["A2"])
    eu = euler_class_bimodule(x)
    a = CORPUS["A2"]
    assert eu.algebra == tensor(opposite(a), a)


# induced maps


def test_diagonal_induces_identity():
    for name in ("kxk", "A3", "Kronecker", "M2", "QZ3"):
        a = CORPUS[name]
        for i in range(3):
            m = induced_map_direct(diagonal_bimodule(a), i)
            assert m == SparseMatrix.identity(m.nrows), (name, i)


def _permutation_check(phi, perm):
    a = phi.source
    m = induced_map_direct(graph_bimodule(phi), 0)
    for i, j in perm.items():
        src = {k: x for k, x in enumerate(coords(a, {(i,): 1})) if x}
        assert m.apply(src) == {k: x for k, x in enumerate(coords(a, {(j,): 1})) if x}
    return m


def test_swap_permutes_idempotent_classes():
    m = _permutation_check(swap_kxk(), {0: 1, 1: 0})
    assert m.trace() == 0


def test_reflection_permutes_vertices():
    a = CORPUS["A3sink"]
    e = [a.index("e%d" % v) for v in (1, 2, 3)]
    m = _permutation_check(reflection_a3sink(), {e[0]: e[2], e[1]: e[1], e[2]: e[0]})
    assert m.shape == (3, 3) and m.trace() == 1


# pairing


def test_pairing_on_ground_field():
    k = CORPUS["k"]
    assert pairing(k, class_of(k, {(0,): 1}, 0), class_of(k, {(0,): 1}, 0)) == 1


def test_pairing_on_idempotents_is_identity():
    for name in ("kxk", "kxkxk"):
        a = CORPUS[name]
        aop = opposite(a)
        n = a.dim
        rows = [[pairing(a, class_of(a, {(i,): 1}, 0), class_of(aop, {(j,): 1}, 0)) for j in range(n)]
                for i in range(n)]
        assert rows == [[int(i == j) for j in range(n)] for i in range(n)]


def test_pairing_table_equals_path_counts():
    for name, q in QUIVERS.items():
        a = CORPUS[name]
        aop = opposite(a)
        for i in q.vertices:
            for j in q.vertices:
                x = class_of(a, {(idempotent(name, i).popitem()[0],): 1}, 0)
                y = class_of(aop, {(idempotent(name, j).popitem()[0],): 1}, 0)
                assert pairing(a, x, y) == paths_between(q, i, j), (name, i, j)


def test_pairing_methods_agree():
    for name, a in CORPUS.items():
        assert gram_matrix(a, 0, "resolution") == gram_matrix(a, 0, "diagonal"), name


def test_gram_of_a2_invertible():
    assert is_invertible(gram_matrix(CORPUS["A2"]))


def test_pairing_symmetry():
    for name in ("k", "kxk", "M2", "A2", "A3sink", "Kronecker", "QZ3"):
        assert verify_pairing_symmetry(CORPUS[name]).passed, name


def test_pairing_of_mismatched_degrees_is_zero():
    a = CORPUS["A2"]
    x = class_of(a, {(0,): 1}, 0)
    y = class_of(opposite(a), {(0,): 1}, 0)
    y.degree = 1
    assert pairing(a, x, y) == 0


# verifiers


def test_nondegenerate():
    r = verify_nondegenerate(CORPUS["k"])
    assert r.passed and r.details["degrees"][0]["gram"] == [["1"]]
    assert verify_nondegenerate(CORPUS["kxk"]).passed
    r = verify_nondegenerate(CORPUS["Kronecker"])
    assert r.passed
    assert r.details["degrees"][1]["dim_HH_A"] == 0


def test_nondegenerate_whole_corpus():
    for name, a in CORPUS.items():
        assert verify_nondegenerate(a).passed, name


def test_main_lemma_whole_corpus():
    for x in corpus_bimodules():
        r = verify_main_lemma(x)
        assert r.passed, (x.name, r.details)


def test_lfp_diagonal():
    for name in ("A3", "QZ3", "M2"):
        a = CORPUS[name]
        r = verify_lfp(diagonal_bimodule(a))
        assert r.passed
        assert r.lhs == hh_dims(a, 3).euler_characteristic


def test_lfp_swap_and_reflection():
    r = verify_lfp(graph_bimodule(swap_kxk()))
    assert r.passed and r.lhs == 0 and r.rhs == 0
    r = verify_lfp(graph_bimodule(reflection_a3sink()))
    assert r.passed and r.lhs == 1 and r.rhs == 1


def test_lfp_every_endobimodule():
    for x in corpus_bimodules():
        if x.left == x.base:
            assert verify_lfp(x).passed, x.name


def test_lfp_shifted_bimodule_changes_sign():
    x = graph_bimodule(cycle_kxkxk())
    r0, r1 = verify_lfp(x), verify_lfp(x.shift(1))
    assert r1.passed and r1.lhs == -r0.lhs


def test_hrr_free_modules():
    for name in ("A2", "Kronecker", "M2", "QZ2"):
        a = CORPUS[name]
        r = verify_hrr(free_module(a), free_module(opposite(a)))
        assert r.passed and r.lhs == a.dim


def test_hrr_idempotent_modules():
    r = verify_hrr(right_module("A2", 1), left_module("A2", 1))
    assert r.passed and r.lhs == 1
    r = verify_hrr(right_module("A2", 1), left_module("A2", 2))
    assert r.passed and r.lhs == 1


def test_hrr_alternating_sum_for_shifted_modules():
    n = right_module("Kronecker", 1)
    m = left_module("Kronecker", 2)
    r = verify_hrr(n.shift(1), m)
    assert r.passed and r.lhs == -2
    assert verify_hrr(cone_of_identity(n), m).lhs == 0


def test_functoriality_of_graph_composition():
    sw = graph_bimodule(arrow_swap())
    for d in (0, 1):
        assert verify_functoriality(sw, sw, d).passed
    sq = graph_bimodule(square_z3())
    assert verify_functoriality(sq, sq).passed
    cyc = graph_bimodule(cycle_kxkxk())
    assert verify_functoriality(cyc, cyc).passed


def test_composite_graph_is_graph_of_composite():
    phi = cycle_kxkxk()
    twice = phi.compose(phi)
    lhs = induced_map_direct(graph_bimodule(twice), 0)
    rhs = induced_map_direct(graph_bimodule(phi), 0) @ induced_map_direct(graph_bimodule(phi), 0)
    assert lhs == rhs


def test_automorphism_graphs_main_lemma():
    for phi in automorphisms():
        assert verify_main_lemma(graph_bimodule(phi)).passed, phi.name


def test_non_automorphism_graph():
    # kxk -> k x k x k, e1 -> e1 + e2, e2 -> e3
    a, b = CORPUS["kxk"], CORPUS["kxkxk"]
    phi = AlgebraMorphism(a, b, [{0: 1, 1: 1}, {2: 1}], "fold")
    x = graph_bimodule(phi)
    assert verify_main_lemma(x).passed
    m = induced_map_direct(x, 0)
    assert m.shape == (3, 2)
