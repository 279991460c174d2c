from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hhtrace.cohomology import (
    ModelError,
    ModelMorphism,
    compose_kernels,
    convolution_operator,
    diagonal_operator,
    graph_class,
    graph_embedding,
    identity_map,
    inverse_class,
    kunneth_product,
    lefschetz_number,
    mukai_vector,
    point,
    product,
    projective_line_map,
    projective_map,
    projective_space,
    sqrt_todd,
    supertrace,
    swap_map,
    torus_map,
    torus_surface,
    verify_cohomological_lemmas,
    verify_kernel_composition,
    verify_projection_formula,
    verify_two_maps,
)
from hhtrace.linalg import SparseMatrix, rank

P1 = projective_space(1)
P2 = projective_space(2)
T = torus_surface()

torus_matrices = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(lambda v: [v[:2], v[2:]])


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def random_class(model, values):
    return [Fraction(v) for v in values[:model.dim]] + [Fraction(0)] * max(0, model.dim - len(values))


# models


def test_model_examples():
    assert P1.todd == [1, 1]
    assert P2.todd == [1, Fraction(3, 2), 1]
    pp = product(P1, P1)
    assert pp.integrate(pp.element("h(x)h")) == 1
    a, b = T.element("a"), T.element("b")
    assert T.cup(a, b) == [-x for x in T.cup(b, a)]
    assert T.integrate(T.cup(a, b)) == 1


def test_models_are_valid():
    for m in (point(), P1, P2, T, product(P1, P1), product(T, P1), product(T, T)):
        assert not m.violations(), m.name


def test_gram_matrix_is_invertible():
    for m in (P1, P2, T, product(T, P1)):
        assert m.gram @ m.gram_inverse == SparseMatrix.identity(m.dim)


# classes


def test_sqrt_todd_examples():
    assert sqrt_todd(point()) == [1]
    assert sqrt_todd(P1) == [1, Fraction(1, 2)]
    assert sqrt_todd(T) == [1, 0, 0, 0]


@pytest.mark.parametrize("m", [P1, P2, T, product(P1, P2), product(T, P1)], ids=lambda m: m.name)
def test_sqrt_todd_squares_to_todd(m):
    s = sqrt_todd(m)
    assert m.cup(s, s) == m.todd


def test_sqrt_todd_needs_constant_term_one():
    bad = projective_space(1)
    bad.todd = [2, 1]
    with pytest.raises(ModelError):
        sqrt_todd(bad)


def test_inverse_class():
    c = [1, 3, Fraction(1, 2)]
    assert P2.cup(c, inverse_class(P2, c)) == P2.one()
    with pytest.raises(ModelError):
        inverse_class(P2, [2, 0, 0])


def test_mukai_examples():
    assert mukai_vector(P1, [1, 0]) == [1, Fraction(1, 2)]
    assert mukai_vector(P1, [0, 0]) == [0, 0]
    assert mukai_vector(P1, [0, 1]) == [0, 1]


# pullback and pushforward


def test_pushforward_examples():
    ident = identity_map(P2)
    for i in range(P2.dim):
        assert ident.push(P2.basis(i)) == P2.basis(i)
    for m in (-1, 0, 2, 5):
        f = projective_line_map(m)
        assert f.push(P1.one()) == [m, 0]
        assert f.push(P1.element("h")) == [0, 1]


def _adjoint_holds(f, a, b):
    x, y = f.source, f.target
    return y.integrate(y.cup(f.push(a), b)) == x.integrate(x.cup(a, f.pull(b)))


@pytest.mark.parametrize("f", [projective_line_map(3), projective_map(P2, 2), torus_map([[2, 1], [1, 1]]),
                               swap_map(P1), swap_map(T)], ids=lambda f: f.name + f.source.name)
def test_pushforward_is_adjoint_to_pullback(f):
    x, y = f.source, f.target
    for i in range(x.dim):
        for j in range(y.dim):
            assert _adjoint_holds(f, x.basis(i), y.basis(j))
    assert not f.violations()


def test_projection_formula_examples():
    for f in (projective_line_map(2), projective_map(P2, 3), torus_map([[0, -1], [1, 0]]), swap_map(T)):
        assert verify_projection_formula(f).passed, f.name


@given(torus_matrices, st.lists(st.integers(-4, 4), min_size=4, max_size=4),
       st.lists(st.integers(-4, 4), min_size=4, max_size=4))
@settings(max_examples=50, deadline=None)
def test_projection_formula_random_torus(m, av, bv):
    f = torus_map(m, T)
    a, b = random_class(T, av), random_class(T, bv)
    assert f.push(T.cup(a, f.pull(b))) == T.cup(f.push(a), b)
    assert _adjoint_holds(f, a, b)


@given(torus_matrices)
@settings(max_examples=50, deadline=None)
def test_supertrace_of_pullback_equals_pushforward(m):
    f = torus_map(m, T)
    st_pull = supertrace(f.pullback_matrix, T)
    assert st_pull == supertrace(f.pushforward_matrix, T)
    # 1 - tr + det on the torus
    assert st_pull == 1 - (m[0][0] + m[1][1]) + det2(m)


# kernels


def test_diagonal_kernel_is_identity():
    for m in (point(), P1, P2, T, product(P1, P1), product(T, P1)):
        assert diagonal_operator(m) == SparseMatrix.identity(m.dim), m.name


def test_zero_kernel_is_zero():
    prod = kunneth_product(P1, P2)
    assert convolution_operator(prod.model.zero(), prod).is_zero()


def test_unit_kernel_integrates():
    # 1 (x) 1 sends b to (int b) 1
    for x in (P1, T):
        prod = kunneth_product(x, x)
        op = convolution_operator(prod.model.one(), prod)
        expected = [[x.integral[k] if i == x.unit else 0 for k in range(x.dim)] for i in range(x.dim)]
        assert op.to_dense() == expected
        assert rank(op) <= 1


def test_kernel_of_wrong_size_rejected():
    with pytest.raises(ModelError):
        convolution_operator([1, 0], kunneth_product(P1, P1))


def test_graph_class_of_identity_is_diagonal():
    g = graph_class(identity_map(P1))
    xy = g.product.model
    # the diagonal meets pt x P1 and P1 x pt once each
    assert xy.degree_part(g.ch, 2) == [0, 1, 1, 0]


def test_graph_class_of_constant_point():
    g = graph_class(identity_map(point()))
    assert g.ch == [1] and g.mukai == [1]


@pytest.mark.parametrize("d", [0, 1, 2, 3, -2])
def test_graph_class_intersection_profile(d):
    g = graph_class(projective_line_map(d))
    xy = g.product.model
    curve = xy.degree_part(g.ch, 2)
    # a fibre pt x P1 meets the graph once, a section P1 x pt meets it d times
    assert xy.integrate(xy.cup(curve, xy.element("h(x)1"))) == 1
    assert xy.integrate(xy.cup(curve, xy.element("1(x)h"))) == d


def test_kernel_composition():
    # composable maps share one model object
    assert verify_kernel_composition(torus_map([[2, 1], [1, 1]], T), torus_map([[0, -1], [1, 0]], T)).passed
    assert verify_kernel_composition(projective_line_map(2, P1), projective_line_map(3, P1)).passed
    assert verify_kernel_composition(projective_map(P2, 2), projective_map(P2, -1)).passed


def test_compose_kernels_rejects_mismatch():
    with pytest.raises(ModelError):
        compose_kernels([0] * 4, kunneth_product(P1, P1), [0] * 6, kunneth_product(P2, P1))


# verifiers


@pytest.mark.parametrize("d", [-1, 0, 1, 2, 3])
def test_lefschetz_number_on_projective_line(d):
    r = lefschetz_number(projective_line_map(d))
    assert r.passed and r.lhs == 1 + d


@given(torus_matrices)
@settings(max_examples=30, deadline=None)
def test_lefschetz_number_on_torus(m):
    r = lefschetz_number(torus_map(m, T))
    assert r.passed and r.lhs == 1 - (m[0][0] + m[1][1]) + det2(m)


def test_lefschetz_needs_self_map():
    with pytest.raises(ModelError):
        lefschetz_number(graph_embedding(identity_map(P1)))


def test_two_maps_examples():
    r = verify_two_maps(identity_map(P1), identity_map(P1))
    assert r.passed and r.lhs == 2
    r = verify_two_maps(projective_line_map(2, P1), projective_line_map(3, P1))
    assert r.passed and r.lhs == 5


@given(torus_matrices, torus_matrices)
@settings(max_examples=30, deadline=None)
def test_two_maps_on_torus_counts_coincidences(m, n):
    r = verify_two_maps(torus_map(m, T), torus_map(n, T))
    diff = [[n[i][j] - m[i][j] for j in range(2)] for i in range(2)]
    assert r.passed and r.lhs == det2(diff)


def test_two_maps_dimension_mismatch():
    f = ModelMorphism(P1, point(), [P1.one()], "const")
    with pytest.raises(ModelError, match="theorem hypothesis violated"):
        verify_two_maps(f, f)


def test_cohomological_lemmas():
    pp = product(P1, P1)
    for f in (identity_map(P1), projective_line_map(2), projective_map(P2, 3), torus_map([[2, 1], [1, 1]]),
              swap_map(P1, pp), swap_map(T)):
        r = verify_cohomological_lemmas(f)
        assert r.passed, f.name
        assert r.details["preserves_parity"]
