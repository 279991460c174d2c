import pytest
from hypothesis import given, settings, strategies as st

from hhtrace.algebra import (
    AlgebraMorphism,
    cyclic_group_algebra,
    exterior_algebra,
    identity_morphism,
    matrix_algebra,
    opposite,
    truncated_polynomial,
)
from hhtrace.hochschild import Bimodule, hh_with_coefficients
from hhtrace.linalg import GF, rank
from hhtrace.perf import (
    BMatrix,
    LeftModule,
    PerfComplex,
    PerfError,
    ResolutionError,
    Term,
    cone_of_identity,
    derived_tensor,
    diagonal_bimodule,
    diagonal_resolution,
    direct_sum,
    euler_characteristic,
    free_module,
    graph_bimodule,
    hh_via_resolution,
    idempotent_module,
    separability_idempotent,
)

from corpus import CORPUS, QUIVERS, corpus_bimodules, idempotent, reflection_a3sink, swap_kxk


def is_separability_idempotent(a, z):
    """``a z = z a`` for every basis element and ``mu(z) = 1``, by direct multiplication."""
    n = a.dim
    for i in range(n):
        left, right = {}, {}
        for key, c in z.items():
            x, y = divmod(key, n)
            for k, v in a.multiply({i: 1}, {x: 1}).items():
                left[k * n + y] = left.get(k * n + y, 0) + c * v
            for k, v in a.multiply({y: 1}, {i: 1}).items():
                right[x * n + k] = right.get(x * n + k, 0) + c * v
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            return False
    mu = {}
    for key, c in z.items():
        x, y = divmod(key, n)
        for k, v in a.multiply({x: 1}, {y: 1}).items():
            mu[k] = mu.get(k, 0) + c * v
    return {k: v for k, v in mu.items() if v} == dict(a.unit)


def cohomology_of(n: PerfComplex) -> dict:
    """``dim H^p(N)`` from the realized complex, by ranks of its column blocks."""
    rz = n.realization
    out = {}
    for p in rz.positions:
        cols = [i for i, d in enumerate(rz.degrees) if d == p]
        prev = [i for i, d in enumerate(rz.degrees) if d == p - 1]
        r_out = rank(rz.diff.select_columns(cols))
        r_in = rank(rz.diff.select_columns(prev)) if prev else 0
        out[p] = len(cols) - r_out - r_in
    return out


# graph bimodules


def test_graph_of_identity_is_diagonal():
    for name in ("kxk", "A2", "M2"):
        a = CORPUS[name]
        g = graph_bimodule(identity_morphism(a)).to_bimodule()
        assert g.key == Bimodule.diagonal(a).key


def test_swap_graph_left_action():
    g = graph_bimodule(swap_kxk())
    assert not g.violations()
    # e1 acts on the left as e2
    assert g.rho[0][0] == BMatrix.scalar(CORPUS["kxk"], {1: 1})


def test_reflection_graph_is_strict():
    assert not graph_bimodule(reflection_a3sink()).violations()


def test_invalid_morphism_rejected():
    a = CORPUS["kxk"]
    with pytest.raises(Exception):
        graph_bimodule(AlgebraMorphism(a, a, [{0: 1}, {0: 1}]))


def test_corpus_bimodules_valid():
    for x in corpus_bimodules():
        assert not x.violations(), x.name


def test_violations_detected():
    a = CORPUS["A2"]
    not_idem = PerfComplex(a, {0: Term(1, BMatrix.scalar(a, {0: 2}))})
    assert any("not idempotent" in v for v in not_idem.violations())
    one = BMatrix.identity(a, 1)
    double = PerfComplex(a, {0: Term(1, one), 1: Term(1, one), 2: Term(1, one)}, {0: one, 1: one})
    assert any("d^2" in v for v in double.violations())


# resolutions


def test_split_algebra_resolution():
    a = CORPUS["kxk"]
    res = diagonal_resolution(a)
    assert res.complex.positions() == [0]
    assert is_separability_idempotent(a, {0 * 2 + 0: 1, 1 * 2 + 1: 1})
    assert not is_separability_idempotent(a, {0 * 2 + 1: 1, 1 * 2 + 0: 1})


def test_matrix_algebra_separability_idempotent():
    for n in (2, 3):
        a = matrix_algebra(n)
        d = a.dim
        # sum_i E_i1 (x) E_1i
        z = {(i * n + 0) * d + (0 * n + i): 1 for i in range(n)}
        assert is_separability_idempotent(a, z)
        assert is_separability_idempotent(a, separability_idempotent(a))


def test_path_algebra_resolution_sizes():
    a = CORPUS["A2"]
    res = diagonal_resolution(a)
    rz = res.complex.realization
    # vertices: dim(A e1) dim(e1 A) + dim(A e2) dim(e2 A) = 1*2 + 2*1
    assert len(rz.bases[0]) == 4
    # arrow 1 -> 2 with paths composing source to target: A e1 (x) e2 A = k e1 (x) k e2
    assert len(rz.bases[-1]) == 1
    # exactness of 0 -> P_-1 -> P_0 -> A -> 0 forces the same count
    assert len(rz.bases[0]) - len(rz.bases[-1]) == a.dim


def test_every_corpus_resolution_exact():
    for name, a in CORPUS.items():
        assert not diagonal_resolution(a).exactness_violations(), name


def test_unsupported_algebra_error():
    for a in (truncated_polynomial(2), exterior_algebra(1)):
        with pytest.raises(ResolutionError, match="no resolution constructor; supply one in the input file"):
            diagonal_resolution(a)


def test_group_algebra_in_characteristic_two_not_separable():
    with pytest.raises(ResolutionError):
        diagonal_resolution(cyclic_group_algebra(2, GF(2)))


# derived tensor


def test_tensor_with_free_module():
    a = CORPUS["A2"]
    for v in (1, 2):
        m = idempotent_module(opposite(a), idempotent("A2", v))
        assert derived_tensor(free_module(a), m) == {0: 2 if v == 2 else 1}


def test_tensor_of_idempotent_modules():
    a = CORPUS["A2"]
    aop = opposite(a)
    e1A = idempotent_module(a, idempotent("A2", 1))
    assert derived_tensor(e1A, idempotent_module(aop, idempotent("A2", 1))) == {0: 1}
    # paths from 1 to 2: just the arrow
    assert derived_tensor(e1A, idempotent_module(aop, idempotent("A2", 2))) == {0: 1}
    e2A = idempotent_module(a, idempotent("A2", 2))
    assert derived_tensor(e2A, idempotent_module(aop, idempotent("A2", 1))) == {}


def test_incompatible_tensor_rejected():
    with pytest.raises(PerfError, match="incompatible"):
        derived_tensor(free_module(CORPUS["A2"]), free_module(CORPUS["A3"]))


def test_euler_characteristic():
    assert euler_characteristic({0: 1}) == 1
    assert euler_characteristic({0: 1, 1: 1}) == 0
    a = CORPUS["A2"]
    e = idempotent("A2", 1)
    dims = derived_tensor(idempotent_module(a, e), idempotent_module(opposite(a), e))
    assert euler_characteristic(dims) == 1


# hh via resolution


def test_hh_via_resolution_examples():
    kxk, a2 = CORPUS["kxk"], CORPUS["A2"]
    assert hh_via_resolution(diagonal_resolution(kxk), Bimodule.diagonal(kxk), 2) == [2, 0, 0]
    assert hh_via_resolution(diagonal_resolution(a2), Bimodule.diagonal(a2), 2) == [2, 0, 0]
    assert hh_via_resolution(diagonal_resolution(kxk), graph_bimodule(swap_kxk()), 2) == [0, 0, 0]


def test_hh_via_resolution_matches_bar_complex():
    for x in corpus_bimodules():
        a = x.base
        if x.left != a:
            continue
        m = x.to_bimodule()
        assert hh_via_resolution(diagonal_resolution(a), m, 2) == hh_with_coefficients(a, m, 2).dims, x.name


def test_missing_resolution_is_an_error():
    a = truncated_polynomial(2)
    with pytest.raises(ResolutionError):
        hh_via_resolution(diagonal_resolution(a), Bimodule.diagonal(a), 1)


# properties


def _modules(name):
    a = CORPUS[name]
    return [idempotent_module(a, idempotent(name, v)) for v in QUIVERS[name].vertices] + [free_module(a)]


@st.composite
def perfect_complexes(draw):
    name = draw(st.sampled_from(sorted(QUIVERS)))
    parts = []
    for _ in range(draw(st.integers(1, 3))):
        m = draw(st.sampled_from(_modules(name)))
        kind = draw(st.sampled_from(["plain", "shift", "cone"]))
        if kind == "shift":
            m = m.shift(draw(st.integers(-2, 2)))
        elif kind == "cone":
            m = cone_of_identity(m)
        parts.append(m)
    return name, direct_sum(parts)


@given(perfect_complexes())
@settings(max_examples=25, deadline=None)
def test_tensor_with_regular_module_preserves_cohomology(data):
    name, n = data
    assert not n.violations()
    dims = derived_tensor(n, LeftModule.regular(CORPUS[name]))
    expected = cohomology_of(n)
    assert {p: d for p, d in dims.items() if d} == {p: d for p, d in expected.items() if d}


def test_shift_and_cone_are_valid():
    a = CORPUS["Kronecker"]
    n = idempotent_module(a, idempotent("Kronecker", 1))
    for m in (n.shift(1), cone_of_identity(n), direct_sum([n, n.shift(1)])):
        assert not m.violations()
    assert cohomology_of(cone_of_identity(n)) == {-1: 0, 0: 0}


def test_diagonal_bimodule_is_graph_of_identity():
    a = CORPUS["A3"]
    assert diagonal_bimodule(a).to_bimodule().key == Bimodule.diagonal(a).key
