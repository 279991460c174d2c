"""Acceptance criteria 1-9, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line; the lines are also repeated in the pytest terminal summary.  Run
``python3 tests/test_acceptance.py`` to get just the nine lines.
"""

import random
import time
from fractions import Fraction

from hhtrace import cohomology as coh
from hhtrace.algebra import commutator_quotient_dim, exterior_algebra, matrix_algebra_over, opposite, tensor
from hhtrace.hochschild import (
    EXACT,
    Bimodule,
    boundary,
    clubsuit,
    hh_dims,
    hochschild_complex,
    kunneth,
    kunneth_on_homology,
    kunneth_pairs,
    tensor_boundary,
    trace_map,
)
from hhtrace.invariants import (
    class_of,
    pairing,
    verify_functoriality,
    verify_hrr,
    verify_lfp,
    verify_main_lemma,
    verify_nondegenerate,
    verify_pairing_symmetry,
)
from hhtrace.linalg import SparseMatrix
from hhtrace.perf import diagonal_bimodule, diagonal_resolution, free_module, graph_bimodule, hh_via_resolution, idempotent_module

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

RESULTS = []


def record(n, ok, message):
    line = "%s criterion %d: %s" % ("PASS" if ok else "FAIL", n, message)
    print(line)
    RESULTS.append(line)
    assert ok, line


def random_chain(rng, a, max_len=3, terms=3):
    out = {}
    for _ in range(terms):
        n = rng.randint(0, max_len)
        w = tuple(rng.randrange(a.dim) for _ in range(n + 1))
        out[w] = out.get(w, 0) + rng.randint(-3, 3)
    return {w: c for w, c in out.items() if c}


def test_criterion_1_differential_validity():
    start = time.perf_counter()
    bad = {}
    for name, a in CORPUS.items():
        defects = hochschild_complex(a, 6, check=False).square_defects()
        if any(defects.values()):
            bad[name] = defects
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(1, ok, "b^2, b0^2, b1^2, b0b1+b1b0 vanish for %d algebras at L<=6 (%.1fs)%s"
           % (len(CORPUS), elapsed, " defects %s" % bad if bad else ""))


def test_criterion_2_oracle_agreement():
    bad = []
    for name, a in CORPUS.items():
        bar = hh_dims(a, 4)
        res = hh_via_resolution(diagonal_resolution(a), Bimodule.diagonal(a), 4)
        if bar.dims != res or bar.certificate != EXACT or bar.dims[0] != commutator_quotient_dim(a):
            bad.append((name, bar.dims, res))
    record(2, not bad, "bar complex = resolution = commutator quotient on %d algebras, degrees<=4%s"
           % (len(CORPUS), " mismatches %s" % bad if bad else ""))


KUNNETH_PAIRS = [("k", "A3"), ("kxk", "kxk"), ("kxk", "A2"), ("QZ2", "QZ3"), ("M2", "k"), ("A2", "QZ2")]


def test_criterion_3_kunneth():
    bad = []
    for x, y in KUNNETH_PAIRS:
        a, b = CORPUS[x], CORPUS[y]
        da, db = hh_dims(a, 3).dims, hh_dims(b, 3).dims
        dab = hh_dims(tensor(a, b), 3).dims
        formula = all(dab[n] == sum(da[i] * db[n - i] for i in range(n + 1)) for n in range(4))
        kd = kunneth_on_homology(a, b, 3)
        if not (formula and kd.invertible):
            bad.append((x, y))
    record(3, not bad, "dimension formula and invertible K for %d pairs, degrees<=3%s"
           % (len(KUNNETH_PAIRS), " failures %s" % bad if bad else ""))


def test_criterion_4_main_lemma():
    xs = corpus_bimodules()
    bad = [x.name for x in xs if not verify_main_lemma(x).passed]
    record(4, not bad and len(xs) >= 8, "direct map = Eu' convolution on %d bimodules%s"
           % (len(xs), " failures %s" % bad if bad else ""))


def test_criterion_5_lefschetz():
    fixtures = [diagonal_bimodule(a) for a in CORPUS.values()] + [graph_bimodule(phi) for phi in automorphisms()]
    bad = []
    for x in fixtures:
        r = verify_lfp(x)
        if not r.passed:
            bad.append(x.name)
    swap = verify_lfp(graph_bimodule(swap_kxk()))
    refl = verify_lfp(graph_bimodule(reflection_a3sink()))
    trivial = []
    for name, a in CORPUS.items():
        r = verify_lfp(diagonal_bimodule(a))
        if not (r.lhs == r.rhs == hh_dims(a, 3).euler_characteristic):
            trivial.append(name)
    ok = (not bad and len(fixtures) >= 8 and swap.lhs == swap.rhs == 0 and refl.lhs == refl.rhs == 1
          and not trivial)
    record(5, ok, "LFP on %d fixtures; swap lhs=rhs=%s, reflection lhs=rhs=%s, diagonal = Euler characteristic%s"
           % (len(fixtures), swap.lhs, refl.lhs, " failures %s" % (bad + trivial) if bad or trivial else ""))


def test_criterion_6_hrr():
    bad = []
    checked = 0
    for name in ("A2", "A3", "Kronecker"):
        a, q = CORPUS[name], QUIVERS[name]
        aop = opposite(a)
        for i in q.vertices:
            for j in q.vertices:
                n = idempotent_module(a, idempotent(name, i))
                m = idempotent_module(aop, idempotent(name, j))
                r = verify_hrr(n, m)
                checked += 1
                # tensor collapse: e_i A (x)_A A e_j = e_i A e_j, spanned by paths i -> j
                if not (r.passed and r.lhs == paths_between(q, i, j)):
                    bad.append((name, i, j))
                x = class_of(a, {(idempotent(name, i).popitem()[0],): 1}, 0)
                y = class_of(aop, {(idempotent(name, j).popitem()[0],): 1}, 0)
                if pairing(a, x, y) != paths_between(q, i, j):
                    bad.append((name, i, j, "table"))
        r = verify_hrr(free_module(a), free_module(aop))
        checked += 1
        if not (r.passed and r.lhs == a.dim):
            bad.append((name, "A", "A"))
    record(6, not bad, "HRR on %d module pairs; pairing tables = path counts%s"
           % (checked, " failures %s" % bad if bad else ""))


def test_criterion_7_nondegenerate():
    bad = []
    for name, a in CORPUS.items():
        if not verify_nondegenerate(a).passed:
            bad.append((name, "gram"))
        if not verify_pairing_symmetry(a).passed:
            bad.append((name, "symmetry"))
    record(7, not bad, "invertible Gram matrices and graded symmetry on %d algebras%s"
           % (len(CORPUS), " failures %s" % bad if bad else ""))


TORUS_MATRICES = [[[1, 0], [0, 1]], [[2, 1], [1, 1]], [[0, -1], [1, 0]], [[3, 2], [1, 4]], [[-1, 0], [0, -1]]]


def cohomology_morphisms():
    p1, p2, t = coh.projective_space(1), coh.projective_space(2), coh.torus_surface()
    pp = coh.product(p1, p1)
    return [coh.identity_map(p1), coh.projective_line_map(2, p1), coh.projective_map(p2, 2),
            coh.projective_map(p2, -1), coh.swap_map(p1, pp), coh.swap_map(t)] + [coh.torus_map(m, t)
                                                                                 for m in TORUS_MATRICES]


def test_criterion_8_cohomology_corpus():
    start = time.perf_counter()
    bad = []
    p1, p2, t = coh.projective_space(1), coh.projective_space(2), coh.torus_surface()
    for d in (-1, 0, 1, 2, 3):
        r = coh.lefschetz_number(coh.projective_line_map(d, p1))
        if not (r.passed and r.lhs == 1 + d):
            bad.append(("lefschetz P1", d))
    for m in TORUS_MATRICES:
        r = coh.lefschetz_number(coh.torus_map(m, t))
        if not (r.passed and r.lhs == 1 - (m[0][0] + m[1][1]) + m[0][0] * m[1][1] - m[0][1] * m[1][0]):
            bad.append(("lefschetz torus", m))
    for d, e in ((1, 1), (2, 3), (0, 2)):
        r = coh.verify_two_maps(coh.projective_line_map(d, p1), coh.projective_line_map(e, p1))
        if not (r.passed and r.lhs == d + e):
            bad.append(("two maps", d, e))
    for x in (p1, p2, coh.product(p1, p1), t):
        if coh.diagonal_operator(x) != SparseMatrix.identity(x.dim):
            bad.append(("diagonal", x.name))
    for f in cohomology_morphisms():
        if not coh.verify_cohomological_lemmas(f).passed:
            bad.append(("lemmas", f.name))
    elapsed = time.perf_counter() - start
    record(8, not bad and elapsed < 10, "Lefschetz, two maps, diagonal kernels, lemmas on %d morphisms (%.1fs)%s"
           % (len(cohomology_morphisms()), elapsed, " failures %s" % bad if bad else ""))


def _chain_map_failures(rng, a, samples):
    bad = [0, 0, 0, 0]
    aop = opposite(a)
    partner = CORPUS["kxk"]
    ab = tensor(a, partner, check=False)
    m2 = matrix_algebra_over(a, 2)
    for _ in range(samples):
        x = random_chain(rng, a)
        cx = clubsuit(a, x)
        if boundary(aop, cx) != clubsuit(a, boundary(a, x)):
            bad[0] += 1
        if clubsuit(aop, cx) != x:
            bad[1] += 1
        y = random_chain(rng, partner, 2, 2)
        pairs = {(u, v): c * e for u, c in x.items() for v, e in y.items()}
        if boundary(ab, kunneth_pairs(a, partner, pairs, ab)) != kunneth_pairs(a, partner,
                                                                             tensor_boundary(a, partner, pairs), ab):
            bad[2] += 1
        z = random_chain(rng, m2, 2, 3)
        if boundary(a, trace_map(2, a, z)) != trace_map(2, a, boundary(m2, z)):
            bad[3] += 1
    return bad


def test_criterion_9_property_suites():
    rng = random.Random(20261016)
    samples = 1000
    failures = {}
    for name, a in CORPUS.items():
        bad = _chain_map_failures(rng, a, samples)
        if any(bad):
            failures[name] = bad
    # Kunneth associativity
    b, c = exterior_algebra(1, 1), CORPUS["QZ2"]
    bc = tensor(b, c, check=False)
    for name in ("kxk", "A2", "QZ3", "M2"):
        a = CORPUS[name]
        ab = tensor(a, b, check=False)
        for _ in range(50):
            x, y, z = random_chain(rng, a, 2, 2), random_chain(rng, b, 2, 2), random_chain(rng, c, 1, 2)
            if kunneth(ab, c, kunneth(a, b, x, y, ab), z) != kunneth(a, bc, x, kunneth(b, c, y, z, bc)):
                failures.setdefault("associativity", []).append(name)
    # projection formula and supertraces
    for f in cohomology_morphisms():
        if not coh.verify_projection_formula(f).passed:
            failures.setdefault("projection", []).append(f.name)
        if coh.supertrace(f.pullback_matrix, f.source) != coh.supertrace(f.pushforward_matrix, f.source):
            failures.setdefault("supertrace", []).append(f.name)
    t = coh.torus_surface()
    for _ in range(100):
        m = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
        f = coh.torus_map(m, t)
        a = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        bb = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        if f.push(t.cup(a, f.pull(bb))) != t.cup(f.push(a), bb):
            failures.setdefault("projection", []).append(m)
        if coh.supertrace(f.pullback_matrix, t) != coh.supertrace(f.pushforward_matrix, t):
            failures.setdefault("supertrace", []).append(m)
    # functoriality of graph kernels, DG side
    for phi in (swap_kxk(), cycle_kxkxk(), square_z3(), arrow_swap(), reflection_a3sink()):
        g = graph_bimodule(phi)
        if not verify_functoriality(g, g).passed:
            failures.setdefault("functoriality", []).append(phi.name)
    # and cohomology side
    p1, p2 = coh.projective_space(1), coh.projective_space(2)
    pairs = [(coh.projective_line_map(2, p1), coh.projective_line_map(3, p1)),
             (coh.projective_map(p2, 2), coh.projective_map(p2, -1)),
             (coh.torus_map([[2, 1], [1, 1]], t), coh.torus_map([[0, -1], [1, 0]], t))]
    for f, g in pairs:
        if not coh.verify_kernel_composition(f, g).passed:
            failures.setdefault("kernel composition", []).append((f.name, g.name))
    record(9, not failures, "%d random chains per algebra through clubsuit, Kunneth and trace maps; involution, "
           "associativity, projection formula, supertraces and functoriality%s"
           % (samples, " failures %s" % failures if failures else ""))


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
