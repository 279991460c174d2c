"""Euler classes, the pairing on Hochschild homology, induced maps and theorem checks.

Everything here runs on algebras concentrated in degree 0, where a strict
perfect complex is an honest bounded complex of projectives.  An ``A``-``B``
bimodule complex ``X`` acts on chains by

    a0[a1|...|ak]  ->  sum_p (-1)^p trace(rho_p(a0)[rho_p(a1)|...|rho_p(ak)])

and on homology through the projection onto a computed homology basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .algebra import GradedAlgebra, add_into, ground_field, opposite, tensor
from .hochschild import (
    EXACT,
    HochschildWindow,
    clubsuit,
    hh_with_coefficients,
    hochschild_complex,
    kunneth,
    kunneth_on_homology,
    push_forward_chain,
    trace_map,
)
from .linalg import SparseMatrix, determinant, format_scalar, rank
from .perf import (
    BMatrix,
    DiagonalResolution,
    PerfComplex,
    PerfError,
    ResolutionError,
    Term,
    diagonal_resolution,
    hh_via_resolution,
)


class InvariantError(ValueError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def window(a: GradedAlgebra, degree: int) -> HochschildWindow:
    """A window that computes ``HH_degree`` (and its neighbours) exactly."""
    w = hochschild_complex(a, max(degree, 0) + 2, check=False)
    if w.certificate(degree) != EXACT:
        raise InvariantError("no certified window for HH_%d(%s)" % (degree, a.name))
    return w


# ---------------------------------------------------------------------------
# classes


@dataclass
class HomologyClass:
    algebra: GradedAlgebra
    degree: int
    coords: list
    representative: dict

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return "HomologyClass(HH_%d(%s), %s)" % (self.degree, self.algebra.name,
                                                 [format_scalar(x) for x in self.coords])


def class_of(a: GradedAlgebra, chain: Mapping, degree: int) -> HomologyClass:
    w = window(a, degree)
    return HomologyClass(a, degree, w.class_of(chain, degree), dict(chain))


def basis_classes(a: GradedAlgebra, degree: int) -> list[HomologyClass]:
    w = window(a, degree)
    h = w.homology(degree)
    out = []
    for j in range(h.dimension):
        coords = [a.field.zero] * h.dimension
        coords[j] = a.field.one
        out.append(HomologyClass(a, degree, coords, w.representative(degree, j)))
    return out


def _require_strict(x: PerfComplex):
    bad = x.violations()
    if bad:
        raise InvariantError("non-strict complex: %s" % bad[0])


# ---------------------------------------------------------------------------
# Euler classes


def trace_chain(x: PerfComplex) -> dict:
    """``sum_p (-1)^p trace(e_p)`` as a chain in ``C_0`` of the base algebra."""
    out: dict = {}
    for p in x.positions():
        e = x.idempotent(p)
        for i in range(e.nrows):
            for k, c in e[i, i].items():
                add_into(out, {(k,): _sign(p) * c})
    return out


def euler_class(x: PerfComplex) -> HomologyClass:
    """``Eu(N)`` in ``HH_0`` of the base algebra."""
    _require_strict(x)
    return class_of(x.base, trace_chain(x), 0)


def bimodule_trace(x: PerfComplex) -> list[dict]:
    """``y -> sum_p (-1)^p trace(rho_p(y))`` on the basis of the left algebra, valued in ``B``."""
    out = []
    for y in range(x.left.dim):
        acc: dict = {}
        for p in x.positions():
            m = x.rho[p][y]
            for i in range(m.nrows):
                add_into(acc, m[i, i], _sign(p))
        out.append(acc)
    return out


def bimodule_euler_chain(x: PerfComplex, res: DiagonalResolution | None = None) -> tuple[GradedAlgebra, dict]:
    """A chain in ``C_0(A^op (x) B)`` representing ``Eu(X)`` for an ``A``-``B`` bimodule complex.

    ``X`` is resolved as ``P (x)_A X`` with ``P`` the diagonal resolution of
    ``A``: an entry ``x (x) y`` of an idempotent of ``P`` becomes the block
    ``x (x) rho(y)``, whose trace is ``x (x) trace(rho(y))``.
    """
    A, B = x.left, x.base
    if A is None:
        raise InvariantError("not a bimodule complex")
    _require_strict(x)
    res = res or diagonal_resolution(A)
    Aop = opposite(A)
    target = tensor(Aop, B, check=False)
    tr = bimodule_trace(x)
    n = A.dim
    out: dict = {}
    P = res.complex
    for j in P.positions():
        e = P.idempotent(j)
        for i in range(e.nrows):
            for r, c in e[i, i].items():
                xa, ya = divmod(r, n)
                for l, t in tr[ya].items():
                    add_into(out, {(xa * B.dim + l,): _sign(j) * c * t})
    return target, out


def euler_class_bimodule(x: PerfComplex, res: DiagonalResolution | None = None) -> HomologyClass:
    target, chain = bimodule_euler_chain(x, res)
    return class_of(target, chain, 0)


@dataclass
class EulerClassPrime:
    """``K^{-1}(Eu(X))``; ``blocks[n][p][q]`` is the coefficient of
    ``u_p (x) v_q`` with ``u_p`` in ``HH_{-n}(A^op)`` and ``v_q`` in ``HH_n(B)``."""

    a: GradedAlgebra
    b: GradedAlgebra
    blocks: dict[int, list[list]]
    euler: HomologyClass

    def matrix(self, n: int = 0) -> list[list]:
        return self.blocks.get(n, [])


def euler_class_prime(x: PerfComplex, res: DiagonalResolution | None = None) -> EulerClassPrime:
    A, B = x.left, x.base
    Aop = opposite(A)
    eu = euler_class_bimodule(x, res)
    kd = kunneth_on_homology(Aop, B, 0, ab=eu.algebra)
    pre = kd.preimage(0, eu.coords)
    ha = window(Aop, 0).homology(0).dimension
    hb = window(B, 0).homology(0).dimension
    blk = [[A.field.zero] * hb for _ in range(ha)]
    for (i, p, q), c in pre.items():
        blk[p][q] = c
    return EulerClassPrime(A, B, {0: blk}, eu)


def kunneth_of_prime(ep: EulerClassPrime) -> list:
    """``K`` applied back to ``Eu'``, as coordinates in ``HH_0(A^op (x) B)``."""
    Aop = opposite(ep.a)
    kd = kunneth_on_homology(Aop, ep.b, 0, ab=ep.euler.algebra)
    blk = kd.blocks[0]
    vec = {}
    for j, (i, p, q) in enumerate(blk.columns):
        c = ep.blocks[0][p][q]
        if c:
            vec[j] = c
    out = blk.matrix.apply(vec)
    return [out.get(r, 0) for r in range(blk.matrix.nrows)]


# ---------------------------------------------------------------------------
# induced maps


def induced_chain(x: PerfComplex, chain: Mapping) -> dict:
    """The chain-level map ``C(A) -> C(B)`` of an ``A``-``B`` bimodule complex."""
    B = x.base
    out: dict = {}
    for p in x.positions():
        n = x.size(p)
        images = [m.to_matrix_algebra_vector() for m in x.rho[p]]
        big = push_forward_chain(images, chain)
        add_into(out, trace_map(n, B, big), _sign(p))
    return out


def induced_map_direct(x: PerfComplex, i: int) -> SparseMatrix:
    """Matrix of ``HH_i(A) -> HH_i(B)`` in the computed homology bases."""
    A, B = x.left, x.base
    if A is None:
        raise InvariantError("not a bimodule complex")
    _require_strict(x)
    wa, wb = window(A, i), window(B, i)
    ha, hb = wa.homology(i), wb.homology(i)
    cols = []
    for j in range(ha.dimension):
        img = induced_chain(x, wa.representative(i, j))
        coords = wb.class_of(img, i) if img else []
        cols.append({r: c for r, c in enumerate(coords) if c})
    return SparseMatrix(hb.dimension, ha.dimension, A.field, cols, check=False)


def compose_graph_like(first: PerfComplex, second: PerfComplex) -> PerfComplex:
    """``X (x)_B Y`` for single-term complexes with ``X`` of rank 1 over ``B``."""
    if first.base != second.left:
        raise InvariantError("bimodules do not compose")
    if len(first.positions()) != 1 or first.size(first.positions()[0]) != 1:
        raise InvariantError("composition implemented for rank-1 single-term first factors")
    p = first.positions()[0]
    e = first.idempotent(p)
    if e != BMatrix.identity(first.base, 1):
        raise InvariantError("composition implemented for free rank-1 first factors")
    C = second.base

    def through(mat: BMatrix, q: int) -> BMatrix:
        # a scalar b in B acts on the second factor by rho_q(b)
        acc = BMatrix(C, second.size(q), second.size(q))
        for k, c in mat[0, 0].items():
            acc = acc + second.rho[q][k].scale(c)
        return acc

    terms, rho = {}, {}
    for q in second.positions():
        terms[p + q] = second.terms[q]
        rho[p + q] = [through(first.rho[p][a], q) for a in range(first.left.dim)]
    diffs = {p + q: d.scale(_sign(p)) for q, d in second.diffs.items()}
    out = PerfComplex(C, terms, diffs, first.left, rho, name="%s*%s" % (first.name, second.name))
    out.require_valid()
    return out


# ---------------------------------------------------------------------------
# the pairing


def kernel_from_resolution(res: DiagonalResolution) -> PerfComplex:
    """The resolution as a complex of vector spaces with a left ``A (x) A^op``-action.

    ``(a (x) b)`` acts on ``P`` by ``v -> a v b``, i.e. by the right action of
    ``a (x) b`` in ``A^op (x) A``; both use index ``a * dim(A) + b``.
    """
    A = res.algebra
    k = ground_field(A.field)
    rz = res.complex.realization
    left = tensor(A, opposite(A))
    terms, rho = {}, {}
    for p in rz.positions:
        o, n = rz.offsets[p], len(rz.bases[p])
        terms[p] = Term(n, BMatrix.identity(k, n))
        mats = []
        for r in range(left.dim):
            m = rz.right[r]
            ent = {}
            for c in range(n):
                for row, x in m.cols[o + c].items():
                    ent[row - o, c] = {0: x}
            mats.append(BMatrix(k, n, n, ent))
        rho[p] = mats
    diffs = {}
    for p in rz.positions:
        if p + 1 in rz.bases:
            o, n = rz.offsets[p], len(rz.bases[p])
            o2, n2 = rz.offsets[p + 1], len(rz.bases[p + 1])
            ent = {}
            for c in range(n):
                for row, x in rz.diff.cols[o + c].items():
                    if o2 <= row < o2 + n2:
                        ent[row - o2, c] = {0: x}
            if ent:
                diffs[p] = BMatrix(k, n2, n, ent)
    return PerfComplex(k, terms, diffs, left, rho, name="P(%s) as kernel" % A.name)


def kernel_from_diagonal(a: GradedAlgebra) -> PerfComplex:
    """``A`` itself with ``(a (x) b) c = acb``."""
    k = ground_field(a.field)
    left = tensor(a, opposite(a))
    n = a.dim
    mats = []
    for x in range(n):
        for y in range(n):
            ent = {}
            for c in range(n):
                for r, v in a.multiply(a.multiply({x: 1}, {c: 1}), {y: 1}).items():
                    ent[r, c] = {0: v}
            mats.append(BMatrix(k, n, n, ent))
    return PerfComplex(k, {0: Term(n, BMatrix.identity(k, n))}, left=left, rho={0: mats}, name="Delta as kernel")


_kernel_cache: dict = {}


def pairing_kernel(a: GradedAlgebra, method: str = "auto") -> PerfComplex:
    """The ``A (x) A^op``-to-``k`` kernel used by the pairing.

    ``auto`` uses the diagonal resolution when one is available and the
    diagonal bimodule itself otherwise (it is finite-dimensional, so already
    perfect over ``k``).
    """
    key = (a, method)
    if key in _kernel_cache:
        return _kernel_cache[key]
    if method in ("auto", "resolution"):
        try:
            kern = kernel_from_resolution(diagonal_resolution(a))
        except (ResolutionError, PerfError):
            if method == "resolution":
                raise
            kern = kernel_from_diagonal(a)
    elif method == "diagonal":
        kern = kernel_from_diagonal(a)
    else:
        raise ValueError("unknown pairing method %r" % method)
    _kernel_cache[key] = kern
    return kern


def pairing_chains(a: GradedAlgebra, x: Mapping, y: Mapping, method: str = "auto"):
    """``<x, y>_A`` for cycles ``x`` in ``C(A)`` and ``y`` in ``C(A^op)``."""
    aop = opposite(a)
    kern = pairing_kernel(a, method)
    z = kunneth(a, aop, x, y, kern.left)
    img = induced_chain(kern, z)
    k = kern.base
    wk = hochschild_complex(k, 2, check=False)
    pos, _ = wk.vector(img)
    if pos is None or pos != 0:
        return a.field.zero
    return wk.class_of(img, 0)[0]


def pairing(a: GradedAlgebra, x: HomologyClass, y: HomologyClass, method: str = "auto"):
    if x.degree + y.degree != 0:
        return a.field.zero
    return pairing_chains(a, x.representative, y.representative, method)


def gram_matrix(a: GradedAlgebra, degree: int = 0, method: str = "auto") -> SparseMatrix:
    """``G[i][j] = <u_i, v_j>`` for bases of ``HH_degree(A)`` and ``HH_{-degree}(A^op)``.

    For algebras in degree 0 only ``degree = 0`` can give a nonempty matrix.
    """
    aop = opposite(a)
    us = basis_classes(a, degree)
    vs = basis_classes(aop, 0) if degree == 0 else []
    if not us or not vs:
        return SparseMatrix.zero(len(us), len(vs), a.field)
    rows = [[pairing(a, u, v, method) for v in vs] for u in us]
    return SparseMatrix.from_dense(rows, a.field, ncols=len(vs))


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None
    details: dict = dc_field(default_factory=dict)

    def summary(self) -> str:
        return "%s: %s (lhs=%s, rhs=%s)" % (self.name, "pass" if self.passed else "FAIL",
                                            _fmt(self.lhs), _fmt(self.rhs))


def _fmt(v):
    if isinstance(v, list):
        return [_fmt(x) for x in v]
    if v is None or isinstance(v, (bool, str)):
        return v
    try:
        return format_scalar(v)
    except (TypeError, ValueError):
        return str(v)


def matrix_rows(m: SparseMatrix) -> list[list]:
    return [[m[i, j] for j in range(m.ncols)] for i in range(m.nrows)]


def smooth_degrees(a: GradedAlgebra) -> list[int]:
    """Degrees where ``HH_i(A)`` can be nonzero, from the resolution length."""
    res = diagonal_resolution(a)
    return list(range(0, -min(res.complex.positions()) + 1))


def verify_nondegenerate(a: GradedAlgebra, extra_degrees: int = 1) -> Report:
    """Gram matrices per degree; pass iff the total pairing matrix is invertible.

    Degrees beyond the resolution length are included to confirm that ``HH``
    vanishes there rather than assuming it.
    """
    top = max(smooth_degrees(a)) + extra_degrees
    aop = opposite(a)
    grams = {}
    ok = True
    for i in range(0, top + 1):
        da = window(a, i).homology(i).dimension
        dop = window(aop, i).homology(i).dimension
        if i > 0:
            # HH_i(A) pairs with HH_{-i}(A^op) = 0 for degree-0 algebras
            grams[i] = {"dim_HH_A": da, "dim_HH_Aop": dop}
            ok = ok and da == 0
            continue
        g = gram_matrix(a, 0)
        inv = g.nrows == g.ncols and rank(g) == g.nrows
        grams[0] = {"gram": [[format_scalar(x) for x in r] for r in matrix_rows(g)],
                    "determinant": format_scalar(determinant(g)) if g.nrows == g.ncols else None}
        ok = ok and inv
    return Report("nondegenerate(%s)" % a.name, ok, None, None, {"degrees": grams})


def verify_pairing_symmetry(a: GradedAlgebra, classes: Sequence[HomologyClass] | None = None,
                            method: str = "auto") -> Report:
    """``<x, y>_A = (-1)^{|x||y|} <y, x>_{A^op}`` with ``y`` transported by the clubsuit map."""
    aop = opposite(a)
    xs = classes if classes is not None else basis_classes(a, 0)
    ys = [HomologyClass(aop, c.degree, [], clubsuit(a, c.representative)) for c in xs]
    bad = []
    for x in xs:
        for y in ys:
            lhs = pairing(a, x, y, method)
            rhs = _sign(x.degree * y.degree) * pairing(aop, y, x, method)
            if lhs != rhs:
                bad.append((_fmt(lhs), _fmt(rhs)))
    return Report("pairing symmetry(%s)" % a.name, not bad, None, None, {"mismatches": bad, "pairs": len(xs) ** 2})


def convolution_matrix(ep: EulerClassPrime, i: int = 0, method: str = "auto") -> SparseMatrix:
    """``y -> sum <y, u_p> c[p][q] v_q`` on ``HH_i(A)``."""
    A, B = ep.a, ep.b
    da = window(A, i).homology(i).dimension
    db = window(B, i).homology(i).dimension
    if i != 0:
        # Eu' lives in HH_0(A^op) (x) HH_0(B) for degree-0 algebras
        return SparseMatrix.zero(db, da, A.field)
    g = gram_matrix(A, 0, method)
    c = SparseMatrix.from_dense(ep.blocks[0], A.field, ncols=db) if ep.blocks[0] else SparseMatrix.zero(0, db, A.field)
    return (g @ c).transpose()


def verify_main_lemma(x: PerfComplex, degrees: Sequence[int] | None = None, method: str = "auto") -> Report:
    """``induced_map_direct(X) == convolution with Eu'(X)`` in every listed degree."""
    A = x.left
    if degrees is None:
        degrees = sorted(set(smooth_degrees(A)) | {0})
    ep = euler_class_prime(x)
    back = kunneth_of_prime(ep)
    details = {"kunneth_roundtrip": back == list(ep.euler.coords), "degrees": {}}
    ok = details["kunneth_roundtrip"]
    for i in degrees:
        direct = induced_map_direct(x, i)
        conv = convolution_matrix(ep, i, method)
        same = direct == conv
        ok = ok and same
        details["degrees"][i] = {"direct": [[format_scalar(v) for v in r] for r in matrix_rows(direct)],
                                 "convolution": [[format_scalar(v) for v in r] for r in matrix_rows(conv)],
                                 "equal": same}
    return Report("main lemma(%s)" % x.name, ok, None, None, details)


def supertrace(blocks: Mapping[int, SparseMatrix]):
    total = 0
    for j, m in blocks.items():
        total += _sign(j) * m.trace()
    return total


def verify_lfp(x: PerfComplex) -> Report:
    """Lefschetz: ``sum (-1)^i dim HH_i(M) == sum (-1)^j Tr HH_j(M)`` for an endo-bimodule ``M``."""
    A = x.base
    if x.left != A:
        raise InvariantError("verify_lfp needs an endo-bimodule complex")
    _require_strict(x)
    res = diagonal_resolution(A)
    length = -min(res.complex.positions())
    positions = x.positions()
    lo = -max(positions)
    hi = length - min(positions)
    m = x.to_bimodule()
    bar = hh_with_coefficients(A, m, hi, i_min=lo)
    via_res = hh_via_resolution(res, m, hi, i_min=lo)
    lhs = A.field(sum(_sign(i) * d for i, d in zip(range(lo, hi + 1), bar.dims)))
    traces = {}
    for j in range(0, length + 1):
        traces[j] = induced_map_direct(x, j)
    rhs = supertrace(traces)
    ok = lhs == rhs and bar.dims == via_res and bar.certificate == EXACT
    return Report("LFP(%s)" % x.name, ok, lhs, rhs, {
        "hh_bar": dict(zip(range(lo, hi + 1), bar.dims)),
        "hh_resolution": dict(zip(range(lo, hi + 1), via_res)),
        "traces": {j: format_scalar(m.trace()) for j, m in traces.items()},
        "certificate": bar.certificate,
    })


def verify_hrr(n: PerfComplex, m: PerfComplex, method: str = "auto") -> Report:
    """``sum (-1)^j dim H^j(N (x)^L_A M) == <Eu(N), Eu(M)>`` for ``N`` over ``A`` and ``M`` over ``A^op``."""
    from .perf import derived_tensor, euler_characteristic

    a = n.base
    if m.base != opposite(a):
        raise InvariantError("the left module must be given as a complex over A^op")
    dims = derived_tensor(n, m)
    chi = a.field(euler_characteristic(dims))
    value = pairing(a, euler_class(n), euler_class(m), method)
    return Report("HRR(%s, %s)" % (n.name, m.name), chi == value, chi, value,
                  {"tensor_dims": {j: d for j, d in dims.items()}})


def verify_functoriality(psi: PerfComplex, phi: PerfComplex, degree: int = 0) -> Report:
    """``HH(X (x)_B Y) = HH(Y) HH(X)`` for composable graph-like bimodules."""
    comp = compose_graph_like(psi, phi)
    lhs = induced_map_direct(comp, degree)
    rhs = induced_map_direct(phi, degree) @ induced_map_direct(psi, degree)
    return Report("functoriality(%s, %s)" % (psi.name, phi.name), lhs == rhs, None, None,
                  {"composite": [[format_scalar(v) for v in r] for r in matrix_rows(lhs)],
                   "product": [[format_scalar(v) for v in r] for r in matrix_rows(rhs)]})
