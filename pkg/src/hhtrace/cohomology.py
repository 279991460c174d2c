"""Cohomological calculus on presented graded-commutative rings.

A :class:`CohomologyModel` is a finite basis with degrees, a cup-product
table, an integration functional and a Todd class.  Classes are dense lists
of rationals over the basis; linear operators are :class:`SparseMatrix`
objects acting on those lists.

Conventions:

* a morphism ``f: X -> Y`` is stored through its pullback ``f^*``
  (columns are ``f^* e_j`` for the basis ``e_j`` of ``Y``);
* ``f_*`` is defined by ``int_Y f_*(a) u b = int_X a u f^* b``;
* the product ``X x Y`` has basis ``x (x) y = q^* x u p^* y`` at index
  ``i * dim Y + j``, with ``q`` and ``p`` the projections to ``X`` and ``Y``;
* a kernel class ``k`` on ``X x Y`` acts ``H(X) -> H(Y)`` by
  ``b -> p_*(k u q^* b)`` and ``H(Y) -> H(X)`` by ``b -> q_*(k u p^* b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .linalg import QQ, SparseMatrix, format_scalar, inverse, is_invertible


class ModelError(ValueError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise ModelError("exact rational expected, got %r" % (x,))


# ---------------------------------------------------------------------------
# models


@dataclass(eq=False)
class CohomologyModel:
    labels: list[str]
    degrees: list[int]
    mul: dict  # (i, j) -> {k: coefficient}
    integral: list[Fraction]
    todd: list[Fraction]
    unit: int = 0
    name: str = "X"
    top: int = dc_field(default=-1)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.degrees) != n or len(self.integral) != n or len(self.todd) != n:
            raise ModelError("%s: basis, degrees, integral and todd must have equal length" % self.name)
        self.mul = {(i, j): {k: _frac(c) for k, c in v.items() if c} for (i, j), v in self.mul.items()}
        self.integral = [_frac(x) for x in self.integral]
        self.todd = [_frac(x) for x in self.todd]
        if self.top < 0:
            self.top = max(self.degrees)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ModelError("%s has no basis element %r" % (self.name, label)) from None

    def zero(self) -> list[Fraction]:
        return [Fraction(0)] * self.dim

    def one(self) -> list[Fraction]:
        return self.basis(self.unit)

    def basis(self, i: int) -> list[Fraction]:
        v = self.zero()
        v[i] = Fraction(1)
        return v

    def element(self, label: str) -> list[Fraction]:
        return self.basis(self.index(label))

    def cup(self, a: Sequence, b: Sequence) -> list[Fraction]:
        out = self.zero()
        bs = [(j, y) for j, y in enumerate(b) if y]
        mul = self.mul
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in bs:
                t = mul.get((i, j))
                if t:
                    xy = x * y
                    for k, c in t.items():
                        out[k] += xy * c
        return out

    def cup_all(self, *classes: Sequence) -> list[Fraction]:
        out = self.one()
        for c in classes:
            out = self.cup(out, c)
        return out

    def integrate(self, a: Sequence) -> Fraction:
        return sum((x * w for x, w in zip(a, self.integral) if x), Fraction(0))

    def pairing(self, a: Sequence, b: Sequence) -> Fraction:
        return self.integrate(self.cup(a, b))

    @cached_property
    def gram(self) -> SparseMatrix:
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in self.mul.items():
            rows[i][j] = sum((c * self.integral[k] for k, c in v.items()), Fraction(0))
        return SparseMatrix.from_dense(rows, QQ, ncols=n)

    @cached_property
    def gram_inverse(self) -> SparseMatrix:
        if not is_invertible(self.gram):
            raise ModelError("%s: Poincare pairing is degenerate" % self.name)
        return inverse(self.gram)

    def parity(self, i: int) -> int:
        return self.degrees[i] % 2

    def degree_part(self, a: Sequence, d: int) -> list[Fraction]:
        return [x if self.degrees[i] == d else Fraction(0) for i, x in enumerate(a)]

    def violations(self) -> list[str]:
        """Every failed ring axiom, with a witness."""
        out = []
        n = self.dim
        e = [self.basis(i) for i in range(n)]
        for i in range(n):
            if self.cup(e[self.unit], e[i]) != e[i] or self.cup(e[i], e[self.unit]) != e[i]:
                out.append("unit law fails on %s" % self.labels[i])
        for (i, j), v in self.mul.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    out.append("product %s*%s has a term of the wrong degree" % (self.labels[i], self.labels[j]))
        for i in range(n):
            for j in range(n):
                ab = self.cup(e[i], e[j])
                ba = self.cup(e[j], e[i])
                s = _sign(self.degrees[i] * self.degrees[j])
                if ab != [s * x for x in ba]:
                    out.append("graded commutativity fails on (%s, %s)" % (self.labels[i], self.labels[j]))
        for i in range(n):
            for j in range(n):
                ij = self.cup(e[i], e[j])
                for k in range(n):
                    if self.cup(ij, e[k]) != self.cup(e[i], self.cup(e[j], e[k])):
                        out.append("associativity fails on (%s, %s, %s)"
                                   % (self.labels[i], self.labels[j], self.labels[k]))
        for i, w in enumerate(self.integral):
            if w and self.degrees[i] != self.top:
                out.append("integral is nonzero on %s below the top degree" % self.labels[i])
        if not is_invertible(self.gram):
            out.append("Poincare pairing is degenerate")
        if self.todd[self.unit] != 1:
            out.append("todd class must have constant term 1")
        for i, x in enumerate(self.todd):
            if x and self.degrees[i] % 2:
                out.append("todd class has an odd-degree term %s" % self.labels[i])
        return out

    def require_valid(self) -> "CohomologyModel":
        bad = self.violations()
        if bad:
            raise ModelError("%s: %s" % (self.name, bad[0]))
        return self

    def format(self, a: Sequence) -> dict:
        return {self.labels[i]: format_scalar(x) for i, x in enumerate(a) if x}


def _power_series_inverse(c: Sequence[Fraction], n: int) -> list[Fraction]:
    """First ``n`` coefficients of ``1 / sum c_k t^k`` (``c_0 != 0``)."""
    out = [Fraction(0)] * n
    out[0] = 1 / c[0]
    for k in range(1, n):
        s = sum((c[j] * out[k - j] for j in range(1, min(k, len(c) - 1) + 1)), Fraction(0))
        out[k] = -s / c[0]
    return out


def _truncated_power(c: Sequence[Fraction], e: int, n: int) -> list[Fraction]:
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(e):
        nxt = [Fraction(0)] * n
        for i, x in enumerate(out):
            if x:
                for j in range(n - i):
                    nxt[i + j] += x * c[j]
        out = nxt
    return out


def todd_series(n_terms: int) -> list[Fraction]:
    """Coefficients of ``t / (1 - exp(-t))``."""
    denom = [Fraction(_sign(k), factorial(k + 1)) for k in range(n_terms)]
    return _power_series_inverse(denom, n_terms)


def projective_space(n: int) -> CohomologyModel:
    """``Q[h]/(h^(n+1))`` with ``int h^n = 1`` and ``td = (h/(1-e^(-h)))^(n+1)``."""
    if n < 0:
        raise ModelError("projective space of negative dimension")
    size = n + 1
    labels = ["1"] + ["h" if k == 1 else "h^%d" % k for k in range(1, size)]
    mul = {(i, j): {i + j: 1} for i in range(size) for j in range(size) if i + j < size}
    integral = [Fraction(0)] * n + [Fraction(1)]
    td = _truncated_power(todd_series(size), size, size)
    return CohomologyModel(labels, [2 * k for k in range(size)], mul, integral, td, 0, "P%d" % n, 2 * n)


def point() -> CohomologyModel:
    return projective_space(0)


def torus_surface() -> CohomologyModel:
    """Exterior algebra on two degree-1 classes ``a, b`` with ``int ab = 1`` and ``td = 1``."""
    labels = ["1", "a", "b", "ab"]
    mul = {(0, j): {j: 1} for j in range(4)}
    mul.update({(j, 0): {j: 1} for j in range(1, 4)})
    mul[(1, 2)] = {3: 1}
    mul[(2, 1)] = {3: -1}
    return CohomologyModel(labels, [0, 1, 1, 2], mul, [0, 0, 0, 1], [1, 0, 0, 0], 0, "T2", 2)


def product(x: CohomologyModel, y: CohomologyModel) -> CohomologyModel:
    """Koszul-signed tensor product; ``int (a (x) b) = int a * int b``."""
    ny = y.dim
    labels = []
    degrees = []
    for i in range(x.dim):
        for j in range(ny):
            labels.append("%s(x)%s" % (x.labels[i], y.labels[j]))
            degrees.append(x.degrees[i] + y.degrees[j])
    mul: dict = {}
    for (i, i2), u in x.mul.items():
        for (j, j2), v in y.mul.items():
            s = _sign(y.degrees[j] * x.degrees[i2])
            out = mul.setdefault((i * ny + j, i2 * ny + j2), {})
            for k, a in u.items():
                for l, b in v.items():
                    key = k * ny + l
                    out[key] = out.get(key, 0) + s * a * b
    integral = [x.integral[i] * y.integral[j] for i in range(x.dim) for j in range(ny)]
    td = [x.todd[i] * y.todd[j] for i in range(x.dim) for j in range(ny)]
    return CohomologyModel(labels, degrees, mul, integral, td, x.unit * ny + y.unit,
                           "%sx%s" % (x.name, y.name), x.top + y.top)


def external(x: CohomologyModel, y: CohomologyModel, a: Sequence, b: Sequence) -> list[Fraction]:
    """``a (x) b`` on ``x x y``."""
    ny = y.dim
    out = [Fraction(0)] * (x.dim * ny)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i * ny + j] += u * v
    return out


# ---------------------------------------------------------------------------
# classes


def inverse_class(m: CohomologyModel, c: Sequence) -> list[Fraction]:
    """Inverse of a class with constant term 1 (the rest is nilpotent)."""
    if c[m.unit] != 1 or any(c[i] and m.degrees[i] == 0 and i != m.unit for i in range(m.dim)):
        raise ModelError("only classes with constant term 1 are inverted")
    nil = list(c)
    nil[m.unit] -= 1
    out = m.one()
    term = m.one()
    for _ in range(m.top + 1):
        term = m.cup(term, nil)
        term = [-x for x in term]
        out = [u + v for u, v in zip(out, term)]
    return out


def sqrt_todd(m: CohomologyModel) -> list[Fraction]:
    """The square root of ``td`` with constant term 1, by the binomial series."""
    td = m.todd
    if td[m.unit] != 1:
        raise ModelError("%s: todd class must have constant term 1" % m.name)
    nil = list(td)
    nil[m.unit] -= 1
    out = m.one()
    term = m.one()
    coef = Fraction(1)
    for k in range(1, m.top + 1):
        coef = coef * (Fraction(1, 2) - (k - 1)) / k
        term = m.cup(term, nil)
        out = [u + coef * v for u, v in zip(out, term)]
    return out


def mukai_vector(m: CohomologyModel, ch: Sequence) -> list[Fraction]:
    return m.cup(ch, sqrt_todd(m))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(eq=False)
class ModelMorphism:
    """``f: source -> target`` given by ``pullback[j] = f^*(e_j)``."""

    source: CohomologyModel
    target: CohomologyModel
    pullback: list[list[Fraction]]
    name: str = "f"

    def __post_init__(self):
        if len(self.pullback) != self.target.dim:
            raise ModelError("%s: need one pullback image per target basis element" % self.name)
        self.pullback = [[_frac(x) for x in col] for col in self.pullback]
        for col in self.pullback:
            if len(col) != self.source.dim:
                raise ModelError("%s: pullback image of the wrong length" % self.name)

    def pull(self, b: Sequence) -> list[Fraction]:
        out = self.source.zero()
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(self.pullback[j]):
                    out[i] += y * x
        return out

    @cached_property
    def pullback_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_dense([list(r) for r in zip(*self.pullback)], QQ, ncols=self.target.dim) \
            if self.source.dim else SparseMatrix.zero(0, self.target.dim, QQ)

    def push(self, a: Sequence) -> list[Fraction]:
        """``f_*(a)``: solve ``int_Y f_*(a) u e_j = int_X a u f^* e_j``."""
        y = self.target
        rhs = {j: self.source.pairing(a, self.pullback[j]) for j in range(y.dim)}
        rhs = {j: v for j, v in rhs.items() if v}
        # gram[i][j] = int e_i u e_j, so the coefficient vector c solves gram^T c = rhs
        sol = y.gram_inverse.transpose().apply(rhs)
        out = y.zero()
        for i, v in sol.items():
            out[i] = v
        return out

    @cached_property
    def pushforward_matrix(self) -> SparseMatrix:
        cols = [self.push(self.source.basis(i)) for i in range(self.source.dim)]
        return _matrix_from_columns(self.target.dim, cols)

    def compose(self, after: "ModelMorphism") -> "ModelMorphism":
        """``after o self``."""
        if after.source is not self.target:
            raise ModelError("morphisms are not composable")
        cols = [self.pull(after.pullback[k]) for k in range(after.target.dim)]
        return ModelMorphism(self.source, after.target, cols, "%s.%s" % (after.name, self.name))

    def violations(self) -> list[str]:
        out = []
        x, y = self.source, self.target
        if self.pull(y.one()) != x.one():
            out.append("f^*(1) != 1")
        for j in range(y.dim):
            for i, v in enumerate(self.pullback[j]):
                if v and x.degrees[i] != y.degrees[j]:
                    out.append("f^* does not preserve the degree of %s" % y.labels[j])
                    break
        for j in range(y.dim):
            for k in range(y.dim):
                lhs = self.pull(y.cup(y.basis(j), y.basis(k)))
                rhs = x.cup(self.pullback[j], self.pullback[k])
                if lhs != rhs:
                    out.append("f^* is not multiplicative on (%s, %s)" % (y.labels[j], y.labels[k]))
        return out

    def require_valid(self) -> "ModelMorphism":
        bad = self.violations()
        if bad:
            raise ModelError("%s: %s" % (self.name, bad[0]))
        return self


def _matrix_from_columns(nrows: int, cols: Sequence[Sequence]) -> SparseMatrix:
    return SparseMatrix.from_vectors(nrows, [{i: v for i, v in enumerate(c) if v} for c in cols], QQ)


def identity_map(x: CohomologyModel) -> ModelMorphism:
    return ModelMorphism(x, x, [x.basis(j) for j in range(x.dim)], "id")


def projective_line_map(d: int, p1: CohomologyModel | None = None) -> ModelMorphism:
    """The degree-``d`` self-map of ``P^1``: ``f^* h = d h``."""
    p1 = p1 or projective_space(1)
    return ModelMorphism(p1, p1, [[1, 0], [0, d]], "deg%d" % d)


def projective_map(x: CohomologyModel, d: int) -> ModelMorphism:
    """``f^* h^k = d^k h^k`` on a projective space model."""
    return ModelMorphism(x, x, [[d ** k if i == k else 0 for i in range(x.dim)] for k in range(x.dim)],
                         "deg%d" % d)


def torus_map(m: Sequence[Sequence[int]], t: CohomologyModel | None = None) -> ModelMorphism:
    """The self-map of the torus model acting on ``H^1`` by ``m``.

    ``m`` is given in rows: ``f^* a = m[0][0] a + m[1][0] b`` and
    ``f^* b = m[0][1] a + m[1][1] b``.
    """
    t = t or torus_surface()
    (p, q), (r, s) = m
    det = p * s - q * r
    return ModelMorphism(t, t, [[1, 0, 0, 0], [0, p, r, 0], [0, q, s, 0], [0, 0, 0, det]], "torus%s" % (list(map(list, m)),))


def swap_map(x: CohomologyModel, xx: CohomologyModel | None = None) -> ModelMorphism:
    """The factor swap of ``x x x``."""
    xx = xx or product(x, x)
    n = x.dim
    cols = []
    for i in range(n):
        for j in range(n):
            # swap^*(e_i (x) e_j) = e_j (x) e_i with the Koszul sign
            col = xx.zero()
            col[j * n + i] = Fraction(_sign(x.degrees[i] * x.degrees[j]))
            cols.append(col)
    return ModelMorphism(xx, xx, cols, "swap")


def product_map(f: ModelMorphism, g: ModelMorphism, src: CohomologyModel | None = None,
                tgt: CohomologyModel | None = None) -> ModelMorphism:
    src = src or product(f.source, g.source)
    tgt = tgt or product(f.target, g.target)
    cols = []
    for i in range(f.target.dim):
        for j in range(g.target.dim):
            cols.append(external(f.source, g.source, f.pullback[i], g.pullback[j]))
    return ModelMorphism(src, tgt, cols, "%sx%s" % (f.name, g.name))


# ---------------------------------------------------------------------------
# products and kernels


@dataclass(eq=False)
class KunnethProduct:
    """``X <-q- X x Y -p-> Y``."""

    x: CohomologyModel
    y: CohomologyModel
    model: CohomologyModel
    q: ModelMorphism
    p: ModelMorphism

    def external(self, a: Sequence, b: Sequence) -> list[Fraction]:
        return external(self.x, self.y, a, b)


def kunneth_product(x: CohomologyModel, y: CohomologyModel) -> KunnethProduct:
    xy = product(x, y)
    q = ModelMorphism(xy, x, [external(x, y, x.basis(i), y.one()) for i in range(x.dim)], "q")
    p = ModelMorphism(xy, y, [external(x, y, x.one(), y.basis(j)) for j in range(y.dim)], "p")
    return KunnethProduct(x, y, xy, q, p)


def graph_embedding(f: ModelMorphism, prod: KunnethProduct | None = None) -> ModelMorphism:
    """``i = (id, f): X -> X x Y``, ``i^*(a (x) b) = a u f^* b``."""
    x, y = f.source, f.target
    prod = prod or kunneth_product(x, y)
    cols = [x.cup(x.basis(i), f.pullback[j]) for i in range(x.dim) for j in range(y.dim)]
    return ModelMorphism(x, prod.model, cols, "graph(%s)" % f.name)


@dataclass
class GraphClass:
    product: KunnethProduct
    ch: list[Fraction]
    mukai: list[Fraction]


def graph_class(f: ModelMorphism, prod: KunnethProduct | None = None) -> GraphClass:
    """``ch`` and Mukai vector of the structure sheaf of the graph of ``f``.

    ``ch = i_*(td_X) u td_(X x Y)^(-1)`` by Grothendieck-Riemann-Roch for the
    graph embedding ``i``.
    """
    x, y = f.source, f.target
    prod = prod or kunneth_product(x, y)
    xy = prod.model
    i = graph_embedding(f, prod)
    ch = xy.cup(i.push(x.todd), inverse_class(xy, xy.todd))
    return GraphClass(prod, ch, mukai_vector(xy, ch))


def convolution_operator(kernel: Sequence, prod: KunnethProduct, backward: bool = False) -> SparseMatrix:
    """Matrix of ``b -> p_*(k u q^* b)`` (``H(X) -> H(Y)``), or with
    ``backward=True`` of ``b -> q_*(k u p^* b)`` (``H(Y) -> H(X)``)."""
    if len(kernel) != prod.model.dim:
        raise ModelError("kernel does not live on %s" % prod.model.name)
    src_map, dst_map = (prod.p, prod.q) if backward else (prod.q, prod.p)
    src = src_map.target
    xy = prod.model
    cols = [dst_map.push(xy.cup(kernel, src_map.pull(src.basis(k)))) for k in range(src.dim)]
    return _matrix_from_columns(dst_map.target.dim, cols)


def parity_blocks(op: SparseMatrix, source: CohomologyModel, target: CohomologyModel) -> dict:
    """Even and odd diagonal blocks; the off-diagonal parity blocks must vanish."""
    out = {}
    for par in (0, 1):
        rows = [i for i in range(target.dim) if target.parity(i) == par]
        cols = [j for j in range(source.dim) if source.parity(j) == par]
        out[par] = [[op[i, j] for j in cols] for i in rows]
    mixed = [(i, j) for i, j, v in op.entries() if v and source.parity(j) != target.parity(i)]
    out["preserves_parity"] = not mixed
    return out


def compose_kernels(e: Sequence, xy: KunnethProduct, f: Sequence, yz: KunnethProduct) -> tuple[list, KunnethProduct]:
    """``pi_XZ*(pi_XY^* e u pi_YZ^* f)`` on ``X x Z``."""
    x, y, z = xy.x, xy.y, yz.y
    if yz.x is not y:
        raise ModelError("kernels are not composable")
    xz = kunneth_product(x, z)
    xyz = product(xy.model, z)
    nx, ny, nz = x.dim, y.dim, z.dim

    def idx(i, j, k):
        return (i * ny + j) * nz + k

    def col(i, j, k):
        v = xyz.zero()
        v[idx(i, j, k)] = Fraction(1)
        return v

    pxy = ModelMorphism(xyz, xy.model, [col(i, j, z.unit) for i in range(nx) for j in range(ny)], "pi_XY")
    pyz = ModelMorphism(xyz, yz.model, [col(x.unit, j, k) for j in range(ny) for k in range(nz)], "pi_YZ")
    # (a (x) 1) (x) c = (a (x) 1 (x) 1) u (1 (x) 1 (x) c) carries no sign
    pxz = ModelMorphism(xyz, xz.model, [col(i, y.unit, k) for i in range(nx) for k in range(nz)], "pi_XZ")
    return pxz.push(xyz.cup(pxy.pull(e), pyz.pull(f))), xz


# ---------------------------------------------------------------------------
# traces and verifications


def supertrace(op: SparseMatrix, model: CohomologyModel):
    """``sum_i (-1)^deg(e_i) op[i, i]``; agrees with the degree-block form
    for degree-preserving maps and is the parity form otherwise."""
    return sum((_sign(model.degrees[i]) * op[i, i] for i in range(model.dim)), Fraction(0))


@dataclass
class CohReport:
    name: str
    passed: bool
    lhs: object
    rhs: object
    details: dict

    def summary(self) -> str:
        return "%s: %s (lhs=%s, rhs=%s)" % (self.name, "pass" if self.passed else "FAIL",
                                          format_scalar(self.lhs) if self.lhs is not None else "-",
                                          format_scalar(self.rhs) if self.rhs is not None else "-")


def _rows(m: SparseMatrix) -> list[list[str]]:
    return [[format_scalar(v) for v in r] for r in m.to_dense()]


def lefschetz_number(f: ModelMorphism) -> CohReport:
    """Supertraces of ``f^*``, ``f_*`` and the graph-kernel convolution; all must agree."""
    x = f.source
    if f.target is not x:
        raise ModelError("lefschetz_number needs a self-map")
    pull = supertrace(f.pullback_matrix, x)
    push = supertrace(f.pushforward_matrix, x)
    g = graph_class(f)
    conv = supertrace(convolution_operator(g.mukai, g.product), x)
    return CohReport("lefschetz(%s)" % f.name, pull == push == conv, pull, push,
                     {"pullback": format_scalar(pull), "pushforward": format_scalar(push),
                      "convolution": format_scalar(conv)})


def verify_two_maps(f: ModelMorphism, g: ModelMorphism) -> CohReport:
    """``int ch(O_Gf) u ch(O_Gg) u td == supertrace(g^* f_*)`` for ``f, g: X -> Y``."""
    x, y = f.source, f.target
    if g.source is not x or g.target is not y:
        raise ModelError("both maps must go between the same models")
    if x.top != y.top:
        raise ModelError("theorem hypothesis violated: dim %s != dim %s" % (x.name, y.name))
    prod = kunneth_product(x, y)
    xy = prod.model
    cf = graph_class(f, prod).ch
    cg = graph_class(g, prod).ch
    lhs = xy.integrate(xy.cup_all(cf, cg, xy.todd))
    op = g.pullback_matrix @ f.pushforward_matrix
    rhs = supertrace(op, x)
    return CohReport("two-maps(%s, %s)" % (f.name, g.name), lhs == rhs, lhs, rhs, {"g^*f_*": _rows(op)})


def verify_cohomological_lemmas(f: ModelMorphism) -> CohReport:
    """Graph-kernel convolutions against the Todd-twisted ``f_*`` and ``f^*``."""
    x, y = f.source, f.target
    g = graph_class(f)
    sx, sy = sqrt_todd(x), sqrt_todd(y)
    sy_inv = inverse_class(y, sy)
    forward = convolution_operator(g.mukai, g.product)
    backward = convolution_operator(g.mukai, g.product, backward=True)
    twisted_push = _matrix_from_columns(y.dim, [y.cup(f.push(x.cup(sx, x.basis(i))), sy_inv) for i in range(x.dim)])
    twisted_pull = _matrix_from_columns(x.dim, [x.cup(sx, f.pull(y.cup(y.basis(j), sy_inv))) for j in range(y.dim)])
    ok_push = forward == twisted_push
    ok_pull = backward == twisted_pull
    parity = parity_blocks(forward, x, y)["preserves_parity"] and parity_blocks(backward, y, x)["preserves_parity"]
    return CohReport("cohomological lemmas(%s)" % f.name, ok_push and ok_pull and parity, None, None, {
        "forward": _rows(forward), "twisted_push": _rows(twisted_push), "forward_equal": ok_push,
        "backward": _rows(backward), "twisted_pull": _rows(twisted_pull), "backward_equal": ok_pull,
        "preserves_parity": parity,
    })


def diagonal_operator(x: CohomologyModel) -> SparseMatrix:
    """Convolution with the Mukai vector of the diagonal."""
    g = graph_class(identity_map(x))
    return convolution_operator(g.mukai, g.product)


def verify_projection_formula(f: ModelMorphism) -> CohReport:
    """``f_*(a u f^* b) == f_*(a) u b`` on all basis pairs."""
    x, y = f.source, f.target
    bad = []
    for i in range(x.dim):
        for j in range(y.dim):
            a, b = x.basis(i), y.basis(j)
            if f.push(x.cup(a, f.pull(b))) != y.cup(f.push(a), b):
                bad.append((x.labels[i], y.labels[j]))
    return CohReport("projection formula(%s)" % f.name, not bad, None, None, {"failures": bad})


def verify_kernel_composition(f: ModelMorphism, g: ModelMorphism) -> CohReport:
    """Composing graph kernels matches composing their operators and the graph of ``g o f``."""
    ef = graph_class(f)
    eg = graph_class(g)
    if eg.product.x is not ef.product.y:
        raise ModelError("maps are not composable")
    composed, xz = compose_kernels(ef.mukai, ef.product, eg.mukai, eg.product)
    op_composed = convolution_operator(composed, xz)
    op_product = convolution_operator(eg.mukai, eg.product) @ convolution_operator(ef.mukai, ef.product)
    direct = convolution_operator(graph_class(f.compose(g), xz).mukai, xz)
    ok = op_composed == op_product == direct
    return CohReport("kernel composition(%s, %s)" % (f.name, g.name), ok, None, None, {
        "composed_kernel": _rows(op_composed), "operator_product": _rows(op_product), "graph_of_composite": _rows(direct),
    })
