"""Finite-dimensional graded (DG) algebras given by structure constants.

Elements are sparse coordinate vectors ``{basis_index: coefficient}``.  The
grading is cohomological and the differential has degree +1.  All signs follow
the Koszul rule ``xy = (-1)^{|x||y|} yx``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations, product as iproduct
from typing import Iterable, Mapping, Sequence

from .linalg import QQ, Field, SparseMatrix, rank


class AlgebraError(ValueError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def add_into(acc: dict, vec: Mapping, coef=1) -> dict:
    """``acc += coef * vec`` for sparse vectors, dropping zeros."""
    for k, x in vec.items():
        y = acc.get(k, 0) + coef * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


class GradedAlgebra:
    """An associative unital algebra with a basis.

    ``mul`` maps basis pairs ``(i, j)`` to sparse vectors; missing pairs
    multiply to zero.  ``diff`` (optional) maps a basis index to ``d(b_i)``.
    Construction does not validate; call :func:`validate`.
    """

    def __init__(
        self,
        labels: Sequence[str],
        degrees: Sequence[int],
        mul: Mapping[tuple[int, int], Mapping[int, object]],
        unit: Mapping[int, object],
        diff: Mapping[int, Mapping[int, object]] | None = None,
        field: Field = QQ,
        name: str | None = None,
    ):
        n = len(labels)
        if len(degrees) != n:
            raise AlgebraError("need one degree per basis element")
        if len(set(labels)) != n:
            raise AlgebraError("basis labels must be distinct")
        self.field = field
        self.labels = tuple(str(x) for x in labels)
        self.degrees = tuple(int(d) for d in degrees)
        self.name = name or "A"
        table = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), v in mul.items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraError("structure constant index out of range: %r" % ((i, j),))
            table[i][j] = _clean(v, field, n)
        self.table = table
        self.unit = _clean(unit, field, n)
        self.diff = [_clean((diff or {}).get(i, {}), field, n) for i in range(n)]
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        # optional presentation as a path algebra: (vertex -> index, [(arrow index, source, target)])
        self.quiver_layout: tuple | None = None

    # basic data

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise AlgebraError("no basis element %r in %s" % (label, self.name)) from None

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    def element(self, label: str) -> dict:
        return self.basis_vector(self.index(label))

    def deg(self, i: int) -> int:
        return self.degrees[i]

    @cached_property
    def is_degree_zero(self) -> bool:
        """Concentrated in degree 0 with zero differential."""
        return all(d == 0 for d in self.degrees) and not any(self.diff)

    @cached_property
    def has_differential(self) -> bool:
        return any(self.diff)

    @cached_property
    def key(self) -> tuple:
        mul = tuple(
            (i, j, tuple(sorted(v.items())))
            for i in range(self.dim)
            for j in range(self.dim)
            if (v := self.table[i][j])
        )
        return (
            repr(self.field),
            self.degrees,
            mul,
            tuple(sorted(self.unit.items())),
            tuple(tuple(sorted(v.items())) for v in self.diff),
        )

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "GradedAlgebra(%s, dim=%d, %s)" % (self.name, self.dim, self.field)

    # arithmetic on sparse vectors

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table[i][j]

    def multiply(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        table = self.table
        for i, a in u.items():
            row = table[i]
            for j, b in v.items():
                prod = row[j]
                if prod:
                    add_into(out, prod, a * b)
        return out

    def differential(self, u: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            if self.diff[i]:
                add_into(out, self.diff[i], a)
        return out

    def homogeneous_degree(self, u: Mapping) -> int | None:
        degs = {self.degrees[i] for i in u}
        if len(degs) == 1:
            return degs.pop()
        return None

    def left_mult_matrix(self, u: Mapping) -> SparseMatrix:
        cols = [self.multiply(u, {j: 1}) for j in range(self.dim)]
        return SparseMatrix(self.dim, self.dim, self.field, cols, check=False)

    def right_mult_matrix(self, u: Mapping) -> SparseMatrix:
        cols = [self.multiply({j: 1}, u) for j in range(self.dim)]
        return SparseMatrix(self.dim, self.dim, self.field, cols, check=False)


def scalar(field: Field, x):
    """Field element; integral rationals are kept as ``int`` for speed."""
    x = field(x)
    if field.characteristic == 0 and x.denominator == 1:
        return int(x)
    return x


def _clean(vec, field: Field, n: int) -> dict:
    out = {}
    for k, x in dict(vec).items():
        k = int(k)
        if not 0 <= k < n:
            raise AlgebraError("basis index %d out of range" % k)
        x = scalar(field, x)
        if x:
            out[k] = x
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    violations: list[str] = dc_field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def validate(a: GradedAlgebra, limit: int = 50) -> ValidationReport:
    """Check associativity, unit laws, grading and the Leibniz rule."""
    rep = ValidationReport()
    n = a.dim
    add = rep.violations.append

    def full():
        return len(rep.violations) >= limit

    for i in range(n):
        for j in range(n):
            for k in a.table[i][j]:
                if a.degrees[k] != a.degrees[i] + a.degrees[j]:
                    add("grading: %s*%s has a component on %s" % (a.labels[i], a.labels[j], a.labels[k]))
    for i in range(n):
        if a.multiply(a.unit, {i: 1}) != {i: a.field.one} or a.multiply({i: 1}, a.unit) != {i: a.field.one}:
            add("unit law fails on %s" % a.labels[i])
        if full():
            return rep
    for i, j, k in iproduct(range(n), repeat=3):
        lhs = a.multiply(a.table[i][j], {k: 1})
        rhs = a.multiply({i: 1}, a.table[j][k])
        if lhs != rhs:
            add("associativity fails on (%s, %s, %s)" % (a.labels[i], a.labels[j], a.labels[k]))
            if full():
                return rep
    if a.has_differential:
        for i in range(n):
            for k in a.diff[i]:
                if a.degrees[k] != a.degrees[i] + 1:
                    add("differential of %s is not of degree +1" % a.labels[i])
            if a.differential(a.diff[i]):
                add("d^2 != 0 on %s" % a.labels[i])
        for i, j in iproduct(range(n), repeat=2):
            lhs = a.differential(a.table[i][j])
            rhs = a.multiply(a.diff[i], {j: 1})
            add_into(rhs, a.multiply({i: 1}, a.diff[j]), _sign(a.degrees[i]))
            if lhs != rhs:
                add("Leibniz rule fails on (%s, %s)" % (a.labels[i], a.labels[j]))
                if full():
                    return rep
    return rep


def require_valid(a: GradedAlgebra):
    rep = validate(a, limit=1)
    if not rep.valid:
        raise AlgebraError("invalid algebra %s: %s" % (a.name, rep.violations[0]))


# ---------------------------------------------------------------------------
# morphisms


class AlgebraMorphism:
    """A linear map on basis coordinates; ``images[i]`` is the image of ``b_i``."""

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, images: Sequence[Mapping], name: str | None = None):
        if len(images) != source.dim:
            raise AlgebraError("need one image per source basis element")
        if source.field != target.field:
            raise AlgebraError("morphism between algebras over different fields")
        self.source = source
        self.target = target
        self.images = [_clean(v, target.field, target.dim) for v in images]
        self.name = name or "phi"

    def __call__(self, u: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            add_into(out, self.images[i], a)
        return out

    def matrix(self) -> SparseMatrix:
        return SparseMatrix(self.target.dim, self.source.dim, self.source.field, [dict(v) for v in self.images], check=False)

    def compose(self, first: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self o first``."""
        if first.target != self.source:
            raise AlgebraError("morphisms are not composable")
        return AlgebraMorphism(first.source, self.target, [self(v) for v in first.images],
                               name="%s*%s" % (self.name, first.name))

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        s, t = self.source, self.target
        if self(s.unit) != t.unit:
            rep.violations.append("not unital")
        for i, img in enumerate(self.images):
            for k in img:
                if t.degrees[k] != s.degrees[i]:
                    rep.violations.append("image of %s is not of the same degree" % s.labels[i])
                    break
            if self(s.differential({i: 1})) != t.differential(img):
                rep.violations.append("does not commute with d on %s" % s.labels[i])
        for i, j in iproduct(range(s.dim), repeat=2):
            if self(s.table[i][j]) != t.multiply(self.images[i], self.images[j]):
                rep.violations.append("not multiplicative on (%s, %s)" % (s.labels[i], s.labels[j]))
                if len(rep.violations) > 20:
                    break
        return rep

    def __eq__(self, other):
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    def __repr__(self):
        return "AlgebraMorphism(%s: %s -> %s)" % (self.name, self.source.name, self.target.name)


def identity_morphism(a: GradedAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, [{i: a.field.one} for i in range(a.dim)], name="id")


# ---------------------------------------------------------------------------
# opposite and tensor


def opposite(a: GradedAlgebra, check: bool = True) -> GradedAlgebra:
    """``A^op`` with ``x * y = (-1)^{|x||y|} yx``."""
    if check:
        require_valid(a)
    mul = {}
    for i in range(a.dim):
        for j in range(a.dim):
            v = a.table[j][i]
            if v:
                s = _sign(a.degrees[i] * a.degrees[j])
                mul[i, j] = {k: s * x for k, x in v.items()}
    name = a.name[:-3] if a.name.endswith("^op") else a.name + "^op"
    out = GradedAlgebra(a.labels, a.degrees, mul, a.unit, dict(enumerate(a.diff)), a.field, name)
    if a.quiver_layout is not None:
        verts, arrows = a.quiver_layout
        out.quiver_layout = (dict(verts), [(i, t, s) for i, s, t in arrows])
    return out


def tensor(a: GradedAlgebra, b: GradedAlgebra, check: bool = True) -> GradedAlgebra:
    """``A (x) B`` on basis pairs ``(i, j) -> i * dim(B) + j``."""
    if a.field != b.field:
        raise AlgebraError("tensor of algebras over different fields")
    if check:
        require_valid(a)
        require_valid(b)
    na, nb = a.dim, b.dim
    labels = ["%s(x)%s" % (x, y) for x in a.labels for y in b.labels]
    degrees = [da + db for da in a.degrees for db in b.degrees]
    mul = {}
    for i, j, i2, j2 in iproduct(range(na), range(nb), range(na), range(nb)):
        u, v = a.table[i][i2], b.table[j][j2]
        if u and v:
            s = _sign(b.degrees[j] * a.degrees[i2])
            mul[i * nb + j, i2 * nb + j2] = {k * nb + l: s * x * y for k, x in u.items() for l, y in v.items()}
    unit = {k * nb + l: x * y for k, x in a.unit.items() for l, y in b.unit.items()}
    diff = {}
    for i in range(na):
        for j in range(nb):
            d: dict = {}
            for k, x in a.diff[i].items():
                add_into(d, {k * nb + j: x})
            s = _sign(a.degrees[i])
            for l, y in b.diff[j].items():
                add_into(d, {i * nb + l: s * y})
            if d:
                diff[i * nb + j] = d
    return GradedAlgebra(labels, degrees, mul, unit, diff, a.field, "%s(x)%s" % (a.name, b.name))


def tensor_index(b: GradedAlgebra, i: int, j: int) -> int:
    return i * b.dim + j


def left_inclusion(a: GradedAlgebra, b: GradedAlgebra, ab: GradedAlgebra | None = None) -> AlgebraMorphism:
    """``a -> a (x) 1``."""
    ab = ab or tensor(a, b, check=False)
    return AlgebraMorphism(a, ab, [{i * b.dim + l: y for l, y in b.unit.items()} for i in range(a.dim)], "incl_1")


def right_inclusion(a: GradedAlgebra, b: GradedAlgebra, ab: GradedAlgebra | None = None) -> AlgebraMorphism:
    """``b -> 1 (x) b``."""
    ab = ab or tensor(a, b, check=False)
    return AlgebraMorphism(b, ab, [{k * b.dim + j: x for k, x in a.unit.items()} for j in range(b.dim)], "incl_2")


# ---------------------------------------------------------------------------
# constructors


def ground_field(field: Field = QQ) -> GradedAlgebra:
    return GradedAlgebra(["1"], [0], {(0, 0): {0: 1}}, {0: 1}, field=field, name="k")


def split_semisimple(n: int, field: Field = QQ) -> GradedAlgebra:
    """``k x ... x k`` (n factors) with idempotent basis e1..en."""
    if n < 1:
        raise AlgebraError("need at least one factor")
    mul = {(i, i): {i: 1} for i in range(n)}
    name = "k" if n == 1 else "x".join(["k"] * n)
    return GradedAlgebra(["e%d" % (i + 1) for i in range(n)], [0] * n, mul, {i: 1 for i in range(n)},
                         field=field, name=name)


def product_algebra(factors: Sequence[GradedAlgebra]) -> GradedAlgebra:
    """Direct product; basis element ``x`` of factor ``r`` is labelled ``x@r``."""
    if not factors:
        raise AlgebraError("empty product")
    field = factors[0].field
    labels, degrees, mul, unit, diff = [], [], {}, {}, {}
    off = 0
    for r, f in enumerate(factors):
        if f.field != field:
            raise AlgebraError("product of algebras over different fields")
        require_valid(f)
        labels += ["%s@%d" % (x, r + 1) for x in f.labels]
        degrees += list(f.degrees)
        for i in range(f.dim):
            for j in range(f.dim):
                if f.table[i][j]:
                    mul[off + i, off + j] = {off + k: x for k, x in f.table[i][j].items()}
            if f.diff[i]:
                diff[off + i] = {off + k: x for k, x in f.diff[i].items()}
        unit.update({off + k: x for k, x in f.unit.items()})
        off += f.dim
    return GradedAlgebra(labels, degrees, mul, unit, diff, field, "x".join(f.name for f in factors))


def matrix_algebra(n: int, field: Field = QQ) -> GradedAlgebra:
    """``M_n(k)`` with basis ``E_ij`` at index ``i*n + j``."""
    if n < 1:
        raise AlgebraError("matrix size must be positive")
    labels = ["E%d%d" % (i + 1, j + 1) if n < 10 else "E%d_%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    mul = {}
    for i, j, k in iproduct(range(n), repeat=3):
        mul[i * n + j, j * n + k] = {i * n + k: 1}
    return GradedAlgebra(labels, [0] * (n * n), mul, {i * n + i: 1 for i in range(n)}, field=field, name="M%d" % n)


def matrix_algebra_over(b: GradedAlgebra, n: int) -> GradedAlgebra:
    """``M_n(B) = M_n(k) (x) B``; entry ``(i, j)`` with value ``b_l`` sits at ``(i*n+j)*dim(B) + l``."""
    return tensor(matrix_algebra(n, b.field), b, check=False)


def check_group_table(table: Sequence[Sequence[int]]) -> int:
    """Return the identity index of a multiplication table, or raise."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise AlgebraError("group table must be square and nonempty")
    for r in table:
        for x in r:
            if not 0 <= x < n:
                raise AlgebraError("group table entry out of range")
    ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not ids:
        raise AlgebraError("table is not a group: no identity")
    e = ids[0]
    for g in range(n):
        if not any(table[g][h] == e for h in range(n)):
            raise AlgebraError("table is not a group: element %d has no inverse" % g)
    for g, h, k in iproduct(range(n), repeat=3):
        if table[table[g][h]][k] != table[g][table[h][k]]:
            raise AlgebraError("table is not a group: not associative at (%d, %d, %d)" % (g, h, k))
    return e


def group_algebra(table: Sequence[Sequence[int]], field: Field = QQ, labels: Sequence[str] | None = None,
                  name: str = "kG", require_separable: bool = False) -> GradedAlgebra:
    e = check_group_table(table)
    n = len(table)
    if require_separable and field.characteristic and n % field.characteristic == 0:
        raise AlgebraError("|G| = %d is divisible by the characteristic" % n)
    labels = list(labels) if labels else ["g%d" % g for g in range(n)]
    mul = {(g, h): {table[g][h]: 1} for g in range(n) for h in range(n)}
    return GradedAlgebra(labels, [0] * n, mul, {e: 1}, field=field, name=name)


def cyclic_group_algebra(n: int, field: Field = QQ) -> GradedAlgebra:
    table = [[(g + h) % n for h in range(n)] for g in range(n)]
    labels = ["1"] + ["g" if g == 1 else "g^%d" % g for g in range(1, n)]
    return group_algebra(table, field, labels, name="k[Z/%d]" % n)


def exterior_algebra(m: int, degree: int = 1, field: Field = QQ) -> GradedAlgebra:
    """Exterior algebra on ``m`` anticommuting generators of the given degree."""
    subsets = [()]
    for size in range(1, m + 1):
        subsets += list(combinations(range(m), size))
    index = {s: i for i, s in enumerate(subsets)}
    labels = ["1" if not s else "^".join("x%d" % (g + 1) for g in s) for s in subsets]
    degrees = [degree * len(s) for s in subsets]
    mul = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                continue
            merged = tuple(sorted(s + t))
            inversions = sum(1 for x in s for y in t if x > y)
            mul[index[s], index[t]] = {index[merged]: _sign(inversions)}
    return GradedAlgebra(labels, degrees, mul, {0: 1}, field=field, name="Lambda%d" % m)


def truncated_polynomial(n: int, degree: int = 0, field: Field = QQ) -> GradedAlgebra:
    """``k[x]/(x^n)`` with ``x`` in the given degree."""
    if n < 1:
        raise AlgebraError("need n >= 1")
    labels = ["1"] + ["x" if i == 1 else "x^%d" % i for i in range(1, n)]
    mul = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return GradedAlgebra(labels, [degree * i for i in range(n)], mul, {0: 1}, field=field, name="k[x]/x^%d" % n)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (name, source, target)

    @classmethod
    def make(cls, vertices: Iterable, arrows: Iterable) -> "Quiver":
        vs = tuple(str(v) for v in vertices)
        ars = tuple((str(n), str(s), str(t)) for n, s, t in arrows)
        if len(set(vs)) != len(vs):
            raise AlgebraError("duplicate vertex")
        if len({a[0] for a in ars}) != len(ars):
            raise AlgebraError("duplicate arrow name")
        for n, s, t in ars:
            if s not in vs or t not in vs:
                raise AlgebraError("arrow %s has an unknown endpoint" % n)
        return cls(vs, ars)

    def is_acyclic(self) -> bool:
        state = {v: 0 for v in self.vertices}
        out = {v: [t for _, s, t in self.arrows if s == v] for v in self.vertices}

        def visit(v):
            state[v] = 1
            for w in out[v]:
                if state[w] == 1 or (state[w] == 0 and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(state[v] or visit(v) for v in self.vertices)

    def paths(self) -> list[tuple]:
        """All paths: ``(None, v)`` for vertices, then arrow-name tuples by length."""
        out: list[tuple] = [(None, v) for v in self.vertices]
        frontier = [(a[0],) for a in self.arrows]
        by_name = {a[0]: a for a in self.arrows}
        while frontier:
            out += frontier
            nxt = []
            for p in frontier:
                end = by_name[p[-1]][2]
                for a in self.arrows:
                    if a[1] == end:
                        nxt.append(p + (a[0],))
            frontier = nxt
        return out

    def source(self, p: tuple) -> str:
        if p[0] is None:
            return p[1]
        return self._arrow(p[0])[1]

    def target(self, p: tuple) -> str:
        if p[0] is None:
            return p[1]
        return self._arrow(p[-1])[2]

    def _arrow(self, name):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise AlgebraError("unknown arrow %s" % name)


def path_label(p: tuple) -> str:
    return "e%s" % p[1] if p[0] is None else "*".join(p)


def path_algebra(quiver: Quiver, field: Field = QQ) -> GradedAlgebra:
    """Path algebra of an acyclic quiver, paths composing source to target.

    ``pq`` is "p then q" and is nonzero iff ``p`` ends where ``q`` starts, so
    ``e_i A`` is spanned by the paths starting at ``i``.
    """
    if not quiver.is_acyclic():
        raise AlgebraError("quiver not acyclic")
    paths = quiver.paths()
    index = {p: i for i, p in enumerate(paths)}
    src = [quiver.source(p) for p in paths]
    tgt = [quiver.target(p) for p in paths]
    mul = {}
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if tgt[i] != src[j]:
                continue
            if p[0] is None:
                r = q
            elif q[0] is None:
                r = p
            else:
                r = p + q
            mul[i, j] = {index[r]: 1}
    unit = {index[(None, v)]: 1 for v in quiver.vertices}
    out = GradedAlgebra([path_label(p) for p in paths], [0] * len(paths), mul, unit, field=field, name="kQ")
    out.quiver_layout = ({v: index[(None, v)] for v in quiver.vertices},
                         [(index[(n,)], s, t) for n, s, t in quiver.arrows])
    return out


def vertex_idempotent(a: GradedAlgebra, quiver: Quiver, v) -> dict:
    return {quiver.paths().index((None, str(v))): a.field.one}


def quiver_automorphism(a: GradedAlgebra, quiver: Quiver, vertex_map: Mapping, arrow_map: Mapping) -> AlgebraMorphism:
    """Algebra automorphism of ``path_algebra(quiver)`` induced by a quiver symmetry."""
    vmap = {str(k): str(v) for k, v in vertex_map.items()}
    amap = {str(k): str(v) for k, v in arrow_map.items()}
    for v in quiver.vertices:
        vmap.setdefault(v, v)
    ends = {n: (s, t) for n, s, t in quiver.arrows}
    for n in ends:
        amap.setdefault(n, n)
    for n, (s, t) in ends.items():
        if amap[n] not in ends or ends[amap[n]] != (vmap[s], vmap[t]):
            raise AlgebraError("arrow map does not respect endpoints at %s" % n)
    if sorted(vmap.values()) != sorted(quiver.vertices) or sorted(amap.values()) != sorted(ends):
        raise AlgebraError("quiver map is not bijective")
    paths = quiver.paths()
    index = {p: i for i, p in enumerate(paths)}
    images = []
    for p in paths:
        q = (None, vmap[p[1]]) if p[0] is None else tuple(amap[x] for x in p)
        images.append({index[q]: a.field.one})
    phi = AlgebraMorphism(a, a, images, name="sigma")
    rep = phi.validate()
    if not rep.valid:
        raise AlgebraError("quiver map does not give an automorphism: %s" % rep.violations[0])
    return phi


def linear_quiver(n: int) -> Quiver:
    """``1 -> 2 -> ... -> n``."""
    return Quiver.make(range(1, n + 1), [("a%d" % i, i, i + 1) for i in range(1, n)])


def kronecker_quiver() -> Quiver:
    return Quiver.make([1, 2], [("a", 1, 2), ("b", 1, 2)])


# ---------------------------------------------------------------------------
# small invariants used as oracles


def commutator_quotient_dim(a: GradedAlgebra) -> int:
    """``dim A/[A, A]`` for an algebra concentrated in degree 0."""
    if not a.is_degree_zero:
        raise AlgebraError("oracle defined for degree-0 algebras")
    n = a.dim
    cols = []
    for i in range(n):
        for j in range(n):
            c = dict(a.table[i][j])
            add_into(c, a.table[j][i], -1)
            if c:
                cols.append(c)
    return n - rank(SparseMatrix(n, len(cols), a.field, cols, check=False))


def center_dimension(a: GradedAlgebra) -> int:
    """Dimension of the (ungraded) center: common kernel of ``x -> bx - xb``."""
    n = a.dim
    # rows of the stacked map x -> ([b_i, x])_i
    cols = []
    for j in range(n):
        col = {}
        for i in range(n):
            c = dict(a.table[i][j])
            add_into(c, a.table[j][i], -1)
            for k, x in c.items():
                col[i * n + k] = x
        cols.append(col)
    return n - rank(SparseMatrix(n * n, n, a.field, cols, check=False))
