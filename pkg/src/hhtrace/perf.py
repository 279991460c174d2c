"""Strict perfect complexes, bimodules, diagonal resolutions and derived tensors.

A term of a perfect complex over ``B`` is the image ``e B^n`` of an idempotent
``n x n`` matrix ``e`` over ``B`` acting on column vectors.  Right ``B``-linear
maps are left multiplication by matrices over ``B``.  A left action of ``A`` is
a unital algebra map ``rho: A -> e M_n(B) e`` commuting with the differential.

Bimodules over ``A`` are modules over ``R = A^op (x) A``: a bimodule ``X`` is a
left ``R``-module through ``(x (x) y) . v = y v x``, and a right ``R``-module
through ``v . (x (x) y) = x v y``.  Paths compose source to target.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .algebra import (
    AlgebraMorphism,
    GradedAlgebra,
    add_into,
    opposite,
    require_valid,
    tensor,
)
from .hochschild import Bimodule
from .linalg import (
    Basis,
    ChainComplex,
    SparseMatrix,
    column_space_basis,
    homology_dims,
    rank,
    solve,
)


class PerfError(ValueError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# matrices over an algebra


class BMatrix:
    """A matrix with entries in an algebra, stored as ``{(row, col): vector}``."""

    def __init__(self, algebra: GradedAlgebra, nrows: int, ncols: int, entries: Mapping | None = None):
        self.algebra = algebra
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], dict] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise PerfError("matrix entry (%d, %d) out of range" % (r, c))
            v = {k: x for k, x in v.items() if x}
            if v:
                self.entries[r, c] = v

    @classmethod
    def identity(cls, algebra: GradedAlgebra, n: int) -> "BMatrix":
        return cls(algebra, n, n, {(i, i): dict(algebra.unit) for i in range(n)})

    @classmethod
    def diagonal(cls, algebra: GradedAlgebra, entries: Sequence[Mapping]) -> "BMatrix":
        n = len(entries)
        return cls(algebra, n, n, {(i, i): dict(v) for i, v in enumerate(entries)})

    @classmethod
    def scalar(cls, algebra: GradedAlgebra, v: Mapping) -> "BMatrix":
        return cls(algebra, 1, 1, {(0, 0): dict(v)})

    def __getitem__(self, rc) -> dict:
        return self.entries.get(rc, {})

    def __matmul__(self, other: "BMatrix") -> "BMatrix":
        if self.ncols != other.nrows:
            raise PerfError("matrix shapes do not compose")
        a = self.algebra
        by_row: dict[int, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, k), u in self.entries.items():
            for c, v in by_row.get(k, ()):
                acc = out.setdefault((r, c), {})
                add_into(acc, a.multiply(u, v))
        return BMatrix(a, self.nrows, other.ncols, out)

    def __add__(self, other: "BMatrix") -> "BMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise PerfError("matrix shapes differ")
        out = {rc: dict(v) for rc, v in self.entries.items()}
        for rc, v in other.entries.items():
            add_into(out.setdefault(rc, {}), v)
        return BMatrix(self.algebra, self.nrows, self.ncols, out)

    def scale(self, c) -> "BMatrix":
        return BMatrix(self.algebra, self.nrows, self.ncols,
                       {rc: {k: c * x for k, x in v.items()} for rc, v in self.entries.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, BMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        return "BMatrix(%dx%d over %s, %d entries)" % (self.nrows, self.ncols, self.algebra.name, len(self.entries))

    def to_matrix_algebra_vector(self) -> dict:
        """Coordinates in ``M_n(B) = M_n(k) (x) B`` (square matrices only)."""
        if self.nrows != self.ncols:
            raise PerfError("only square matrices live in M_n(B)")
        n, nb = self.nrows, self.algebra.dim
        out = {}
        for (r, c), v in self.entries.items():
            for l, x in v.items():
                out[(r * n + c) * nb + l] = x
        return out

    def kmatrix(self) -> SparseMatrix:
        """Left multiplication ``B^ncols -> B^nrows`` on coordinates ``row * dim(B) + l``."""
        a = self.algebra
        nb = a.dim
        by_col: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        cols = []
        for c in range(self.ncols):
            for l in range(nb):
                col: dict = {}
                for r, v in by_col.get(c, ()):
                    for k, x in a.multiply(v, {l: 1}).items():
                        col[r * nb + k] = x
                cols.append(col)
        return SparseMatrix(self.nrows * nb, self.ncols * nb, a.field, cols, check=False)


# ---------------------------------------------------------------------------
# left modules (vector spaces with a left action and a differential)


class LeftModule:
    """A complex of left ``R``-modules on a graded basis.

    ``action[r]`` is the matrix of the basis element ``r`` of ``R``; ``diff`` is
    the (degree +1) differential.
    """

    def __init__(self, algebra: GradedAlgebra, degrees: Sequence[int], action: Sequence[SparseMatrix],
                 diff: SparseMatrix | None = None, name: str = "M"):
        self.algebra = algebra
        self.field = algebra.field
        self.degrees = tuple(degrees)
        self.dim = len(self.degrees)
        if len(action) != algebra.dim:
            raise PerfError("need one action matrix per basis element")
        self.action = list(action)
        self.diff = diff if diff is not None else SparseMatrix.zero(self.dim, self.dim, self.field)
        self.name = name

    def act(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for r, x in u.items():
            add_into(out, self.action[r].apply(v), x)
        return out

    def d(self, v: Mapping) -> dict:
        return self.diff.apply(v)

    def violations(self) -> list[str]:
        R = self.algebra
        bad = []
        for j in range(self.dim):
            e = {j: self.field.one}
            if self.act(R.unit, e) != e:
                bad.append("unit does not act as the identity")
                break
        for x in range(R.dim):
            for y in range(R.dim):
                for j in range(self.dim):
                    e = {j: 1}
                    if self.act(R.table[x][y], e) != self.act({x: 1}, self.act({y: 1}, e)):
                        bad.append("action not associative at (%s, %s)" % (R.labels[x], R.labels[y]))
                        break
            if not (self.action[x] @ self.diff - self.diff @ self.action[x]).is_zero():
                bad.append("differential is not a module map for %s" % R.labels[x])
        if not (self.diff @ self.diff).is_zero():
            bad.append("d^2 != 0")
        return bad

    @classmethod
    def regular(cls, algebra: GradedAlgebra) -> "LeftModule":
        return cls(algebra, algebra.degrees, [algebra.left_mult_matrix({r: 1}) for r in range(algebra.dim)],
                   name=algebra.name)

    @classmethod
    def from_bimodule(cls, m: Bimodule, R: GradedAlgebra | None = None) -> "LeftModule":
        """``m`` as a left ``A^op (x) A``-module: ``(x (x) y) . v = y v x``."""
        a = m.algebra
        R = R or enveloping(a)
        n = a.dim
        if any(a.degrees):
            raise PerfError("bimodules over graded algebras are not supported here")
        action = []
        for x in range(n):
            for y in range(n):
                cols = []
                for j in range(m.dim):
                    cols.append(m.act_left({y: 1}, m.act_right({j: 1}, {x: 1})))
                action.append(SparseMatrix(m.dim, m.dim, m.field, cols, check=False))
        diff = SparseMatrix(m.dim, m.dim, m.field, [dict(v) for v in m.diff], check=False)
        return cls(R, m.degrees, action, diff, name=m.name)


@lru_cache(maxsize=32)
def enveloping(a: GradedAlgebra) -> GradedAlgebra:
    """``A^op (x) A``, basis ``x (x) y`` at index ``x * dim(A) + y``."""
    return tensor(opposite(a), a)


# ---------------------------------------------------------------------------
# perfect complexes


@dataclass
class Term:
    size: int
    idempotent: BMatrix


@dataclass
class Realization:
    """The underlying graded vector space of a perfect complex."""

    positions: list[int]
    bases: dict[int, Basis]          # position -> basis of e B^n inside B^n
    offsets: dict[int, int]
    degrees: list[int]
    diff: SparseMatrix
    right: list[SparseMatrix]        # per basis element of B
    left: list[SparseMatrix] | None  # per basis element of A

    @property
    def dim(self) -> int:
        return len(self.degrees)


class PerfComplex:
    """A bounded complex of projectives ``e_p B^{n_p}`` at cohomological positions ``p``.

    ``diffs[p]`` maps position ``p`` to ``p + 1``.  With ``left`` and ``rho``
    given, this is an ``A``-``B`` bimodule complex: ``rho[p][a]`` is the action of
    the basis element ``a`` of ``A`` on the term at ``p``.
    """

    def __init__(self, base: GradedAlgebra, terms: Mapping[int, Term], diffs: Mapping[int, BMatrix] | None = None,
                 left: GradedAlgebra | None = None, rho: Mapping[int, Sequence[BMatrix]] | None = None,
                 name: str = "N"):
        if not base.is_degree_zero:
            raise PerfError("perfect complexes are supported over algebras concentrated in degree 0")
        if left is not None and not left.is_degree_zero:
            raise PerfError("left actions are supported for algebras concentrated in degree 0")
        self.base = base
        self.field = base.field
        self.terms = {int(p): t for p, t in terms.items() if t.size > 0}
        self.diffs = {int(p): d for p, d in (diffs or {}).items() if not d.is_zero()}
        self.left = left
        self.rho = {int(p): list(v) for p, v in (rho or {}).items()}
        self.name = name
        for p, t in self.terms.items():
            if (t.idempotent.nrows, t.idempotent.ncols) != (t.size, t.size):
                raise PerfError("idempotent at position %d has the wrong shape" % p)
        for p, d in self.diffs.items():
            if (d.nrows, d.ncols) != (self.size(p + 1), self.size(p)):
                raise PerfError("differential at position %d has the wrong shape" % p)
        if left is not None:
            for p in self.terms:
                if len(self.rho.get(p, [])) != left.dim:
                    raise PerfError("need one action matrix per basis element at position %d" % p)

    # data access

    def positions(self) -> list[int]:
        return sorted(self.terms)

    def size(self, p: int) -> int:
        t = self.terms.get(p)
        return t.size if t else 0

    def idempotent(self, p: int) -> BMatrix:
        t = self.terms.get(p)
        return t.idempotent if t else BMatrix(self.base, 0, 0)

    def d(self, p: int) -> BMatrix:
        if p in self.diffs:
            return self.diffs[p]
        return BMatrix(self.base, self.size(p + 1), self.size(p))

    @property
    def is_bimodule(self) -> bool:
        return self.left is not None

    # validation

    def violations(self) -> list[str]:
        bad = []
        B = self.base
        for p in self.positions():
            e = self.idempotent(p)
            if e @ e != e:
                bad.append("idempotent at position %d is not idempotent" % p)
        for p, d in self.diffs.items():
            if p not in self.terms or p + 1 not in self.terms:
                bad.append("differential at position %d leaves the complex" % p)
                continue
            if self.idempotent(p + 1) @ d @ self.idempotent(p) != d:
                bad.append("differential at position %d is not compatible with the idempotents" % p)
            if p + 1 in self.diffs and not (self.diffs[p + 1] @ d).is_zero():
                bad.append("d^2 != 0 at position %d" % p)
        if self.left is not None:
            A = self.left
            for p in self.positions():
                e = self.idempotent(p)
                rho = self.rho[p]
                one = BMatrix(B, e.nrows, e.ncols)
                for i, x in A.unit.items():
                    one = one + rho[i].scale(x)
                if one != e:
                    bad.append("left action at position %d is not unital" % p)
                for i in range(A.dim):
                    if e @ rho[i] @ e != rho[i]:
                        bad.append("left action at position %d leaves the corner algebra" % p)
                        break
                for i in range(A.dim):
                    for j in range(A.dim):
                        prod = BMatrix(B, e.nrows, e.ncols)
                        for k, x in A.table[i][j].items():
                            prod = prod + rho[k].scale(x)
                        if prod != rho[i] @ rho[j]:
                            bad.append("left action at position %d is not multiplicative at (%s, %s)"
                                       % (p, A.labels[i], A.labels[j]))
                            break
                if p in self.diffs:
                    rho_next = self.rho[p + 1]
                    for i in range(A.dim):
                        if rho_next[i] @ self.diffs[p] != self.diffs[p] @ rho[i]:
                            bad.append("left action does not commute with d at position %d" % p)
                            break
        return bad

    def require_valid(self):
        bad = self.violations()
        if bad:
            raise PerfError("invalid perfect complex %s: %s" % (self.name, bad[0]))

    # operations

    def shift(self, k: int) -> "PerfComplex":
        """``N[k]``: positions move by ``-k``; the differential changes sign for odd ``k``."""
        s = _sign(k)
        return PerfComplex(self.base, {p - k: t for p, t in self.terms.items()},
                           {p - k: d.scale(s) for p, d in self.diffs.items()},
                           self.left, {p - k: v for p, v in self.rho.items()}, name="%s[%d]" % (self.name, k))

    def forget_left(self) -> "PerfComplex":
        return PerfComplex(self.base, self.terms, self.diffs, name=self.name)

    @cached_property
    def realization(self) -> Realization:
        B = self.base
        nb = B.dim
        positions = self.positions()
        bases, offsets, degrees = {}, {}, []
        for p in positions:
            basis = column_space_basis(self.idempotent(p).kmatrix())
            bases[p] = basis
            offsets[p] = len(degrees)
            degrees += [p] * len(basis)
        total = len(degrees)
        field = self.field

        def realize(block_map):
            """Assemble a global matrix from per-position k-linear maps on ``B^n``."""
            cols = []
            for p in positions:
                for v in bases[p].vectors:
                    col: dict = {}
                    for q, mat in block_map(p):
                        w = mat.apply(v)
                        if w:
                            for j, x in bases[q].coords(w).items():
                                col[offsets[q] + j] = x
                    cols.append(col)
            return SparseMatrix(total, total, field, cols, check=False)

        diff = realize(lambda p: [(p + 1, self.diffs[p].kmatrix())] if p in self.diffs else [])
        right = []
        for l in range(nb):
            mats = {p: _right_mult_kmatrix(B, self.size(p), {l: 1}) for p in positions}
            right.append(realize(lambda p, mats=mats: [(p, mats[p])]))
        left = None
        if self.left is not None:
            left = []
            for i in range(self.left.dim):
                mats = {p: self.rho[p][i].kmatrix() for p in positions}
                left.append(realize(lambda p, mats=mats: [(p, mats[p])]))
        return Realization(positions, bases, offsets, degrees, diff, right, left)

    def to_bimodule(self) -> Bimodule:
        """The underlying ``A``-``A`` bimodule complex (requires ``left == base``)."""
        if self.left is None or self.left != self.base:
            raise PerfError("not an endo-bimodule complex")
        rz = self.realization
        n = rz.dim
        left = [[rz.left[a].cols[j] for j in range(n)] for a in range(self.base.dim)]
        right = [[rz.right[b].cols[j] for b in range(self.base.dim)] for j in range(n)]
        diff = [rz.diff.cols[j] for j in range(n)]
        return Bimodule(self.base, rz.degrees, left, right, diff, name=self.name)

    def as_left_module_of_opposite(self) -> LeftModule:
        """A right ``B``-module complex viewed as a left ``B^op``-module complex."""
        rz = self.realization
        return LeftModule(opposite(self.base, check=False), rz.degrees, rz.right, rz.diff, name=self.name)

    def __repr__(self):
        return "PerfComplex(%s over %s, sizes %s)" % (self.name, self.base.name,
                                                       {p: self.size(p) for p in self.positions()})


def _right_mult_kmatrix(B: GradedAlgebra, n: int, u: Mapping) -> SparseMatrix:
    """Right multiplication by ``u`` on ``B^n``, entrywise."""
    nb = B.dim
    cols = []
    for r in range(n):
        for l in range(nb):
            cols.append({r * nb + k: x for k, x in B.multiply({l: 1}, u).items()})
    return SparseMatrix(n * nb, n * nb, B.field, cols, check=False)


# ---------------------------------------------------------------------------
# constructors


def free_module(a: GradedAlgebra, rank_: int = 1, position: int = 0) -> PerfComplex:
    return PerfComplex(a, {position: Term(rank_, BMatrix.identity(a, rank_))}, name="A^%d" % rank_ if rank_ != 1 else "A")


def idempotent_module(a: GradedAlgebra, e: Mapping, position: int = 0, name: str = "eA") -> PerfComplex:
    """The right module ``eA`` for an idempotent ``e``."""
    m = PerfComplex(a, {position: Term(1, BMatrix.scalar(a, e))}, name=name)
    m.require_valid()
    return m


def left_idempotent_module(a: GradedAlgebra, e: Mapping, position: int = 0, name: str = "Ae") -> PerfComplex:
    """The left module ``Ae`` encoded as the right ``A^op``-module ``e A^op``."""
    return idempotent_module(opposite(a), e, position, name)


def graph_bimodule(phi: AlgebraMorphism, position: int = 0) -> PerfComplex:
    """``B`` with ``A`` acting on the left through ``phi``."""
    rep = phi.validate()
    if not rep.valid:
        raise PerfError("invalid morphism: %s" % rep.violations[0])
    B = phi.target
    rho = [BMatrix.scalar(B, phi.images[i]) for i in range(phi.source.dim)]
    m = PerfComplex(B, {position: Term(1, BMatrix.identity(B, 1))}, left=phi.source, rho={position: rho},
                    name="Graph(%s)" % phi.name)
    m.require_valid()
    return m


def diagonal_bimodule(a: GradedAlgebra) -> PerfComplex:
    from .algebra import identity_morphism

    m = graph_bimodule(identity_morphism(a))
    m.name = "Delta"
    return m


def projective_bimodule(a: GradedAlgebra, b: GradedAlgebra, e: Mapping, f: Mapping, position: int = 0) -> PerfComplex:
    """``Ae (x) fB`` as an ``A``-``B`` bimodule: ``dim(Ae)`` copies of ``fB``."""
    ae = column_space_basis(a.right_mult_matrix(e))
    n = len(ae)
    if n == 0:
        raise PerfError("Ae is zero")
    rho = []
    for i in range(a.dim):
        entries = {}
        for c, v in enumerate(ae.vectors):
            for r, x in ae.coords(a.multiply({i: 1}, v)).items():
                entries[r, c] = {k: x * y for k, y in f.items()}
        rho.append(BMatrix(b, n, n, entries))
    E = BMatrix.diagonal(b, [f] * n)
    m = PerfComplex(b, {position: Term(n, E)}, left=a, rho={position: rho}, name="Ae(x)fB")
    m.require_valid()
    return m


def direct_sum(parts: Sequence[PerfComplex]) -> PerfComplex:
    """Termwise direct sum of complexes over the same base (and left algebra)."""
    base = parts[0].base
    left = parts[0].left
    positions = sorted({p for m in parts for p in m.positions()})
    terms, diffs, rho = {}, {}, {}
    for p in positions:
        sizes = [m.size(p) for m in parts]
        off = [sum(sizes[:i]) for i in range(len(parts))]
        n = sum(sizes)
        ent = {}
        for m, o in zip(parts, off):
            for (r, c), v in m.idempotent(p).entries.items():
                ent[r + o, c + o] = v
        terms[p] = Term(n, BMatrix(base, n, n, ent))
        nxt = [m.size(p + 1) for m in parts]
        offn = [sum(nxt[:i]) for i in range(len(parts))]
        dent = {}
        for m, o, o2 in zip(parts, off, offn):
            for (r, c), v in m.d(p).entries.items():
                dent[r + o2, c + o] = v
        if dent:
            diffs[p] = BMatrix(base, sum(nxt), n, dent)
        if left is not None:
            mats = []
            for i in range(left.dim):
                ent = {}
                for m, o in zip(parts, off):
                    if p in m.rho:
                        for (r, c), v in m.rho[p][i].entries.items():
                            ent[r + o, c + o] = v
                mats.append(BMatrix(base, n, n, ent))
            rho[p] = mats
    return PerfComplex(base, terms, diffs, left, rho if left is not None else None,
                       name="+".join(m.name for m in parts))


def cone_of_identity(m: PerfComplex) -> PerfComplex:
    """``[N --id--> N]`` with the source at position ``-1``; Euler class zero."""
    if len(m.positions()) != 1:
        raise PerfError("cone_of_identity expects a single-term complex")
    p = m.positions()[0]
    t = m.terms[p]
    rho = {p - 1: m.rho[p], p: m.rho[p]} if m.left is not None else None
    return PerfComplex(m.base, {p - 1: t, p: t}, {p - 1: t.idempotent}, m.left, rho, name="Cone(id)")


# ---------------------------------------------------------------------------
# tensor products


@dataclass
class TensorComplex:
    complex: ChainComplex          # homological index = -(cohomological position)
    bases: dict[tuple[int, int], Basis]
    offsets: dict[tuple[int, int], int]

    def cohomology_dims(self) -> dict[int, int]:
        c = self.complex
        dims = homology_dims(c)
        return {-n: d for n, d in sorted(dims.items(), reverse=True)}


def tensor_over(n: PerfComplex, m: LeftModule) -> TensorComplex:
    """``N (x)_R M`` for a right perfect ``R``-complex ``N`` and a left ``R``-module complex ``M``.

    The term ``N_p (x) M_q`` is realized as ``e_p . M_q^{n_p}`` inside ``M^{n_p}``.
    The differential is ``d_N (x) 1 + (-1)^p 1 (x) d_M``.
    """
    if n.base != m.algebra:
        raise PerfError("incompatible actions: %s-module tensored over %s" % (n.base.name, m.algebra.name))
    field = m.field
    dm = m.dim
    qs = sorted(set(m.degrees))
    idx = {q: [j for j, d in enumerate(m.degrees) if d == q] for q in qs}
    act_cols = [mat.cols for mat in m.action]

    def act(u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for r, x in u.items():
            cols = act_cols[r]
            for j, y in v.items():
                if cols[j]:
                    add_into(out, cols[j], x * y)
        return out

    def apply_bm(X: BMatrix, vec: Mapping) -> dict:
        """Matrix over ``R`` acting on ``M^{ncols}`` (coordinates ``c * dim(M) + j``)."""
        blocks: dict[int, dict] = {}
        for key, x in vec.items():
            c, j = divmod(key, dm)
            blocks.setdefault(c, {})[j] = x
        out: dict = {}
        for (r, c), u in X.entries.items():
            if c in blocks:
                for j, y in act(u, blocks[c]).items():
                    add_into(out, {r * dm + j: y})
        return out

    bases, offsets = {}, {}
    totals: dict[int, int] = {}
    pairs = sorted(((p, q) for p in n.positions() for q in qs), key=lambda pq: (pq[0] + pq[1], pq[0]))
    for p, q in pairs:
        e = n.idempotent(p)
        cols = [apply_bm(e, {c * dm + j: field.one}) for c in range(n.size(p)) for j in idx[q]]
        b = column_space_basis(SparseMatrix(n.size(p) * dm, len(cols), field, cols, check=False))
        if len(b) == 0:
            continue
        t = p + q
        bases[p, q] = b
        offsets[p, q] = totals.get(t, 0)
        totals[t] = totals.get(t, 0) + len(b)
    diffs_cols: dict[int, list] = {t: [] for t in totals}
    for (p, q), b in bases.items():
        X = n.d(p)
        s = _sign(p)
        for v in b.vectors:
            col: dict = {}
            if (p + 1, q) in bases and not X.is_zero():
                w = apply_bm(X, v)
                if w:
                    for j, x in bases[p + 1, q].coords(w).items():
                        add_into(col, {offsets[p + 1, q] + j: x})
            if (p, q + 1) in bases:
                w: dict = {}
                for key, x in v.items():
                    c, j = divmod(key, dm)
                    for k, y in m.diff.cols[j].items():
                        add_into(w, {c * dm + k: s * x * y})
                if w:
                    for j, x in bases[p, q + 1].coords(w).items():
                        add_into(col, {offsets[p, q + 1] + j: x})
            diffs_cols[p + q].append(col)
    dims = {-t: d for t, d in totals.items()}
    diffs = {-t: SparseMatrix(totals.get(t + 1, 0), totals[t], field, cols, check=False)
             for t, cols in diffs_cols.items()}
    return TensorComplex(ChainComplex(dims, diffs, field), bases, offsets)


def derived_tensor(n: PerfComplex, m) -> dict[int, int]:
    """Cohomology dimensions of ``N (x)^L_A M``.

    ``m`` is a :class:`LeftModule` over ``A``, or a right perfect complex over
    ``A^op`` standing for a left ``A``-module.
    """
    if isinstance(m, PerfComplex):
        if m.base != opposite(n.base, check=False):
            raise PerfError("incompatible actions: expected a complex over %s^op" % n.base.name)
        lm = m.as_left_module_of_opposite()
        lm = LeftModule(n.base, lm.degrees, lm.action, lm.diff, lm.name)
    else:
        lm = m
    return tensor_over(n, lm).cohomology_dims()


def euler_characteristic(dims: Mapping[int, int]) -> int:
    """Alternating sum ``sum (-1)^j dims[j]``."""
    return sum(_sign(j) * d for j, d in dims.items())


# ---------------------------------------------------------------------------
# diagonal resolutions


class ResolutionError(PerfError):
    pass


@dataclass
class DiagonalResolution:
    """A perfect right ``A^op (x) A``-complex with an augmentation to ``A``.

    ``augmentation[g]`` is the image in ``A`` of the generator of row ``g`` of
    the position-0 term.
    """

    algebra: GradedAlgebra
    complex: PerfComplex
    augmentation: list[dict]
    kind: str

    def augment(self, vec: Mapping) -> dict:
        """Image in ``A`` of a vector of ``R^{n_0}`` (coordinates ``g * dim(R) + r``)."""
        a = self.algebra
        nR = self.complex.base.dim
        n = a.dim
        out: dict = {}
        for key, c in vec.items():
            g, r = divmod(key, nR)
            x, y = divmod(r, n)
            # generator . (x (x) y)  maps to  x . augmentation[g] . y
            add_into(out, a.multiply(a.multiply({x: 1}, self.augmentation[g]), {y: 1}), c)
        return out

    def exactness_violations(self) -> list[str]:
        """Check that ``P -> A`` is a quasi-isomorphism."""
        bad = self.complex.violations()
        if bad:
            return bad
        a = self.algebra
        P = self.complex
        if 0 not in P.terms:
            return ["no term in position 0"]
        rz = P.realization
        dims = homology_dims(ChainComplex({-p: len(rz.bases[p]) for p in rz.positions},
                                          {-p: _block(rz, p, p + 1) for p in rz.positions if p + 1 in rz.bases},
                                          a.field))
        coh = {-n: d for n, d in dims.items()}
        for p, d in coh.items():
            if p != 0 and d:
                bad.append("resolution has cohomology in position %d" % p)
        if coh.get(0, 0) != a.dim:
            bad.append("H^0 of the resolution has dimension %d, expected %d" % (coh.get(0, 0), a.dim))
        images = [self.augment(v) for v in rz.bases[0].vectors]
        if rank(SparseMatrix(a.dim, len(images), a.field, images, check=False)) != a.dim:
            bad.append("augmentation is not surjective")
        if -1 in rz.bases and -1 in P.diffs:
            dmat = P.diffs[-1].kmatrix()
            for v in rz.bases[-1].vectors:
                if self.augment(dmat.apply(v)):
                    bad.append("augmentation does not vanish on boundaries")
                    break
        return bad

    def require_exact(self):
        bad = self.exactness_violations()
        if bad:
            raise ResolutionError("resolution of %s is not exact: %s" % (self.algebra.name, bad[0]))


def _block(rz: Realization, p: int, q: int) -> SparseMatrix:
    o_p, o_q = rz.offsets[p], rz.offsets[q]
    n_p, n_q = len(rz.bases[p]), len(rz.bases[q])
    cols = []
    for j in range(n_p):
        col = {i - o_q: x for i, x in rz.diff.cols[o_p + j].items() if o_q <= i < o_q + n_q}
        cols.append(col)
    return SparseMatrix(n_q, n_p, rz.diff.field, cols, check=False)


def separability_idempotent(a: GradedAlgebra) -> dict | None:
    """``z`` in ``A^op (x) A`` (index ``x*dim + y``) with ``a z = z a`` and ``mu(z) = 1``, if any.

    Here ``a z`` multiplies the first factor on the left and ``z a`` the second
    factor on the right, viewing ``z`` in ``A (x) A``.
    """
    n = a.dim
    field = a.field
    # unknowns c_{xy}; rows: for each basis a_i the coefficients of a_i z - z a_i, then mu(z)
    cols = []
    for x in range(n):
        for y in range(n):
            col: dict = {}
            for i in range(n):
                for k, c in a.table[i][x].items():
                    add_into(col, {i * n * n + k * n + y: c})
                for k, c in a.table[y][i].items():
                    add_into(col, {i * n * n + x * n + k: -c})
            for k, c in a.table[x][y].items():
                add_into(col, {n * n * n + k: c})
            cols.append(col)
    m = SparseMatrix(n * n * n + n, n * n, field, cols, check=False)
    rhs = {n * n * n + k: c for k, c in a.unit.items()}
    sol = solve(m, rhs)
    return sol


def _separable_resolution(a: GradedAlgebra, z: dict) -> DiagonalResolution:
    R = enveloping(a)
    E = BMatrix.scalar(R, z)
    P = PerfComplex(R, {0: Term(1, E)}, name="P(%s)" % a.name)
    return DiagonalResolution(a, P, [dict(a.unit)], "separable")


def path_algebra_resolution(a: GradedAlgebra, layout: tuple | None = None) -> DiagonalResolution:
    """``0 -> (+)_arrows Ae_s (x) e_tA -> (+)_vertices Ae_i (x) e_iA -> A -> 0``.

    ``layout`` is ``(vertex -> basis index, [(arrow basis index, source, target)])``,
    by default the one recorded by :func:`path_algebra`.
    """
    layout = layout or a.quiver_layout
    if layout is None:
        raise ResolutionError("algebra carries no quiver layout")
    verts, arrows = layout
    R = enveloping(a)
    n = a.dim
    vlist = list(verts)
    vpos = {v: i for i, v in enumerate(vlist)}

    def r(x, y):
        return {x * n + y: 1}

    E0 = BMatrix.diagonal(R, [r(verts[v], verts[v]) for v in vlist])
    E1 = BMatrix.diagonal(R, [r(verts[s], verts[t]) for _, s, t in arrows])
    ent = {}
    for c, (al, s, t) in enumerate(arrows):
        ent[vpos[t], c] = r(al, verts[t])
        ent[vpos[s], c] = {k: -x for k, x in r(verts[s], al).items()}
    terms = {0: Term(len(vlist), E0)}
    diffs = {}
    if arrows:
        terms[-1] = Term(len(arrows), E1)
        diffs[-1] = BMatrix(R, len(vlist), len(arrows), ent)
    P = PerfComplex(R, terms, diffs, name="P(%s)" % a.name)
    return DiagonalResolution(a, P, [a.basis_vector(verts[v]) for v in vlist], "path")


_resolution_cache: dict = {}


def diagonal_resolution(a: GradedAlgebra, supplied: DiagonalResolution | None = None) -> DiagonalResolution:
    """A checked resolution of the diagonal bimodule.

    Tries, in order: a supplied resolution, the path-algebra resolution (when
    the algebra records a quiver layout), and a separability idempotent.
    """
    if supplied is None and a in _resolution_cache:
        return _resolution_cache[a]
    require_valid(a)
    if not a.is_degree_zero:
        raise ResolutionError("no resolution constructor; supply one in the input file")
    if supplied is not None:
        if supplied.algebra != a:
            raise ResolutionError("supplied resolution is for a different algebra")
        res = supplied
    elif a.quiver_layout is not None:
        res = path_algebra_resolution(a)
    else:
        z = separability_idempotent(a)
        if z is None:
            raise ResolutionError("no resolution constructor; supply one in the input file")
        res = _separable_resolution(a, z)
    res.require_exact()
    _resolution_cache[a] = res
    return res


def register_resolution(res: DiagonalResolution) -> DiagonalResolution:
    """Check a user-supplied resolution and use it for its algebra from now on."""
    return diagonal_resolution(res.algebra, supplied=res)


def hh_via_resolution(res: DiagonalResolution, m, i_max: int, i_min: int = 0) -> list[int]:
    """``HH_i(A, M)`` as the homology of ``P (x)_{A^e} M``, for ``i_min <= i <= i_max``.

    ``m`` is a :class:`Bimodule` or an endo-bimodule :class:`PerfComplex`.
    """
    if isinstance(m, PerfComplex):
        m = m.to_bimodule()
    if m.algebra != res.algebra:
        raise PerfError("bimodule is over a different algebra")
    lm = LeftModule.from_bimodule(m, res.complex.base)
    coh = tensor_over(res.complex, lm).cohomology_dims()
    return [coh.get(-i, 0) for i in range(i_min, i_max + 1)]
