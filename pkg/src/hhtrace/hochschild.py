"""The Hochschild chain complex, its homology, shuffles and the Kunneth map.

A bar word ``a0[a1|...|an]`` is stored as the tuple ``(a0, a1, ..., an)`` of
basis indices; a chain (``BarChainVector``) is a dict ``word -> coefficient``.
The total degree of a word is ``deg(a0) + sum(deg(ai) - 1)`` and the word sits
in homological position ``-(total degree)``, so ``HH_n`` is homology at ``n``.

The differential is ``b = b0 + b1`` with

* ``b0(a0[a1|...|an]) = d(a0)[...] - sum_i (-1)^eta_{i-1} a0[...|d(ai)|...]``
* ``b1(a0[a1|...|an]) = (-1)^deg(a0) a0a1[a2|...] + sum_{i<n} (-1)^eta_i a0[...|ai a_{i+1}|...]
  - (-1)^{eta_{n-1} (deg(an)+1)} an a0[a1|...|a_{n-1}]``

where ``eta_i = deg(a0) + deg(s a1) + ... + deg(s ai)`` and ``deg(s a) = deg(a) - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Mapping, Sequence

from .algebra import AlgebraError, GradedAlgebra, add_into, tensor
from .linalg import (
    ChainComplex,
    ComplexError,
    HomologySummary,
    SparseMatrix,
    homology_at,
    homology_dims,
    inverse,
    rank,
)

EXACT = "exact"
TRUNCATED = "truncated: window result"

BarChainVector = dict


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# coefficient bimodules


class Bimodule:
    """A DG bimodule over ``A``, given on a basis of the underlying space.

    ``left[a][m]`` is ``b_a . m`` and ``right[m][a]`` is ``m . b_a`` as sparse
    vectors; ``diff[m]`` is ``d(m)``.
    """

    def __init__(self, algebra: GradedAlgebra, degrees: Sequence[int], left, right, diff=None, name: str = "M"):
        self.algebra = algebra
        self.field = algebra.field
        self.degrees = tuple(degrees)
        self.dim = len(self.degrees)
        self.left = [[dict(v) for v in row] for row in left]
        self.right = [[dict(v) for v in row] for row in right]
        self.diff = [dict(v) for v in diff] if diff is not None else [{} for _ in range(self.dim)]
        self.name = name
        if len(self.left) != algebra.dim or any(len(r) != self.dim for r in self.left):
            raise AlgebraError("left action table has the wrong shape")
        if len(self.right) != self.dim or any(len(r) != algebra.dim for r in self.right):
            raise AlgebraError("right action table has the wrong shape")

    @classmethod
    def diagonal(cls, a: GradedAlgebra) -> "Bimodule":
        return cls(a, a.degrees, a.table, a.table, a.diff, name="Delta")

    @property
    def key(self) -> tuple:
        def frz(rows):
            return tuple(tuple(tuple(sorted(v.items())) for v in r) for r in rows)

        return (self.algebra.key, self.degrees, frz(self.left), frz(self.right),
                tuple(tuple(sorted(v.items())) for v in self.diff))

    def act_left(self, u: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for a, x in u.items():
            row = self.left[a]
            for j, y in m.items():
                if row[j]:
                    add_into(out, row[j], x * y)
        return out

    def act_right(self, m: Mapping, u: Mapping) -> dict:
        out: dict = {}
        for j, y in m.items():
            row = self.right[j]
            for a, x in u.items():
                if row[a]:
                    add_into(out, row[a], x * y)
        return out

    def d(self, m: Mapping) -> dict:
        out: dict = {}
        for j, y in m.items():
            add_into(out, self.diff[j], y)
        return out

    def violations(self, limit: int = 20) -> list[str]:
        a = self.algebra
        bad = []
        e = [{j: self.field.one} for j in range(self.dim)]
        for j in range(self.dim):
            if self.act_left(a.unit, e[j]) != e[j] or self.act_right(e[j], a.unit) != e[j]:
                bad.append("unit does not act as identity on basis element %d" % j)
            for k in self.diff[j]:
                if self.degrees[k] != self.degrees[j] + 1:
                    bad.append("module differential is not of degree +1 at %d" % j)
                    break
            if self.d(self.diff[j]):
                bad.append("module differential does not square to zero at %d" % j)
        for x, y in iproduct(range(a.dim), repeat=2):
            for j in range(self.dim):
                if self.act_left(a.table[x][y], e[j]) != self.act_left({x: 1}, self.left[y][j]):
                    bad.append("left action not associative at (%s, %s, %d)" % (a.labels[x], a.labels[y], j))
                if self.act_right(e[j], a.table[x][y]) != self.act_right(self.right[j][x], {y: 1}):
                    bad.append("right action not associative at (%d, %s, %s)" % (j, a.labels[x], a.labels[y]))
                if self.act_right(self.left[x][j], {y: 1}) != self.act_left({x: 1}, self.right[j][y]):
                    bad.append("actions do not commute at (%s, %d, %s)" % (a.labels[x], j, a.labels[y]))
                if len(bad) >= limit:
                    return bad
        for x in range(a.dim):
            for j in range(self.dim):
                lhs = self.d(self.left[x][j])
                rhs = self.act_left(a.diff[x], e[j])
                add_into(rhs, self.act_left({x: 1}, self.diff[j]), _sign(a.degrees[x]))
                if lhs != rhs:
                    bad.append("left Leibniz rule fails at (%s, %d)" % (a.labels[x], j))
                lhs = self.d(self.right[j][x])
                rhs = self.act_right(self.diff[j], {x: 1})
                add_into(rhs, self.act_right(e[j], a.diff[x]), _sign(self.degrees[j]))
                if lhs != rhs:
                    bad.append("right Leibniz rule fails at (%d, %s)" % (j, a.labels[x]))
        return bad[:limit]

    def require_valid(self):
        bad = self.violations(limit=1)
        if bad:
            raise AlgebraError("bimodule action axioms violated: %s" % bad[0])


# ---------------------------------------------------------------------------
# the bar differential on words


def word_degree(a: GradedAlgebra, word: tuple, head_degrees: Sequence[int] | None = None) -> int:
    hd = head_degrees if head_degrees is not None else a.degrees
    return hd[word[0]] + sum(a.degrees[x] - 1 for x in word[1:])


def _boundary_parts(a: GradedAlgebra, m: Bimodule, word: tuple) -> tuple[dict, dict]:
    head, tail = word[0], word[1:]
    n = len(tail)
    deg = a.degrees
    eta = [m.degrees[head]]
    for x in tail:
        eta.append(eta[-1] + deg[x] - 1)
    b0: dict = {}
    b1: dict = {}
    for k, x in m.diff[head].items():
        add_into(b0, {(k,) + tail: x})
    for i in range(1, n + 1):
        dx = a.diff[tail[i - 1]]
        if dx:
            s = -_sign(eta[i - 1])
            for k, x in dx.items():
                add_into(b0, {(head,) + tail[: i - 1] + (k,) + tail[i:]: s * x})
    if n:
        s = _sign(m.degrees[head])
        for k, x in m.right[head][tail[0]].items():
            add_into(b1, {(k,) + tail[1:]: s * x})
        for i in range(1, n):
            s = _sign(eta[i])
            for k, x in a.table[tail[i - 1]][tail[i]].items():
                add_into(b1, {(head,) + tail[: i - 1] + (k,) + tail[i + 1:]: s * x})
        s = -_sign(eta[n - 1] * (deg[tail[-1]] + 1))
        for k, x in m.left[tail[-1]][head].items():
            add_into(b1, {(k,) + tail[:-1]: s * x})
    return b0, b1


def boundary(a: GradedAlgebra, chain: Mapping, coefficients: Bimodule | None = None, part: str = "b") -> dict:
    """Apply ``b`` (or just ``b0`` / ``b1``) to a chain."""
    m = coefficients or _diagonal(a)
    out: dict = {}
    for w, c in chain.items():
        b0, b1 = _boundary_parts(a, m, w)
        if part in ("b", "b0"):
            add_into(out, b0, c)
        if part in ("b", "b1"):
            add_into(out, b1, c)
    return out


@lru_cache(maxsize=64)
def _diagonal(a: GradedAlgebra) -> Bimodule:
    return Bimodule.diagonal(a)


# ---------------------------------------------------------------------------
# windows


class HochschildWindow:
    """All bar words of length at most ``max_bar`` and the differential on them.

    Bar length never increases under ``b``, so the window is a subcomplex.
    """

    def __init__(self, a: GradedAlgebra, max_bar: int, coefficients: Bimodule | None = None):
        if max_bar < 0:
            raise ValueError("max bar length must be nonnegative")
        self.algebra = a
        self.max_bar = max_bar
        self.coefficients = coefficients
        m = coefficients or _diagonal(a)
        self._m = m
        field = a.field
        words: dict[int, list] = {}
        index: dict[tuple, int] = {}
        for n in range(max_bar + 1):
            for w in iproduct(range(m.dim), *([range(a.dim)] * n)):
                pos = -word_degree(a, w, m.degrees)
                bucket = words.setdefault(pos, [])
                index[w] = len(bucket)
                bucket.append(w)
        self.words = words
        self.index = index
        b0_cols: dict[int, list] = {p: [] for p in words}
        b1_cols: dict[int, list] = {p: [] for p in words}
        for p, ws in words.items():
            c0, c1 = b0_cols[p], b1_cols[p]
            for w in ws:
                v0, v1 = _boundary_parts(a, m, w)
                c0.append({index[u]: x for u, x in v0.items()})
                c1.append({index[u]: x for u, x in v1.items()})
        dims = {p: len(ws) for p, ws in words.items()}
        self.b0 = {p: SparseMatrix(dims.get(p - 1, 0), dims[p], field, c, check=False) for p, c in b0_cols.items()}
        self.b1 = {p: SparseMatrix(dims.get(p - 1, 0), dims[p], field, c, check=False) for p, c in b1_cols.items()}
        diffs = {}
        for p in dims:
            if a.has_differential or any(m.diff):
                diffs[p] = self.b0[p] + self.b1[p]
            else:
                diffs[p] = self.b1[p]
        self.complex = ChainComplex(dims, diffs, field, check=False)
        self._homology: dict[int, HomologySummary] = {}

    # certificates

    def certified_max(self) -> int | None:
        """Largest ``i`` with ``HH_i`` computed exactly, or ``None`` if no guarantee.

        For a degree-0 algebra with coefficients in cohomological degrees
        ``<= p``, a word at position ``i`` has bar length ``i + deg(m)``, so the
        window computes ``HH_i`` exactly when ``i + 1 + p <= max_bar``.
        """
        if not self.algebra.is_degree_zero:
            return None
        top = max(self._m.degrees) if self._m.dim else 0
        return self.max_bar - 1 - top

    def certificate(self, i: int) -> str:
        top = self.certified_max()
        if top is not None and i <= top:
            return EXACT
        return TRUNCATED

    # checks

    def square_defects(self) -> dict[str, list[int]]:
        """Positions where ``b^2``, ``b0^2``, ``b1^2`` or ``b0 b1 + b1 b0`` is nonzero."""
        out = {"b": [], "b0": [], "b1": [], "b0b1+b1b0": []}
        for p in sorted(self.words):
            if p - 1 not in self.words:
                continue
            d0, d1 = self.b0[p], self.b1[p]
            e0, e1 = self.b0[p - 1], self.b1[p - 1]
            s00 = e0 @ d0
            s11 = e1 @ d1
            mixed = (e0 @ d1) + (e1 @ d0)
            if not s00.is_zero():
                out["b0"].append(p)
            if not s11.is_zero():
                out["b1"].append(p)
            if not mixed.is_zero():
                out["b0b1+b1b0"].append(p)
            if not (s00 + s11 + mixed).is_zero():
                out["b"].append(p)
        return out

    # homology

    def positions(self) -> list[int]:
        return sorted(self.words)

    def dims(self, degrees) -> dict[int, int]:
        c = self.complex
        out = {}
        for i in degrees:
            out[i] = homology_dims(c, [i])[i] if c.lo - 1 <= i <= c.hi + 1 else 0
        return out

    def homology(self, i: int) -> HomologySummary:
        if i not in self._homology:
            c = self.complex
            if c.lo - 1 <= i <= c.hi + 1:
                self._homology[i] = homology_at(c, i)
            else:
                self._homology[i] = homology_at(ChainComplex({}, None, c.field), i)
        return self._homology[i]

    def vector(self, chain: Mapping) -> tuple[int | None, dict]:
        """Coordinates of a homogeneous chain: ``(position, {index: coef})``."""
        pos = None
        vec: dict = {}
        for w, x in chain.items():
            if not x:
                continue
            if w not in self.index:
                raise ComplexError("word %r lies outside the window" % (w,))
            p = -word_degree(self.algebra, w, self._m.degrees)
            if pos is None:
                pos = p
            elif pos != p:
                raise ComplexError("chain is not homogeneous")
            vec[self.index[w]] = x
        return pos, vec

    def chain(self, pos: int, vec: Mapping) -> dict:
        ws = self.words.get(pos, [])
        return {ws[j]: x for j, x in vec.items()}

    def class_of(self, chain: Mapping, i: int | None = None) -> list:
        """Homology coordinates of a cycle."""
        pos, vec = self.vector(chain)
        if pos is None:
            return [self.algebra.field.zero] * self.homology(i if i is not None else 0).dimension
        if i is not None and i != pos:
            raise ComplexError("chain lies in position %d, not %d" % (pos, i))
        return self.homology(pos).project(vec)

    def representative(self, i: int, j: int) -> dict:
        return self.chain(i, self.homology(i).representative(j))


@lru_cache(maxsize=16)
def _cached_window(a: GradedAlgebra, max_bar: int) -> HochschildWindow:
    return HochschildWindow(a, max_bar)


def hochschild_complex(a: GradedAlgebra, max_bar: int, check: bool = True) -> HochschildWindow:
    """The Hochschild window of ``a``; ``b^2 = 0`` is verified unless ``check=False``."""
    from .algebra import require_valid

    if max_bar < 1:
        raise ValueError("need max bar length >= 1")
    require_valid(a)
    w = _cached_window(a, max_bar)
    if check and not getattr(w, "_checked", False):
        bad = w.complex.square_defects()
        if bad:
            raise ComplexError("b^2 != 0 at position %d" % bad[0])
        w._checked = True
    return w


@dataclass
class HHResult:
    dims: list[int]
    certificates: list[str]
    window: HochschildWindow

    @property
    def certificate(self) -> str:
        return EXACT if all(c == EXACT for c in self.certificates) else TRUNCATED

    @property
    def euler_characteristic(self) -> int:
        return sum(_sign(i) * d for i, d in enumerate(self.dims))


def hh_dims(a: GradedAlgebra, i_max: int) -> HHResult:
    """Dimensions of ``HH_0 .. HH_{i_max}`` from the window of length ``i_max + 1``."""
    w = hochschild_complex(a, i_max + 1, check=False)
    d = w.dims(range(i_max + 1))
    return HHResult([d[i] for i in range(i_max + 1)], [w.certificate(i) for i in range(i_max + 1)], w)


def hh_with_coefficients(a: GradedAlgebra, m: Bimodule, i_max: int, i_min: int = 0) -> HHResult:
    """``HH_i(A, M)`` for ``i_min <= i <= i_max`` from the bar complex with coefficients."""
    from .algebra import require_valid

    require_valid(a)
    m.require_valid()
    top = max(m.degrees) if m.dim else 0
    w = HochschildWindow(a, max(i_max + 1 + top, 1), coefficients=m)
    if w.complex.square_defects():
        raise ComplexError("b^2 != 0 on the coefficient complex")
    rng = range(i_min, i_max + 1)
    d = w.dims(rng)
    return HHResult([d[i] for i in rng], [w.certificate(i) for i in rng], w)


# ---------------------------------------------------------------------------
# shuffle, Kunneth, clubsuit, trace


def _shuffle_words(a: GradedAlgebra, u: tuple, v: tuple) -> dict:
    """Shuffle of two bar words over the same algebra."""
    deg = a.degrees
    s_u = [deg[x] - 1 for x in u[1:]]
    s_v = [deg[x] - 1 for x in v[1:]]
    n, m = len(s_u), len(s_v)
    head = a.mul_basis(u[0], v[0])
    if not head:
        return {}
    heart = _sign(deg[v[0]] * sum(s_u))
    out: dict = {}
    for slots in combinations(range(n + m), n):
        # slots: positions of the letters of u in the merged word
        letters = []
        sign = heart
        ui = vi = 0
        slot_set = set(slots)
        passed_v = 0  # parity of suspended v-degrees placed so far
        for p in range(n + m):
            if p in slot_set:
                sign *= _sign(s_u[ui] * passed_v)
                letters.append(u[1 + ui])
                ui += 1
            else:
                passed_v += s_v[vi]
                letters.append(v[1 + vi])
                vi += 1
        tail = tuple(letters)
        for k, x in head.items():
            add_into(out, {(k,) + tail: sign * x})
    return out


def shuffle(a: GradedAlgebra, x: Mapping, y: Mapping) -> dict:
    """Bilinear shuffle product ``C(A) (x) C(A) -> C(A)``."""
    out: dict = {}
    for u, c in x.items():
        for v, e in y.items():
            add_into(out, _shuffle_words(a, u, v), c * e)
    return out


def _expand_letters(word_vectors: Sequence[Mapping]) -> dict:
    """Multilinear expansion of a word whose letters are sparse vectors."""
    out: dict = {(): 1}
    for vec in word_vectors:
        nxt: dict = {}
        for w, c in out.items():
            for k, x in vec.items():
                add_into(nxt, {w + (k,): c * x})
        out = nxt
    return out


def push_forward_chain(images: Sequence[Mapping], chain: Mapping) -> dict:
    """Apply a degree-0 linear map letterwise: ``a0[a1|..] -> f(a0)[f(a1)|..]``."""
    out: dict = {}
    for w, c in chain.items():
        add_into(out, _expand_letters([images[x] for x in w]), c)
    return out


def kunneth(a: GradedAlgebra, b: GradedAlgebra, x: Mapping, y: Mapping, ab: GradedAlgebra | None = None) -> dict:
    """``K(x (x) y)``: include both chains into ``C(A (x) B)`` and shuffle."""
    ab = ab or tensor(a, b, check=False)
    nb = b.dim
    ia = [{i * nb + l: e for l, e in b.unit.items()} for i in range(a.dim)]
    ib = [{k * nb + j: e for k, e in a.unit.items()} for j in range(b.dim)]
    return shuffle(ab, push_forward_chain(ia, x), push_forward_chain(ib, y))


def tensor_boundary(a: GradedAlgebra, b: GradedAlgebra, pairs: Mapping) -> dict:
    """``(b (x) 1 + (-1)^{|x|} 1 (x) b)`` on a combination of word pairs ``(u, v)``."""
    out: dict = {}
    for (u, v), c in pairs.items():
        for u2, x in boundary(a, {u: 1}).items():
            add_into(out, {(u2, v): c * x})
        s = _sign(word_degree(a, u))
        for v2, y in boundary(b, {v: 1}).items():
            add_into(out, {(u, v2): s * c * y})
    return out


def kunneth_pairs(a: GradedAlgebra, b: GradedAlgebra, pairs: Mapping, ab: GradedAlgebra | None = None) -> dict:
    ab = ab or tensor(a, b, check=False)
    out: dict = {}
    for (u, v), c in pairs.items():
        add_into(out, kunneth(a, b, {u: 1}, {v: 1}, ab), c)
    return out


def clubsuit(a: GradedAlgebra, x: Mapping) -> dict:
    """``a0[a1|...|an] -> (-1)^{n + sum_{i<j} deg(s ai) deg(s aj)} a0[an|...|a1]``, into ``C(A^op)``."""
    out: dict = {}
    deg = a.degrees
    for w, c in x.items():
        s = [deg[t] - 1 for t in w[1:]]
        e = len(s)
        acc = 0
        for t in s:
            e += acc * t
            acc += t
        rev = (w[0],) + tuple(reversed(w[1:]))
        add_into(out, {rev: _sign(e) * c})
    return out


def trace_map(n: int, b: GradedAlgebra, x: Mapping) -> dict:
    """Generalized trace ``C(M_n(B)) -> C(B)``.

    Letters are basis elements of ``M_n(B) = M_n(k) (x) B`` with index
    ``(i*n + j) * dim(B) + l``.  Matrix units have degree 0, so only index
    sequences closing up into a cycle contribute, without extra signs.
    """
    nb = b.dim
    size = n * n * nb
    out: dict = {}
    for w, c in x.items():
        ok = True
        entries = []
        for t in w:
            if not 0 <= t < size:
                raise AlgebraError("letter %d is not a basis element of M_%d(B)" % (t, n))
            ij, l = divmod(t, nb)
            entries.append((divmod(ij, n), l))
        for k in range(len(entries)):
            (i, j), _ = entries[k]
            (i2, _), _ = entries[(k + 1) % len(entries)]
            if j != i2:
                ok = False
                break
        if ok:
            add_into(out, {tuple(l for _, l in entries): c})
    return out


# ---------------------------------------------------------------------------
# Kunneth on homology


class KunnethError(ArithmeticError):
    pass


@dataclass
class KunnethBlock:
    degree: int
    columns: list[tuple[int, int, int]]  # (i, index in HH_i(A), index in HH_j(B))
    matrix: SparseMatrix
    inverse: SparseMatrix


@dataclass
class KunnethData:
    a: GradedAlgebra
    b: GradedAlgebra
    ab: GradedAlgebra
    windows: tuple
    blocks: dict[int, KunnethBlock]

    @property
    def invertible(self) -> bool:
        return all(blk.matrix.nrows == blk.matrix.ncols for blk in self.blocks.values())

    def preimage(self, n: int, coords: Sequence) -> dict[tuple[int, int, int], object]:
        """``K^{-1}`` of a class in ``HH_n(A (x) B)`` as tensor coefficients."""
        blk = self.blocks[n]
        v = blk.inverse.apply({i: x for i, x in enumerate(coords) if x})
        return {blk.columns[j]: x for j, x in v.items()}


def kunneth_on_homology(a: GradedAlgebra, b: GradedAlgebra, max_degree: int,
                        ab: GradedAlgebra | None = None, require_certified: bool = True) -> KunnethData:
    """Matrices of ``K: (+)_{i+j=n} HH_i(A) (x) HH_j(B) -> HH_n(A (x) B)`` for ``n <= max_degree``."""
    ab = ab or tensor(a, b)
    L = max_degree + 1
    wa, wb, wab = (hochschild_complex(x, L, check=False) for x in (a, b, ab))
    if require_certified:
        for w in (wa, wb, wab):
            if w.certificate(max_degree) != EXACT:
                raise KunnethError("Kunneth needs certified windows")
    blocks = {}
    for n in range(max_degree + 1):
        columns = []
        cols = []
        for i in range(n + 1):
            j = n - i
            ha, hb = wa.homology(i), wb.homology(j)
            for p in range(ha.dimension):
                x = wa.representative(i, p)
                for q in range(hb.dimension):
                    y = wb.representative(j, q)
                    z = kunneth(a, b, x, y, ab)
                    coords = wab.class_of(z, n) if z else [0] * wab.homology(n).dimension
                    cols.append({r: c for r, c in enumerate(coords) if c})
                    columns.append((i, p, q))
        dim_n = wab.homology(n).dimension
        mat = SparseMatrix(dim_n, len(cols), a.field, cols, check=False)
        if mat.nrows != mat.ncols or rank(mat) != mat.nrows:
            raise KunnethError("Künneth failure in degree %d" % n)
        blocks[n] = KunnethBlock(n, columns, mat, inverse(mat))
    return KunnethData(a, b, ab, (wa, wb, wab), blocks)
