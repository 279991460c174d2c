"""Sparse matrices over QQ or GF(p), with exact elimination.

Matrices are stored column-wise: ``cols[j]`` is a ``{row: value}`` dict with no
zero values.  All elimination goes through :class:`Echelon`, which works on
integer vectors: over QQ rows are cleared of denominators and reduced
fraction-free (each step multiplies by the pivot and divides out the content),
over GF(p) the vectors hold canonical residues.

Pivoting is deterministic: vectors are inserted in index order and each
reduced vector is pivoted on its smallest row index.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd, lcm
from typing import Iterable, Sequence

from .fields import QQ, Field, Fp

_SELF = -1  # combination label for the vector being reduced


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "field", "cols")

    def __init__(self, nrows: int, ncols: int, field: Field = QQ, cols=None, check: bool = True):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if cols is None:
            cols = [{} for _ in range(ncols)]
        elif check:
            cols = [{i: field(x) for i, x in c.items() if x} for c in cols]
            for c in cols:
                for i in c:
                    if not 0 <= i < nrows:
                        raise IndexError("row %d out of range for %d rows" % (i, nrows))
        if len(cols) != ncols:
            raise ValueError("expected %d columns, got %d" % (ncols, len(cols)))
        self.cols = cols

    # construction

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field = QQ, ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, field, cols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable, field: Field = QQ):
        cols = [{} for _ in range(ncols)]
        for i, j, x in entries:
            x = field(x)
            if not x:
                continue
            if i in cols[j]:
                raise ValueError("duplicate entry at (%d, %d)" % (i, j))
            cols[j][i] = x
        return cls(nrows, ncols, field, cols, check=True)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        one = field.one
        return cls(n, n, field, [{j: one} for j in range(n)], check=False)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field = QQ):
        return cls(nrows, ncols, field)

    @classmethod
    def from_vectors(cls, nrows: int, vectors: Sequence[dict], field: Field = QQ):
        """Matrix whose columns are the given sparse vectors."""
        return cls(nrows, len(vectors), field, [dict(v) for v in vectors])

    # inspection

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def entries(self):
        """Sorted (row, col, value) triples."""
        out = [(i, j, x) for j, c in enumerate(self.cols) for i, x in c.items()]
        out.sort()
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, self.field.zero)

    def column(self, j: int) -> dict:
        return self.cols[j]

    def to_dense(self) -> list[list]:
        zero = self.field.zero
        rows = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                rows[i][j] = x
        return rows

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        return "SparseMatrix(%d x %d, nnz=%d, %s)" % (self.nrows, self.ncols, self.nnz(), self.field)

    # arithmetic

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, a in vec.items():
            for i, x in self.cols[j].items():
                out[i] = out.get(i, 0) + a * x
        return {i: x for i, x in out.items() if x}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        cols = [self.apply(c) for c in other.cols]
        return SparseMatrix(self.nrows, other.ncols, self.field, cols, check=False)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, x in b.items():
                y = c.get(i, 0) + x
                if y:
                    c[i] = y
                else:
                    c.pop(i, None)
            cols.append(c)
        return SparseMatrix(self.nrows, self.ncols, self.field, cols, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "SparseMatrix":
        a = self.field(a)
        if not a:
            return SparseMatrix.zero(self.nrows, self.ncols, self.field)
        cols = [{i: a * x for i, x in c.items()} for c in self.cols]
        return SparseMatrix(self.nrows, self.ncols, self.field, cols, check=False)

    def transpose(self) -> "SparseMatrix":
        cols = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, self.field, cols, check=False)

    def select_columns(self, idx: Sequence[int]) -> "SparseMatrix":
        return SparseMatrix(self.nrows, len(idx), self.field, [dict(self.cols[j]) for j in idx], check=False)

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        t = self.field.zero
        for j, c in enumerate(self.cols):
            t += c.get(j, 0)
        return t


def block_diagonal(blocks: Sequence[SparseMatrix], field: Field = QQ) -> SparseMatrix:
    nr = sum(b.nrows for b in blocks)
    cols: list[dict] = []
    off = 0
    for b in blocks:
        for c in b.cols:
            cols.append({i + off: x for i, x in c.items()})
        off += b.nrows
    return SparseMatrix(nr, len(cols), field, cols, check=False)


# ---------------------------------------------------------------------------
# elimination


class Echelon:
    """Incremental row echelon form of a growing set of sparse vectors.

    Each stored pivot remembers, optionally, an integer combination of the
    labelled generators it came from, so the same structure answers rank,
    kernel, span-membership and coordinate questions.
    """

    def __init__(self, field: Field = QQ):
        self.field = field
        self.mod = field.characteristic or None
        self.pivots: dict[int, tuple[dict, dict | None]] = {}

    def __len__(self):
        return len(self.pivots)

    # conversion between field elements and the internal integer form

    def to_internal(self, vec: dict) -> dict:
        return self.scaled(vec)[0]

    def scaled(self, vec: dict) -> tuple[dict, int]:
        """Integer (or residue) form of ``vec`` and the factor it was multiplied by."""
        if self.mod:
            out = {}
            for k, x in vec.items():
                v = x.v if isinstance(x, Fp) else self.field(x).v
                if v:
                    out[k] = v
            return out, 1
        dens = [x.denominator for x in vec.values() if isinstance(x, Fraction) and x.denominator != 1]
        m = lcm(*dens) if dens else 1
        if m == 1:
            return {k: int(x) for k, x in vec.items() if x}, 1
        return {k: int(x * m) for k, x in vec.items() if x}, m

    def _scalar(self, num: int, den: int = 1):
        if self.mod:
            return Fp(num * pow(den, -1, self.mod), self.mod)
        return Fraction(num, den)

    # core reduction

    def _reduce(self, v: dict, combo: dict | None, stop_at_new_pivot: bool = True):
        """Reduce ``v`` in place. Returns the leading row index that is not a
        pivot, or ``None`` if ``v`` became zero."""
        mod = self.mod
        pivots = self.pivots
        heap = list(v)
        heapify(heap)
        while heap:
            p = heappop(heap)
            a = v.get(p)
            if a is None:
                continue
            while heap and heap[0] == p:
                heappop(heap)
            piv = pivots.get(p)
            if piv is None:
                return p
            w, cw = piv
            if mod:
                # pivots are monic
                for k, x in w.items():
                    y = (v.get(k, 0) - a * x) % mod
                    if y:
                        if k not in v:
                            heappush(heap, k)
                        v[k] = y
                    else:
                        v.pop(k, None)
                if combo is not None and cw:
                    for k, x in cw.items():
                        y = (combo.get(k, 0) - a * x) % mod
                        if y:
                            combo[k] = y
                        else:
                            combo.pop(k, None)
            else:
                wp = w[p]
                if wp == 1:
                    m2 = a
                else:
                    g = gcd(wp, a)
                    m1, m2 = wp // g, a // g
                    for k in v:
                        v[k] *= m1
                    if combo is not None:
                        for k in combo:
                            combo[k] *= m1
                for k, x in w.items():
                    y = v.get(k, 0) - m2 * x
                    if y:
                        if k not in v:
                            heappush(heap, k)
                        v[k] = y
                    else:
                        v.pop(k, None)
                if combo is not None and cw:
                    for k, x in cw.items():
                        y = combo.get(k, 0) - m2 * x
                        if y:
                            combo[k] = y
                        else:
                            combo.pop(k, None)
                if wp != 1:
                    self._make_primitive(v, combo)
        return None

    @staticmethod
    def _make_primitive(v: dict, combo: dict | None):
        g = 0
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                return
        if combo:
            for x in combo.values():
                g = gcd(g, x)
                if g == 1:
                    return
        if g > 1:
            for k in v:
                v[k] //= g
            if combo:
                for k in combo:
                    combo[k] //= g

    def insert(self, vec: dict, label=None, internal: bool = False, combo: dict | None = None) -> int | None:
        """Add a vector; returns its new pivot row, or None if dependent.

        With ``label`` given, the pivot tracks the combination of labelled
        generators (the new vector counts as ``label`` with coefficient 1).
        """
        v, m = (dict(vec), 1) if internal else self.scaled(vec)
        if label is not None and combo is None:
            combo = {label: m}
        p = self._reduce(v, combo)
        if p is None:
            return None
        self._store(p, v, combo)
        return p

    def insert_tracking(self, vec: dict, label, internal: bool = False):
        """Like :meth:`insert` but returns ``(pivot_or_None, combo)``; when the
        vector is dependent the combo is a relation among the labels."""
        v, m = (dict(vec), 1) if internal else self.scaled(vec)
        combo = {label: m}
        p = self._reduce(v, combo)
        if p is not None:
            self._store(p, v, combo)
        return p, combo

    def _store(self, p: int, v: dict, combo: dict | None):
        mod = self.mod
        if mod:
            inv = pow(v[p], -1, mod)
            if inv != 1:
                for k in v:
                    v[k] = v[k] * inv % mod
                if combo:
                    for k in combo:
                        combo[k] = combo[k] * inv % mod
        else:
            self._make_primitive(v, combo)
            if v[p] < 0:
                for k in v:
                    v[k] = -v[k]
                if combo:
                    for k in combo:
                        combo[k] = -combo[k]
        self.pivots[p] = (v, combo)

    def express(self, vec: dict):
        """Write ``vec`` as a combination of tracked labels.

        Returns ``{label: coefficient}`` (field elements) or ``None`` when the
        vector is not in the span.  Pivots inserted without a label count as
        zero, which is how boundaries are quotiented out in homology.
        """
        v, m = self.scaled(vec)
        combo = {_SELF: m}
        if self._reduce(v, combo) is not None:
            return None
        s = combo.pop(_SELF)
        if self.mod:
            inv = pow(s, -1, self.mod)
            return {k: Fp(-x * inv, self.mod) for k, x in combo.items() if x % self.mod}
        return {k: Fraction(-x, s) for k, x in combo.items() if x}

    def contains(self, vec: dict) -> bool:
        v = self.to_internal(vec)
        return self._reduce(v, None) is None


# ---------------------------------------------------------------------------
# public operations


def rank(m: SparseMatrix) -> int:
    """Exact rank over the matrix's field."""
    e = Echelon(m.field)
    for c in m.cols:
        if c:
            e.insert(c)
    return len(e)


def column_blocks(m: SparseMatrix) -> list[list[int]]:
    """Group columns into connected blocks (columns sharing a row are linked)."""
    parent = list(range(m.nrows))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in m.cols:
        it = iter(c)
        first = next(it, None)
        if first is None:
            continue
        r0 = find(first)
        for r in it:
            r1 = find(r)
            if r1 != r0:
                parent[r1] = r0
    groups: dict[int, list[int]] = {}
    for j, c in enumerate(m.cols):
        if c:
            groups.setdefault(find(next(iter(c))), []).append(j)
    return list(groups.values())


def block_rank(m: SparseMatrix) -> int:
    """Rank computed block by block; much faster when the matrix splits."""
    total = 0
    for cols in column_blocks(m):
        e = Echelon(m.field)
        for j in cols:
            e.insert(m.cols[j])
        total += len(e)
    return total


def _kernel_vectors(m: SparseMatrix) -> list[dict]:
    e = Echelon(m.field)
    out = []
    for j, c in enumerate(m.cols):
        p, combo = e.insert_tracking(c, j)
        if p is None:
            out.append(combo)
    return out


def _to_field_vector(field: Field, combo: dict) -> dict:
    if field.characteristic:
        return {k: field(x) for k, x in combo.items() if x % field.characteristic}
    g = 0
    for x in combo.values():
        g = gcd(g, x)
    g = g or 1
    # the dependent column carries a positive coefficient
    lead = combo[max(combo)]
    if lead < 0:
        g = -g
    return {k: Fraction(x // g) for k, x in combo.items() if x}


def kernel_basis(m: SparseMatrix) -> SparseMatrix:
    """Matrix whose columns form a basis of ker(m).

    Column ``r`` is the relation found when column ``j_r`` of ``m`` first
    became dependent on earlier columns, so it has a nonzero entry at ``j_r``
    and none beyond; the columns are therefore independent.
    """
    vecs = [_to_field_vector(m.field, c) for c in _kernel_vectors(m)]
    return SparseMatrix(m.ncols, len(vecs), m.field, vecs, check=False)


def pivot_columns(m: SparseMatrix) -> list[int]:
    """Indices of the columns that are independent of all earlier ones."""
    e = Echelon(m.field)
    out = []
    for j, c in enumerate(m.cols):
        if c and e.insert(c) is not None:
            out.append(j)
    return out


class Basis:
    """A basis of a subspace, given by independent vectors, with coordinates."""

    def __init__(self, vectors: Sequence[dict], field: Field = QQ):
        self.field = field
        self.vectors = [dict(v) for v in vectors]
        self._ech = Echelon(field)
        for i, v in enumerate(self.vectors):
            if self._ech.insert(v, label=i) is None:
                raise ValueError("basis vectors are linearly dependent (index %d)" % i)

    def __len__(self):
        return len(self.vectors)

    def coords(self, vec: dict) -> dict:
        """Coordinates ``{i: c}`` with ``vec = sum c * vectors[i]``."""
        out = self._ech.express(vec)
        if out is None:
            raise ValueError("vector is not in the span")
        return out

    def coord_list(self, vec: dict) -> list:
        c = self.coords(vec)
        zero = self.field.zero
        return [c.get(i, zero) for i in range(len(self.vectors))]

    def contains(self, vec: dict) -> bool:
        return self._ech.contains(vec)


def column_space_basis(m: SparseMatrix) -> Basis:
    return Basis([m.cols[j] for j in pivot_columns(m)], m.field)


def solve(m: SparseMatrix, b: dict):
    """A solution ``x`` of ``m x = b`` as a sparse dict, or ``None``."""
    e = Echelon(m.field)
    for j, c in enumerate(m.cols):
        if c:
            e.insert(c, label=j)
    return e.express(b)


def inverse(m: SparseMatrix) -> SparseMatrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    e = Echelon(m.field)
    for j, c in enumerate(m.cols):
        if e.insert(c, label=j) is None:
            raise ZeroDivisionError("matrix is singular")
    one = m.field.one
    cols = [e.express({i: one}) for i in range(m.nrows)]
    return SparseMatrix(m.ncols, m.nrows, m.field, cols, check=False)


def is_invertible(m: SparseMatrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def determinant(m: SparseMatrix):
    """Determinant by exact elimination (small matrices only)."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    rows = m.to_dense()
    f = m.field
    det = f.one
    rows = [[f(x) for x in r] for r in rows]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return f.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = f.one / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c]:
                t = rows[r][c] * inv
                rows[r] = [x - t * y for x, y in zip(rows[r], rows[c])]
    return det
