"""Bounded chain complexes of finite-dimensional spaces and their homology.

Indexing is homological: ``d[n]`` maps ``C_n`` to ``C_{n-1}``.  Cohomologically
indexed complexes are stored with ``n = -position``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .fields import QQ, Field
from .sparse import Echelon, SparseMatrix, block_rank, kernel_basis


class ComplexError(ValueError):
    pass


class ChainComplex:
    """A bounded complex; degrees outside ``[lo, hi]`` are zero."""

    def __init__(
        self,
        dims: Mapping[int, int],
        diffs: Mapping[int, SparseMatrix] | None = None,
        field: Field = QQ,
        check: bool = True,
    ):
        self.field = field
        if dims:
            self.lo = min(dims)
            self.hi = max(dims)
        else:
            self.lo, self.hi = 0, -1
        self.dims = {n: dims.get(n, 0) for n in range(self.lo, self.hi + 1)}
        self.diffs: dict[int, SparseMatrix] = {}
        for n, m in (diffs or {}).items():
            if m.shape != (self.dim(n - 1), self.dim(n)):
                raise ComplexError(
                    "d_%d has shape %s, expected %s" % (n, m.shape, (self.dim(n - 1), self.dim(n)))
                )
            if m.ncols and m.nrows:
                self.diffs[n] = m
        if check:
            bad = self.square_defects()
            if bad:
                raise ComplexError("d_%d o d_%d != 0" % (bad[0] - 1, bad[0]))

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> SparseMatrix:
        m = self.diffs.get(n)
        if m is None:
            return SparseMatrix.zero(self.dim(n - 1), self.dim(n), self.field)
        return m

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def square_defects(self) -> list[int]:
        """Degrees ``n`` where ``d_{n-1} d_n`` is not the zero matrix."""
        bad = []
        for n in sorted(self.diffs):
            if n - 1 in self.diffs and not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                bad.append(n)
        return bad

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * d for n, d in self.dims.items())

    def __repr__(self):
        return "ChainComplex(%s, %s)" % (self.dims, self.field)


@dataclass
class HomologySummary:
    """Homology at one degree, with chosen cycle representatives.

    ``cycle_basis`` has one column per homology basis vector.  ``project``
    sends any cycle of ``C_n`` to its coordinates in that basis.
    """

    degree: int
    dimension: int
    cycle_basis: SparseMatrix
    field: Field
    _ech: Echelon = dc_field(repr=False)

    def representative(self, i: int) -> dict:
        return self.cycle_basis.cols[i]

    def project(self, cycle: dict) -> list:
        """Homology coordinates of a cycle; raises if ``cycle`` is not one."""
        c = self._ech.express(cycle)
        if c is None:
            raise ComplexError("not a cycle in degree %d" % self.degree)
        zero = self.field.zero
        return [c.get(i, zero) for i in range(self.dimension)]

    def is_boundary(self, cycle: dict) -> bool:
        return all(not x for x in self.project(cycle))


def _check_degree(c: ChainComplex, n: int):
    if c.lo > c.hi:
        return
    if n < c.lo - 1 or n > c.hi + 1:
        raise ComplexError("degree out of range")


def homology_at(c: ChainComplex, n: int) -> HomologySummary:
    _check_degree(c, n)
    field = c.field
    dim_n = c.dim(n)
    if dim_n == 0:
        return HomologySummary(n, 0, SparseMatrix.zero(0, 0, field), field, Echelon(field))
    z = kernel_basis(c.d(n))
    ech = Echelon(field)
    for col in c.d(n + 1).cols:
        if col:
            ech.insert(col)
    reps = []
    for col in z.cols:
        if ech.insert(col, label=len(reps)) is not None:
            reps.append(col)
    basis = SparseMatrix(dim_n, len(reps), field, [dict(r) for r in reps], check=False)
    return HomologySummary(n, len(reps), basis, field, ech)


def homology_dims(c: ChainComplex, degrees=None) -> dict[int, int]:
    """Homology dimensions, using ranks only."""
    if degrees is None:
        degrees = c.degrees()
    ranks: dict[int, int] = {}

    def r(n):
        if n not in ranks:
            m = c.diffs.get(n)
            ranks[n] = block_rank(m) if m is not None else 0
        return ranks[n]

    out = {}
    for n in degrees:
        _check_degree(c, n)
        out[n] = c.dim(n) - r(n) - r(n + 1)
    return out
