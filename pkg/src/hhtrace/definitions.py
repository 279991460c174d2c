"""Parser for definition files (TOML).

A file holds ``format_version`` and arrays of tables named ``algebra``,
``morphism``, ``module``, ``bimodule``, ``resolution``,
``cohomology-model`` and ``task``.  Every stanza has a ``name`` (tasks have
an ``id``) and a ``kind``.  Coefficients are integers or ``"num/den"``
strings; floats are rejected so that exact values survive parsing.

Sparse data uses flat integer rows: structure constants are
``[i, j, k, c]`` (``b_i b_j`` has coefficient ``c`` on ``b_k``), element
lists are ``[k, c]`` and matrices over an algebra are ``[row, col, k, c]``.
Basis references may be indices or labels.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import algebra as alg
from . import cohomology as coh
from .linalg import QQ, Field
from .perf import (
    BMatrix,
    DiagonalResolution,
    PerfComplex,
    PerfError,
    Term,
    cone_of_identity,
    diagonal_bimodule,
    direct_sum,
    enveloping,
    free_module,
    graph_bimodule,
    idempotent_module,
    left_idempotent_module,
    path_algebra_resolution,
    projective_bimodule,
    register_resolution,
    separability_idempotent,
    _separable_resolution,
)

FORMAT_VERSION = 1
STANZAS = ("algebra", "morphism", "module", "bimodule", "resolution", "cohomology-model", "task")


class DefinitionError(ValueError):
    """A parse or validation error located at a stanza (or a line of the file)."""

    def __init__(self, message: str, where: str = ""):
        super().__init__("%s: %s" % (where, message) if where else message)
        self.where = where
        self.message = message


@dataclass
class Definitions:
    source: str = "<string>"
    format_version: int = FORMAT_VERSION
    algebras: dict[str, alg.GradedAlgebra] = dc_field(default_factory=dict)
    quivers: dict[str, alg.Quiver] = dc_field(default_factory=dict)
    morphisms: dict[str, alg.AlgebraMorphism] = dc_field(default_factory=dict)
    modules: dict[str, PerfComplex] = dc_field(default_factory=dict)
    bimodules: dict[str, PerfComplex] = dc_field(default_factory=dict)
    resolutions: dict[str, DiagonalResolution] = dc_field(default_factory=dict)
    models: dict[str, coh.CohomologyModel] = dc_field(default_factory=dict)
    model_morphisms: dict[str, coh.ModelMorphism] = dc_field(default_factory=dict)
    tasks: list[dict] = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# scalar and element parsing


def coefficient(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise DefinitionError("coefficient %r is not exact; use an integer or a \"num/den\" string" % (x,), where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DefinitionError("cannot read coefficient %r" % x, where) from None
    raise DefinitionError("coefficient %r is not a number" % (x,), where)


def _basis_index(a, ref, where: str) -> int:
    """Index of a basis element given by index or label (algebra or model)."""
    if isinstance(ref, bool):
        raise DefinitionError("bad basis reference %r" % (ref,), where)
    if isinstance(ref, int):
        n = a.dim
        if not 0 <= ref < n:
            raise DefinitionError("basis index %d out of range 0..%d" % (ref, n - 1), where)
        return ref
    if isinstance(ref, str):
        try:
            return a.index(ref)
        except (alg.AlgebraError, coh.ModelError):
            raise DefinitionError("unknown basis element %r" % ref, where) from None
    raise DefinitionError("bad basis reference %r" % (ref,), where)


def parse_element(a, spec, where: str) -> dict:
    """An element from a label, a ``{label: c}`` table or a list of ``[k, c]`` pairs."""
    if isinstance(spec, (str, int)) and not isinstance(spec, bool):
        return {_basis_index(a, spec, where): Fraction(1)}
    out: dict = {}
    if isinstance(spec, Mapping):
        items = list(spec.items())
    elif isinstance(spec, list):
        items = []
        for row in spec:
            if not isinstance(row, list) or len(row) != 2:
                raise DefinitionError("element entries are [basis, coefficient] pairs, got %r" % (row,), where)
            items.append(tuple(row))
    else:
        raise DefinitionError("cannot read element %r" % (spec,), where)
    for k, c in items:
        i = _basis_index(a, k, where)
        out[i] = out.get(i, 0) + coefficient(c, where)
    return {k: v for k, v in out.items() if v}


def _convert(field: Field, vec: Mapping) -> dict:
    return {k: field(v) for k, v in vec.items() if field(v)}


def _require(stanza: Mapping, key: str, where: str):
    if key not in stanza:
        raise DefinitionError("missing key %r" % key, where)
    return stanza[key]


def _int(x, where: str, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DefinitionError("%s must be an integer" % what, where)
    return x


def _lookup(table: Mapping, name, where: str, what: str):
    if name not in table:
        raise DefinitionError("unknown %s %r" % (what, name), where)
    return table[name]


# ---------------------------------------------------------------------------
# algebras


def _quiver(st: Mapping, where: str) -> alg.Quiver:
    try:
        return alg.Quiver.make(_require(st, "vertices", where),
                               [tuple(a) for a in _require(st, "arrows", where)])
    except (alg.AlgebraError, TypeError, ValueError) as e:
        raise DefinitionError(str(e), where) from None


def _table_algebra(st: Mapping, field: Field, name: str, where: str) -> alg.GradedAlgebra:
    labels = [str(x) for x in _require(st, "basis", where)]
    degrees = st.get("degrees", [0] * len(labels))
    lookup = alg.GradedAlgebra(labels, [0] * len(labels), {}, {}, field=field, name=name)
    mul: dict = {}
    for row in _require(st, "mul", where):
        if not isinstance(row, list) or len(row) != 4:
            raise DefinitionError("structure constants are [i, j, k, c] rows, got %r" % (row,), where)
        i, j, k = (_basis_index(lookup, r, where) for r in row[:3])
        c = coefficient(row[3], where)
        cell = mul.setdefault((i, j), {})
        cell[k] = cell.get(k, 0) + c
    unit = parse_element(lookup, st.get("unit", labels[0]), where)
    diff: dict = {}
    for row in st.get("diff", []):
        if not isinstance(row, list) or len(row) != 3:
            raise DefinitionError("differential entries are [i, k, c] rows, got %r" % (row,), where)
        i, k = (_basis_index(lookup, r, where) for r in row[:2])
        cell = diff.setdefault(i, {})
        cell[k] = cell.get(k, 0) + coefficient(row[2], where)
    return alg.GradedAlgebra(labels, [_int(d, where, "degree") for d in degrees],
                             {key: _convert(field, v) for key, v in mul.items()},
                             _convert(field, unit), {key: _convert(field, v) for key, v in diff.items()},
                             field=field, name=name)


def parse_algebra(st: Mapping, defs: Definitions, field: Field, where: str) -> alg.GradedAlgebra:
    kind = _require(st, "kind", where)
    name = str(_require(st, "name", where))
    try:
        if kind == "ground":
            a = alg.ground_field(field)
        elif kind == "split":
            a = alg.split_semisimple(_int(_require(st, "n", where), where, "n"), field)
        elif kind == "matrix":
            a = alg.matrix_algebra(_int(_require(st, "n", where), where, "n"), field)
        elif kind == "cyclic":
            a = alg.cyclic_group_algebra(_int(_require(st, "n", where), where, "n"), field)
        elif kind == "group":
            a = alg.group_algebra(_require(st, "table", where), field, st.get("labels"), name)
        elif kind == "exterior":
            a = alg.exterior_algebra(_int(_require(st, "generators", where), where, "generators"),
                                     _int(st.get("degree", 1), where, "degree"), field)
        elif kind == "truncated":
            a = alg.truncated_polynomial(_int(_require(st, "n", where), where, "n"),
                                         _int(st.get("degree", 0), where, "degree"), field)
        elif kind == "path":
            q = _quiver(st, where)
            defs.quivers[name] = q
            a = alg.path_algebra(q, field)
        elif kind == "product":
            a = alg.product_algebra([_lookup(defs.algebras, f, where, "algebra") for f in _require(st, "factors", where)])
        elif kind == "tensor":
            fs = [_lookup(defs.algebras, f, where, "algebra") for f in _require(st, "factors", where)]
            a = fs[0]
            for b in fs[1:]:
                a = alg.tensor(a, b)
        elif kind == "opposite":
            a = alg.opposite(_lookup(defs.algebras, _require(st, "of", where), where, "algebra"))
        elif kind == "table":
            a = _table_algebra(st, field, name, where)
        else:
            raise DefinitionError("unknown algebra kind %r" % kind, where)
    except alg.AlgebraError as e:
        raise DefinitionError(str(e), where) from None
    a.name = name
    rep = alg.validate(a, limit=1)
    if not rep.valid:
        raise DefinitionError("validation failed: %s" % rep.violations[0], where)
    return a


# ---------------------------------------------------------------------------
# morphisms


def parse_morphism(st: Mapping, defs: Definitions, field: Field, where: str):
    name = str(_require(st, "name", where))
    src_name = _require(st, "source", where)
    tgt_name = st.get("target", src_name)
    if src_name in defs.models:
        return "model", _model_morphism(st, defs, name, src_name, tgt_name, where)
    src = _lookup(defs.algebras, src_name, where, "algebra or cohomology model")
    tgt = _lookup(defs.algebras, tgt_name, where, "algebra")
    kind = _require(st, "kind", where)
    try:
        if kind == "identity":
            phi = alg.identity_morphism(src)
        elif kind == "quiver":
            if src is not tgt or src_name not in defs.quivers:
                raise DefinitionError("quiver morphisms act on one path algebra", where)
            phi = alg.quiver_automorphism(src, defs.quivers[src_name], st.get("vertex_map", {}), st.get("arrow_map", {}))
        elif kind == "images":
            images = [dict() for _ in range(src.dim)]
            for k, spec in _require(st, "images", where).items():
                images[_basis_index(src, k, where)] = _convert(field, parse_element(tgt, spec, where))
            phi = alg.AlgebraMorphism(src, tgt, images)
        elif kind == "compose":
            first = _lookup(defs.morphisms, _require(st, "first", where), where, "morphism")
            second = _lookup(defs.morphisms, _require(st, "then", where), where, "morphism")
            phi = second.compose(first)
        else:
            raise DefinitionError("unknown morphism kind %r" % kind, where)
    except alg.AlgebraError as e:
        raise DefinitionError(str(e), where) from None
    phi.name = name
    rep = phi.validate()
    if not rep.valid:
        raise DefinitionError("validation failed: %s" % rep.violations[0], where)
    return "algebra", phi


def _model_morphism(st, defs: Definitions, name, src_name, tgt_name, where) -> coh.ModelMorphism:
    x = defs.models[src_name]
    y = _lookup(defs.models, tgt_name, where, "cohomology model")
    kind = _require(st, "kind", where)
    if kind == "identity":
        f = coh.identity_map(x)
    elif kind == "degree":
        if x is not y or x.degrees != [2 * k for k in range(x.dim)]:
            raise DefinitionError("degree maps are self-maps of a projective space model", where)
        f = coh.projective_map(x, _int(_require(st, "d", where), where, "d"))
    elif kind == "torus":
        m = _require(st, "matrix", where)
        if x is not y or x.dim != 4:
            raise DefinitionError("torus maps are self-maps of the torus model", where)
        try:
            f = coh.torus_map([[_int(v, where, "matrix entry") for v in row] for row in m], x)
        except ValueError:
            raise DefinitionError("torus matrix must be 2x2", where) from None
    elif kind == "swap":
        factor = _lookup(defs.models, _require(st, "factor", where), where, "cohomology model")
        f = coh.swap_map(factor, x)
    elif kind == "pullback":
        cols = [x.zero() for _ in range(y.dim)]
        for row in _require(st, "pullback", where):
            if not isinstance(row, list) or len(row) != 3:
                raise DefinitionError("pullback entries are [target basis, source basis, c] rows", where)
            j = _basis_index(y, row[0], where)
            i = _basis_index(x, row[1], where)
            cols[j][i] += coefficient(row[2], where)
        f = coh.ModelMorphism(x, y, cols)
    elif kind == "compose":
        first = _lookup(defs.model_morphisms, _require(st, "first", where), where, "morphism")
        second = _lookup(defs.model_morphisms, _require(st, "then", where), where, "morphism")
        f = first.compose(second)
    else:
        raise DefinitionError("unknown morphism kind %r" % kind, where)
    if f.source is not x or f.target is not y:
        raise DefinitionError("morphism does not go from %s to %s" % (src_name, tgt_name), where)
    f.name = name
    bad = f.violations()
    if bad:
        raise DefinitionError("validation failed: %s" % bad[0], where)
    return f


# ---------------------------------------------------------------------------
# modules, bimodules, resolutions


def _idempotent(a: alg.GradedAlgebra, st: Mapping, defs: Definitions, algebra_name: str, where: str,
                key: str = "idempotent", vertex_key: str = "vertex") -> dict:
    if vertex_key in st:
        q = defs.quivers.get(algebra_name)
        if q is None:
            raise DefinitionError("%r needs a path algebra" % vertex_key, where)
        if str(st[vertex_key]) not in q.vertices:
            raise DefinitionError("unknown vertex %r" % (st[vertex_key],), where)
        return alg.vertex_idempotent(a, q, st[vertex_key])
    return _convert(a.field, parse_element(a, _require(st, key, where), where))


def _bmatrix(R: alg.GradedAlgebra, nrows: int, ncols: int, rows, where: str) -> BMatrix:
    ent: dict = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 4:
            raise DefinitionError("matrix entries are [row, col, basis, c] rows, got %r" % (row,), where)
        r = _int(row[0], where, "row")
        c = _int(row[1], where, "column")
        if not (0 <= r < nrows and 0 <= c < ncols):
            raise DefinitionError("matrix entry (%d, %d) out of range" % (r, c), where)
        k = _basis_index(R, row[2], where)
        cell = ent.setdefault((r, c), {})
        cell[k] = cell.get(k, 0) + R.field(coefficient(row[3], where))
    return BMatrix(R, nrows, ncols, {key: {k: v for k, v in cell.items() if v} for key, cell in ent.items()})


def _explicit_complex(st: Mapping, base: alg.GradedAlgebra, left: alg.GradedAlgebra | None, name: str,
                      where: str) -> PerfComplex:
    terms = {}
    for t in _require(st, "terms", where):
        p = _int(_require(t, "position", where), where, "position")
        n = _int(_require(t, "size", where), where, "size")
        e = _bmatrix(base, n, n, t["idempotent"], where) if "idempotent" in t else BMatrix.identity(base, n)
        terms[p] = Term(n, e)
    sizes = {p: t.size for p, t in terms.items()}
    diffs = {}
    for d in st.get("differentials", []):
        p = _int(_require(d, "position", where), where, "position")
        diffs[p] = _bmatrix(base, sizes.get(p + 1, 0), sizes.get(p, 0), _require(d, "entries", where), where)
    rho = None
    if left is not None:
        rho = {p: [BMatrix(base, n, n) for _ in range(left.dim)] for p, n in sizes.items()}
        for act in _require(st, "action", where):
            p = _int(_require(act, "position", where), where, "position")
            if p not in sizes:
                raise DefinitionError("action at a position with no term", where)
            ent_by_a: dict = {}
            for row in _require(act, "entries", where):
                if not isinstance(row, list) or len(row) != 5:
                    raise DefinitionError("action entries are [a, row, col, basis, c] rows", where)
                ent_by_a.setdefault(_basis_index(left, row[0], where), []).append(row[1:])
            for i, rows in ent_by_a.items():
                rho[p][i] = _bmatrix(base, sizes[p], sizes[p], rows, where)
    try:
        return PerfComplex(base, terms, diffs, left, rho, name=name)
    except PerfError as e:
        raise DefinitionError(str(e), where) from None


def _derived(st: Mapping, table: Mapping, where: str, kind: str, name: str):
    """Shared ``shift``, ``sum`` and ``cone`` kinds."""
    if kind == "shift":
        m = _lookup(table, _require(st, "of", where), where, "complex").shift(_int(_require(st, "by", where), where, "by"))
    elif kind == "sum":
        parts = [_lookup(table, p, where, "complex") for p in _require(st, "parts", where)]
        if not parts:
            raise DefinitionError("empty sum", where)
        if len({(p.base.key, p.left.key if p.left else None) for p in parts}) != 1:
            raise DefinitionError("summands live over different algebras", where)
        m = direct_sum(parts)
    elif kind == "cone":
        m = cone_of_identity(_lookup(table, _require(st, "of", where), where, "complex"))
    else:
        return None
    m.name = name
    return m


def parse_module(st: Mapping, defs: Definitions, where: str) -> PerfComplex:
    """A right module complex; ``side = "left"`` encodes a left module over ``A^op``."""
    name = str(_require(st, "name", where))
    kind = _require(st, "kind", where)
    try:
        m = _derived(st, defs.modules, where, kind, name)
        if m is None:
            aname = _require(st, "algebra", where)
            a = _lookup(defs.algebras, aname, where, "algebra")
            side = st.get("side", "right")
            if side not in ("right", "left"):
                raise DefinitionError("side must be \"right\" or \"left\"", where)
            pos = _int(st.get("position", 0), where, "position")
            if kind == "free":
                m = free_module(alg.opposite(a) if side == "left" else a, _int(st.get("rank", 1), where, "rank"), pos)
            elif kind == "idempotent":
                e = _idempotent(a, st, defs, aname, where)
                m = left_idempotent_module(a, e, pos) if side == "left" else idempotent_module(a, e, pos)
            elif kind == "complex":
                base = alg.opposite(a) if side == "left" else a
                m = _explicit_complex(st, base, None, name, where)
            else:
                raise DefinitionError("unknown module kind %r" % kind, where)
            m.name = name
    except PerfError as e:
        raise DefinitionError(str(e), where) from None
    bad = m.violations()
    if bad:
        raise DefinitionError("validation failed: %s" % bad[0], where)
    return m


def parse_bimodule(st: Mapping, defs: Definitions, where: str) -> PerfComplex:
    """An ``A``-``B`` bimodule complex (``left = A``, ``right = B``)."""
    name = str(_require(st, "name", where))
    kind = _require(st, "kind", where)
    try:
        m = _derived(st, defs.bimodules, where, kind, name)
        if m is None:
            if kind == "diagonal":
                m = diagonal_bimodule(_lookup(defs.algebras, _require(st, "algebra", where), where, "algebra"))
            elif kind == "graph":
                phi = _lookup(defs.morphisms, _require(st, "morphism", where), where, "morphism")
                m = graph_bimodule(phi, _int(st.get("position", 0), where, "position"))
            elif kind == "projective":
                lname, rname = _require(st, "left", where), _require(st, "right", where)
                a = _lookup(defs.algebras, lname, where, "algebra")
                b = _lookup(defs.algebras, rname, where, "algebra")
                e = _idempotent(a, st, defs, lname, where, "left_idempotent", "left_vertex")
                f = _idempotent(b, st, defs, rname, where, "right_idempotent", "right_vertex")
                m = projective_bimodule(a, b, e, f, _int(st.get("position", 0), where, "position"))
            elif kind == "complex":
                a = _lookup(defs.algebras, _require(st, "left", where), where, "algebra")
                b = _lookup(defs.algebras, _require(st, "right", where), where, "algebra")
                m = _explicit_complex(st, b, a, name, where)
            else:
                raise DefinitionError("unknown bimodule kind %r" % kind, where)
            m.name = name
    except PerfError as e:
        raise DefinitionError(str(e), where) from None
    bad = m.violations()
    if bad:
        raise DefinitionError("validation failed: %s" % bad[0], where)
    return m


def parse_resolution(st: Mapping, defs: Definitions, where: str) -> DiagonalResolution:
    """A resolution of the diagonal, checked for exactness and registered for its algebra.

    Explicit complexes live over ``A^op (x) A`` (basis index ``x * dim A + y``).
    """
    aname = _require(st, "algebra", where)
    a = _lookup(defs.algebras, aname, where, "algebra")
    kind = _require(st, "kind", where)
    try:
        if kind == "path":
            res = path_algebra_resolution(a)
        elif kind == "separable":
            z = separability_idempotent(a)
            if z is None:
                raise DefinitionError("algebra has no separability idempotent", where)
            res = _separable_resolution(a, z)
        elif kind == "complex":
            R = enveloping(a)
            P = _explicit_complex(st, R, None, "P(%s)" % aname, where)
            n0 = P.size(0)
            aug = [dict() for _ in range(n0)]
            for row in _require(st, "augmentation", where):
                if not isinstance(row, list) or len(row) != 3:
                    raise DefinitionError("augmentation entries are [generator, basis, c] rows", where)
                g = _int(row[0], where, "generator")
                if not 0 <= g < n0:
                    raise DefinitionError("augmentation generator %d out of range" % g, where)
                k = _basis_index(a, row[1], where)
                aug[g][k] = aug[g].get(k, 0) + a.field(coefficient(row[2], where))
            res = DiagonalResolution(a, P, aug, "supplied")
        else:
            raise DefinitionError("unknown resolution kind %r" % kind, where)
        return register_resolution(res)
    except PerfError as e:
        raise DefinitionError(str(e), where) from None


# ---------------------------------------------------------------------------
# cohomology models


def parse_model(st: Mapping, defs: Definitions, where: str) -> coh.CohomologyModel:
    name = str(_require(st, "name", where))
    kind = _require(st, "kind", where)
    if kind == "projective":
        m = coh.projective_space(_int(_require(st, "n", where), where, "n"))
    elif kind == "point":
        m = coh.point()
    elif kind == "torus":
        m = coh.torus_surface()
    elif kind == "product":
        fs = [_lookup(defs.models, f, where, "cohomology model") for f in _require(st, "factors", where)]
        if len(fs) < 2:
            raise DefinitionError("a product needs at least two factors", where)
        m = fs[0]
        for f in fs[1:]:
            m = coh.product(m, f)
    elif kind == "table":
        labels = [str(x) for x in _require(st, "basis", where)]
        degrees = [_int(d, where, "degree") for d in _require(st, "degrees", where)]
        if len(degrees) != len(labels):
            raise DefinitionError("need one degree per basis element", where)
        shell = coh.CohomologyModel(labels, degrees, {}, [0] * len(labels), [0] * len(labels), 0, name)
        mul: dict = {}
        for row in _require(st, "mul", where):
            if not isinstance(row, list) or len(row) != 4:
                raise DefinitionError("structure constants are [i, j, k, c] rows, got %r" % (row,), where)
            i, j, k = (_basis_index(shell, r, where) for r in row[:3])
            cell = mul.setdefault((i, j), {})
            cell[k] = cell.get(k, 0) + coefficient(row[3], where)
        integral = [Fraction(0)] * len(labels)
        for k, c in parse_element(shell, _require(st, "integral", where), where).items():
            integral[k] = c
        todd = [Fraction(0)] * len(labels)
        for k, c in parse_element(shell, st.get("todd", {labels[0]: 1}), where).items():
            todd[k] = c
        unit = _basis_index(shell, st.get("unit", labels[0]), where)
        m = coh.CohomologyModel(labels, degrees, mul, integral, todd, unit, name)
    else:
        raise DefinitionError("unknown cohomology model kind %r" % kind, where)
    bad = m.violations()
    if bad:
        raise DefinitionError("validation failed: %s" % bad[0], where)
    m.name = name
    return m


# ---------------------------------------------------------------------------
# files


def _where(stanza: str, i: int, st: Any) -> str:
    name = st.get("name", st.get("id")) if isinstance(st, Mapping) else None
    return "%s #%d%s" % (stanza, i + 1, " (%s)" % name if name is not None else "")


def parse_text(text: str, field: Field = QQ, source: str = "<string>") -> Definitions:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise DefinitionError("syntax error: %s" % e, source) from None
    return parse_document(doc, field, source)


def parse_document(doc: Mapping, field: Field = QQ, source: str = "<string>") -> Definitions:
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DefinitionError("unsupported format_version %r (expected %d)" % (version, FORMAT_VERSION), source)
    unknown = [k for k in doc if k not in STANZAS and k != "format_version"]
    if unknown:
        raise DefinitionError("unknown stanza %r" % unknown[0], source)
    defs = Definitions(source=source, format_version=version)

    def stanzas(key):
        items = doc.get(key, [])
        if isinstance(items, Mapping):
            items = [items]
        for i, st in enumerate(items):
            if not isinstance(st, Mapping):
                raise DefinitionError("stanza must be a table", "%s #%d" % (key, i + 1))
            yield _where(key, i, st), st

    def register(table, name, obj, where):
        if name in table:
            raise DefinitionError("duplicate name %r" % name, where)
        table[name] = obj

    for where, st in stanzas("algebra"):
        register(defs.algebras, str(_require(st, "name", where)), parse_algebra(st, defs, field, where), where)
    for where, st in stanzas("cohomology-model"):
        register(defs.models, str(_require(st, "name", where)), parse_model(st, defs, where), where)
    for where, st in stanzas("morphism"):
        flavor, obj = parse_morphism(st, defs, field, where)
        target = defs.model_morphisms if flavor == "model" else defs.morphisms
        if st["name"] in defs.model_morphisms or st["name"] in defs.morphisms:
            raise DefinitionError("duplicate name %r" % st["name"], where)
        target[str(st["name"])] = obj
    for where, st in stanzas("resolution"):
        register(defs.resolutions, str(_require(st, "algebra", where)), parse_resolution(st, defs, where), where)
    for where, st in stanzas("module"):
        register(defs.modules, str(_require(st, "name", where)), parse_module(st, defs, where), where)
    for where, st in stanzas("bimodule"):
        register(defs.bimodules, str(_require(st, "name", where)), parse_bimodule(st, defs, where), where)
    seen = set()
    for where, st in stanzas("task"):
        tid = str(_require(st, "id", where))
        if tid in seen:
            raise DefinitionError("duplicate task id %r" % tid, where)
        seen.add(tid)
        _require(st, "task", where)
        defs.tasks.append(dict(st, _where=where))
    return defs


def parse_definitions(path, field: Field = QQ) -> Definitions:
    """Parse and validate a definition file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise DefinitionError("cannot read file: %s" % e.strerror, str(path)) from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise DefinitionError("file is not UTF-8", str(path)) from None
    return parse_text(text, field, str(path))
