"""Batch front-end: run the tasks of definition files and write a JSON report.

Exit codes: 0 when every task passes, 1 when a verification fails, 2 on an
input error (unreadable file, syntax, validation or a bad task reference).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Mapping

from . import cohomology as coh
from . import invariants as inv
from .algebra import AlgebraError, commutator_quotient_dim, opposite
from .definitions import DefinitionError, Definitions, FORMAT_VERSION, parse_definitions
from .hochschild import EXACT, Bimodule, hh_dims, hh_with_coefficients
from .linalg import QQ, ComplexError, Field, Fp, SparseMatrix, format_scalar, parse_field
from .perf import PerfError, diagonal_resolution, hh_via_resolution

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
TASKS = ("hh", "euler", "pairing", "verify-lfp", "verify-hrr", "verify-nondeg", "verify-main-lemma",
         "coh-lefschetz", "coh-two-maps", "coh-lemmas")


@dataclass
class SessionConfig:
    field: Field = QQ
    max_bar: int = 4
    out: str | None = None
    task: str | None = None
    timing: bool = False


class TaskError(ValueError):
    """A task refers to missing objects or its inputs violate a hypothesis."""


def jsonable(x):
    """Exact values as strings, tuples as lists, dict keys as strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, Fp)):
        return format_scalar(x)
    if isinstance(x, SparseMatrix):
        return [[format_scalar(v) for v in r] for r in x.to_dense()]
    if isinstance(x, Mapping):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError("cannot serialize %r" % (x,))


def _get(defs_table: Mapping, task: Mapping, key: str, what: str):
    if key not in task:
        raise TaskError("task needs %r" % key)
    name = task[key]
    if name not in defs_table:
        raise TaskError("unknown %s %r" % (what, name))
    return defs_table[name]


def _exact(v) -> str | None:
    return None if v is None else format_scalar(v)


# ---------------------------------------------------------------------------
# tasks; each returns (passed, lhs, rhs, details)


def task_hh(task, defs: Definitions, cfg: SessionConfig):
    a = _get(defs.algebras, task, "algebra", "algebra")
    top = task.get("max_degree", cfg.max_bar - 1)
    if "coefficients" in task:
        m = _get(defs.bimodules, task, "coefficients", "bimodule")
        res = hh_with_coefficients(a, m.to_bimodule(), top, task.get("min_degree", 0))
        lo = task.get("min_degree", 0)
        return True, None, None, {"dims": dict(zip(range(lo, top + 1), res.dims)),
                                  "certificates": dict(zip(range(lo, top + 1), res.certificates))}
    res = hh_dims(a, top)
    details = {"dims": dict(enumerate(res.dims)), "certificates": dict(enumerate(res.certificates))}
    ok = True
    if a.is_degree_zero:
        details["commutator_quotient_dim"] = commutator_quotient_dim(a)
        ok = ok and details["commutator_quotient_dim"] == res.dims[0]
        try:
            r = diagonal_resolution(a)
        except PerfError:
            r = None
        if r is not None:
            exact = [i for i, c in enumerate(res.certificates) if c == EXACT]
            via = hh_via_resolution(r, Bimodule.diagonal(a), max(exact)) if exact else []
            details["resolution_dims"] = dict(enumerate(via))
            ok = ok and via == res.dims[:len(via)]
    return ok, None, None, details


def task_euler(task, defs: Definitions, cfg: SessionConfig):
    if "module" in task:
        n = _get(defs.modules, task, "module", "module")
        c = inv.euler_class(n)
        return True, None, None, {"algebra": n.base.name, "coordinates": list(c.coords),
                                  "representative": {_word(n.base, w): v for w, v in sorted(c.representative.items())}}
    x = _get(defs.bimodules, task, "bimodule", "bimodule")
    ep = inv.euler_class_prime(x)
    back = inv.kunneth_of_prime(ep)
    return back == list(ep.euler.coords), None, None, {
        "euler_coordinates": list(ep.euler.coords), "prime_blocks": ep.blocks,
        "kunneth_roundtrip": back == list(ep.euler.coords)}


def _word(a, w) -> str:
    return "%s[%s]" % (a.labels[w[0]], "|".join(a.labels[i] for i in w[1:]))


def task_pairing(task, defs: Definitions, cfg: SessionConfig):
    a = _get(defs.algebras, task, "algebra", "algebra")
    method = task.get("method", "auto")
    g = inv.gram_matrix(a, 0, method)
    details = {"gram": g}
    value = None
    if "right" in task or "left" in task:
        n = _get(defs.modules, task, "right", "module")
        m = _get(defs.modules, task, "left", "module")
        if n.base != a or m.base != opposite(a):
            raise TaskError("modules must live over the algebra and its opposite")
        value = inv.pairing(a, inv.euler_class(n), inv.euler_class(m), method)
        details["value"] = value
    return True, value, None, details


def _report(r) -> tuple:
    return r.passed, r.lhs, r.rhs, r.details


def task_lfp(task, defs, cfg):
    return _report(inv.verify_lfp(_get(defs.bimodules, task, "bimodule", "bimodule")))


def task_hrr(task, defs, cfg):
    return _report(inv.verify_hrr(_get(defs.modules, task, "right", "module"),
                                  _get(defs.modules, task, "left", "module"), task.get("method", "auto")))


def task_nondeg(task, defs, cfg):
    a = _get(defs.algebras, task, "algebra", "algebra")
    r = inv.verify_nondegenerate(a)
    s = inv.verify_pairing_symmetry(a)
    return r.passed and s.passed, None, None, {"nondegenerate": r.details, "symmetry": s.details,
                                               "symmetric": s.passed, "invertible": r.passed}


def task_main_lemma(task, defs, cfg):
    return _report(inv.verify_main_lemma(_get(defs.bimodules, task, "bimodule", "bimodule"),
                                         method=task.get("method", "auto")))


def task_coh_lefschetz(task, defs, cfg):
    return _report(coh.lefschetz_number(_get(defs.model_morphisms, task, "morphism", "morphism")))


def task_coh_two_maps(task, defs, cfg):
    return _report(coh.verify_two_maps(_get(defs.model_morphisms, task, "f", "morphism"),
                                       _get(defs.model_morphisms, task, "g", "morphism")))


def task_coh_lemmas(task, defs, cfg):
    return _report(coh.verify_cohomological_lemmas(_get(defs.model_morphisms, task, "morphism", "morphism")))


RUNNERS: dict[str, Callable] = {
    "hh": task_hh,
    "euler": task_euler,
    "pairing": task_pairing,
    "verify-lfp": task_lfp,
    "verify-hrr": task_hrr,
    "verify-nondeg": task_nondeg,
    "verify-main-lemma": task_main_lemma,
    "coh-lefschetz": task_coh_lefschetz,
    "coh-two-maps": task_coh_two_maps,
    "coh-lemmas": task_coh_lemmas,
}

INPUT_ERRORS = (TaskError, DefinitionError, AlgebraError, PerfError, ComplexError, inv.InvariantError,
                coh.ModelError)


def run(task: Mapping, defs: Definitions, cfg: SessionConfig) -> dict:
    """Run one task; the result carries ``status`` ``pass``, ``fail`` or ``error``."""
    name = task["task"]
    echo = {k: v for k, v in task.items() if not k.startswith("_")}
    out = {"id": task["id"], "task": name, "inputs": echo}
    start = time.perf_counter()
    if name not in RUNNERS:
        out.update(status="error", passed=False, error="unknown task %r" % name)
        return out
    try:
        passed, lhs, rhs, details = RUNNERS[name](task, defs, cfg)
    except INPUT_ERRORS as e:
        out.update(status="error", passed=False, error=str(e))
        return out
    lhs_s, rhs_s = _exact(lhs), _exact(rhs)
    expected = {}
    for key, got in (("expect_lhs", lhs_s), ("expect_rhs", rhs_s)):
        if key in task:
            field = QQ if name.startswith("coh-") else cfg.field
            want = format_scalar(field(Fraction(str(task[key]))))
            expected[key] = {"expected": want, "got": got, "ok": want == got}
            passed = passed and want == got
    out.update(status="pass" if passed else "fail", passed=bool(passed), lhs=lhs_s, rhs=rhs_s,
               details=jsonable(details))
    if expected:
        out["expectations"] = expected
    if cfg.timing:
        out["seconds"] = round(time.perf_counter() - start, 3)
    return out


def shipped_fixtures() -> list[Path]:
    base = resources.files("hhtrace") / "fixtures"
    return sorted(Path(str(p)) for p in base.iterdir() if p.name.endswith(".toml"))


def run_files(paths, cfg: SessionConfig) -> tuple[dict, int]:
    """Parse and run every file; returns the report document and the exit code."""
    doc = {"format_version": FORMAT_VERSION,
           "config": {"field": cfg.field.name(), "max_bar": cfg.max_bar, "task": cfg.task},
           "files": []}
    code = EXIT_PASS
    for path in paths:
        entry = {"path": str(path)}
        try:
            defs = parse_definitions(path, cfg.field)
        except DefinitionError as e:
            entry.update(error=str(e), reports=[])
            doc["files"].append(entry)
            code = EXIT_INPUT
            continue
        tasks = [t for t in defs.tasks if cfg.task is None or cfg.task in (t["task"], t["id"])]
        entry["reports"] = [run(t, defs, cfg) for t in tasks]
        for r in entry["reports"]:
            if r["status"] == "error":
                code = EXIT_INPUT
            elif r["status"] == "fail" and code == EXIT_PASS:
                code = EXIT_FAIL
        doc["files"].append(entry)
    return doc, code


def render(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def summary_lines(doc: dict) -> list[str]:
    out = []
    for f in doc["files"]:
        if "error" in f:
            out.append("ERROR %s" % f["error"])
        for r in f["reports"]:
            if r["status"] == "error":
                out.append("ERROR %s [%s]: %s" % (r["id"], r["task"], r["error"]))
            else:
                sides = "".join(" %s=%s" % (k, r[k]) for k in ("lhs", "rhs") if r[k] is not None)
                out.append("%s %s [%s]%s" % (r["status"].upper(), r["id"], r["task"], sides))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hhtrace", description="Run Hochschild homology computations and "
                                "trace-formula verifications from definition files.")
    p.add_argument("--fixture", action="append", default=None,
                   help="definition file (repeatable); default: every shipped fixture")
    p.add_argument("--field", default="q", help="q (rationals) or fp:<p>")
    p.add_argument("--max-bar", type=int, default=4, help="bar length of Hochschild windows for the hh task")
    p.add_argument("--task", default=None, help="only run tasks with this task name or id")
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record seconds per task (makes reports non-reproducible)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        field = parse_field(args.field)
    except ValueError as e:
        print("input error: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    if args.max_bar < 1:
        print("input error: --max-bar must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    cfg = SessionConfig(field, args.max_bar, args.out, args.task, args.timing)
    paths = args.fixture or shipped_fixtures()
    doc, code = run_files(paths, cfg)
    if cfg.task is not None and not any(f["reports"] for f in doc["files"]) and code == EXIT_PASS:
        print("input error: no task named %r" % cfg.task, file=sys.stderr)
        return EXIT_INPUT
    text = render(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        for line in summary_lines(doc):
            print(line)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
