"""Job files: a TOML description of a curve, systems, a parameterization and families.

Example::

    variables = ["x", "y", "z"]
    curve = "y^2*z - x^2*z - x^3"
    tasks = ["weierstrass-cycle", "intrinsic", "defect:2", "limit", "checks"]

    [[system]]
    name = "node"
    twist = 1
    ideal = ["x", "y"]
    sections = ["x", "y"]

    [[family]]
    name = "family1"
    curve_t = "y^2*z - x^3 - x^2*z - t^2*z^3"
    ideal_t = ["x", "y - t*z"]
    sections_t = ["x", "y - t*z"]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .curve import CurveError, PlaneCurve
from .poly import ParseError, Polynomial, parse

TASK_KINDS = ("wronskian", "weierstrass-cycle", "intrinsic", "defect", "birational", "limit", "checks")

TOP_KEYS = {"variables", "curve", "components", "tasks", "system", "parameterization", "family"}
SYSTEM_KEYS = {"name", "twist", "ideal", "sections", "queries"}
PARAM_KEYS = {"variables", "maps", "singular_fibers"}
FIBER_KEYS = {"point", "params", "type"}
FAMILY_KEYS = {"name", "parameter", "constant", "samples", "curve_t", "ideal_t", "sections_t", "system"}


class JobError(ValueError):
    """One or more problems in a job file; ``errors`` holds one message each."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class SystemSpec:
    name: str
    twist: int
    ideal: List[str]
    sections: List[str]
    queries: List[Tuple[Fraction, ...]] = field(default_factory=list)


@dataclass
class ParamSpec:
    variables: List[str]
    maps: List[str]
    singular_fibers: List[Dict[str, Any]]


@dataclass
class FamilySpec:
    name: str
    parameter: str
    curve_t: str
    ideal_t: List[str]
    sections_t: List[str]
    constant: Optional[str] = None
    samples: List[Fraction] = field(default_factory=list)
    system: Optional[str] = None


@dataclass
class Task:
    kind: str
    arg: Optional[int] = None

    @property
    def label(self) -> str:
        return f"{self.kind}:{self.arg}" if self.arg is not None else self.kind


@dataclass
class JobSpec:
    variables: List[str]
    curve_text: str
    curve: PlaneCurve
    components: List[str]
    systems: List[SystemSpec]
    parameterization: Optional[ParamSpec]
    families: List[FamilySpec]
    tasks: List[Task]


def _line_of(text: str, key: str) -> int | None:
    pat = re.compile(rf"^\s*{re.escape(key)}\s*=", re.M)
    m = pat.search(text)
    if m is None:
        pat = re.compile(rf"\b{re.escape(key)}\s*=")
        m = pat.search(text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _at(text: str, key: str) -> str:
    line = _line_of(text, key)
    return f"line {line}: " if line else ""


def _fraction(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(str(v))
    raise ValueError(f"not a number: {v!r}")


def parse_task(item: str) -> Task:
    kind, _, arg = item.partition(":")
    kind = kind.strip()
    if kind not in TASK_KINDS:
        raise ValueError(f"unknown task {item!r}")
    if kind == "defect":
        n = int(arg) if arg else 2
        if n < 1:
            raise ValueError("defect order must be positive")
        return Task(kind, n)
    if arg:
        raise ValueError(f"task {kind!r} takes no argument")
    return Task(kind)


def parse_job(text: str) -> JobSpec:
    """Validate a job file; raises :class:`JobError` listing every problem found."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise JobError([f"syntax error: {exc}"]) from None
    errors: List[str] = []
    if "curve" not in data:
        raise JobError(["no curve"])
    for k in data:
        if k not in TOP_KEYS:
            errors.append(f"{_at(text, k)}unknown key {k!r}")

    variables = data.get("variables", ["x", "y", "z"])
    if not (isinstance(variables, list) and len(variables) == 3 and all(isinstance(v, str) for v in variables)):
        errors.append(f"{_at(text, 'variables')}variables must list three names")
        variables = ["x", "y", "z"]

    def poly(src, where, names=variables) -> Polynomial | None:
        if not isinstance(src, str):
            errors.append(f"{_at(text, where)}{where}: expected a polynomial string, got {src!r}")
            return None
        try:
            return parse(src, names)
        except ParseError as exc:
            errors.append(f"{_at(text, where)}{where}: {exc}")
            return None

    curve = None
    components = data.get("components", [])
    F = poly(data["curve"], "curve")
    comps = [poly(c, "components") for c in components]
    if F is not None and None not in comps:
        try:
            curve = PlaneCurve(F, comps or None)
        except CurveError as exc:
            errors.append(f"{_at(text, 'curve')}curve: {exc}")

    raw_systems = data.get("system", [])
    if isinstance(raw_systems, dict):
        raw_systems = [raw_systems]
    systems: List[SystemSpec] = []
    for i, blk in enumerate(raw_systems):
        name = str(blk.get("name", f"system{i + 1}"))
        for k in blk:
            if k not in SYSTEM_KEYS:
                errors.append(f"{_at(text, k)}unknown key {k!r} in system {name!r}")
        if "sections" not in blk:
            errors.append(f"system {name!r}: missing sections")
            continue
        twist = blk.get("twist", 1)
        if not isinstance(twist, int) or twist < 0:
            errors.append(f"{_at(text, 'twist')}system {name!r}: twist must be a nonnegative integer")
            continue
        ideal = list(blk.get("ideal", []))
        sections = list(blk["sections"])
        for src in ideal:
            poly(src, "ideal")
        for src in sections:
            poly(src, "sections")
        queries = []
        for q in blk.get("queries", []):
            try:
                pt = tuple(_fraction(c) for c in q)
                if len(pt) != 3 or not any(pt):
                    raise ValueError
                queries.append(pt)
            except (TypeError, ValueError):
                errors.append(f"{_at(text, 'queries')}system {name!r}: bad query point {q!r}")
        systems.append(SystemSpec(name, twist, ideal, sections, queries))
    names = [s.name for s in systems]
    if len(set(names)) != len(names):
        errors.append("system names must be unique")

    param = None
    if "parameterization" in data:
        blk = data["parameterization"]
        for k in blk:
            if k not in PARAM_KEYS:
                errors.append(f"{_at(text, k)}unknown key {k!r} in parameterization")
        pvars = blk.get("variables", ["s", "t"])
        maps = blk.get("maps", [])
        if len(maps) != 3:
            errors.append(f"{_at(text, 'maps')}parameterization needs three maps")
        for src in maps:
            poly(src, "maps", pvars)
        fibers = blk.get("singular_fibers", [])
        for fib in fibers:
            for k in fib:
                if k not in FIBER_KEYS:
                    errors.append(f"{_at(text, k)}unknown key {k!r} in singular fiber")
            if not all(k in fib for k in FIBER_KEYS):
                errors.append(f"{_at(text, 'singular_fibers')}singular fiber needs point, params and type")
        param = ParamSpec(list(pvars), list(maps), [dict(f) for f in fibers])

    raw_fams = data.get("family", [])
    if isinstance(raw_fams, dict):
        raw_fams = [raw_fams]
    families: List[FamilySpec] = []
    for i, blk in enumerate(raw_fams):
        name = str(blk.get("name", f"family{i + 1}"))
        for k in blk:
            if k not in FAMILY_KEYS:
                errors.append(f"{_at(text, k)}unknown key {k!r} in family {name!r}")
        missing = [k for k in ("curve_t", "sections_t") if k not in blk]
        if missing:
            errors.append(f"family {name!r}: missing {', '.join(missing)}")
            continue
        param_name = blk.get("parameter", "t")
        constant = blk.get("constant")
        samples = [_fraction(v) for v in blk.get("samples", [])]
        fam_names = variables + [param_name] + ([constant] if constant else [])
        if samples and not constant:
            constant = "c"
            fam_names = variables + [param_name, constant]
        for key in ("curve_t",):
            poly(blk[key], key, fam_names)
        for key in ("ideal_t", "sections_t"):
            for src in blk.get(key, []):
                poly(src, key, fam_names)
        ref = blk.get("system")
        if ref is not None and ref not in names:
            errors.append(f"{_at(text, 'system')}family {name!r}: unresolved reference to system {ref!r}")
        families.append(
            FamilySpec(name, param_name, blk["curve_t"], list(blk.get("ideal_t", [])), list(blk["sections_t"]), constant, samples, ref)
        )

    tasks: List[Task] = []
    raw_tasks = data.get("tasks", [])
    if not raw_tasks:
        errors.append(f"{_at(text, 'tasks')}task list is empty")
    for item in raw_tasks:
        try:
            tasks.append(parse_task(str(item)))
        except ValueError as exc:
            errors.append(f"{_at(text, 'tasks')}{exc}")
    needs_system = {"wronskian", "weierstrass-cycle", "intrinsic", "defect", "birational"}
    if any(t.kind in needs_system for t in tasks) and not systems:
        errors.append("tasks reference systems but none are declared")
    if any(t.kind == "birational" for t in tasks) and param is None:
        errors.append("birational task needs a parameterization block")
    if any(t.kind == "limit" for t in tasks) and not families:
        errors.append("limit task needs at least one family")

    if errors:
        raise JobError(errors)
    return JobSpec(variables, data["curve"], curve, list(components), systems, param, families, tasks)


def load_job(path) -> JobSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_job(fh.read())
