"""Execute a job and assemble a deterministic report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Callable, Dict, List, Optional

from .birational import birational_comparison, parse_parameterization
from .calculus import (
    decomposition_identity_check,
    defect,
    intrinsic_scheme,
    plucker_degree,
    weierstrass_cycle,
    weierstrass_divisor_cycle,
)
from .curve import arithmetic_genus
from .cycles import CHART_ORDER, Cycle, Point
from .degeneration import FamilySystem, flat_limit, limit_checks, parse_family, quadric_shape, same_limit
from .groebner import DEGREVLEX, Ideal
from .jobs import FamilySpec, JobSpec, SystemSpec, Task
from .linsys import GenLinearSystem, check_nondegenerate, make_system, wronskian
from .poly import parse

UV = ("u", "v")
# t0 values at which family nondegeneracy is spot-checked away from the special fiber
GENERIC_SAMPLES = (Fraction(1, 3), Fraction(3))


def canonical_generators(ideal: Ideal) -> List[str]:
    """Reduced basis, integer-primitive, sorted by leading monomial then coefficients."""
    key = DEGREVLEX.key
    gens = [g.primitive() for g in ideal.basis(DEGREVLEX)]

    def sort_key(g):
        return [(key(e), c) for e, c in g.sorted_terms(DEGREVLEX)]

    gens.sort(key=sort_key, reverse=True)
    return [g.format(UV, DEGREVLEX) for g in gens]


def chart_generators(ideals: Dict[str, Ideal]) -> Dict[str, List[str]]:
    return {c: canonical_generators(ideals[c]) for c in CHART_ORDER}


def integer_pair(a: Fraction, b: Fraction) -> tuple[int, int]:
    """Scale a rational pair to coprime integers, keeping the sign of the first nonzero entry."""
    den = lcm(a.denominator, b.denominator)
    p, q = int(a * den), int(b * den)
    g = gcd(p, q) or 1
    return p // g, q // g


@dataclass
class TaskResult:
    name: str
    status: str = "ok"
    ideals: Dict[str, Any] = field(default_factory=dict)
    cycles: Dict[str, Any] = field(default_factory=dict)
    verdict: Optional[Dict[str, Any]] = None
    lines: List[str] = field(default_factory=list)
    error: Optional[str] = None
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status in ("fail", "error")

    def add_cycle(self, label: str, c: Cycle) -> None:
        self.cycles[label] = c.to_json()
        self.lines.append(f"{label} = {c.render()}")

    def set_verdict(self, v) -> None:
        self.verdict = {"name": v.name, "passed": v.passed, "lhs": v.lhs, "rhs": v.rhs}
        self.status = "pass" if v.passed else "fail"
        self.lines.append(v.render())

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "ideals": self.ideals, "cycles": self.cycles, "verdict": self.verdict}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class Report:
    curve: str
    genus: int
    degree: int
    tasks: List[TaskResult]

    @property
    def ok(self) -> bool:
        return not any(t.failed for t in self.tasks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "curve": {"equation": self.curve, "degree": self.degree, "genus": self.genus},
            "tasks": [t.to_json() for t in self.tasks],
            "ok": self.ok,
        }

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def render_text(self, verbose: bool = False) -> str:
        out = [f"curve: {self.curve}  (degree {self.degree}, arithmetic genus {self.genus})"]
        for t in self.tasks:
            head = f"[{t.status}] {t.name}"
            if verbose:
                head += f"  ({t.seconds:.3f} s)"
            out.append(head)
            out.extend(f"  {line}" for line in t.lines)
            if t.error:
                out.append(f"  error: {t.error}")
            if verbose:
                for label, charts in t.ideals.items():
                    for chart, gens in charts.items():
                        out.append(f"  {label}[{chart}] = ({', '.join(gens)})")
        failed = sum(t.failed for t in self.tasks)
        out.append(f"{len(self.tasks)} task(s), {failed} failed")
        return "\n".join(out) + "\n"


class _Memo:
    """Builds each object once; a build failure is remembered and re-raised."""

    def __init__(self):
        self._store: Dict[Any, Any] = {}

    def get(self, key, build: Callable[[], Any]):
        if key not in self._store:
            try:
                self._store[key] = (True, build())
            except Exception as exc:  # noqa: BLE001 - replayed to every dependent task
                self._store[key] = (False, exc)
        ok, value = self._store[key]
        if not ok:
            raise value
        return value


class Runner:
    def __init__(self, spec: JobSpec):
        self.spec = spec
        self.memo = _Memo()

    def system(self, s: SystemSpec) -> GenLinearSystem:
        return self.memo.get(("system", s.name), lambda: make_system(self.spec.curve, s.twist, s.ideal or None, s.sections, self.spec.variables))

    def parameterization(self):
        p = self.spec.parameterization
        return self.memo.get("param", lambda: parse_parameterization(self.spec.curve, p.maps, p.singular_fibers, p.variables))

    def family_instances(self, f: FamilySpec):
        """``(label, FamilySystem)`` for each sample of the family's constant."""
        values = f.samples if f.samples else [None]
        out = []
        for v in values:
            label = f.name if v is None else f"{f.name}[{f.constant}={_num(v)}]"
            consts = {f.constant: v} if v is not None else None
            fam = self.memo.get(("family", label), lambda v=v, consts=consts, label=label: self._family(f, consts, label))
            out.append((label, fam))
        return out

    def _family(self, f: FamilySpec, consts, label) -> FamilySystem:
        names = list(self.spec.variables)

        def txt(s: str) -> str:
            # normalise to the (x, y, z, t) names used by the family engine
            src = list(names) + [f.parameter] + ([f.constant] if consts else [])
            dst = ["x", "y", "z", "t"] + ([f.constant] if consts else [])
            return parse(s, src).format(dst)

        # a family tied to a declared system degenerates to the job curve, whose components are known
        comps = [parse(c, names).format(["x", "y", "z"]) for c in self.spec.components] if f.system else None
        return parse_family(txt(f.curve_t), [txt(g) for g in f.ideal_t] or None, [txt(s) for s in f.sections_t], consts, label, comps)

    def limit(self, label: str, fam: FamilySystem):
        return self.memo.get(("limit", label), lambda: flat_limit(fam))


def _num(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _run_system_task(run: Runner, task: Task, s: SystemSpec, res: TaskResult) -> None:
    sys = run.system(s)
    kind = task.kind
    if kind == "wronskian":
        w = wronskian(sys)
        res.ideals["w"] = {c: [w.on(c).format(UV, DEGREVLEX)] for c in CHART_ORDER}
        res.lines.append(f"w[z] = {w.on('z').format(UV, DEGREVLEX)}")
    elif kind == "weierstrass-cycle":
        W = weierstrass_divisor_cycle(sys)
        R = weierstrass_cycle(sys)
        res.add_cycle("W", W)
        res.add_cycle("Y", sys.sheaf.Y_cycle())
        res.add_cycle("R", R)
        expected = plucker_degree(sys.rank, sys.degree, arithmetic_genus(sys.curve), sys.curve.n_connected)
        res.lines.append(f"degree R = {R.degree()} (Plücker {expected})")
        for q in s.queries:
            p = Point(*q)
            res.lines.append(f"mult R at {p} = {R.mult(p)}")
    elif kind == "intrinsic":
        ideals, Z = intrinsic_scheme(sys)
        res.ideals["Z"] = chart_generators(ideals)
        res.cycles["Z"] = Z.to_json()
        res.lines.append(f"Z cycle = {Z.render()}")
    elif kind == "defect":
        d = defect(sys.sheaf, task.arg)
        res.add_cycle(f"defect^{task.arg}", d)
    elif kind == "birational":
        res.set_verdict(birational_comparison(sys, run.parameterization()))
    elif kind == "checks":
        nd = check_nondegenerate(sys)
        res.lines.append(f"strongly nondegenerate: {'yes' if nd.strongly_nondegenerate else 'no'}")
        res.set_verdict(decomposition_identity_check(sys))
        if not nd.strongly_nondegenerate:
            res.status = "fail"


def _shape_text(ideal: Ideal) -> Optional[str]:
    shape = quadric_shape(ideal)
    if shape is None:
        return None
    a, b = integer_pair(*shape)
    return f"W({a},{b})"


def _run_limit(run: Runner, label: str, fam: FamilySystem, res: TaskResult) -> None:
    lim = run.limit(label, fam)
    res.ideals["limit"] = chart_generators(lim.ideals)
    res.cycles["limit"] = lim.cycle.to_json()
    shape = _shape_text(lim.ideals["z"])
    res.lines.append(f"limit({label}) = {shape if shape else canonical_generators(lim.ideals['z'])}")
    res.lines.append(f"limit cycle = {lim.cycle.render()}")
    if shape:
        res.cycles["shape"] = shape


def _run_family_checks(run: Runner, label: str, fam: FamilySystem, f: FamilySpec, res: TaskResult) -> None:
    v = limit_checks(fam, run.limit(label, fam))
    res.set_verdict(v)
    special = fam.special()
    good = True
    if f.system is not None:
        ref = next(s for s in run.spec.systems if s.name == f.system)
        target = run.system(ref)
        same_curve = special.curve == run.spec.curve
        same_span = Ideal(special.sections).same_as(Ideal(target.sections)) and special.rank == target.rank
        res.lines.append(f"special fiber matches system {f.system}: {'yes' if same_curve and same_span else 'no'}")
        good &= same_curve and same_span
    for t0 in GENERIC_SAMPLES:
        try:
            nd = check_nondegenerate(fam.fiber(t0)).strongly_nondegenerate
        except Exception:  # noqa: BLE001 - a bad sample fiber is reported, not raised
            nd = False
        res.lines.append(f"fiber t={_num(t0)} strongly nondegenerate: {'yes' if nd else 'no'}")
        good &= nd
    if not good:
        res.status = "fail"
        res.verdict["passed"] = False


def _time(res: TaskResult, fn: Callable[[], None]) -> TaskResult:
    start = time.perf_counter()
    try:
        fn()
    except Exception as exc:  # noqa: BLE001 - per-task isolation
        res.status = "error"
        res.error = str(exc) or type(exc).__name__
    res.seconds = time.perf_counter() - start
    return res


def run_job(spec: JobSpec) -> Report:
    """Run every task in declaration order; failures stay local to their task."""
    run = Runner(spec)
    results: List[TaskResult] = []
    for task in spec.tasks:
        if task.kind == "limit":
            for f in spec.families:
                try:
                    instances = run.family_instances(f)
                except Exception as exc:  # noqa: BLE001
                    results.append(TaskResult(f"limit[{f.name}]", status="error", error=str(exc)))
                    continue
                for label, fam in instances:
                    res = TaskResult(f"limit[{label}]")
                    results.append(_time(res, lambda label=label, fam=fam, res=res: _run_limit(run, label, fam, res)))
            continue
        for s in spec.systems:
            if task.kind == "birational" and spec.parameterization is None:
                continue
            res = TaskResult(f"{task.label}[{s.name}]")
            results.append(_time(res, lambda s=s, res=res: _run_system_task(run, task, s, res)))
        if task.kind == "checks":
            limits = []
            for f in spec.families:
                try:
                    instances = run.family_instances(f)
                except Exception as exc:  # noqa: BLE001
                    results.append(TaskResult(f"checks[{f.name}]", status="error", error=str(exc)))
                    continue
                for label, fam in instances:
                    res = TaskResult(f"checks[{label}]")
                    results.append(_time(res, lambda label=label, fam=fam, f=f, res=res: _run_family_checks(run, label, fam, f, res)))
                    limits.append((label, fam))
            if len(limits) >= 2:
                res = TaskResult("checks[limit-dependence]")
                results.append(_time(res, lambda res=res, limits=limits: _dependence_probe(run, limits, res)))
    C = spec.curve
    return Report(spec.curve_text, arithmetic_genus(C), C.degree, results)


def _dependence_probe(run: Runner, limits, res: TaskResult) -> None:
    """Informational: whether distinct families reach distinct limit schemes."""
    lims = [(label, run.limit(label, fam)) for label, fam in limits]
    distinct = 0
    for i in range(len(lims)):
        for j in range(i + 1, len(lims)):
            if not same_limit(lims[i][1], lims[j][1]):
                distinct += 1
    pairs = len(lims) * (len(lims) - 1) // 2
    res.lines.append(f"distinct limit pairs: {distinct} of {pairs}")
    res.cycles["distinct_pairs"] = distinct
