"""Command-line driver: enumerate and run the named verification suites.

    tau-forge list
    tau-forge verify <selector> [--json] [--degree N] [--window M]
                     [--j J] [--jprime J'] [--seed S] [--jobs K]

Selectors match check ids exactly or as shell-style globs.  Exit status is
0 when every selected check passes, 1 on any failure, 2 on usage errors.
Reports are deterministic; randomized property checks derive everything
from --seed (default 0).
"""

from __future__ import annotations

import argparse
import fnmatch
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import funq, kpfock, ncalg, qhirota, qscalar, qvertex, toda, uqsl2
from ._kernels import BACKEND
from .report import Stopwatch, VerificationReport


@dataclass
class CheckDescriptor:
    check_id: str
    module: str
    anchor: str
    params: dict
    fn: object
    overridable: tuple = ()


def _spin(value):
    return Fraction(value)


# ---------------------------------------------------------------------------
# runners (each returns a VerificationReport; ids/params are stamped after)
# ---------------------------------------------------------------------------


def _combine(check_id, anchor, reports, params=None):
    ok = all(r.verdict for r in reports)
    details = []
    for r in reports:
        tag = f"{r.params}" if r.params else ""
        details.append(f"{r.verdict_str} {tag}")
        if not r.verdict:
            details.extend(f"  {d}" for d in r.details[:4])
            if r.residual:
                details.append(f"  residual: {r.residual[:200]}")
    return VerificationReport(
        check_id=check_id,
        verdict=ok,
        residual="" if ok else "; ".join(d for d in details if not d.startswith("PASS"))[:400],
        params=params or {},
        anchor=anchor,
        ms=sum(r.ms for r in reports),
        details=details,
    )


def run_qscalar_canonical(params):
    rng = random.Random(params["seed"])
    with Stopwatch() as sw:
        failures = []
        for trial in range(params.get("trials", 200)):
            a = _random_scalar(rng)
            b = _random_scalar(rng)
            s = a + b
            if not (s - b - a).is_zero():
                failures.append(f"(a+b)-b-a != 0 at trial {trial}")
            if not (a * b - b * a).is_zero():
                failures.append(f"ab - ba != 0 at trial {trial}")
            if not b.is_zero():
                if not ((a / b) * b - a).is_zero():
                    failures.append(f"(a/b)b != a at trial {trial}")
            # canonical equality is structural
            if (a - b).is_zero() != (a == b):
                failures.append(f"structural equality mismatch at trial {trial}")
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:4]), ms=sw.ms,
        details=failures[:8],
    )


def _random_scalar(rng):
    num = {rng.randint(0, 4): rng.randint(-5, 5) for _ in range(rng.randint(1, 3))}
    den = {rng.randint(0, 3): rng.randint(-4, 4) for _ in range(rng.randint(1, 2))}
    if all(v == 0 for v in den.values()):
        den = {0: 1}
    try:
        return qscalar.QScalar._make(Fraction(rng.randint(-3, 3) or 1), num, den)
    except qscalar.QDivisionError:
        return qscalar.ONE


def run_qscalar_qnumbers(params):
    with Stopwatch() as sw:
        failures = []
        for n in range(1, 21):
            lhs = qscalar.q_number("bracket", n, 1)
            rhs = qscalar.QScalar.q_power(1 - n) * qscalar.q_number("paren", n, 2)
            if lhs != rhs:
                failures.append(f"[{n}]_q mismatch")
        import math

        for n in range(0, 11):
            pairs = (
                ("paren", Fraction(n)),
                ("bracket", Fraction(n)),
                ("paren_factorial", Fraction(math.factorial(n))),
                ("bracket_factorial", Fraction(math.factorial(n))),
            )
            for kind, want in pairs:
                got = qscalar.q_number(kind, n, 1).eval_q1()
                if got != want:
                    failures.append(f"eval_q1 {kind}({n}) = {got} != {want}")
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:5]), ms=sw.ms
    )


def run_confluence(params):
    pres = params["presentation"]()
    return ncalg.check_local_confluence(pres, params["max_len"])


def run_qexp_addition(params):
    deg = params["degree"]
    with Stopwatch() as sw:
        pres = ncalg.q_commuting_pair()
        x = ncalg.NCPoly.generator(pres, "x")
        y = ncalg.NCPoly.generator(pres, "y")
        lhs = ncalg.nc_exp_q(x + y, 1, deg)
        rhs = ncalg.nc_exp_q(x, 1, deg).mul(ncalg.nc_exp_q(y, 1, deg), max_word_len=deg)
        ok = (lhs - rhs).is_zero()
    return VerificationReport(
        check_id="", verdict=ok, residual="" if ok else str(lhs - rhs)[:200], ms=sw.ms
    )


def run_hopf_grid(params):
    jmax = params["jmax"]
    spins = [Fraction(t, 2) for t in range(0, int(2 * Fraction(jmax)) + 1)]
    reports = [uqsl2.verify_hopf_matrices(j, jp) for j in spins for jp in spins]
    return _combine("", "", reports)


def run_vertex_normalizations(params):
    jmax = Fraction(params["jmax"])
    with Stopwatch() as sw:
        failures = []
        t = 1
        while Fraction(t, 2) <= jmax:
            j = Fraction(t, 2)
            res = qvertex.vacuum_normalization_residuals(j)
            for name, vec in res.items():
                if any(not x.is_zero() for x in vec):
                    failures.append(f"j={j}: {name} mismatch")
            t += 1
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:6]), ms=sw.ms,
        details=failures,
    )


def run_vertex_prop(params):
    jmax = Fraction(params["jmax"])
    reports = []
    t = 1
    while Fraction(t, 2) <= jmax:
        reports.append(qvertex.verify_component_relations(Fraction(t, 2)))
        t += 1
    return _combine("", "", reports)


def run_vertex_qexp(params):
    jmax = Fraction(params["jmax"])
    reports = []
    t = 1
    while Fraction(t, 2) <= jmax:
        reports.append(qvertex.verify_qexp_commutation(Fraction(t, 2)))
        t += 1
    return _combine("", "", reports)


def run_gauss_relations(params):
    return funq.verify_funq("gauss_relations")


def run_corep(params):
    pairs = ((Fraction(1, 2), Fraction(1, 2)), (1, Fraction(1, 2)), (0, 1))
    reports = [funq.verify_funq("corep", j, jp) for j, jp in pairs]
    return _combine("", "", reports)


def run_dual_route(params):
    jmax = Fraction(params["jmax"])
    reports = []
    t = 1
    while Fraction(t, 2) <= jmax:
        reports.append(funq.verify_funq("dual_route", Fraction(t, 2)))
        t += 1
    return _combine("", "", reports)


def run_funq_gradings(params):
    jmax = Fraction(params["jmax"])
    with Stopwatch() as sw:
        failures = []
        t = 1
        while Fraction(t, 2) <= jmax:
            j = Fraction(t, 2)
            M = funq.t_matrix(j)
            eps = funq.counit_map()
            for m in range(len(M)):
                for r in range(len(M)):
                    if not funq.entry_grading_ok(j, m, r, M[m][r]):
                        failures.append(f"grading fails at j={j} entry ({m},{r})")
                    val = M[m][r].apply_generator_map(eps)
                    want = qscalar.ONE if m == r else qscalar.ZERO
                    if val.constant_word().constant_term() != want or len(val.terms) > (1 if m == r else 0):
                        failures.append(f"counit fails at j={j} entry ({m},{r})")
            t += 1
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:5]), ms=sw.ms,
        details=failures,
    )


def run_eq_half(params):
    return qhirota.verify_eq_half()


def run_spin_half_suite(params):
    return qhirota.spin_half_suite()


def run_hierarchy(params):
    with Stopwatch() as sw:
        half = Fraction(1, 2)
        coeffs = qhirota.expand_hierarchy(half, half, 1, -1, 3, 3)
        failures = [f"P_{c.k},{c.l} != 0" for c in coeffs if not c.value.is_zero()]
        L = qhirota.expand_hierarchy(half, half, 1, -1, 2, 2, side="lhs")
        R = qhirota.expand_hierarchy(half, half, 1, -1, 2, 2, side="rhs")
        for a, b in zip(L, R):
            if not (a.value - b.value).is_zero():
                failures.append(f"P_{a.k},{a.l} differs between the two sides")
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:5]), ms=sw.ms
    )


def run_lm(params):
    return qhirota.verify_lm(Fraction(params["j"]), Fraction(params["jprime"]))


def run_lm_grid(params):
    half = Fraction(1, 2)
    pairs = ((half, half), (1, half), (1, 1), (Fraction(3, 2), 1))
    reports = [qhirota.verify_lm(j, jp) for j, jp in pairs]
    return _combine("", "", reports)


def _g_suite(seed):
    rng = random.Random(seed)
    return (
        kpfock.GroupElementSpec.identity(),
        kpfock.GroupElementSpec.single(Fraction(1), 0, -1),
        kpfock.GroupElementSpec.random_unipotent(rng, 3, 2),
    )


def run_kp(which):
    def runner(params):
        reports = []
        for g in _g_suite(params["seed"]):
            reports.append(
                kpfock.verify_hirota_kp(
                    which, g, degree=params["degree"], window=params["window"]
                )
            )
        return _combine("", "", reports)

    return runner


def run_h6(params):
    r1 = kpfock.verify_hirota_kp(
        "H6", kpfock.GroupElementSpec.identity(), charges=(0, 0),
        degree=params["degree"], window=params["window"],
    )
    r2 = kpfock.verify_hirota_kp(
        "H6", kpfock.GroupElementSpec.single(Fraction(1), 0, -1), charges=(1, 0),
        degree=params["degree"], window=params["window"],
    )
    return _combine("", "", [r1, r2])


def run_cauchy(params):
    with Stopwatch() as sw:
        tau, direct, cert = kpfock.cauchy_pair(params["degree"], params["window"])
        res = tau - direct
        ok = res.is_zero()
    return VerificationReport(
        check_id="", verdict=ok, residual="" if ok else str(res)[:300], ms=sw.ms,
        details=[str(cert)],
    )


def run_heisenberg(params):
    kmax = params.get("kmax", 4)
    with Stopwatch() as sw:
        failures = []
        for k in range(1, kmax + 1):
            for l in range(1, kmax + 1):
                space = kpfock.FockSpace(params["window"] + 4)
                base = {space.vacuum(0): ncalg.TimesPoly.one(())}
                a = kpfock.apply_flow_generator(space, k, kpfock.apply_flow_generator(space, -l, base))
                inner = kpfock.apply_flow_generator(space, k, base)
                b = kpfock.apply_flow_generator(space, -l, inner) if inner else {}
                diff = dict(a)
                for st, c in b.items():
                    cur = diff.get(st)
                    cur = -c if cur is None else cur - c
                    if cur.is_zero():
                        diff.pop(st, None)
                    else:
                        diff[st] = cur
                want = {space.vacuum(0): Fraction(k)} if k == l else {}
                got = {st: c.constant_term().as_rational() for st, c in diff.items() if not c.is_zero()}
                if got != want:
                    failures.append(f"[a_{k}, a_-{l}] wrong: {got}")
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:4]), ms=sw.ms
    )


def run_fermions(params):
    rng = random.Random(params["seed"])
    with Stopwatch() as sw:
        failures = []
        for _ in range(params.get("trials", 60)):
            space = kpfock.FockSpace(params["window"])
            n = rng.randint(-1, 1)
            partition = sorted((rng.randint(1, 3) for _ in range(rng.randint(0, 3))), reverse=True)
            try:
                st = space.state_from_partition(n, tuple(partition))
            except ValueError:
                continue
            vec = {st: ncalg.TimesPoly.one(())}
            i = rng.randint(-4, 4)
            j = rng.randint(-4, 4)
            # {psi_i, psi*_j} = delta_ij, {psi_i, psi_j} = 0
            x = kpfock.apply_fermion(space, "psi", i, kpfock.apply_fermion(space, "psi_star", j, vec))
            y = kpfock.apply_fermion(space, "psi_star", j, kpfock.apply_fermion(space, "psi", i, vec))
            anti = dict(x)
            for stq, c in y.items():
                cur = anti.get(stq)
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    anti.pop(stq, None)
                else:
                    anti[stq] = cur
            want = dict(vec) if i == j else {}
            if {k_: v.constant_term() for k_, v in anti.items()} != {
                k_: v.constant_term() for k_, v in want.items()
            }:
                failures.append(f"anticommutator psi_{i} psi*_{j} wrong")
            xx = kpfock.apply_fermion(space, "psi", i, kpfock.apply_fermion(space, "psi", j, vec))
            yy = kpfock.apply_fermion(space, "psi", j, kpfock.apply_fermion(space, "psi", i, vec))
            s = dict(xx)
            for stq, c in yy.items():
                cur = s.get(stq)
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    s.pop(stq, None)
                else:
                    s[stq] = cur
            if s:
                failures.append(f"psi_{i} psi_{j} + psi_{j} psi_{i} != 0")
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures[:4]), ms=sw.ms
    )


def run_toda_worked(params):
    with Stopwatch() as sw:
        inst = toda.TodaInstance.from_rows([[1, 0], [Fraction(3, 2), 1]])
        vars = ("x", "u")
        t1 = toda.toda_tau(inst, 1)
        t2 = toda.toda_tau(inst, 2)
        want1 = ncalg.TimesPoly(
            vars,
            {
                (0, 0): qscalar.ONE,
                (1, 0): qscalar.qs(Fraction(3, 2)),
                (1, 1): qscalar.ONE,
            },
        )
        failures = []
        if t1 != want1:
            failures.append(f"tau_1 = {t1}")
        if t2 != ncalg.TimesPoly.one(vars):
            failures.append(f"tau_2 = {t2}")
        rep = toda.verify_toda_bilinear(inst)
        if not rep.verdict:
            failures.append("bilinear identity fails on the worked instance")
    return VerificationReport(
        check_id="", verdict=not failures, residual="; ".join(failures), ms=sw.ms
    )


def run_toda_random(params):
    rng = random.Random(params["seed"])
    reports = []
    for size in (2, 3, 4, 5):
        inst = toda.TodaInstance.random(rng, size)
        reports.append(toda.verify_toda_bilinear(inst))
    return _combine("", "", reports)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def build_registry():
    checks = [
        CheckDescriptor(
            "qscalar.canonical", "qscalar",
            "field axioms and structural equality of canonical forms",
            {"seed": 0, "trials": 200}, run_qscalar_canonical, ("seed",),
        ),
        CheckDescriptor(
            "qscalar.qnumbers", "qscalar",
            "q-integer identities and classical values at q=1",
            {}, run_qscalar_qnumbers,
        ),
        CheckDescriptor(
            "ncalg.confluence.funq-sl2", "ncalg",
            "local confluence of the quantized-SL2 rewrite system",
            {"presentation": ncalg.funq_sl2, "max_len": 4}, run_confluence,
        ),
        CheckDescriptor(
            "ncalg.confluence.gauss-param", "ncalg",
            "local confluence of the parameter-algebra rewrite system",
            {"presentation": ncalg.gauss_param, "max_len": 4}, run_confluence,
        ),
        CheckDescriptor(
            "ncalg.qexp-addition", "ncalg",
            "q-exponential addition theorem for q-commuting variables",
            {"degree": 8}, run_qexp_addition, ("degree",),
        ),
        CheckDescriptor(
            "hopf.matrices", "uqsl2",
            "coproduct factorization of q-exponentials and antipode axiom",
            {"jmax": 1}, run_hopf_grid,
        ),
        CheckDescriptor(
            "vertex.normalizations", "qvertex",
            "highest-weight actions of the vertex components",
            {"jmax": Fraction(5, 2)}, run_vertex_normalizations,
        ),
        CheckDescriptor(
            "vertex.component-relations", "qvertex",
            "component form of the intertwining relations",
            {"jmax": 2}, run_vertex_prop,
        ),
        CheckDescriptor(
            "vertex.qexp-commutation", "qvertex",
            "vertex components vs q-exponential flows",
            {"jmax": 2}, run_vertex_qexp,
        ),
        CheckDescriptor(
            "funq.gauss-relations", "funq",
            "defining relations of quantized SL2 in the parameter model",
            {}, run_gauss_relations,
        ),
        CheckDescriptor(
            "funq.corep", "funq",
            "group-like property of the coordinate matrix",
            {}, run_corep,
        ),
        CheckDescriptor(
            "funq.dual-route", "funq",
            "abstract vs factorized coordinate matrices",
            {"jmax": Fraction(3, 2)}, run_dual_route,
        ),
        CheckDescriptor(
            "funq.gradings", "funq",
            "weight homogeneity and counit of the coordinate matrices",
            {"jmax": Fraction(3, 2)}, run_funq_gradings,
        ),
        CheckDescriptor(
            "qliouville.eq-half", "qhirota",
            "spin-1/2 q-difference Liouville identity",
            {}, run_eq_half,
        ),
        CheckDescriptor(
            "qliouville.suite", "qhirota",
            "spin-1/2 bilinear hierarchy and classical Liouville limit",
            {}, run_spin_half_suite,
        ),
        CheckDescriptor(
            "qliouville.hierarchy", "qhirota",
            "double q-Taylor hierarchy coefficients",
            {}, run_hierarchy,
        ),
        CheckDescriptor(
            "lm", "qhirota",
            "bilinear q-difference identity for neighbouring-spin taus",
            {"j": Fraction(1, 2), "jprime": Fraction(1, 2)}, run_lm, ("j", "jprime"),
        ),
        CheckDescriptor(
            "lm.grid", "qhirota",
            "bilinear identity over the acceptance spin grid",
            {}, run_lm_grid,
        ),
        CheckDescriptor(
            "kp.m3", "kpfock",
            "fermion-sum bilinear relation for one-sided taus",
            {"degree": 6, "window": 8, "seed": 0}, run_kp("M3"),
            ("degree", "window", "seed"),
        ),
        CheckDescriptor(
            "kp.m4", "kpfock",
            "Schur-operator Hirota relation for one-sided taus",
            {"degree": 6, "window": 8, "seed": 0}, run_kp("M4"),
            ("degree", "window", "seed"),
        ),
        CheckDescriptor(
            "kp.h6", "kpfock",
            "two-sided Hirota relation across neighbouring charges",
            {"degree": 4, "window": 8, "seed": 0}, run_h6,
            ("degree", "window", "seed"),
        ),
        CheckDescriptor(
            "kp.cauchy", "kpfock",
            "two-sided vacuum tau equals the exponential pairing",
            {"degree": 5, "window": 8}, run_cauchy, ("degree", "window"),
        ),
        CheckDescriptor(
            "kp.heisenberg", "kpfock",
            "flow-generator commutators on the mode window",
            {"window": 8, "kmax": 4}, run_heisenberg, ("window",),
        ),
        CheckDescriptor(
            "kp.fermions", "kpfock",
            "canonical anticommutation relations on window states",
            {"window": 8, "seed": 0, "trials": 60}, run_fermions, ("window", "seed"),
        ),
        CheckDescriptor(
            "toda.worked", "toda",
            "worked 2x2 instance of the Toda-molecule identity",
            {}, run_toda_worked,
        ),
        CheckDescriptor(
            "toda.random", "toda",
            "Toda-molecule identity on seeded random instances",
            {"seed": 0}, run_toda_random, ("seed",),
        ),
    ]
    return {c.check_id: c for c in checks}


REGISTRY = build_registry()


class UsageError(Exception):
    pass


def select_checks(selector):
    if selector in REGISTRY:
        return [REGISTRY[selector]]
    matched = [c for cid, c in sorted(REGISTRY.items()) if fnmatch.fnmatch(cid, selector)]
    if not matched:
        raise UsageError(f"selector {selector!r} matches no registered check")
    return matched


def run_check(selector, overrides=None, jobs=1):
    """Execute all checks matching the selector; deterministic id order."""
    overrides = overrides or {}
    checks = select_checks(selector)

    def execute(desc):
        params = dict(desc.params)
        for key, value in overrides.items():
            if value is None:
                continue
            if key in ("j", "jprime") and key not in desc.params:
                continue
            if key in desc.overridable or key in desc.params:
                params[key] = value
        report = desc.fn(params)
        report.check_id = desc.check_id
        report.anchor = report.anchor or desc.anchor
        shown = {k: v for k, v in params.items() if not callable(v)}
        report.params = shown
        return report

    if jobs > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(execute, checks))
    else:
        reports = [execute(c) for c in checks]
    reports.sort(key=lambda r: r.check_id)
    return reports


def emit_report(reports, fmt="text", stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        import json

        stream.write(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
        stream.write("\n")
    else:
        for r in reports:
            stream.write(r.text_line() + "\n")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="tau-forge",
        description="exact verification of Hirota-type bilinear identities "
        "for classical and q-deformed tau functions",
    )
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("list", help="list registered checks")
    pv = sub.add_parser("verify", help="run checks matching a selector")
    pv.add_argument("selector", help="check id or glob, e.g. 'kp.*'")
    pv.add_argument("--json", action="store_true", help="machine-readable output")
    pv.add_argument("--degree", type=int, default=None)
    pv.add_argument("--window", type=int, default=None)
    pv.add_argument("--j", type=_spin, default=None)
    pv.add_argument("--jprime", type=_spin, default=None)
    pv.add_argument("--seed", type=int, default=None)
    pv.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("TAU_FORGE_JOBS", "1")),
        help="concurrent checks (default from TAU_FORGE_JOBS)",
    )

    args = parser.parse_args(argv)
    if args.command == "list":
        for cid, desc in sorted(REGISTRY.items()):
            defaults = {k: str(v) for k, v in desc.params.items() if not callable(v)}
            print(f"{cid:32s} {desc.anchor}" + (f"  {defaults}" if defaults else ""))
        print(f"# kernel backend: {BACKEND}")
        return 0
    if args.command != "verify":
        parser.print_help()
        return 2
    overrides = {
        "degree": args.degree,
        "window": args.window,
        "j": args.j,
        "jprime": args.jprime,
        "seed": args.seed,
    }
    try:
        reports = run_check(args.selector, overrides, jobs=max(1, args.jobs))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, kpfock.BoundaryError) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return 2
    emit_report(reports, "json" if args.json else "text")
    return 0 if all(r.verdict for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
