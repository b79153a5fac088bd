"""Command line front end.

Every subcommand prints a RunReport as JSON (or a readable rendering
with --pretty) and exits 0 on success, 1 when a checked identity fails,
2 on bad input.  Randomized commands take --seed, falling back to the
GL_SEED environment variable, then 0; reports embed the seed so any run
can be repeated bit for bit.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time

from . import alexander as alx
from . import cassonlin as cln
from . import gassner as gsn
from . import kernels
from . import signature as sig
from .braids import ColoredBraidWord, load_braid, random_cc_braid, shipped_braid_names
from .errors import GasslinError
from .laurent import TorusPoint

CONVENTIONS = {
    "orientation": "trace spheres oriented as boundaries of the supergraph "
    "{tr > 2 cos theta}; conjugation orbit directions listed first in the slice",
    "orientation_calibration": cln.ORIENTATION_CALIBRATION,
    "sqrt_branch": "omega^{1/2} taken in the closed upper half plane unless "
    "explicit roots are supplied",
    "potential_sign": alx.SIGN_CONVENTION_NOTE,
    "braid_action": "letters act bottom to top; the tuple map applies the "
    "rewrites of the whole word, composing right to left",
}


def _report(command: str, inputs: dict, seed=None) -> dict:
    rep = {
        "command": command,
        "inputs": inputs,
        "results": {},
        "identities": [],
        "timings": {},
        "conventions": CONVENTIONS,
    }
    if seed is not None:
        rep["seed"] = seed
    return rep


def _identity(report: dict, name: str, holds, tolerance=None, **extra) -> None:
    row = {"name": name, "holds": bool(holds) if holds is not None else None}
    if tolerance is not None:
        row["tolerance"] = tolerance
    row.update(extra)
    report["identities"].append(row)


def _finish(report: dict, args) -> int:
    failed = [row["name"] for row in report["identities"] if row["holds"] is False]
    report["all_pass"] = not failed
    if failed:
        report["failed"] = failed
    out = json.dumps(report, indent=2, default=_jsonable)
    if getattr(args, "pretty", False):
        print(_pretty(report))
    else:
        print(out)
    return 0 if not failed else 1


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "__fspath__"):
        return os.fspath(obj)
    from fractions import Fraction

    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj)
        return {"numerator": obj.numerator, "denominator": obj.denominator}
    return str(obj)


def _pretty(report: dict) -> str:
    lines = [f"== {report['command']} =="]
    for key, value in report["inputs"].items():
        lines.append(f"  {key}: {value}")
    for key, value in report["results"].items():
        rendered = json.dumps(value, default=_jsonable) if isinstance(value, (dict, list)) else value
        lines.append(f"  {key} = {rendered}")
    if report["identities"]:
        lines.append("  checks:")
        for row in report["identities"]:
            mark = {True: "pass", False: "FAIL", None: "skip"}[row["holds"]]
            tol = f"  (tol {row['tolerance']})" if "tolerance" in row else ""
            lines.append(f"    [{mark}] {row['name']}{tol}")
    for key, value in report.get("timings", {}).items():
        lines.append(f"  {key}: {value:.2f}s")
    lines.append("  all_pass: %s" % report.get("all_pass"))
    return "\n".join(lines)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GL_SEED")
    return int(env) if env else 0


def _angles(args, mu: int) -> list[float]:
    if not args.alpha:
        raise GasslinError(f"--alpha is required here ({mu} angles, one per color)")
    alphas = [float(a) for a in args.alpha]
    if len(alphas) != mu:
        raise GasslinError(
            f"need {mu} angles (one per color), got {len(alphas)}"
        )
    return alphas


def _braid_arg(source: str) -> ColoredBraidWord:
    try:
        return load_braid(source)
    except FileNotFoundError as exc:
        raise GasslinError(str(exc)) from None


# ---------------------------------------------------------------- gassner


def cmd_gassner(args) -> int:
    b = _braid_arg(args.braid)
    rep = _report("gassner", {"braid": repr(b), "form": args.form, "route": args.route})
    t0 = time.perf_counter()
    if args.form == "reduced":
        mat = gsn.gassner_reduced(b, route=args.route)
    else:
        mat = gsn.gassner_unreduced(b, route=args.route)
    rep["results"]["matrix"] = mat.to_json()
    if args.route == "both":
        _identity(rep, "fox and block routes agree", True, tolerance="exact")
    if args.alpha:
        alphas = _angles(args, b.mu)
        z = TorusPoint.from_angles(alphas)
        values = mat.evaluate(z)
        rep["results"]["evaluated_at"] = list(z.omegas)
        rep["results"]["evaluation"] = [
            [values[i, j] for j in range(values.shape[1])]
            for i in range(values.shape[0])
        ]
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


def cmd_potential(args) -> int:
    b = _braid_arg(args.braid)
    rep = _report("potential", {"braid": repr(b)})
    t0 = time.perf_counter()
    pot = alx.potential(b)
    rep["results"]["potential"] = str(pot)
    rep["results"]["numerator"] = pot.numerator.to_json()
    rep["results"]["denominator"] = (
        pot.denominator.to_json() if pot.denominator is not None else None
    )
    rep["results"]["components"] = pot.n_components
    _identity(
        rep,
        "inverting all variables multiplies the potential by (-1)^components",
        alx.potential_symmetry_holds(pot),
        tolerance="exact",
    )
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


def cmd_alexander(args) -> int:
    b = _braid_arg(args.braid)
    rep = _report("alexander", {"braid": repr(b)})
    t0 = time.perf_counter()
    polys = alx.link_polynomials(b)
    rep["results"]["alexander"] = str(polys.alexander)
    rep["results"]["alexander_terms"] = polys.alexander.to_json()
    rep["results"]["potential"] = str(polys.potential)
    rep["results"]["components"] = polys.n_components
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


# --------------------------------------------------------------- signature


def cmd_signature(args) -> int:
    system = sig.load_system(args.system)
    alphas = _angles(args, system.mu)
    rep = _report(
        "signature",
        {"system": system.meta.get("name", args.system), "alphas": alphas},
    )
    t0 = time.perf_counter()
    z = TorusPoint.from_angles(alphas)
    point = sig.signature_nullity(system, z)
    rep["results"]["omega"] = list(point.omega)
    rep["results"]["signature"] = point.sigma
    rep["results"]["nullity"] = point.eta
    rep["results"]["eigenvalue_gap"] = point.gap
    rep["results"]["tau"] = point.tau
    rep["results"]["eigenvalues"] = list(point.eigenvalues)
    braid_meta = system.meta.get("braid")
    if braid_meta is not None:
        b = ColoredBraidWord(
            braid_meta["strands"], braid_meta["colors"], braid_meta["word"]
        )
        ok = sig.parity_check(system, b, z)
        _identity(
            rep,
            "signature parity congruence against the braid potential",
            ok,
            tolerance="mod 4, exact",
        )
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


# -------------------------------------------------------------- casson-lin


def cmd_casson_lin(args) -> int:
    b = _braid_arg(args.braid)
    alphas = _angles(args, b.mu)
    seed = _seed(args)
    rep = _report(
        "casson-lin",
        {"braid": repr(b), "alphas": alphas, "restarts": args.restarts},
        seed=seed,
    )
    t0 = time.perf_counter()
    result = cln.casson_lin(b, alphas, seed=seed, restarts=args.restarts)
    rep["results"]["h"] = result.h
    rep["results"]["classes"] = [
        {
            "sign": rec.sign,
            "residual": rec.residual,
            "condition": rec.cond,
            "margin": rec.rep_class.margin,
            "abelian_gap": rec.rep_class.abelian_gap,
            "traces": [2.0 * float(q[0]) for q in rec.rep_class.rep],
            "representative": rec.rep_class.rep.tolist(),
        }
        for rec in result.classes
    ]
    rep["results"]["diagnostics"] = result.diagnostics
    rep["results"]["residual_tolerance"] = cln.RESIDUAL_TOL
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


def cmd_crossing_delta(args) -> int:
    b = _braid_arg(args.braid)
    alphas = _angles(args, b.mu)
    seed = _seed(args)
    rep = _report(
        "crossing-delta", {"braid": repr(b), "alphas": alphas}, seed=seed
    )
    t0 = time.perf_counter()
    out = cln.crossing_delta(b, alphas, seed=seed, restarts=args.restarts)
    rep["results"].update(out)
    _identity(
        rep,
        "crossing change: negative potential ratios count the jump of h",
        out["match"],
        tolerance="exact integers",
    )
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


def cmd_verify_long(args) -> int:
    b = _braid_arg(args.braid)
    alphas = _angles(args, b.mu)
    rep = _report("verify-long", {"braid": repr(b), "alphas": alphas})
    t0 = time.perf_counter()
    if args.eps:
        eps_list = [tuple(int(e) for e in args.eps)]
        if len(eps_list[0]) != b.mu or any(e not in (1, -1) for e in eps_list[0]):
            raise GasslinError("--eps needs one +-1 entry per color")
    else:
        import itertools

        eps_list = list(itertools.product((1, -1), repeat=b.mu))
    worst = 0.0
    for eps in eps_list:
        out = cln.long_differential_check(b, alphas, eps)
        worst = max(worst, out["perm_rel_err"], out["gassner_rel_err"])
        _identity(
            rep,
            "linearization at the diagonal tuple splits as permutation (+) "
            "Gassner at omega_eps, eps=%s" % (list(eps),),
            out["pass"],
            tolerance=1e-6,
            perm_rel_err=out["perm_rel_err"],
            gassner_rel_err=out["gassner_rel_err"],
        )
    rep["results"]["worst_rel_err"] = worst
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


def cmd_theorem63(args) -> int:
    b = _braid_arg(args.braid)
    seed = _seed(args)
    rep = _report(
        "theorem63",
        {"braid": repr(b), "system": args.system, "points": args.points},
        seed=seed,
    )
    t0 = time.perf_counter()
    rng = random.Random(seed)
    if args.alpha:
        points = [tuple(_angles(args, b.mu))]
    else:
        points = []
        while len(points) < args.points:
            cand = tuple(rng.uniform(0.2, math.pi - 0.2) for _ in range(b.mu))
            if alx.casson_lin_defined(b, cand):
                points.append(cand)
    table = []
    if b.mu == 1:
        system = sig.load_system(args.system) if args.system else None
        if system is None or system.mu != 1:
            raise GasslinError("knot case needs a one-variable Seifert system")
        for alphas in points:
            res = cln.casson_lin(b, alphas, seed=seed, restarts=args.restarts)
            z = TorusPoint.from_angles(alphas)
            point = sig.signature_nullity(system, z)
            rhs = -point.sigma // 2 if point.sigma % 2 == 0 else None
            table.append(
                {"alphas": list(alphas), "h": res.h, "rhs": rhs, "equal": res.h == rhs}
            )
            _identity(
                rep,
                "knot count equals minus half the signature at alpha=%s"
                % (list(alphas),),
                res.h == rhs,
                tolerance="exact integers",
            )
    else:
        if b.mu != 2:
            raise GasslinError("the two-variable comparison needs exactly 2 colors")
        system = sig.load_system(args.system)
        for alphas in points:
            res = cln.casson_lin(b, alphas, seed=seed, restarts=args.restarts)
            z = TorusPoint.from_angles(alphas)
            rhs = sig.theorem63_rhs(system, z)
            from fractions import Fraction

            sigmas = []
            for flip1 in (False, True):
                for flip2 in (False, True):
                    w1 = z.omegas[0].conjugate() if flip1 else z.omegas[0]
                    w2 = z.omegas[1].conjugate() if flip2 else z.omegas[1]
                    sigmas.append(
                        sig.signature_nullity(system, TorusPoint([w1, w2])).sigma
                    )
            four = Fraction(-sum(sigmas), 4)
            row = {
                "alphas": list(alphas),
                "h": res.h,
                "two_term": rhs,
                "four_term": four,
                "equal": res.h == rhs and four == rhs,
            }
            table.append(row)
            _identity(
                rep,
                "count equals the averaged signature at alpha=%s" % (list(alphas),),
                row["equal"],
                tolerance="exact integers",
            )
    rep["results"]["table"] = table
    rep["timings"]["total"] = time.perf_counter() - t0
    return _finish(rep, args)


# ----------------------------------------------------------------- verify


def _corpus(rng: random.Random, count: int):
    out = []
    while len(out) < count:
        b = random_cc_braid(rng)
        out.append(b)
    return out


def _verify_gassner(rep, rng, budget, t_start, count=200):
    done = 0
    for b in _corpus(rng, count):
        suite = gsn.identity_suite(b)
        if not suite["all_pass"]:
            _identity(rep, "gassner identity battery on %r" % b, False, tolerance="exact")
            return
        mid = rng.randint(0, len(b.word))
        left = ColoredBraidWord(b.n, b.colors, b.word[:mid])
        right = ColoredBraidWord(b.n, left.top_colors, b.word[mid:])
        prod = gsn.gassner_unreduced(left, route="block") @ gsn.gassner_unreduced(
            right, route="block"
        )
        if prod != gsn.gassner_unreduced(b, route="block"):
            _identity(rep, "gassner multiplicativity on %r" % b, False, tolerance="exact")
            return
        done += 1
        if time.perf_counter() - t_start > budget:
            break
    _identity(
        rep,
        "gassner identity battery, multiplicativity, route agreement",
        True,
        tolerance="exact",
        braids_checked=done,
    )


def _verify_alexander(rep, rng, budget, t_start):
    hopf = load_braid("hopf")
    pot = alx.potential(hopf)
    _identity(
        rep,
        "Hopf potential is the constant +1",
        pot.is_polynomial and str(pot.numerator) == "1",
        tolerance="exact",
    )
    tre = load_braid("trefoil")
    delta = alx.alexander_poly(tre)
    from .laurent import LaurentPoly

    target = LaurentPoly(1, {(4,): 1, (2,): -1, (0,): 1})
    _identity(
        rep,
        "trefoil Alexander polynomial is t^2 - t + 1 up to units",
        delta.equal_up_to_units(target),
        tolerance="exact",
    )
    sym_ok = 0
    torres_ok = 0
    for b in _corpus(rng, 40):
        if not alx.potential_symmetry_holds(alx.potential(b)):
            _identity(rep, "potential symmetry on %r" % b, False, tolerance="exact")
            return
        sym_ok += 1
        if time.perf_counter() - t_start > budget:
            break
    _identity(
        rep, "potential symmetry under inverting variables", True,
        tolerance="exact", braids_checked=sym_ok,
    )
    while torres_ok < 20 and time.perf_counter() - t_start < budget:
        b = random_cc_braid(rng, max_colors=2)
        closure = b.closure()
        if closure.n_components != 2 or b.mu != 2:
            continue
        if not alx.torres_check(b)["abs_check"]:
            _identity(rep, "Torres evaluation on %r" % b, False, tolerance="exact")
            return
        torres_ok += 1
    _identity(
        rep,
        "Torres check |Delta(1,1)| = |lk| on two-component closures",
        True,
        tolerance="exact",
        closures_checked=torres_ok,
    )


def _verify_signature(rep, rng, budget, t_start):
    tre = sig.builtin_system("trefoil")
    z = TorusPoint([-1.0 + 0.0j])
    point = sig.signature_nullity(tre, z)
    _identity(
        rep,
        "trefoil signature at -1 is -2 with nullity 0",
        point.sigma == -2 and point.eta == 0,
        tolerance="exact",
    )
    b = load_braid("trefoil")
    _identity(
        rep,
        "parity congruence for the trefoil at -1",
        sig.parity_check(tre, b, z),
        tolerance="mod 4, exact",
    )
    clasp = sig.builtin_system("clasp_m1")
    cb = load_braid("clasp_m1")
    ok = True
    for _ in range(4):
        alphas = [rng.uniform(0.2, math.pi - 0.2) for _ in range(2)]
        zz = TorusPoint.from_angles(alphas)
        ok = ok and sig.parity_check(clasp, cb, zz)
    _identity(
        rep,
        "parity congruence for the clasp family at random points",
        ok,
        tolerance="mod 4, exact",
    )


def _verify_cassonlin(rep, rng, budget, t_start, seed):
    hopf = load_braid("hopf")
    ok = True
    for _ in range(3):
        alphas = [rng.uniform(0.2, math.pi - 0.2) for _ in range(2)]
        if not alx.casson_lin_defined(hopf, alphas):
            continue
        res = cln.casson_lin(hopf, alphas, seed=seed, restarts=40)
        ok = ok and res.h == 0 and not res.classes
    _identity(rep, "Hopf link count vanishes", ok, tolerance="exact")
    res = cln.casson_lin(load_braid("trefoil"), [math.pi / 2], seed=seed, restarts=60)
    _identity(
        rep,
        "trefoil at pi/2: one class of sign +1",
        res.h == 1 and len(res.classes) == 1,
        tolerance="exact",
    )
    worst = 0.0
    checked = 0
    while checked < 25 and time.perf_counter() - t_start < budget:
        b = random_cc_braid(rng)
        if not b.word:
            continue
        alphas = [rng.uniform(0.2, math.pi - 0.2) for _ in range(b.mu)]
        eps = tuple(rng.choice((1, -1)) for _ in range(b.mu))
        out = cln.long_differential_check(b, alphas, eps)
        worst = max(worst, out["perm_rel_err"], out["gassner_rel_err"])
        checked += 1
        if not out["pass"]:
            _identity(rep, "linearization check on %r" % b, False, tolerance=1e-6)
            return
    _identity(
        rep,
        "linearization splits as permutation (+) Gassner on random braids",
        True,
        tolerance=1e-6,
        braids_checked=checked,
        worst_rel_err=worst,
    )


def cmd_verify(args) -> int:
    seed = _seed(args)
    rep = _report(
        "verify", {"scope": args.scope, "budget_seconds": args.budget}, seed=seed
    )
    rng = random.Random(seed)
    t_start = time.perf_counter()
    scopes = (
        ("gassner", "alexander", "signature", "cassonlin")
        if args.scope == "all"
        else (args.scope,)
    )
    for scope in scopes:
        t0 = time.perf_counter()
        if scope == "gassner":
            _verify_gassner(rep, rng, args.budget, t_start)
        elif scope == "alexander":
            _verify_alexander(rep, rng, args.budget, t_start)
        elif scope == "signature":
            _verify_signature(rep, rng, args.budget, t_start)
        elif scope == "cassonlin":
            _verify_cassonlin(rep, rng, args.budget, t_start, seed)
        rep["timings"][scope] = time.perf_counter() - t0
    rep["timings"]["total"] = time.perf_counter() - t_start
    rep["results"]["backend"] = kernels.BACKEND
    return _finish(rep, args)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gasslin",
        description="Colored Gassner matrices, Alexander polynomials, link "
        "signatures, and SU(2) fixed-point counts of braid closures.",
        epilog="Shipped braids: %s.  A braid argument is a file path or one "
        "of these names." % ", ".join(shipped_braid_names()),
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, alphas=False, seeded=False, restarts=False):
        sp.add_argument("--pretty", action="store_true", help="human readable output")
        if alphas:
            sp.add_argument(
                "--alpha", nargs="+", default=None, metavar="A",
                help="angles in (0, pi), one per color",
            )
        if seeded:
            sp.add_argument("--seed", type=int, default=None)
        if restarts:
            sp.add_argument("--restarts", type=int, default=cln.DEFAULT_RESTARTS)

    sp = sub.add_parser("gassner", help="colored Gassner matrix of a braid")
    sp.add_argument("braid")
    sp.add_argument("--form", choices=("unreduced", "reduced"), default="unreduced")
    sp.add_argument("--route", choices=("both", "fox", "block"), default="both")
    common(sp, alphas=True)
    sp.set_defaults(func=cmd_gassner)

    sp = sub.add_parser("potential", help="potential function of the closure")
    sp.add_argument("braid")
    common(sp)
    sp.set_defaults(func=cmd_potential)

    sp = sub.add_parser("alexander", help="multivariable Alexander polynomial")
    sp.add_argument("braid")
    common(sp)
    sp.set_defaults(func=cmd_alexander)

    sp = sub.add_parser("signature", help="signature and nullity at a torus point")
    sp.add_argument("system", help="Seifert system JSON path or builtin name")
    common(sp, alphas=True)
    sp.set_defaults(func=cmd_signature)

    sp = sub.add_parser("casson-lin", help="signed count of irreducible fixed classes")
    sp.add_argument("braid")
    common(sp, alphas=True, seeded=True, restarts=True)
    sp.set_defaults(func=cmd_casson_lin)

    sp = sub.add_parser("crossing-delta", help="crossing change jump, predicted vs observed")
    sp.add_argument("braid")
    common(sp, alphas=True, seeded=True, restarts=True)
    sp.set_defaults(func=cmd_crossing_delta)

    sp = sub.add_parser("verify-long", help="linearization vs Gassner at the diagonal tuple")
    sp.add_argument("braid")
    sp.add_argument("--eps", nargs="+", default=None, help="sign vector, default all")
    common(sp, alphas=True)
    sp.set_defaults(func=cmd_verify_long)

    sp = sub.add_parser("theorem63", help="count vs averaged signature on a family")
    sp.add_argument("braid")
    sp.add_argument("system", nargs="?", default=None)
    sp.add_argument("--points", type=int, default=5)
    common(sp, alphas=True, seeded=True, restarts=True)
    sp.set_defaults(func=cmd_theorem63)

    sp = sub.add_parser("verify", help="randomized identity suites")
    sp.add_argument(
        "--scope",
        choices=("all", "gassner", "alexander", "signature", "cassonlin"),
        default="all",
    )
    sp.add_argument("--budget", type=float, default=300.0, help="seconds")
    common(sp, seeded=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GasslinError, FileNotFoundError, ValueError, KeyError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
