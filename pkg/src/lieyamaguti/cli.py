"""Command-line interface.

Every command prints line-delimited JSON records on stdout, one per check,
and a short human summary on stderr. Exit codes: 0 when every
non-informational check passes, 1 when one fails, 2 for an unknown command
or bad flags, 3 for a malformed input file, 4 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import corpus, exact
from . import io as lio
from .cohom import DEGREE_CAP, DIM_CAP, check_deformation_generator, cohomology_dim, verify_cocycle_theorem
from .compat import (DEFAULT_SAMPLES, CompatibleLy, check_compat_derivation, check_compat_representation,
                     check_compatible, check_linear_combinations, compat_derivation_space, compat_semidirect,
                     inner_derivation)
from .errors import AxiomFailure, DimensionMismatch, FormatError, MalformedInput, ResourceCapExceeded
from .lya import LinearMap, LyAlgebra, check_derivation, check_lya, derivation_space
from .rb import (CONVENTIONS, DEFAULT_CONVENTION, SEARCH_CAP, CompatPreLy, PreLy, check_compat_pre_lya,
                 check_mixed_d_identities, check_pre_lya, check_rb, check_rb_compatible, induce_pre_lya, search_rb,
                 subadjacent)
from .rep import check_representation, semidirect
from .report import DEFAULT_MAX_WITNESSES, CheckReport

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_MALFORMED, EXIT_CAP = 0, 1, 2, 3, 4
INNER_WEIGHTS = ((1, 0), (0, 1), (1, 1))

STATEMENTS = {
    "LY1": "[[x,y],z] + [[y,z],x] + [[z,x],y] + [x,y,z] + [y,z,x] + [z,x,y] = 0",
    "LY2": "[[x,y],z,w] + [[y,z],x,w] + [[z,x],y,w] = 0",
    "LY3": "[x,y,[z,w]] = [[x,y,z],w] + [z,[x,y,w]]",
    "LY4": "[x,y,[z,w,t]] = [[x,y,z],w,t] + [z,[x,y,w],t] + [z,w,[x,y,t]]",
    "CY1": "cross terms of LY1: [[x,y]_1,z]_2 + [[x,y]_2,z]_1 + c.p. = 0",
    "CY2": "cross terms of LY2: [[x,y]_1,z,w]_2 + [[x,y]_2,z,w]_1 + c.p.(x,y,z) = 0",
    "CY3": "cross terms of LY4 between the two ternary brackets",
    "CY4": "cross terms of LY3: ternary of one structure against the bracket of the other, summed",
    "X5-one-sided-derivation": "[x,y,[z,w]_i]_j = [[x,y,z]_j,w]_i + [z,[x,y,w]_j]_i for i != j (informational)",
    "REP1": "mu([x,y],z) = mu(x,z)rho(y) - mu(y,z)rho(x)",
    "REP2": "mu(x,[y,z]) = rho(y)mu(x,z) - rho(z)mu(x,y)",
    "REP3": "rho([x,y,z]) = [D(x,y), rho(z)]",
    "REP4": "mu(z,w)mu(x,y) - mu(y,w)mu(x,z) - mu(x,[y,z,w]) + D(y,z)mu(x,w) = 0",
    "REP5": "mu([x,y,z],w) + mu(z,[x,y,w]) = [D(x,y), mu(z,w)]",
    "CREP1": "cross terms of REP1 between the two representations",
    "CREP2": "cross terms of REP2 between the two representations",
    "CREP3": "cross terms of REP3 between the two representations",
    "CREP4": "cross terms of REP4 between the two representations",
    "CREP5": "cross terms of REP5 between the two representations",
    "CREP6": "rho_1([x,y]_2) + rho_2([x,y]_1) = [rho_1(x),rho_2(y)] + [rho_2(x),rho_1(y)]",
    "D=D1+D2": "D of the summed representation equals D_1 + D_2",
    "RB-bilinear": "[Rx,Ry] = R([Rx,y] + [x,Ry])",
    "RB-trilinear-sec6": "[Rx,Ry,Rz] = R([Rx,Ry,z] + [Rx,y,Rz] + [x,Ry,Rz])",
    "RB-trilinear-sec2": "[Rx,Ry,Rz] = R([Rx,Ry,z] + [Ry,Rz,x] - [Rx,Rz,y])",
    "PLY1": "{z,[x,y]_C,w} - {y*z,x,w} + {x*z,y,w} = 0",
    "PLY2": "{x,y,[z,w]_C} = z*{x,y,w} - w*{x,y,z}",
    "PLY3": "{{x,y,z},w,t} - {{x,y,w},z,t} - {x,y,{z,w,t}_D} - {x,y,{z,w,t}} + {x,y,{w,z,t}} + {z,w,{x,y,t}}_D = 0",
    "PLY4": "{z,{x,y,w}_D,t} + {z,{x,y,w},t} - {z,{y,x,w},t} + {z,w,{x,y,t}_D} + {z,w,{x,y,t}} "
            "- {z,w,{y,x,t}} = {x,y,{z,w,t}}_D - {{x,y,z}_D,w,t}",
    "PLY5": "{x,y,z}_D*w + {x,y,z}*w - {y,x,z}*w = {x,y,z*w}_D - z*{x,y,w}_D",
    "CPLY1": "PLY1 with the star of one structure and the triple of the other, summed over i != j",
    "CPLY2": "{x,y,[z,w]_2C}_1 + {x,y,[z,w]_1C}_2 = z*_1{x,y,w}_2 + z*_2{x,y,w}_1 - w*_1{x,y,z}_2 - w*_2{x,y,z}_1",
    "CPLY3": "PLY3 with inner operations from structure i and outer from j, summed over i != j",
    "CPLY4": "PLY4 with inner operations from structure i and outer from j, summed over i != j",
    "CPLY5": "PLY5 with inner operations from structure i and outer from j, summed over i != j",
    "MIXD-i": "{[x,y]_iC,z,t}_jD + c.p.(x,y,z) = 0 (implied identity, informational)",
    "MIXD-ii": "mixed D-identity for the ordered pair (i,j) (implied identity, informational)",
    "DER-bilinear": "d[x,y] = [dx,y] + [x,dy]",
    "DER-trilinear": "d[x,y,z] = [dx,y,z] + [x,dy,z] + [x,y,dz]",
    "RBREP-rho": "rho(Rx)T = T(rho(Rx) + rho(x)T)",
    "RBREP-mu": "mu(Rx,Ry)T = T(mu(Rx,Ry) + mu(Rx,y)T + mu(x,Ry)T)",
    "t^1": "order-t part of the MC equations of the deformed pair (the cocycle condition)",
    "t^2": "order-t^2 part of the MC equations of the deformed pair",
}


def statement_for(check_id: str) -> str:
    base = check_id.split("[")[0].split(" ")[0]
    return STATEMENTS.get(base, STATEMENTS.get(check_id, ""))


# --- output ------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, exact.Fraction):
        return exact.render_rational(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return x


class Emitter:
    """Serializes records through one writer and tracks the overall verdict."""

    def __init__(self, command: str, out, max_witnesses: int):
        self.command = command
        self.out = out
        self.max_witnesses = max_witnesses
        self.records: list[dict] = []
        self.failed = False

    def _emit(self, rec: dict) -> None:
        self.records.append(rec)
        self.out.write(json.dumps(_jsonable(rec), ensure_ascii=False) + "\n")

    def report(self, rep: CheckReport, ms: float, **extra) -> None:
        status = "pass" if rep.ok else "fail"
        if not rep.ok and not rep.informational:
            self.failed = True
        rec = {"command": self.command, "check": rep.axiom_id, "statement": statement_for(rep.axiom_id),
               "status": status, "informational": rep.informational, "total": rep.total,
               "witnesses": [{"indices": list(idx), "residual": list(res)} for idx, res in rep.witnesses]}
        if rep.note:
            rec["note"] = rep.note
        rec.update(extra)
        rec["timing_ms"] = round(ms, 3)
        self._emit(rec)

    def reports(self, fn, *args, **extra) -> list[CheckReport]:
        t0 = time.perf_counter()
        reps = fn(*args)
        ms = (time.perf_counter() - t0) * 1000
        for r in reps:
            self.report(r, ms, **extra)
        return reps

    def record(self, check: str, status: str, ms: float = 0.0, statement: str = "", **fields) -> None:
        if status == "fail":
            self.failed = True
        rec = {"command": self.command, "check": check, "statement": statement or statement_for(check),
               "status": status, "witnesses": fields.pop("witnesses", [])}
        rec.update(fields)
        rec["timing_ms"] = round(ms, 3)
        self._emit(rec)


def _summary(em: Emitter, target: str) -> str:
    checks = [r for r in em.records if "status" in r]
    bad = [r["check"] for r in checks if r["status"] == "fail" and not r.get("informational")]
    info = [r["check"] for r in checks if r["status"] == "fail" and r.get("informational")]
    vac = [r["check"] for r in checks if r["status"] == "vacuous"]
    verdict = "FAIL" if em.failed else "PASS"
    line = f"{em.command} {target}: {verdict} ({len(checks)} records"
    if bad:
        line += f"; failing: {', '.join(bad)}"
    if vac:
        line += f"; vacuous: {', '.join(vac)}"
    if info:
        line += f"; informational failures: {', '.join(info)}"
    return line + ")"


# --- helpers -------------------------------------------------------------------

def _path(arg: str) -> str:
    return corpus.resolve(arg)


def _algebra_or_pair(path: str):
    kind = lio.detect_kind(path)
    if kind == "algebra":
        return lio.read_algebra(path)
    if kind == "compatible":
        return lio.read_compatible(path)
    raise FormatError(f"{path}: expected an algebra or a compatible pair, found {kind}")


def _parse_entries(text: str) -> list:
    try:
        return [exact.parse_rational(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"bad --entries value: {e}") from None


def _parse_samples(text: str) -> list[tuple]:
    out = []
    try:
        for chunk in text.split(";"):
            if chunk.strip():
                k1, k2 = chunk.split(",")
                out.append((exact.parse_rational(k1.strip()), exact.parse_rational(k2.strip())))
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"bad --samples value {text!r}: {e}") from None
    return out


def _write_result(obj: dict, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(lio.dumps(obj))


# --- commands ------------------------------------------------------------------

def cmd_check(args, em: Emitter) -> None:
    mw = em.max_witnesses
    what = args.what
    if what == "lya":
        em.reports(check_lya, lio.read_algebra(_path(args.file)), mw)
    elif what == "compatible":
        em.reports(check_compatible, lio.read_compatible(_path(args.file)), mw)
    elif what == "rep":
        path = _path(args.file)
        kind = lio.detect_kind(path)
        if kind == "rep":
            a, r = lio.read_representation(path)
            em.reports(check_representation, a, r, mw)
        elif kind == "compat-rep":
            c, r = lio.read_compat_representation(path)
            em.reports(check_compat_representation, c, r, mw)
        else:
            raise FormatError(f"{path}: expected a representation file, found {kind}")
    elif what == "pre-lya":
        p = lio.read_pre_lya(_path(args.file))
        if not isinstance(p, PreLy):
            raise FormatError(f"{args.file}: holds a pair; use 'check compat-pre-lya'")
        em.reports(check_pre_lya, p, mw)
    elif what == "compat-pre-lya":
        p = lio.read_pre_lya(_path(args.file))
        if not isinstance(p, CompatPreLy):
            raise FormatError(f"{args.file}: holds a single structure; use 'check pre-lya'")
        em.reports(check_compat_pre_lya, p, mw)
        em.reports(lambda q, m: _informational(check_mixed_d_identities(q, m)), p, mw)
    elif what == "rb":
        if args.matrix is None:
            raise FormatError("check rb needs <algebra> <matrix>")
        a = _algebra_or_pair(_path(args.file))
        R = lio.read_matrix(_path(args.matrix))
        fn = check_rb_compatible if isinstance(a, CompatibleLy) else check_rb
        em.reports(fn, a, R, args.convention, mw)


def _informational(reports: list[CheckReport]) -> list[CheckReport]:
    for r in reports:
        r.informational = True
    return reports


def cmd_semidirect(args, em: Emitter) -> None:
    path = _path(args.file)
    kind = lio.detect_kind(path)
    t0 = time.perf_counter()
    if kind == "rep":
        a, r = lio.read_representation(path)
        result = semidirect(a, r)
        obj = lio.algebra_obj(result)
        em.record("semidirect", "pass", (time.perf_counter() - t0) * 1000, "L x V with the given action",
                  result=obj)
        em.reports(check_lya, result, em.max_witnesses)
    elif kind == "compat-rep":
        c, r = lio.read_compat_representation(path)
        result = compat_semidirect(c, r)
        obj = lio.compatible_obj(result)
        em.record("semidirect", "pass", (time.perf_counter() - t0) * 1000, "L x V with the given actions",
                  result=obj)
        em.reports(check_compatible, result, em.max_witnesses)
    else:
        raise FormatError(f"{path}: expected a representation file, found {kind}")
    _write_result(obj, args.output)


def cmd_subadjacent(args, em: Emitter) -> None:
    p = lio.read_pre_lya(_path(args.file))
    t0 = time.perf_counter()
    result = subadjacent(p)
    obj = lio.to_obj(result)
    em.record("subadjacent", "pass", (time.perf_counter() - t0) * 1000,
              "[x,y] = x*y - y*x, [x,y,z] = {x,y,z}_D + {x,y,z} - {y,x,z}", result=obj)
    if isinstance(result, CompatibleLy):
        em.reports(check_compatible, result, em.max_witnesses)
    else:
        em.reports(check_lya, result, em.max_witnesses)
    _write_result(obj, args.output)


def cmd_induce(args, em: Emitter) -> None:
    a = _algebra_or_pair(_path(args.file))
    R = lio.read_matrix(_path(args.matrix))
    mw = em.max_witnesses
    fn = check_rb_compatible if isinstance(a, CompatibleLy) else check_rb
    em.reports(fn, a, R, args.convention, mw)
    t0 = time.perf_counter()
    p = induce_pre_lya(a, R, args.convention)
    obj = lio.pre_lya_obj(p)
    em.record("induce-pre-lya", "pass", (time.perf_counter() - t0) * 1000,
              "x*y = [Rx,y] with the ternary operation of the chosen convention", result=obj,
              convention=args.convention)
    if isinstance(p, CompatPreLy):
        em.reports(check_compat_pre_lya, p, mw)
    else:
        em.reports(check_pre_lya, p, mw)
    _write_result(obj, args.output)


def cmd_linear_combination(args, em: Emitter) -> None:
    c = lio.read_compatible(_path(args.file))
    samples = args.samples if args.samples is not None else list(DEFAULT_SAMPLES)
    t0 = time.perf_counter()
    results = check_linear_combinations(c, samples, em.max_witnesses)
    ms = (time.perf_counter() - t0) * 1000 / max(1, len(results))
    for (k1, k2), reps in results:
        for r in reps:
            em.report(r, ms, sample=[k1, k2])


def cmd_cohomology(args, em: Emitter) -> None:
    c = lio.read_compatible(_path(args.file))
    pre = check_compatible(c, em.max_witnesses, informational=False)
    valid = all(r.ok for r in pre)
    for r in pre:
        if not r.ok:
            em.report(r, 0.0, role="precondition")
    res = cohomology_dim(c, args.degree, args.degree_cap, args.dim_cap, validate=False)
    rank_nullity = res.kernel + res.rank == res.level_dim
    if not valid:
        status = "vacuous"
    else:
        status = "pass" if res.image_in_kernel and rank_nullity else "fail"
    em.record("cohomology", status, res.timing_ms,
              "H^n = ker(d_n) / im(d_(n-1)) for the compatible complex",
              n=res.n, kernel=res.kernel, image=res.image, h=res.h, level_dim=res.level_dim,
              rank=res.rank, rank_nullity=rank_nullity, image_in_kernel=res.image_in_kernel)


def cmd_deform_verify(args, em: Emitter) -> None:
    c = lio.read_compatible(_path(args.file))
    g = lio.read_generator(_path(args.generator))
    if g.mu1.dim != c.dim:
        raise DimensionMismatch("generator and algebra dimensions differ")
    em.reports(check_deformation_generator, c, g, em.max_witnesses)
    gen_pair = CompatibleLy(c.dim, g.mu1, g.lambda1, g.mu2, g.lambda2)
    em.reports(lambda x, m: _informational([_retag(r, "generator ") for r in check_compatible(x, m)]),
               gen_pair, em.max_witnesses)
    t0 = time.perf_counter()
    outcome = verify_cocycle_theorem(c, g)
    ms = (time.perf_counter() - t0) * 1000
    deformed_ok = {str(t): all(r.ok for r in rs) for t, rs in outcome.deformation_reports}
    note = {"pass": "deformed pair compatible at t = 1, 2, 3 and the generator is a cocycle",
            "fail": "deformed pair compatible at t = 1, 2, 3 but the generator is not a cocycle",
            "vacuous": "hypothesis fails: some deformed pair is not compatible"}[outcome.status]
    em.record("cocycle-theorem", outcome.status, ms,
              "if (pi_i + t mu_i, omega_i + t lambda_i) is compatible for all t, the generator is a cocycle",
              cocycle=all(x.is_zero() for x in outcome.cocycle), deformed_compatible=deformed_ok, note=note)


def _retag(r: CheckReport, prefix: str) -> CheckReport:
    r.axiom_id = prefix + r.axiom_id
    return r


def cmd_derivations(args, em: Emitter) -> None:
    a = _algebra_or_pair(_path(args.file))
    t0 = time.perf_counter()
    basis = compat_derivation_space(a) if isinstance(a, CompatibleLy) else derivation_space(a)
    em.record("derivations", "pass", (time.perf_counter() - t0) * 1000,
              "linear maps satisfying the Leibniz rule for every bracket",
              dimension=len(basis), basis=[lio.matrix_obj(d)["entries"] for d in basis])
    if not args.inner:
        return
    mw = em.max_witnesses
    for x in range(a.dim):
        for y in range(a.dim):
            if isinstance(a, LyAlgebra):
                T = LinearMap(a.dim, a.dim, exact.Matrix(a.omega.c[x, y].T))
                em.reports(check_derivation, a, T, mw, pair_ab=[x, y])
                continue
            for w in INNER_WEIGHTS:
                T = inner_derivation(a, x, y, *w)
                # derivation of each component, then of the combined structure with the same weights
                em.reports(check_compat_derivation, a, T, None, mw, pair_ab=[x, y], weights=list(w))
                em.reports(check_compat_derivation, a, T, w, mw, pair_ab=[x, y], weights=list(w))


def cmd_search_rb(args, em: Emitter) -> None:
    a = _algebra_or_pair(_path(args.file))
    t0 = time.perf_counter()
    sols = search_rb(a, args.entries, args.convention, args.max_candidates)
    ms = (time.perf_counter() - t0) * 1000
    em.record("search-rb", "pass", ms, statement_for(f"RB-trilinear-{args.convention}"),
              convention=args.convention, entries=list(args.entries), count=len(sols),
              solutions=[lio.matrix_obj(r)["entries"] for r in sols])


def cmd_corpus(args, em: Emitter) -> None:
    for e in corpus.index():
        em.record("corpus-entry", "pass", 0.0, e.get("description", ""), file=e["file"], kind=e["kind"],
                  declared_check=e["check"], expect=e["expect"])


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-witnesses", type=int, default=DEFAULT_MAX_WITNESSES,
                        help=f"witness tuples kept per check (default {DEFAULT_MAX_WITNESSES})")
    conv = argparse.ArgumentParser(add_help=False)
    conv.add_argument("--convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION,
                      help="ternary Rota-Baxter identity: sec6 = R([Rx,Ry,z]+[Rx,y,Rz]+[x,Ry,Rz]), "
                           "sec2 = R([Rx,Ry,z]+[Ry,Rz,x]-[Rx,Rz,y]) (default sec6)")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="also write the constructed structure to this file")

    p = argparse.ArgumentParser(prog="lieyamaguti", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    c = sub.add_parser("check", parents=[common, conv], help="check the axioms of a structure in a file")
    c.add_argument("what", choices=["lya", "compatible", "rep", "pre-lya", "compat-pre-lya", "rb"])
    c.add_argument("file")
    c.add_argument("matrix", nargs="?", help="operator matrix (check rb only)")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("semidirect", parents=[common, out], help="semidirect product from a representation file")
    s.add_argument("file")
    s.set_defaults(func=cmd_semidirect)

    s = sub.add_parser("subadjacent", parents=[common, out], help="sub-adjacent algebra of a pre-LY structure")
    s.add_argument("file")
    s.set_defaults(func=cmd_subadjacent)

    s = sub.add_parser("induce-pre-lya", parents=[common, conv, out],
                       help="pre-LY structure induced by a Rota-Baxter operator")
    s.add_argument("file")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("linear-combination", parents=[common], help="check k1*first + k2*second")
    s.add_argument("file")
    s.add_argument("--samples", type=_parse_samples, default=None,
                   help="weight pairs 'k1,k2;k1,k2;...' (default 1,1;1,-1;2,3;1,0;0,1)")
    s.set_defaults(func=cmd_linear_combination)

    s = sub.add_parser("cohomology", parents=[common], help="cohomology dimension of the compatible complex")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--dim-cap", type=int, default=DIM_CAP, help=f"largest algebra dimension (default {DIM_CAP})")
    s.add_argument("--degree-cap", type=int, default=DEGREE_CAP, help=f"largest level (default {DEGREE_CAP})")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("deform-verify", parents=[common], help="check an infinitesimal deformation generator")
    s.add_argument("file")
    s.add_argument("generator")
    s.set_defaults(func=cmd_deform_verify)

    s = sub.add_parser("derivations", parents=[common], help="basis of the derivation space")
    s.add_argument("file")
    s.add_argument("--inner", action="store_true",
                   help="also check the inner maps z -> k1[a,b,z]_1 + k2[a,b,z]_2 for all basis pairs")
    s.set_defaults(func=cmd_derivations)

    s = sub.add_parser("search-rb", parents=[common, conv], help="enumerate Rota-Baxter operators on a grid")
    s.add_argument("file")
    s.add_argument("--entries", type=_parse_entries, default=_parse_entries("-1,0,1"),
                   help="allowed matrix entries (default -1,0,1)")
    s.add_argument("--max-candidates", type=int, default=SEARCH_CAP,
                   help=f"grid size cap (default {SEARCH_CAP})")
    s.set_defaults(func=cmd_search_rb)

    s = sub.add_parser("corpus", parents=[common], help="bundled example files")
    s.add_argument("action", choices=["list"])
    s.set_defaults(func=cmd_corpus)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # '--entries -1,0,1' would otherwise be read as a flag
    argv = [f"--entries={argv[i + 1]}" if a == "--entries" and i + 1 < len(argv) else a
            for i, a in enumerate(argv) if not (i > 0 and argv[i - 1] == "--entries")]
    old_out, old_err = sys.stdout, sys.stderr
    try:
        sys.stdout, sys.stderr = out, err
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    finally:
        sys.stdout, sys.stderr = old_out, old_err

    name = args.command if args.command != "check" else f"check {args.what}"
    em = Emitter(name, out, args.max_witnesses)
    target = getattr(args, "file", "") or ""
    try:
        args.func(args, em)
    except FormatError as e:
        print(f"{name}: malformed input: {e}", file=err)
        return EXIT_MALFORMED
    except (MalformedInput, DimensionMismatch) as e:
        print(f"{name}: malformed input: {e}", file=err)
        return EXIT_MALFORMED
    except ResourceCapExceeded as e:
        print(f"{name}: resource cap exceeded: {e}", file=err)
        return EXIT_CAP
    except AxiomFailure as e:
        for r in e.reports:
            em.report(r, 0.0, role="precondition")
        em.failed = True
        print(f"{name}: {e}", file=err)
        print(_summary(em, target), file=err)
        return EXIT_FAIL
    out.flush()
    print(_summary(em, target), file=err)
    return EXIT_FAIL if em.failed else EXIT_PASS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
