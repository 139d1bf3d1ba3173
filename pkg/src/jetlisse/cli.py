"""Command-line front end: ``jetlisse <verb> [file] [options]``.

Verbs and per-verb defaults:

* ``jet``        order 1
* ``lisse``      order 2 (jet diagnostics 0..order), max-weight 6
* ``vpa-check``  samples 200, seed 0, max-weight 4, modes up to 3
* ``virasoro``   cutoff 6, kind vacuum
* ``affine``     power 1, max-weight 4

Exit status: 0 success, 1 negative verdict of a check, 2 input error.
Options given on the command line override the ``[options]`` section.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .arith import ORDER_TAGS, MonomialOrder, Polynomial, VarId, format_scalar
from .diffalg import jet_ideal
from .groebner import buchberger, krull_dimension
from .inputfile import InputError, JobInput, parse_job
from .models.affine import (LieAlgebraError, graded_dims_jet_vs_pbw, integrable_closure_check,
                            kirillov_kostant)
from .models.lisse import lisse_verdict
from .models.virasoro import VirasoroModule, VirasoroParams, format_state
from .report import Report, digest, emit
from .vpa import JacobiViolation, NonTermination, VpaContext, check_vpa_axioms, validate_poisson

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2
MAX_JET_ORDER = 12

DEFAULTS: dict[str, dict[str, Any]] = {
    "jet": {"order": 1, "monomial-order": "weighted-degrevlex"},
    "lisse": {"order": 2, "max-weight": 6, "monomial-order": "weighted-degrevlex"},
    "vpa-check": {"samples": 200, "seed": 0, "max-weight": 4, "max-mode": 3},
    "virasoro": {"cutoff": 6, "kind": "vacuum", "h": "0"},
    "affine": {"power": 1, "max-weight": 4},
}

INT_OPTIONS = {"order", "cutoff", "samples", "seed", "max-weight", "power", "max-mode"}


def _polys(ps: Sequence[Polynomial]) -> list[str]:
    return [str(p) for p in ps]


def _opt(job: JobInput, cli: dict[str, Any], command: str) -> dict[str, Any]:
    opts = dict(DEFAULTS[command])
    layered = {}
    if command == "virasoro":
        layered.update({("central-charge" if k == "c" else k): v for k, v in job.virasoro.items()})
    layered.update(job.options)
    for key, val in layered.items():
        if key in INT_OPTIONS:
            try:
                val = int(val)
            except ValueError:
                raise InputError(f"option {key} must be an integer", source=job.source) from None
        opts[key] = val
    for key, val in cli.items():
        if val is not None:
            opts[key] = val
    for key in INT_OPTIONS & opts.keys():
        if not isinstance(opts[key], int):
            raise InputError(f"option {key} must be an integer", source=job.source)
        if opts[key] < 0:
            raise InputError(f"option {key} must be >= 0", source=job.source)
    return opts


def _need(job: JobInput, what: str, section: str) -> Any:
    val = getattr(job, what)
    if val is None:
        raise InputError(f"this command needs a [{section}] section", source=job.source)
    return val


def _monomial_order(opts: dict[str, Any], job: JobInput) -> MonomialOrder:
    tag = opts.get("monomial-order", "weighted-degrevlex")
    if tag not in ORDER_TAGS:
        raise InputError(f"unknown monomial order {tag!r}", source=job.source)
    return MonomialOrder(tag)


def cmd_jet(job: JobInput, opts: dict[str, Any]) -> tuple[Report, int]:
    pres = _need(job, "presentation", "presentation")
    m = opts["order"]
    if m > MAX_JET_ORDER:
        raise InputError(f"unsupported jet order {m} (at most {MAX_JET_ORDER})", source=job.source)
    order = _monomial_order(opts, job)
    ji = jet_ideal(pres, m)
    gb = ji.groebner(order)
    results = {
        "jet_order": m,
        "ring_variables": [str(v) for v in ji.variables],
        "generators": _polys(ji.generators),
        "groebner_basis": _polys(gb.basis),
        "dimension": krull_dimension(gb).as_dict(),
    }
    if pres.names:
        results["generator_names"] = {n: f"x{j}_1" for j, n in enumerate(pres.names, start=1)}
    caveats = [f"jet scheme truncated at order {m} (levels 1..{m + 1})"]
    return _report("jet", job, opts, results, caveats), EXIT_OK


def cmd_lisse(job: JobInput, opts: dict[str, Any]) -> tuple[Report, int]:
    pres = _need(job, "presentation", "presentation")
    order = _monomial_order(opts, job)
    gb = buchberger(pres.relations, order,
                    variables=[VarId(j, 1) for j in range(1, pres.num_generators + 1)])
    rep = lisse_verdict(gb, pres.num_generators, jet_order=opts["order"],
                        max_weight=opts["max-weight"])
    results = rep.as_dict()
    results["groebner_basis"] = _polys(gb.basis)
    caveats = [f"jet diagnostics for orders 0..{opts['order']}",
               f"arc-space windows truncated at weight {opts['max-weight']}"] + rep.caveats
    return _report("lisse", job, opts, results, caveats), EXIT_OK if rep.lisse else EXIT_NEGATIVE


def cmd_vpa_check(job: JobInput, opts: dict[str, Any]) -> tuple[Report, int]:
    if job.brackets is not None:
        ps, source = job.brackets, "brackets"
    elif job.lie_algebra is not None:
        ps, source = kirillov_kostant(job.lie_algebra), "lie_algebra"
    else:
        raise InputError("this command needs a [brackets] or [lie_algebra] section",
                         source=job.source)
    caveats = [f"{opts['samples']} seeded samples (seed {opts['seed']}), weight <= "
               f"{opts['max-weight']}, modes <= {opts['max-mode']}"]
    results: dict[str, Any] = {"bracket_source": source, "num_generators": ps.r}
    try:
        validate_poisson(ps)
        results["jacobi"] = {"holds": True}
    except JacobiViolation as exc:
        results["jacobi"] = {"holds": False, "triple": [f"x{i}_1" for i in exc.triple],
                             "residual": str(exc.residual)}
    ctx = VpaContext(ps, strict=False)
    ax = check_vpa_axioms(ctx, samples=opts["samples"], seed=opts["seed"],
                          max_weight=opts["max-weight"], max_mode=opts["max-mode"])
    results["axioms"] = ax.as_dict()
    ok = ax.passed and results["jacobi"]["holds"]
    results["verdict"] = "pass" if ok else "fail"
    return _report("vpa-check", job, opts, results, caveats), EXIT_OK if ok else EXIT_NEGATIVE


_MINIMAL = re.compile(r"^\s*minimal\s+(-?\d+)\s+(-?\d+)\s*$")


def _virasoro_params(text: str, job: JobInput) -> VirasoroParams:
    mt = _MINIMAL.match(text)
    try:
        if mt:
            return VirasoroParams.minimal(int(mt.group(1)), int(mt.group(2)))
        return VirasoroParams(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad central charge {text!r}: {exc}", source=job.source) from None


def cmd_virasoro(job: JobInput, opts: dict[str, Any]) -> tuple[Report, int]:
    text = opts.get("central-charge")
    if not text:
        raise InputError("give a central charge: --central-charge c or 'minimal p q'",
                         source=job.source)
    params = _virasoro_params(text, job)
    kind = opts["kind"]
    if kind not in ("vacuum", "highest-weight"):
        raise InputError(f"unknown module kind {kind!r}", source=job.source)
    try:
        h = Fraction(str(opts["h"]))
    except (ValueError, ZeroDivisionError):
        raise InputError("bad highest weight h", source=job.source) from None
    cutoff = opts["cutoff"]
    mod = VirasoroModule(params, cutoff, kind, h)
    results: dict[str, Any] = {
        "central_charge": format_scalar(params.c),
        "module": kind,
        "cutoff": cutoff,
    }
    if kind == "highest-weight":
        results["highest_weight"] = format_scalar(h)
    if params.pq:
        results["minimal_pair"] = list(params.pq)
    results["levels"] = [
        {"level": d, "basis_size": len(mod.basis(d)),
         "gram_determinant": format_scalar(mod.gram_determinant(d))}
        for d in range(cutoff + 1)]
    sing = mod.singular_levels()
    results["singular_levels"] = [
        {"level": d, "kernel_dimension": len(vecs),
         "kernel": [{format_state(s): format_scalar(c) for s, c in v.items()} for v in vecs]}
        for d, vecs in sing]
    caveats = [f"Gram matrices computed up to level {cutoff}"]
    if kind == "vacuum":
        img = mod.c2_image()
        results["c2_ideal"] = _polys(img.basis)
        rep = lisse_verdict(img, 1, jet_order=1, max_weight=4)
        results["lisse"] = rep.lisse
        if img.is_zero_ideal:
            results["verdict"] = f"not C2-cofinite at cutoff {cutoff}"
        else:
            results["verdict"] = rep.verdict
        if len(img.basis) == 1 and img.basis[0].degree() > 0:
            results["c2_exponent"] = img.basis[0].degree()
            caveats.append("C2 exponent computed from the exact Gram kernel, not asserted")
    return _report("virasoro", job, opts, results, caveats), EXIT_OK


def cmd_affine(job: JobInput, opts: dict[str, Any]) -> tuple[Report, int]:
    data = _need(job, "lie_algebra", "lie_algebra")
    root = opts.get("root") or data.names[0]
    if root not in data.names:
        raise InputError(f"unknown basis element {root!r} (basis: {' '.join(data.names)})",
                         source=job.source)
    power = opts["power"]
    if power < 1:
        raise InputError("option power must be >= 1", source=job.source)
    level = opts.get("level")
    if level is not None:
        try:
            level = Fraction(str(level))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad level {opts['level']!r}", source=job.source) from None
    try:
        closure = integrable_closure_check(data, root, power)
    except NonTermination as exc:
        raise InputError(str(exc), source=job.source) from None
    dims = graded_dims_jet_vs_pbw(data, opts["max-weight"], level)
    results = {
        "basis": {n: f"x{j}_1" for j, n in enumerate(data.names, start=1)},
        "closure": closure.as_dict(),
        "graded_dimensions": dims.as_dict(),
    }
    caveats = [f"graded dimensions compared up to weight {opts['max-weight']}"]
    ok = closure.contains_all and dims.all_equal
    return _report("affine", job, opts, results, caveats), EXIT_OK if ok else EXIT_NEGATIVE


def _report(command: str, job: JobInput, opts: dict[str, Any], results: dict[str, Any],
            caveats: list[str]) -> Report:
    clean = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in opts.items()
             if k != "format" and v is not None}
    return Report(command, digest(command, job.text, clean), clean, results, caveats)


COMMANDS: dict[str, Callable[[JobInput, dict[str, Any]], tuple[Report, int]]] = {
    "jet": cmd_jet,
    "lisse": cmd_lisse,
    "vpa-check": cmd_vpa_check,
    "virasoro": cmd_virasoro,
    "affine": cmd_affine,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jetlisse", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("input", nargs="?", default=None,
                       help="job file (default: standard input; '-' also means stdin)")
        s.add_argument("--order", type=int, help="jet truncation order")
        s.add_argument("--cutoff", type=int, help="Virasoro level cutoff")
        s.add_argument("--samples", type=int, help="number of random axiom samples")
        s.add_argument("--seed", type=int, help="random seed")
        s.add_argument("--format", choices=("text", "structured"), default=None,
                       help="output format (default text)")
        s.add_argument("--max-weight", type=int, dest="max_weight", help="weight bound")
        if name in ("jet", "lisse"):
            s.add_argument("--monomial-order", dest="monomial_order", choices=ORDER_TAGS)
        if name == "vpa-check":
            s.add_argument("--max-mode", type=int, dest="max_mode", help="largest n in a_(n)")
        if name == "virasoro":
            s.add_argument("--central-charge", dest="central_charge",
                           help="rational c, or 'minimal p q'")
            s.add_argument("--kind", choices=("vacuum", "highest-weight"))
            s.add_argument("--h", help="highest weight (highest-weight modules)")
        if name == "affine":
            s.add_argument("--root", help="basis element x_alpha")
            s.add_argument("--power", type=int, help="exponent n in x_alpha^n")
            s.add_argument("--level", help="level k (echoed; the checks do not depend on it)")
    return p


def _read_input(path: Optional[str], command: str) -> tuple[str, str]:
    if path is None and command == "virasoro":
        return "", "<none>"
    if path in (None, "-"):
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise InputError(f"cannot read input: {exc.strerror}", source=path) from None
    except UnicodeDecodeError:
        raise InputError("input is not valid UTF-8", source=path) from None


def run(argv: Optional[Sequence[str]] = None) -> tuple[str, str, int]:
    """Run one job; returns ``(stdout, stderr, exit status)`` without touching sys streams."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", "", EXIT_INPUT if exc.code else EXIT_OK
    command = args.command
    cli_opts = {
        "order": args.order, "cutoff": args.cutoff, "samples": args.samples, "seed": args.seed,
        "max-weight": args.max_weight,
        "monomial-order": getattr(args, "monomial_order", None),
        "max-mode": getattr(args, "max_mode", None),
        "central-charge": getattr(args, "central_charge", None),
        "kind": getattr(args, "kind", None), "h": getattr(args, "h", None),
        "root": getattr(args, "root", None), "power": getattr(args, "power", None),
        "level": getattr(args, "level", None),
    }
    try:
        text, source = _read_input(args.input, command)
        job = parse_job(text, source)
        opts = _opt(job, cli_opts, command)
        fmt = args.format or job.options.get("format", "text")
        if fmt not in ("text", "structured"):
            raise InputError(f"unknown format {fmt!r}", source=source)
        report, status = COMMANDS[command](job, opts)
    except InputError as exc:
        return "", f"error: {exc.render()}\n", EXIT_INPUT
    except (LieAlgebraError, ValueError) as exc:
        return "", f"error: {exc}\n", EXIT_INPUT
    return emit(report, fmt), "", status


def main(argv: Optional[Sequence[str]] = None) -> int:
    out, err, status = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
