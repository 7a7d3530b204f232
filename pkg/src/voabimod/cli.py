"""Command line front end: ``voabimod <subcommand> [options]``.

Every subcommand emits a JSON report (to ``--out`` or standard output) and a
one-line summary.  Exit codes: 0 pass, 1 check failure, 2 usage or config
error, 3 weight-range error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .bimodule import (KINDS, OSpaceSpec, build_ospace, check_bimodule_laws,
                       check_commutator_congruences, descent_check, membership, membership_command, phi_pushforward_check,
                       psi_check, quotient_dim, star_general)
from .expr import ExprError, format_vector, parse_vector
from .formal import run_appendix
from .modules import FockModule, WeightRangeError
from .reptheory import (ModuleError, am_module_from_spec, annihilation_check, associativity_check,
                        build_verma, commutator_check_verma, intertwining_check, composition_grid,
                        hom_image_dim, omega_subspace, theorem413_check, universal_map, vacuum_identity_check,
                        zhu_algebra_dim)
from .vectors import GradedVector
from .voa import ISING_WEIGHTS, ising_character_table, ising_module, make_voa

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RANGE = 0, 1, 2, 3

# required options are checked after the config file has been merged in
REQUIRED = {"product": ("u", "v", "n", "m", "p"), "membership": ("expr", "n", "m"), "verma": ("u_spec",)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_global(p):
    g = p.add_argument_group("global")
    g.add_argument("--voa", default="heisenberg", help="heisenberg | virasoro:<c> | ising")
    g.add_argument("--max-weight", type=int, default=24, help="highest weight of V that is built")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None, help="write the JSON report here")
    g.add_argument("--config", default=None, help="key=value file; command-line flags win")


def build_parser(suppress: bool = False) -> argparse.ArgumentParser:
    """With ``suppress`` every default is dropped, so the namespace holds only explicit flags."""
    kw = {"argument_default": argparse.SUPPRESS} if suppress else {}
    top = _Parser(prog="voabimod", description=__doc__.splitlines()[0], **kw)
    top.add_argument("--version", action="version", version=f"voabimod {__version__}")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def cmd(name, help):
        p = sub.add_parser(name, help=help, **kw)
        _add_global(p)
        return p

    cmd("verify", "appendix identities over the standard grid")

    p = cmd("product", "u *^n_{m,p} v")
    p.add_argument("--u")
    p.add_argument("--v")
    for k in "nmp":
        p.add_argument(f"--{k}", type=int)

    p = cmd("membership", "is an element in the O-space at levels (n, m)?")
    p.add_argument("--expr")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--cutoff", type=int, default=0)
    p.add_argument("--kind", choices=KINDS, default="oprime")

    p = cmd("ospan", "rank of an O-space at a cutoff")
    p.add_argument("--kind", choices=KINDS, default="oprime")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--aux-bound", type=int, default=None)
    p.add_argument("--slack", type=int, default=0)

    p = cmd("quotient-dim", "dimension bound for the image of F_W in A_{n,m}(V)")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--kind", choices=KINDS, default="ofull")
    p.add_argument("--aux-bound", type=int, default=None)

    p = cmd("check", "seeded membership suites")
    p.add_argument("--suite", choices=("bimodule", "phi", "descent", "lemma23", "psi"), default="lemma23")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-input-weight", type=int, default=3)
    p.add_argument("--cutoff", type=int, default=8)

    p = cmd("rep-check", "level-changing operators on a module")
    p.add_argument("--module", default="fock:1", help="fock:<lambda> | ising:<h>")
    p.add_argument("--suite", choices=("lemma41", "omega", "annihilation"), default="lemma41")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-input-weight", type=int, default=4)
    p.add_argument("--levels", type=int, default=4)

    p = cmd("verma", "the induced module M(U) and its axioms")
    p.add_argument("--m", type=int, default=None, help="level of U (overrides the u-spec)")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--cutoff", type=int, default=14)
    p.add_argument("--am-cutoff", type=int, default=12, help="cutoff for A_m(V) itself")
    p.add_argument("--u-spec", help="JSON file: {dim, generators: {expr: matrix}}")
    p.add_argument("--trials", type=int, default=60)
    p.add_argument("--target", default=None, help="ising:<h> or fock:<lambda>: check the universal map")

    p = cmd("structure", "quotient dims against the Hom-space formula")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=8)
    p.add_argument("--kind", choices=KINDS, default="ofull")
    if suppress:
        for parser in [top] + list(sub.choices.values()):
            for act in parser._actions:
                if act.dest not in ("help", "version", "command"):
                    act.default = argparse.SUPPRESS
    return top


# ---------------------------------------------------------------------------
# config


def read_config(path: str) -> dict:
    out = {}
    try:
        lines = open(path).read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{no}: expected key=value")
        k, v = (x.strip() for x in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def parse_args(argv: List[str]) -> argparse.Namespace:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.config is not None:
        _merge_config(parser, ns, argv)
    missing = [k for k in REQUIRED.get(ns.command, ()) if getattr(ns, k) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join('--' + k.replace('_', '-') for k in missing)}")
    return ns


def _merge_config(parser, ns, argv):
    explicit = vars(build_parser(suppress=True).parse_args(argv))
    conf = read_config(ns.config)
    # the subparser's actions give the types for config values
    subactions = parser._subparsers._group_actions[0].choices[ns.command]._actions
    actions = {a.dest: a for a in subactions}
    for k, raw in conf.items():
        if k in ("command", "config", "help"):
            raise UsageError(f"{k} can not be set from a config file")
        if k not in actions:
            raise UsageError(f"unknown config key {k!r} for {ns.command}")
        if k in explicit:
            continue
        act = actions[k]
        try:
            val = act.type(raw) if act.type else raw
        except ValueError:
            raise UsageError(f"config key {k}: bad value {raw!r}") from None
        if act.choices and val not in act.choices:
            raise UsageError(f"config key {k}: {val!r} not in {list(act.choices)}")
        setattr(ns, k, val)


# ---------------------------------------------------------------------------
# subcommands; each returns (report dict, ok)


def _vec(args, voa, src):
    return parse_vector(src, voa)


def cmd_verify(args, voa):
    results = run_appendix()
    counts, passed, failures = {}, {}, []
    for name, params, ok in results:
        counts[name] = counts.get(name, 0) + 1
        if ok:
            passed[name] = passed.get(name, 0) + 1
        else:
            failures.append({"inputs": {"identity": name, "params": list(params)}, "residual": "nonzero"})
    return {"params": {"grid": "default"}, "counts": counts, "passed": passed, "failures": failures}, not failures


def cmd_product(args, voa):
    u, v = _vec(args, voa, args.u), _vec(args, voa, args.v)
    out = star_general(voa, u, v, args.n, args.m, args.p)
    return {"params": {"u": format_vector(u, voa), "v": format_vector(v, voa), "n": args.n,
                       "m": args.m, "p": args.p},
            "result": format_vector(out, voa), "top_weight": out.top_weight(), "failures": []}, True


def cmd_membership(args, voa):
    vec = _vec(args, voa, args.expr)
    ok, res = membership(voa, vec, args.n, args.m, args.cutoff, args.kind)
    rep = {"params": {"expr": format_vector(vec, voa), "n": args.n, "m": args.m, "cutoff": args.cutoff,
                      "kind": args.kind}, "member": ok, "residual": format_vector(res, voa), "failures": []}
    if not ok:
        rep["failures"].append({"inputs": rep["params"], "residual": rep["residual"],
                                "repro": membership_command(voa, vec, args.n, args.m, args.cutoff, args.kind)})
    return rep, ok


def cmd_ospan(args, voa):
    spec = OSpaceSpec(args.kind, args.n, args.m, args.cutoff, args.aux_bound, args.slack)
    sp = build_ospace(voa, spec)
    prev = None
    if args.cutoff >= 1:
        prev = build_ospace(voa, OSpaceSpec(args.kind, args.n, args.m, args.cutoff - 1, args.aux_bound,
                                            args.slack)).quotient_dim
    return {"params": spec.to_json(), "ranks": {args.kind: sp.rank},
            "dims": {"ambient": sp.ambient_dim, "quotient": sp.quotient_dim, "previous_cutoff": prev},
            "generators": {"enumerated": sp.generators, "admitted": sp.admitted},
            "stabilized": prev == sp.quotient_dim, "failures": []}, True


def cmd_quotient_dim(args, voa):
    rep = quotient_dim(voa, args.n, args.m, args.cutoff, args.kind, args.aux_bound)
    return dict(rep.to_json(), failures=[]), True


def cmd_check(args, voa):
    rng = random.Random(args.seed)
    kw = dict(max_weight=args.max_input_weight, cutoff=args.cutoff)
    if args.suite == "lemma23":
        rep = check_commutator_congruences(voa, args.trials, rng, max_level=max(args.n, args.m), **kw)
    elif args.suite == "bimodule":
        rep = check_bimodule_laws(voa, args.n, args.m, args.trials, rng, **kw)
    elif args.suite == "phi":
        rep = phi_pushforward_check(voa, args.n, args.m, args.trials, rng, **kw)
    elif args.suite == "descent":
        rep = descent_check(voa, args.n, args.m, args.trials, rng, **kw)
    else:
        rep = psi_check(voa, args.n, args.p, args.m, args.trials, rng, **kw)
    return rep.to_json(), rep.ok


def parse_module(src: str, max_level: int):
    kind, _, val = src.partition(":")
    try:
        x = Fraction(val)
    except ValueError:
        raise UsageError(f"bad module parameter in {src!r}") from None
    if kind == "fock":
        return FockModule(x, max_level)
    if kind == "ising":
        return ising_module(x, max_level)
    raise UsageError(f"unknown module {src!r}; expected fock:<lambda> or ising:<h>")


def _check_module_voa(voa, module):
    want = "heisenberg" if isinstance(module, FockModule) else "ising"
    if voa.kind != want:
        raise UsageError(f"{module!r} is a module for {want}, not {voa.ident}")


def cmd_rep_check(args, voa):
    top = max(args.m, args.n, args.p, args.levels)
    module = parse_module(args.module, top + args.max_input_weight + 4)
    _check_module_voa(voa, module)
    rng = random.Random(args.seed)
    if args.suite == "lemma41":
        rep = composition_grid(voa, module, args.max_input_weight, max(args.m, args.n, args.p))
        return rep.to_json(), rep.ok
    if args.suite == "annihilation":
        rep = annihilation_check(voa, module, args.n, args.m, args.trials, rng)
        return rep.to_json(), rep.ok
    span = omega_subspace(voa, module, args.m, args.max_input_weight, args.levels)
    expected = sum(module.dim(k) for k in range(args.m + 1))
    ok = span.rank >= expected
    exact = span.rank == expected
    rep = {"params": {"module": args.module, "m": args.m, "levels": args.levels,
                      "probe_weight_cap": args.max_input_weight},
           "dims": {"omega": span.rank, "levels_up_to_m": expected},
           "equals_levels_up_to_m": exact, "failures": []}
    if not ok:
        rep["failures"].append({"inputs": rep["params"], "residual": "omega misses part of the low levels"})
    return rep, ok


def cmd_verma(args, voa):
    try:
        spec = json.load(open(args.u_spec))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read u-spec {args.u_spec}: {exc}") from None
    if args.m is not None:
        spec["m"] = args.m
    U = am_module_from_spec(voa, spec, args.am_cutoff)
    M = build_verma(U, args.levels, args.cutoff)
    rng = random.Random(args.seed)
    checks = [vacuum_identity_check(M), commutator_check_verma(M, args.trials, rng),
              associativity_check(M, args.trials, rng)]
    rep = M.to_json()
    rep["structure"] = {"level_m_equals_dim_U": M.m <= M.top_level and M.piece(M.m).dim == U.dim,
                        "level_0_nonzero": M.piece(0).dim > 0}
    if args.target:
        target = parse_module(args.target, args.levels + args.cutoff)
        _check_module_voa(voa, target)
        images = [GradedVector.basis(l) for l in target.basis(M.m)]
        phibar = universal_map(M, target, images[:U.dim])
        checks.append(intertwining_check(phibar, args.trials, rng))
    rep["checks"] = [c.to_json() for c in checks]
    failures = [f for c in checks for f in c.failures]
    if not rep["structure"]["level_m_equals_dim_U"]:
        failures.append({"inputs": {"level": M.m}, "residual": "M(U)(m) and U differ in dimension"})
    rep["failures"] = failures
    return rep, not failures


def cmd_structure(args, voa):
    if voa.kind != "ising":
        raise UsageError("structure needs a rational VOA with a character table; use --voa ising")
    table = ising_character_table(max(args.n, args.m) + 1)
    rep = theorem413_check(voa, table, args.n, args.m, args.cutoff, args.kind)
    rep["character_table"] = table.to_json()
    modules = [ising_module(h, args.cutoff + max(args.n, args.m) + 4) for h in ISING_WEIGHTS]
    rep["dims"]["lower_bound"] = hom_image_dim(voa, modules, args.n, args.m, args.cutoff)
    rep["exact"] = rep["dims"]["lower_bound"] == rep["dims"]["quotient"]
    if args.n == args.m:
        rank, dim = zhu_algebra_dim(voa, args.n, args.cutoff)
        rep["dims"]["classical_presentation"] = dim
        rep["classical_match"] = dim == rep["dims"]["quotient"]
        if not rep["classical_match"]:
            rep["failures"].append({"inputs": {"n": args.n}, "residual":
                                    f"classical presentation gives {dim}"})
    return rep, not rep["failures"]


COMMANDS = {"verify": cmd_verify, "product": cmd_product, "membership": cmd_membership,
            "ospan": cmd_ospan, "quotient-dim": cmd_quotient_dim, "check": cmd_check,
            "rep-check": cmd_rep_check, "verma": cmd_verma, "structure": cmd_structure}


def _summary(command, report, ok):
    n_fail = len(report.get("failures", []))
    return f"{command}: {'PASS' if ok else 'FAIL'} ({n_fail} failure{'s' if n_fail != 1 else ''})"


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
        voa = make_voa(args.voa, args.max_weight)
    except UsageError as exc:
        print(f"voabimod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"voabimod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        report, ok = COMMANDS[args.command](args, voa)
    except WeightRangeError as exc:
        print(f"voabimod: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (UsageError, ExprError, ModuleError, ValueError, KeyError) as exc:
        print(f"voabimod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    full = {"tool": "voabimod", "version": __version__, "command": args.command, "voa": voa.ident,
            "max_weight": args.max_weight, "seed": args.seed, "ok": ok}
    full.update(report)
    full["timings"] = {"seconds": round(time.perf_counter() - start, 3)}
    text = json.dumps(full, indent=2, sort_keys=False, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(_summary(args.command, full, ok))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
