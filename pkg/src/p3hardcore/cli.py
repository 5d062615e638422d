"""Command-line entry point: ``p3hardcore <command> [flags]``.

Every command writes its artifacts plus ``<command>_manifest.json`` to
``--out``.  The manifest records the arguments, package version and a
SHA-256 per artifact, so a rerun with the same arguments can be compared
byte for byte.  Exit codes: 0 success, 1 verification failure, 2 bad flags,
3 internal invariant breach (a witness file is written).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import traceback
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .golden import GoldenNumber
from .tiling import SEED_KINDS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BREACH = 0, 1, 2, 3


class VerificationFailure(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if q < 0:
        raise argparse.ArgumentTypeError("activity must be non-negative")
    return q


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _golden_str(g: GoldenNumber) -> str:
    return f"{g.p}{'+' if g.q >= 0 else '-'}{abs(g.q)}φ"


class Run:
    """Collects artifacts and report lines for one command."""

    def __init__(self, args):
        self.args = args
        self.out = Path(args.out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.artifacts: dict[str, str] = {}
        self.report: dict = {}

    def write(self, name: str, text: str):
        data = text.encode("utf-8")
        (self.out / name).write_bytes(data)
        self.artifacts[name] = hashlib.sha256(data).hexdigest()

    def write_json(self, name: str, obj):
        self.write(name, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def manifest(self, status: str):
        params = {k: (str(v) if isinstance(v, Fraction) else v)
                  for k, v in sorted(vars(self.args).items()) if k not in ("func", "out")}
        doc = {
            "command": self.args.command,
            "version": __version__,
            "params": params,
            "status": status,
            "report": self.report,
            "artifacts": dict(sorted(self.artifacts.items())),
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        (self.out / f"{self.args.command}_manifest.json").write_text(text, encoding="utf-8")


def _style(args):
    from .render import parse_style

    try:
        return parse_style(args.style)
    except ValueError as e:
        raise SystemExit(_usage_error(str(e)))


def _usage_error(msg: str) -> int:
    print(f"p3hardcore: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# commands


def cmd_generate(run: Run):
    from .graph import build_graph, graph_to_json
    from .render import render_tiling, svg_filename
    from .tiling import census, make_seed, substitute, tiling_to_json

    a = run.args
    style = _style(a)
    t = substitute(make_seed(a.seed), a.k)
    g = build_graph(t)
    run.write(f"{a.seed}_{a.k}_tiling.json", tiling_to_json(t))
    run.write(f"{a.seed}_{a.k}_graph.json", graph_to_json(g))
    run.write(svg_filename(a.seed, a.k, "tiling"), render_tiling(t, style))
    thin, thick = census(t)
    run.report = {"rhombi": len(t.rhombi), "thin": thin, "thick": thick,
                  "vertices": g.n, "edges": len(g.edges)}
    print(f"rhombi {len(t.rhombi)} (thin {thin}, thick {thick}); vertices {g.n}; edges {len(g.edges)}")


def _pipeline(a):
    from .pipeline import run_pipeline

    if a.k < 4:
        raise SystemExit(_usage_error("this command needs --k 4 or more (level-4 supertiles)"))
    return run_pipeline(a.seed, a.k)


def cmd_partition(run: Run):
    from .patterns import partition_to_json
    from .render import render_overlay, svg_filename

    a = run.args
    style = _style(a)
    p = _pipeline(a)
    part = p.partition
    run.write(f"{a.seed}_{a.k}_partition.json", partition_to_json(part))
    run.write(svg_filename(a.seed, a.k, "overlay"),
              render_overlay(p.tiling, {"supertiling": p.supertiling, "partition": part, "graph": p.graph}, style))
    census = dict(sorted(part.kind_census().items()))
    run.report = {"instances": len(part.instances), "kinds": census,
                  "window_vertices": int(part.window.sum()),
                  "uncovered": len(part.uncovered), "doubly_covered": len(part.doubly_covered)}
    print("patterns " + ", ".join(f"{k} {n}" for k, n in census.items()))
    print(f"safe window {int(part.window.sum())} vertices; uncovered {len(part.uncovered)}; "
          f"doubly covered {len(part.doubly_covered)}")
    if not part.is_partition:
        raise VerificationFailure("pattern interiors do not partition the safe window")


def cmd_ground_state(run: Run):
    from .groundstate import configuration_to_json, exact_density, window_density, yellow_loops
    from .render import render_ground_state, svg_filename

    a = run.args
    style = _style(a)
    p = _pipeline(a)
    c = p.ground
    dens = window_density(c, p.window)
    exact = exact_density()
    kinds = {}
    for comp in yellow_loops(c, p.graph):
        kinds[comp.kind] = kinds.get(comp.kind, 0) + 1
    run.write(f"{a.seed}_{a.k}_ground.json", configuration_to_json(c, f"{a.seed}_{a.k}"))
    run.write(svg_filename(a.seed, a.k, "ground"), render_ground_state(p.tiling, p.graph, c, style))
    run.report = {"particles": c.count, "domain": len(c.domain), "window": len(p.window),
                  "window_density": f"{dens.numerator}/{dens.denominator}",
                  "window_density_float": _fmt(float(dens)), "exact": _golden_str(exact),
                  "yellow_components": dict(sorted(kinds.items()))}
    print(f"particles {c.count} on {len(c.domain)} vertices")
    print(f"window density {dens.numerator}/{dens.denominator} = {_fmt(float(dens))} "
          f"(exact {_golden_str(exact)} = {_fmt(float(exact))})")


def cmd_verify_lemma1(run: Run):
    from .counting import build_loops, loop_decomposition_check, verify_lemma1
    from .patterns import PATTERN_KINDS, PATTERN_OF_LABEL, load_templates

    a = run.args
    tmpl = load_templates()
    by_kind = {}
    for label, t in sorted(tmpl.items()):
        by_kind.setdefault(PATTERN_OF_LABEL[label], t)
    kinds = PATTERN_KINDS if a.all or not a.kind else [a.kind]
    failed = []
    for kind in kinds:
        t = by_kind[kind]
        adj = t.adjacency()
        rep = verify_lemma1(adj, t.perfect(), t.count)
        ld = build_loops(adj, t.perfect(), t.center_index)
        interior = set(range(t.size)) - {t.center_index}
        lrep = loop_decomposition_check(adj, interior, t.perfect(), ld)
        rep["loops"] = {k: v for k, v in lrep.items() if k != "problems"}
        ok = rep["passed"] and lrep["passed"]
        run.report[kind] = rep
        print(f"{'PASS' if ok else 'FAIL'} {kind}: best {rep['best']}, second best {rep['second_best']}, "
              f"maximizers {rep['n_maximizers']}, loops {lrep['n_loops']}")
        if not ok:
            failed.append(kind)
    run.write_json("lemma1_report.json", run.report)
    if failed:
        raise VerificationFailure("optimality check failed for " + ", ".join(failed))


def cmd_density(run: Run):
    from .groundstate import exact_density, window_density

    a = run.args
    exact = exact_density()
    sqrt5 = (2 * exact.p + exact.q, exact.q)  # a + b*phi = ((2a+b) + b*sqrt5)/2
    run.report["exact"] = _golden_str(exact)
    run.report["exact_float"] = _fmt(float(exact))
    print(f"exact {_golden_str(exact)} = ({sqrt5[0]}{'+' if sqrt5[1] >= 0 else '-'}{abs(sqrt5[1])}√5)/2 "
          f"= {_fmt(float(exact))}")
    if a.exact:
        return
    p = _pipeline(a)
    dens = window_density(p.ground, p.window)
    run.report["window_density"] = f"{dens.numerator}/{dens.denominator}"
    run.report["window_density_float"] = _fmt(float(dens))
    run.report["difference"] = _fmt(float(dens) - float(exact))
    print(f"window {a.seed} k={a.k}: {dens.numerator}/{dens.denominator} = {_fmt(float(dens))} "
          f"(difference {_fmt(float(dens) - float(exact))})")


def cmd_loop_z(run: Run):
    from .counting import cycle_brute_force, loop_partition_function, loop_partition_polynomial

    a = run.args
    rows = []
    print("m  polynomial  Z(m, u)  brute force  match")
    for m in range(2, a.max_m + 1):
        poly = loop_partition_polynomial(m)
        z = loop_partition_function(m, a.u)
        bf = cycle_brute_force(2 * m, a.u) if 2 * m <= 24 else None
        ok = bf is None or bf == z
        rows.append({"m": m, "coefficients": poly, "z": str(z), "z_float": _fmt(float(z)),
                     "brute_force": None if bf is None else str(bf), "match": ok})
        print(f"{m}  {poly}  {z} = {_fmt(float(z))}  {'-' if bf is None else bf}  {'yes' if ok else 'NO'}")
    run.report = {"u": str(a.u), "rows": rows}
    run.write_json("loop_z.json", run.report)
    if not all(r["match"] for r in rows):
        raise VerificationFailure("loop partition function differs from cycle enumeration")


def cmd_bounds(run: Run):
    from .gibbs import activity_upper_bound, certificate_holds, polymer_series_bound, tau_threshold

    a = run.args
    tau0, tau_big = tau_threshold(5, 150)
    cert = certificate_holds(tau0 + 0.01, 5, 150)
    ub = activity_upper_bound(5, 150)
    print(f"tau0 = {_fmt(tau0)}; sufficient tau = {_fmt(tau_big)}; certificate above tau0: {cert}")
    print(f"log u_bar: product reading {_fmt(ub['log_literal'])} (above tau0: {ub['literal_exceeds_tau0']}), "
          f"exponent reading {_fmt(ub['log_exponent'])} (above tau0: {ub['exponent_exceeds_tau0']})")
    scan = []
    us = [10.0 ** e for e in np.arange(2.0, 8.01, 0.5)] if a.u is None else [float(a.u)]
    for u in us:
        if u <= 1:
            raise SystemExit(_usage_error("bounds need --u above 1"))
        r = polymer_series_bound(u)
        scan.append({k: (_fmt(v) if isinstance(v, float) and math.isfinite(v) else str(v)) for k, v in r.items()})
        print(f"u = {u:.6g}: left ratio {r['lhs_ratio']:.6g}, right ratio {r['rhs_ratio']:.6g}, "
              f"{'converges' if r['converges'] else 'diverges'}")
    run.report = {"tau0": _fmt(tau0), "tau_sufficient": _fmt(tau_big), "certificate": cert, "scan": scan,
                  "log_u_bar": {k: (_fmt(v) if isinstance(v, float) else v) for k, v in ub.items()}}
    run.write_json("bounds.json", run.report)
    if not cert:
        raise VerificationFailure("certificate inequality fails above tau0")


def cmd_sample(run: Run):
    from .gibbs import HardCoreSampler, SampleRun

    a = run.args
    p = _pipeline(a)
    g = p.graph
    ground = p.ground.mask(g.n)
    window = np.zeros(g.n, dtype=bool)
    window[list(p.window)] = True
    if a.boundary == "ground":
        init = ground.copy()
    else:
        init = g.parity == (0 if a.boundary == "even" else 1)
    frozen = ~window
    sampler = HardCoreSampler(u=a.u, steps=a.steps, seed=a.rng_seed, method=a.method).fit(g, init, frozen)
    occ = sampler.occupancy_
    agree = float((occ[window] == ground[window]).mean())
    manifest = SampleRun(str(a.u), a.steps, a.rng_seed, a.boundary, a.boundary, a.method, a.seed, a.k,
                         {"density": _fmt(sampler.density_), "overlap_with_ground_state": _fmt(agree),
                          "window_vertices": int(window.sum())})
    run.write("sample_run.json", manifest.to_json() + "\n")
    run.write_json("sample_state.json", {"occupied": [int(v) for v in np.flatnonzero(occ)]})
    run.report = manifest.summary
    print(f"density {_fmt(sampler.density_)}; agreement with ground state {_fmt(agree)}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p3hardcore", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, k_default=8):
        p.add_argument("--seed", choices=SEED_KINDS, default="sun")
        p.add_argument("--k", type=_nonneg_int, default=k_default)
        p.add_argument("--out", default=".")
        return p

    def styled(p):
        p.add_argument("--style", action="append", default=[], metavar="KEY=VALUE")
        return p

    styled(common(sub.add_parser("generate", help="tiling JSON, graph JSON and SVG"))).set_defaults(func=cmd_generate)
    styled(common(sub.add_parser("partition", help="pattern partition JSON and overlay SVG"))).set_defaults(
        func=cmd_partition)
    styled(common(sub.add_parser("ground-state", help="ground state JSON, density and SVG"))).set_defaults(
        func=cmd_ground_state)

    p = sub.add_parser("verify-lemma1", help="exact maximum-independent-set check of each pattern")
    p.add_argument("--out", default=".")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--kind", choices=("urchin", "starfish", "snail", "turtle", "bat"))
    p.set_defaults(func=cmd_verify_lemma1)

    p = common(sub.add_parser("density", help="exact density and windowed ground-state density"))
    p.add_argument("--exact", action="store_true", help="only the exact value")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("loop-z", help="independent-set polynomial of even cycles")
    p.add_argument("--u", type=_rational, default=Fraction(1))
    p.add_argument("--max-m", type=_nonneg_int, default=6)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_loop_z)

    p = sub.add_parser("bounds", help="tau thresholds and contour-sum scan")
    p.add_argument("--u", type=_rational, default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_bounds)

    p = common(sub.add_parser("sample", help="heat-bath Monte Carlo run with a manifest"))
    p.add_argument("--u", type=_rational, default=Fraction(10**6))
    p.add_argument("--steps", type=_nonneg_int, default=200)
    p.add_argument("--rng-seed", type=_nonneg_int, default=0)
    p.add_argument("--boundary", choices=("ground", "even", "odd"), default="ground")
    p.add_argument("--method", choices=("checkerboard", "random-site"), default="checkerboard")
    p.set_defaults(func=cmd_sample)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    run = Run(args)
    try:
        args.func(run)
    except SystemExit as e:
        return int(e.code or 0)
    except VerificationFailure as e:
        print(f"FAIL: {e}", file=sys.stderr)
        run.manifest("failed")
        return EXIT_FAIL
    except Exception as e:  # invariant breach: keep the evidence
        witness = {"error": type(e).__name__, "message": str(e), "traceback": traceback.format_exc()}
        (run.out / f"{args.command}_witness.json").write_text(json.dumps(witness, indent=2), encoding="utf-8")
        print(f"invariant breach: {type(e).__name__}: {e}", file=sys.stderr)
        run.manifest("breach")
        return EXIT_BREACH
    run.manifest("ok")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
