"""Command-line front end.

Exit codes: 0 ok, 1 property violation, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, figures, measures, propcheck, states
from .errors import GQCError, ResourceError
from .partitions import Bipartition
from .tensor import DensityMatrix, StateVector, load_state

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_CLI_MAX_PARTIES = 14


class InputError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", type=float, nargs="+", default=None, help="one or more q >= 2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file (stdout when omitted)")
    p.add_argument("--max-parties", type=int, default=DEFAULT_CLI_MAX_PARTIES)
    p.add_argument("--tolerance", type=float, default=1e-9)
    return p


def _state_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ghz", type=int, metavar="N")
    g.add_argument("--w", type=int, metavar="N")
    g.add_argument("--product", metavar="BITS", help="computational basis state, e.g. 010")
    g.add_argument("--class1", type=float, metavar="THETA")
    g.add_argument("--class2", type=float, metavar="THETA")
    g.add_argument("--four-qubit", type=float, metavar="THETA")
    g.add_argument("--haar", type=int, metavar="N", help="seeded Haar-random N-qubit state")
    g.add_argument("--file", metavar="PATH", help="JSON state file")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gqc", description="GqC entanglement measures and bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="GqC, GMC and GGM of a pure state")
    _state_source(p)
    p.add_argument("--json", metavar="PATH", help="also write the reports as JSON")

    p = sub.add_parser("bound", parents=[common], help="fidelity lower bound for a mixed state")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--noisy-w", type=int, metavar="N")
    g.add_argument("--noisy-ghz", type=int, metavar="N")
    g.add_argument("--file", metavar="PATH", help="JSON density matrix (or pure state)")
    p.add_argument("--visibility", type=float, default=1.0)
    p.add_argument("--witness", metavar="PATH", help="JSON witness state; defaults to the noisy base")
    p.add_argument("--cut", help="bipartite bound across this cut, e.g. '0|1,2'")
    p.add_argument("--roof", action="store_true", help="also report a convex-roof upper estimate")
    p.add_argument("--roof-iterations", type=int, default=200)

    p = sub.add_parser("figure", parents=[common], help="CSV data behind a figure")
    p.add_argument("id", type=int, choices=sorted(figures.FIGURES))
    p.add_argument("--steps", type=int, default=None, help="primary grid size")
    p.add_argument("--q-steps", type=int, default=41, help="q grid size for figure 2")
    p.add_argument("--report", action="store_true", help="figure 7: print the kink/collision analysis")

    p = sub.add_parser("sweep", parents=[common], help="parameter sweep to CSV")
    p.add_argument("family", choices=figures.FAMILIES)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--roof", action="store_true")
    p.add_argument("--roof-iterations", type=int, default=100)

    p = sub.add_parser("propcheck", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=sorted(propcheck.SUITES))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--counterexamples", metavar="PATH", help="where to write failing states")

    p = sub.add_parser("ordering-scan", parents=[common], help="pairs where measure orders disagree")
    p.add_argument("family_a", choices=sorted(figures.PURE_FAMILIES))
    p.add_argument("family_b", choices=sorted(figures.PURE_FAMILIES))
    p.add_argument("--steps-a", type=int, default=200)
    p.add_argument("--steps-b", type=int, default=200)
    p.add_argument("--compare", nargs="+", choices=["GqC", "GMC", "GGM"], default=["GMC", "GGM"])
    return parser


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _q_list(args, default=(2.0,)) -> list[float]:
    return list(args.q) if args.q else list(default)


def _pure_from_args(args) -> StateVector:
    if args.ghz is not None:
        return states.ghz_state(args.ghz)
    if args.w is not None:
        return states.w_state(args.w)
    if args.product is not None:
        if not args.product or set(args.product) - set("01"):
            raise InputError(f"--product expects a bit string, got {args.product!r}")
        return states.basis_state(args.product)
    if args.class1 is not None:
        return states.class1(args.class1)
    if args.class2 is not None:
        return states.class2(args.class2)
    if args.four_qubit is not None:
        return states.four_qubit_family(args.four_qubit)
    if args.haar is not None:
        return states.haar_random_pure((2,) * args.haar, args.seed)
    state = load_state(args.file)
    if not isinstance(state, StateVector):
        raise InputError(f"{args.file}: measure needs a pure state; use 'bound' for density matrices")
    return state


def cmd_measure(args) -> int:
    psi = _pure_from_args(args)
    mp = args.max_parties
    lines, payload = [], []
    for q in _q_list(args):
        g = measures.gqc_pure(psi, q, max_parties=mp)
        gmc = measures.gmc_pure(psi, max_parties=mp)
        ggm = measures.ggm_pure(psi, max_parties=mp)
        lines.append(f"q={q:g}  GqC={g.aggregate:.12g}  GMC={gmc.aggregate:.12g}  GGM={ggm.aggregate:.12g}")
        lines.append(f"  {'cut':<24}{'C_q':>18}{'concurrence':>18}{'1-s1':>18}")
        for cut, v in g.per_cut.items():
            lines.append(f"  {cut.label():<24}{v:>18.12g}{gmc.per_cut[cut]:>18.12g}{ggm.per_cut[cut]:>18.12g}")
        payload.append({"q": q, "GqC": g.to_json(), "GMC": gmc.to_json(), "GGM": ggm.to_json()})
    _emit("\n".join(lines) + "\n", args.out)
    if args.json:
        Path(args.json).write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.file is not None:
        state = load_state(args.file)
        rho = state.projector() if isinstance(state, StateVector) else state
        if args.witness is None:
            raise InputError("--file needs --witness")
        witness = load_state(args.witness)
    else:
        n = args.noisy_w if args.noisy_w is not None else args.noisy_ghz
        witness = states.w_state(n) if args.noisy_w is not None else states.ghz_state(n)
        rho = states.noisy_state(states.NoisyStateSpec(witness, args.visibility))
        if args.witness is not None:
            witness = load_state(args.witness)
    if not isinstance(witness, StateVector):
        raise InputError("the witness must be a pure state")
    if isinstance(rho, DensityMatrix) and rho.n > args.max_parties:
        raise ResourceError(f"{rho.n} parties exceeds --max-parties {args.max_parties}")
    out = []
    for q in _q_list(args):
        if args.cut:
            cert = bounds.lower_bound_bipartite(rho, witness, Bipartition.parse(args.cut), q)
        else:
            cert = bounds.lower_bound_multipartite(rho, witness, q)
        entry = cert.to_json()
        if args.roof:
            est = bounds.mixed_gqc_upper_estimate(
                rho, q, ensemble_size=2 * rho.dim, iterations=args.roof_iterations, seed=args.seed
            )
            entry["roof_upper"] = est.upper
        out.append(entry)
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def _figure_table(args) -> figures.Table:
    q = args.q[0] if args.q else None
    fid, steps = args.id, args.steps
    if fid == 1:
        return figures.figure1(steps or 101)
    if fid == 2:
        return figures.figure2(steps or 51, args.q_steps)
    if fid == 3:
        return figures.figure3(q=q or 3.0)
    if fid in (4, 5):
        return figures.figure45("gmc" if fid == 4 else "ggm", steps or 200, q or 4.0)
    return figures.figure7(steps or 400, q or 3.0)


def cmd_figure(args) -> int:
    _emit(figures.to_csv(_figure_table(args)), args.out)
    if args.report and args.id == 7:
        scan = figures.four_qubit_scan(args.steps or 400, args.q[0] if args.q else 3.0)
        print(f"gmc argmin switches: {scan.gmc_argmin_switches or 'none'}", file=sys.stderr)
        print(f"gqc kink indices: {scan.kinks['gqc'] or 'none'}", file=sys.stderr)
        print(f"ggm collision: {scan.ggm_collision}", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = figures.SweepSpec(args.family, args.start, args.stop, args.steps, _q_list(args), args.out)
    table = figures.sweep(spec, roof=args.roof, roof_iterations=args.roof_iterations, seed=args.seed)
    _emit(figures.to_csv(table), args.out)
    return EXIT_OK


def cmd_propcheck(args) -> int:
    report = propcheck.run_suite(args.suite, samples=args.samples, seed=args.seed, tol=args.tolerance)
    text = report.to_text()
    if not report.passed:
        path = args.counterexamples or (
            f"{args.out}.counterexamples.json" if args.out else f"counterexamples_{args.suite}.json"
        )
        Path(path).write_text(report.counterexamples_json() + "\n", encoding="utf-8")
        text += f"counterexamples written to {path}\n"
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_ordering_scan(args) -> int:
    q = args.q[0] if args.q else 4.0
    pairs = figures.ordering_scan(
        args.family_a, args.family_b, q, args.steps_a, args.steps_b, compare=args.compare, tol=args.tolerance
    )
    _emit(figures.to_csv(figures.reversal_table(pairs)), args.out)
    for name in args.compare:
        count = sum(p.measure == name for p in pairs)
        print(f"{name}: {count} reversal pairs", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "measure": cmd_measure,
    "bound": cmd_bound,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
    "propcheck": cmd_propcheck,
    "ordering-scan": cmd_ordering_scan,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GQCError, InputError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
