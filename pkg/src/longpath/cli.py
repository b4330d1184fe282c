"""Command-line entry point: ``longpath <gen|stream|run|exact|verify|experiment> ...``."""

import argparse
import dataclasses
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .constants import (
    DEFAULT_DELTA,
    DEFAULT_SEED,
    DEFAULT_SUBDIVISION,
    EXACT_BUDGET,
    RS_FILE,
    SAMPLE_CONSTANT,
    SEED_GENERATOR,
    STREAM_FILE,
)
from .file_operations import read_graph, read_path, read_stream, write_json, write_path, write_stream
from .graph_core import Graph, build_graph, validate_path
from .graph_families import turnstile_stream
from .hard_instances import instance_store
from .hard_instances.directed import DLPInstance, SLPInstance, contract_slp, slp_exact_lp, verify_trimmed_path
from .hard_instances.insdel import InsDelReductionInstance, bob_knowledge_violations
from .hard_instances.lemmas import (
    LemmaCheck,
    check_insdel_bound,
    check_trimmed_paths,
    check_undirected_bound,
    insdel_induced_edges_match,
    insdel_path_bound,
    undirected_path_bound,
)
from .hard_instances.rs_graphs import parse_rs_matchings, read_rs, rs_from_blocks, verify_rs_decomposition
from .harness import EXPERIMENTS, ExperimentConfig, run_experiment
from .pathfinder import MODES, exact_longest_path
from .processor import SAMPLERS, StreamRunner
from .report import FORMATS, emit_report
from .settings import configure_logging, derive_rng, logger
from .stream_model import apply_stream, graph_to_stream

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _int_list(text: str) -> List[int]:
    """'1,0,1' or '101' -> [1, 0, 1]."""
    text = text.strip()
    if "," in text:
        return [int(x) for x in text.split(",") if x.strip()]
    return [int(x) for x in text]


def _k_value(text: str) -> Optional[int]:
    return None if text == "auto" else int(text)


# ── gen ──


def _gen_params(args: argparse.Namespace) -> Dict[str, Any]:
    """Instance parameters from the command line; missing bit vectors are drawn from the seed."""
    rng = derive_rng(args.seed, SEED_GENERATOR, 0)
    if args.kind == "slp":
        params: Dict[str, Any] = {"r": args.r}
        if args.sigma:
            params["sigma"] = _int_list(args.sigma)
        if args.coins:
            params["coins"] = _int_list(args.coins)
        return params
    if args.kind == "dlp":
        return {"r": args.r, "t": args.t}
    if args.kind == "undir-reduction":
        size = args.r * args.t
        X = _int_list(args.X) if args.X else [int(x) for x in rng.integers(0, 2, size=size)]
        params = {"r": args.r, "t": args.t, "X": X, "J": args.J, "ell": args.ell}
        if args.rho:
            params["rho"] = _int_list(args.rho)
        return params
    X = _int_list(args.X) if args.X else [int(x) for x in rng.integers(0, 2, size=args.N)]
    return {"X": X, "n": args.n, "J": args.J}


def _handle_gen(args: argparse.Namespace) -> int:
    params = _gen_params(args)
    rs = None
    if args.kind in instance_store.RS_KINDS:
        rs = read_rs(args.rs) if args.rs else rs_from_blocks(args.r, args.t, spare=1)
    inst = instance_store.generate(args.kind, params, args.seed, rs)
    out = instance_store.save_instance(args.out, args.kind, params, args.seed, inst, rs)
    print(f"{args.kind} instance written to {out} (witness length {inst.witness.length})")
    return EXIT_OK


# ── stream / run / exact ──


def _handle_stream(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    if args.decoys > 0:
        stream = turnstile_stream(g, args.decoys, args.seed)
    else:
        stream = graph_to_stream(g, args.order, args.seed if args.order == "random" else None)
    write_stream(args.out, stream)
    print(f"{len(stream)} events written to {args.out}")
    return EXIT_OK


def _handle_run(args: argparse.Namespace) -> int:
    stream = read_stream(args.input)
    oracle = read_graph(args.oracle) if args.oracle else None
    runner = StreamRunner(
        args.seed, sampler=args.sampler, delta=args.delta, sample_constant=args.sample_constant, budget=args.budget
    )
    if args.space is not None:
        report = runner.hybrid_run(stream, args.space, args.mode, oracle)
    else:
        report = runner.run_semi_streaming(stream, args.mode, oracle, _k_value(args.k))

    if args.report and Path(args.report).suffix == ".json":
        write_path(args.path_out, report.path)
        write_json(args.report, report.to_dict())
    elif args.report:
        runner.save_run(report, args.path_out, args.report)
    else:
        write_path(args.path_out, report.path)
    print(report.to_text(), end="")
    return EXIT_OK


def _handle_exact(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    path = exact_longest_path(g, args.budget)
    if args.out:
        write_path(args.out, path)
    print(f"lp={path.length}")
    return EXIT_OK


# ── verify ──


def _instance_graph(directory: str) -> Graph:
    return apply_stream(read_stream(Path(directory) / STREAM_FILE))


def _verify_rs(args: argparse.Namespace) -> int:
    if not (args.rs or args.instance):
        raise ValueError("verify rs needs --rs or --instance")
    source = Path(args.rs) if args.rs else Path(args.instance) / RS_FILE
    n, matchings = parse_rs_matchings(source.read_text(encoding="ascii"))
    g = build_graph(2 * n, [edge for matching in matchings for edge in matching])
    violation = verify_rs_decomposition(g, matchings)
    if violation:
        print(f"rs invalid: {violation.kind} in matching {violation.position + 1}: {violation.detail}")
        return EXIT_FAILED
    print(f"rs ok: n={n} t={len(matchings)}")
    return EXIT_OK


def _verify_path(args: argparse.Namespace) -> int:
    if not args.path or not (args.graph or args.instance):
        raise ValueError("verify path needs --path and one of --graph or --instance")
    g = read_graph(args.graph) if args.graph else _instance_graph(args.instance)
    path = read_path(args.path)
    violation = validate_path(g, path)
    if violation:
        print(f"path invalid: {violation.kind} at {violation.position}: {violation.detail}")
        return EXIT_FAILED
    print(f"path ok: length {path.length}")
    return EXIT_OK


def _lemma_result(check: LemmaCheck, label: str) -> int:
    if check.holds:
        print(f"{label} holds on {check.paths} paths")
        return EXIT_OK
    print(f"{label} fails on path {list(check.counterexample.vertices)}")
    return EXIT_FAILED


def _verify_lemma(args: argparse.Namespace) -> int:
    """Check the structural lemma of the saved instance kind, on one path or on all of them."""
    if not args.instance:
        raise ValueError("verify lemma needs --instance")
    loaded = instance_store.load_instance(args.instance)
    inst = loaded["instance"]
    q = read_path(args.path) if args.path else None

    if isinstance(inst, SLPInstance):
        lp = exact_longest_path(contract_slp(inst)).length
        ok = lp == slp_exact_lp(inst)
        print(f"contracted lp={lp}, 2*lc-1={slp_exact_lp(inst)}")
        return EXIT_OK if ok else EXIT_FAILED
    if isinstance(inst, DLPInstance):
        if q is None:
            return _lemma_result(check_trimmed_paths(inst), "trimmed-path lemma")
        violation = verify_trimmed_path(inst, q)
        if violation:
            print(f"trimmed path leaves the planted edges at {violation.position}: {violation.detail}")
            return EXIT_FAILED
        print("trimmed path stays inside M_J and N_J")
        return EXIT_OK
    if isinstance(inst, InsDelReductionInstance):
        if not insdel_induced_edges_match(inst) or bob_knowledge_violations(inst):
            print("planted structure of the insertion-deletion instance is inconsistent")
            return EXIT_FAILED
        if q is None:
            return _lemma_result(check_insdel_bound(inst), "path-length bound")
        bound = insdel_path_bound(inst, q)
    else:
        if q is None:
            return _lemma_result(check_undirected_bound(inst), "path-length bound")
        bound = undirected_path_bound(inst, q)

    violation = validate_path(inst.graph, q)
    if violation:
        raise ValueError(f"not a path of the instance ({violation.kind} at {violation.position})")
    print(f"|Q|={q.length} bound={bound}")
    return EXIT_OK if q.length <= bound else EXIT_FAILED


_VERIFIERS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "rs": _verify_rs,
    "path": _verify_path,
    "lemma": _verify_lemma,
}


def _handle_verify(args: argparse.Namespace) -> int:
    return _VERIFIERS[args.target](args)


# ── experiment ──


def _handle_experiment(args: argparse.Namespace) -> int:
    fields = {f.name for f in dataclasses.fields(ExperimentConfig)}
    options = {key: value for key, value in vars(args).items() if key in fields and value is not None}
    cfg = ExperimentConfig(**options)
    report = run_experiment(cfg)
    emit_report(report, args.out, args.format)
    print(f"{cfg.name}: success rate {report.success_rate:.3f} passed={report.passed} {report.note}".rstrip())
    return EXIT_FAILED if report.passed is False else EXIT_OK


_HANDLERS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "gen": _handle_gen,
    "stream": _handle_stream,
    "run": _handle_run,
    "exact": _handle_exact,
    "verify": _handle_verify,
    "experiment": _handle_experiment,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="longpath", description="Streaming longest-path approximation")
    parser.add_argument("--log-level", default=None, help="overrides LONGPATH_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a hard instance directory")
    gen.add_argument("kind", choices=instance_store.KINDS)
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen.add_argument("--out", required=True)
    gen.add_argument("--r", type=int, default=2)
    gen.add_argument("--t", type=int, default=1)
    gen.add_argument("--rs", help="RS graph file; default r*t blocks with one spare vertex per side")
    gen.add_argument("--sigma", help="0-based permutation, e.g. 1,2,3,0")
    gen.add_argument("--coins")
    gen.add_argument("--X", help="bit vector, e.g. 0110")
    gen.add_argument("--J", type=int, default=1)
    gen.add_argument("--ell", type=int, default=DEFAULT_SUBDIVISION)
    gen.add_argument("--rho", help="0-based permutation for Bob's matching")
    gen.add_argument("--n", type=int, default=4)
    gen.add_argument("--N", type=int, default=4)

    stream = commands.add_parser("stream", help="turn a graph file into an event stream")
    stream.add_argument("--in", dest="input", required=True)
    stream.add_argument("--order", choices=("natural", "random"), default="natural")
    stream.add_argument("--decoys", type=float, default=0.0, help="fraction of inserted-then-deleted non-edges")
    stream.add_argument("--seed", type=int, default=DEFAULT_SEED)
    stream.add_argument("--out", required=True)

    run = commands.add_parser("run", help="one streaming pass and path extraction")
    run.add_argument("--in", dest="input", required=True)
    run.add_argument("--mode", choices=MODES, default="exact")
    run.add_argument("--sampler", choices=SAMPLERS, default="auto")
    run.add_argument("--k", default="auto")
    run.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    run.add_argument("--sample-constant", type=float, default=SAMPLE_CONSTANT)
    run.add_argument("--budget", type=int, default=EXACT_BUDGET)
    run.add_argument("--space", type=int, help="hybrid run with this edge budget")
    run.add_argument("--oracle", help="graph file used by core-verify")
    run.add_argument("--seed", type=int, default=DEFAULT_SEED)
    run.add_argument("--path-out", default="path.txt")
    run.add_argument("--report")

    exact = commands.add_parser("exact", help="exact longest path of a small graph")
    exact.add_argument("--in", dest="input", required=True)
    exact.add_argument("--budget", type=int, default=EXACT_BUDGET)
    exact.add_argument("--out")

    verify = commands.add_parser("verify", help="check an RS file, a path or a lemma")
    verify.add_argument("target", choices=tuple(_VERIFIERS))
    verify.add_argument("--instance")
    verify.add_argument("--rs")
    verify.add_argument("--graph")
    verify.add_argument("--path")

    experiment = commands.add_parser("experiment", help="run a named experiment and write its report")
    experiment.add_argument("--name", choices=EXPERIMENTS, required=True)
    experiment.add_argument("--trials", type=int)
    experiment.add_argument("--seed", type=int, default=DEFAULT_SEED)
    for name in ("n", "r", "t", "N", "ell", "space", "m", "k", "support", "workers"):
        experiment.add_argument(f"--{name}", type=int)
    for name in ("d", "delta", "decoys"):
        experiment.add_argument(f"--{name}", type=float)
    experiment.add_argument("--sample-constant", dest="sample_constant", type=float)
    experiment.add_argument("--mode", choices=MODES)
    experiment.add_argument("--sampler", choices=("reservoir", "l0"))
    experiment.add_argument("--out", required=True)
    experiment.add_argument("--format", choices=FORMATS, default="csv")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, RuntimeError, OSError) as e:
        logger.error("%s failed: %s", args.command, e)
        logger.debug("traceback", exc_info=True)
        return EXIT_ERROR
