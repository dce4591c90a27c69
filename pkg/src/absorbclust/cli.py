"""Command-line interface.

Graph arguments are either a path to an edge-list file or one of the
built-in specs ``builtin:karate``, ``builtin:caveman[:CAVES,SIZE]`` and
``builtin:gnp:N,P,SEED``. Vertex labels on the command line and in every
output are the graph's external labels.

Exit codes: 0 success, 2 input error, 3 numerical or degenerate result.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .approx import spectrum_profile
from .classify import METHODS, CLASSIFIERS, DegenerateScoresError, local_cluster
from .descent import DescentParams, default_params, descend
from .experiments import ESTIMATORS, compare_rows, map_ordered, series_trace, estimate
from .graph import (Graph, GraphFormatError, builtin_karate, gen_caveman, gen_gnp,
                    load_edge_list, write_edge_list)
from .io import open_out, write_manifest, write_matrix, write_rows, write_vector
from .markov import absorbing_chain, absorption_exact, absorption_matrix, simulate_absorption
from .spectral import (dirichlet_fiedler_exact, eig_symmetric, global_fiedler,
                       normalized_laplacian)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class InputError(Exception):
    pass


class NumericalError(Exception):
    pass


def resolve_graph(source: str) -> Graph:
    if source.startswith("builtin:"):
        kind, _, args = source[len("builtin:"):].partition(":")
        try:
            vals = [x for x in args.split(",") if x]
            if kind == "karate" and not vals:
                return builtin_karate()[0]
            if kind == "caveman":
                caves, size = (int(v) for v in vals) if vals else (6, 5)
                return gen_caveman(caves, size)
            if kind == "gnp" and len(vals) == 3:
                return gen_gnp(int(vals[0]), float(vals[1]), int(vals[2]))
        except ValueError as exc:
            raise InputError(f"bad builtin graph {source!r}: {exc}") from exc
        raise InputError(f"unknown builtin graph {source!r}")
    path = Path(source)
    try:
        with open(path, encoding="utf-8") as fh:
            return load_edge_list(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    except GraphFormatError as exc:
        raise InputError(f"{source}: {exc}") from exc


def resolve_seed(g: Graph, label: int) -> int:
    try:
        return g.index_of(label)
    except KeyError:
        raise InputError(f"no vertex labelled {label}") from None


def _seeds(g: Graph, args) -> list[int]:
    if getattr(args, "all_seeds", False):
        return list(range(g.n))
    if getattr(args, "random_seeds", None):
        rng = np.random.Generator(np.random.PCG64(args.rng_seed))
        return sorted(rng.choice(g.n, size=min(args.random_seeds, g.n), replace=False).tolist())
    if not args.seed:
        raise InputError("give --seed, --all-seeds or --random-seeds")
    return [resolve_seed(g, s) for s in args.seed]


def _params_from(args, g: Graph) -> DescentParams:
    base = default_params(args.avg_degree or g.avg_degree, args.max_iters)
    return DescentParams(args.c or base.c, args.delta or base.delta,
                         args.epsilon or base.epsilon, args.max_iters)


def cmd_generate(args) -> int:
    if args.kind == "caveman":
        g, truth, params = gen_caveman(args.caves, args.size), None, {"caves": args.caves,
                                                                      "size": args.size}
    elif args.kind == "gnp":
        g, truth, params = gen_gnp(args.n, args.p, args.seed), None, {"n": args.n, "p": args.p}
    else:
        (g, truth), params = builtin_karate(), {}
    extra = []
    with open_out(args.out) as fh:
        write_edge_list(g, fh, header=f"{args.kind} graph: {g.n} vertices, {g.n_edges} edges")
    if truth is not None and args.out not in (None, "-"):
        side = f"{args.out}.truth.csv"
        with open_out(side) as fh:
            write_rows(fh, ["vertex_label", "faction"],
                       ((g.label_of(v), c) for v, c in enumerate(truth.labels)))
        extra.append(side)
    write_manifest(args.out, "generate", args.kind, params,
                   {"gnp": args.seed} if args.kind == "gnp" else None, extra)
    return EXIT_OK


def cmd_absorb(args) -> int:
    g = resolve_graph(args.graph)
    params = {"mode": args.mode, "lazy": args.lazy}
    rng = {}
    if args.all_seeds:
        if args.mode != "exact":
            raise InputError("--all-seeds is only available with --mode exact")
        with open_out(args.out) as fh:
            write_matrix(fh, g, absorption_matrix(g, args.lazy))
    else:
        if args.seed is None:
            raise InputError("give --seed or --all-seeds")
        seed = resolve_seed(g, args.seed)
        params["seed"] = args.seed
        if args.mode == "simulate":
            starts = ([resolve_seed(g, args.start)] if args.start is not None
                      else [v for v in range(g.n) if v != seed])
            if seed in starts:
                raise InputError("start vertex must differ from the seed")
            params.update(walks=args.walks, max_steps=args.max_steps)
            rng["walks"] = args.rng_seed
            results = map_ordered(lambda s: simulate_absorption(
                g, seed, s, args.walks, args.max_steps, args.rng_seed), starts)
            with open_out(args.out) as fh:
                write_rows(fh, ["vertex_label", "mean", "stderr", "truncated", "completed"],
                           ((g.label_of(s), r.mean, r.stderr, r.truncated, r.completed)
                            for s, r in zip(starts, results)))
        else:
            chain = absorbing_chain(g, seed, args.lazy)
            if args.mode == "exact":
                values = absorption_exact(chain).m
            elif args.mode == "local":
                p = _params_from(args, g)
                params.update(c=p.c, delta=p.delta, epsilon=p.epsilon)
                fe = descend(g, seed, p, record_trace=args.trace is not None)
                if args.trace is not None:
                    with open_out(args.trace) as fh:
                        write_rows(fh, ["t", "max_change", "touched_count", "objective"],
                                   fe.trace)
                if not fe.converged:
                    raise NumericalError("local descent did not converge")
                values = np.delete(fe.v_tilde, seed)
            else:
                params["T"] = args.T
                values = estimate(g, seed, args.mode, args.T, args.lazy)
            with open_out(args.out) as fh:
                if args.format == "json":
                    json.dump({"seed": args.seed, "mode": args.mode,
                               "m": {str(g.label_of(int(i))): float(x)
                                     for i, x in zip(chain.index, values)}}, fh, indent=2)
                    fh.write("\n")
                else:
                    write_vector(fh, g, chain.index, values,
                                 "v" if args.mode == "local" else "m")
    write_manifest(args.out, "absorb", args.graph, params, rng)
    return EXIT_OK


def cmd_compare(args) -> int:
    g = resolve_graph(args.graph)
    seeds = _seeds(g, args)
    params = {"estimators": args.estimators, "T": args.T,
              "seeds": [g.label_of(s) for s in seeds]}
    if args.series_sweep is not None:
        tr = series_trace(g, seeds, args.series_sweep)
        with open_out(args.out) as fh:
            write_rows(fh, ["T", "sse", "pearson", "sse_std", "pearson_std"],
                       zip(tr["T"], tr["sse"], tr["pearson"], tr["sse_std"], tr["pearson_std"]))
        print(f"rank1 mean sse={tr['rank1_sse']:.6g} mean pearson={tr['rank1_pearson']:.6f}",
              file=sys.stderr)
        params["series_sweep"] = args.series_sweep
    else:
        rows = compare_rows(g, seeds, args.estimators, args.T, args.lazy)
        with open_out(args.out) as fh:
            write_rows(fh, ["seed_label", "estimator", "pearson", "sse_per_vertex",
                            "max_abs_diff"],
                       ((g.label_of(s), name, *rest) for s, name, *rest in rows))
        for name in args.estimators:
            vals = np.array([r[2] for r in rows if r[1] == name])
            print(f"{name}: mean pearson={np.nanmean(vals):.6f} over {len(vals)} seeds",
                  file=sys.stderr)
    write_manifest(args.out, "compare", args.graph, params,
                   {"seed_sampling": args.rng_seed} if args.random_seeds else None)
    return EXIT_OK


def cmd_cluster(args) -> int:
    g = resolve_graph(args.graph)
    seed = resolve_seed(g, args.seed)
    params = _params_from(args, g) if args.method == "local-descent" else None
    cut = local_cluster(g, seed, args.method, args.classifier, cutoff=args.T, params=params,
                        lazy_walk=args.lazy, max_ncut=args.max_ncut)
    doc = cut.to_json_dict(g)
    with open_out(args.out) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    if args.out not in (None, "-"):
        print(f"members: {' '.join(map(str, doc['members']))}", file=sys.stderr)
        print(f"capacity={cut.capacity} ncut={cut.ncut:.4f} low_quality={cut.low_quality}",
              file=sys.stderr)
    write_manifest(args.out, "cluster", args.graph,
                   {"seed": args.seed, "method": args.method, "classifier": args.classifier,
                    "T": args.T, "max_ncut": args.max_ncut,
                    **({"c": params.c, "delta": params.delta, "epsilon": params.epsilon}
                       if params else {})})
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = resolve_graph(args.graph)
    if args.seed is not None:
        values = spectrum_profile(absorbing_chain(g, resolve_seed(g, args.seed)))
    else:
        values = np.array([p.value for p in eig_symmetric(normalized_laplacian(g))])[::-1]
    with open_out(args.out) as fh:
        write_rows(fh, ["index", "eigenvalue"], enumerate(values))
    write_manifest(args.out, "spectrum", args.graph, {"seed": args.seed})
    return EXIT_OK


def cmd_fiedler(args) -> int:
    g = resolve_graph(args.graph)
    if args.seed is not None:
        df = dirichlet_fiedler_exact(g, resolve_seed(g, args.seed))
        index, values = df.index, df.v
    else:
        index, values = np.arange(g.n), global_fiedler(g, args.normalized)
    with open_out(args.out) as fh:
        write_vector(fh, g, index, values, "component")
    write_manifest(args.out, "fiedler", args.graph,
                   {"seed": args.seed, "normalized": args.normalized})
    return EXIT_OK


def _add_descent_flags(p):
    p.add_argument("--c", type=float, help="soft-constraint weight (default 1/avg degree)")
    p.add_argument("--delta", type=float, help="step size (default c/10)")
    p.add_argument("--epsilon", type=float, help="stopping threshold (default delta/10)")
    p.add_argument("--avg-degree", type=float, help="prior estimate of the average degree")
    p.add_argument("--max-iters", type=int, default=100_000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absorbclust",
        description="Absorption times, Dirichlet-Fiedler vectors and local clusters of graphs.",
        epilog="Graphs: an edge-list path, builtin:karate, builtin:caveman[:CAVES,SIZE] or "
               "builtin:gnp:N,P,SEED. Exit codes: 0 ok, 2 input error, 3 numerical/degenerate.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write an experiment graph as an edge list")
    p.add_argument("kind", choices=["caveman", "gnp", "karate"])
    p.add_argument("--caves", type=int, default=6)
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=7, help="generator seed for gnp")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("absorb", help="absorption times to a seed vertex")
    p.add_argument("graph")
    p.add_argument("--seed", type=int)
    p.add_argument("--all-seeds", action="store_true",
                   help="emit the full absorption-time matrix (column = seed)")
    p.add_argument("--mode", choices=["exact", "rank1", "series", "local", "simulate"],
                   default="exact")
    p.add_argument("--T", type=int, default=100, help="series cutoff")
    p.add_argument("--start", type=int, help="start vertex for simulate (default: all)")
    p.add_argument("--walks", type=int, default=10_000)
    p.add_argument("--max-steps", type=int, default=10**6)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--lazy", action="store_true", help="use the lazy walk (I + P)/2")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--trace", metavar="PATH", help="local mode: per-iteration trace CSV")
    _add_descent_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_absorb)

    p = sub.add_parser("compare", help="estimator accuracy against exact absorption times")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, action="append")
    p.add_argument("--all-seeds", action="store_true")
    p.add_argument("--random-seeds", type=int, metavar="K")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--estimators", nargs="+", choices=ESTIMATORS, default=["rank1"])
    p.add_argument("--T", type=int, default=100)
    p.add_argument("--series-sweep", type=int, metavar="T_MAX",
                   help="emit per-cutoff SSE/Pearson traces instead")
    p.add_argument("--lazy", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("cluster", help="local cluster of a seed vertex as JSON")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="exact-absorption")
    p.add_argument("--classifier", choices=CLASSIFIERS, default="kmeans")
    p.add_argument("--T", type=int, default=100)
    p.add_argument("--lazy", action="store_true")
    p.add_argument("--max-ncut", type=float, default=0.5)
    _add_descent_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("spectrum", help="sorted spectrum of the absorbing chain or of the "
                                        "normalised Laplacian")
    p.add_argument("graph")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("fiedler", help="global or Dirichlet (seeded) Fiedler vector")
    p.add_argument("graph")
    p.add_argument("--seed", type=int)
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fiedler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, DegenerateScoresError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
