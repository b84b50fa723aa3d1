"""Command-line front end.

Exit codes: 0 success, 1 failed verification checks, 2 configuration errors
(argparse's own convention), 3 input errors, 4 weight errors, 5 component
cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Iterator, Optional, Tuple

from .corpus import (cc_benchmark, disc_benchmark, mixed_components,
                     padded_triangles, random_graph, random_small_components,
                     weighted_path)
from .errors import (BadWeightError, BadWError, ComponentTooLargeError,
                     StreamscopeError)
from .estimators import (EstimatorParams, cc_param_scales, disc_param_scales,
                         mis_estimate, mst_weight, num_cc, num_disc)
from .graphs import Edge, Graph, load_edge_list, serialize_edge_list
from .oracles import (exact_cc_histogram, exact_disc_freq, exact_mis,
                      kruskal_mst, make_component_mis_oracle)
from .streams import EdgeStream, shuffle_stream, split_seed
from .verification import run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_WEIGHT = 4
EXIT_COMPONENT_CAP = 5


class _LazyFileStream:
    """One-pass edge stream read straight from a file, nothing materialized.

    Debugging aid for space-discipline runs: the order is the file order, not
    random, and no duplicate detection happens.
    """

    def __init__(self, path: str, weighted: bool):
        self.path = path
        self.weighted = weighted
        self.W = None

    def __iter__(self) -> Iterator[Tuple[Edge, int]]:
        t = 0
        with open(self.path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line or line.startswith("n="):
                    continue
                parts = line.split()
                u, v = int(parts[0]), int(parts[1])
                w = int(parts[2]) if len(parts) == 3 else None
                t += 1
                yield Edge(min(u, v), max(u, v), w), t


def _default_seed() -> int:
    env = os.environ.get("STREAMSCOPE_SEED")
    return int(env) if env else 0


class ConfigError(Exception):
    pass


def _load_graph(args) -> Graph:
    """Load or generate the input graph, insisting on an explicit vertex
    count: isolated vertices never appear in an edge stream, so n must come
    from --n, an n= header, or the generator."""
    if getattr(args, "gen", None):
        return _generate(args.gen, getattr(args, "n", None))
    with open(args.input, "rb") as fh:
        text = fh.read()
    had_header = any(line.strip().startswith(b"n=")
                     for line in text.splitlines())
    if getattr(args, "n", None) is None and not had_header:
        raise ConfigError(
            "--n is required when the edge list carries no n= header")
    return load_edge_list(text, n_override=getattr(args, "n", None),
                          w_override=getattr(args, "W", None))


def _generate(spec: str, n_override: Optional[int]) -> Graph:
    name, _, arg = spec.partition(":")
    if name == "cc-benchmark":
        return cc_benchmark()
    if name == "disc-benchmark":
        return disc_benchmark()
    if name == "mst-path":
        return weighted_path()
    if name == "mis-components":
        return random_small_components(300, 6, int(arg) if arg else 7)
    if name == "triangles":
        return mixed_components(triangles=int(arg) if arg else 10)
    if name == "padded-triangles":
        return padded_triangles(int(arg) if arg else 1000)
    if name == "random":
        fields = [int(x) for x in arg.split(",")]
        n, m = fields[0], fields[1]
        seed = fields[2] if len(fields) > 2 else 0
        return random_graph(n, m, seed)
    raise KeyError(f"unknown generator {name!r}")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _stream_for(args, g: Graph) -> EdgeStream:
    if getattr(args, "stream_order", "shuffled") == "given":
        if args.input:
            return _LazyFileStream(args.input, g.weighted)
        from .streams import given_order_stream
        return given_order_stream(g)
    return shuffle_stream(g, split_seed(args.seed, "permutation"))


def _params(args, **overrides) -> EstimatorParams:
    return EstimatorParams(
        tau=args.tau, s=args.samples, k_max=getattr(args, "kmax", 1),
        seed=split_seed(args.seed, "estimator"),
        epsilon=getattr(args, "epsilon", None),
        rho=getattr(args, "rho", None),
        delta=getattr(args, "delta", None), **overrides)


def cmd_run_cc(args) -> int:
    if args.stream_order == "given" and args.input and not args.exact:
        # one-pass file replay with nothing materialized; n must be explicit
        if args.n is None:
            raise ConfigError("--n is required with --stream-order given")
        stream = _LazyFileStream(args.input, weighted=False)
        report = num_cc(stream, args.n, _params(args))
        _emit(args, report.to_json())
        return EXIT_OK
    g = _load_graph(args)
    n = args.n if args.n is not None else g.n
    if args.exact:
        hist = exact_cc_histogram(g)
        import json
        doc = {"algorithm": "num-cc-exact", "n": n,
               "per_k": {str(k): c for k, c in sorted(hist.items())},
               "total": sum(hist.values())}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
        return EXIT_OK
    report = num_cc(_stream_for(args, g), n, _params(args))
    _emit(args, report.to_json())
    return EXIT_OK


def cmd_run_mst(args) -> int:
    g = _load_graph(args)
    n = args.n if args.n is not None else g.n
    W = args.W if args.W is not None else g.W
    if W is None:
        raise BadWError("weighted input or --W required")
    if args.exact:
        import json
        doc = {"algorithm": "mst-weight-exact", "n": n, "W": W,
               "estimate": kruskal_mst(g)}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
        return EXIT_OK
    if W == 1:
        import json
        doc = {"algorithm": "mst-weight", "n": n, "W": 1,
               "estimate": n - 1, "per_threshold": {}}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
        return EXIT_OK
    report = mst_weight(_stream_for(args, g), n, W, _params(args))
    _emit(args, report.to_json())
    return EXIT_OK


def cmd_run_disc(args) -> int:
    g = _load_graph(args)
    n = args.n if args.n is not None else g.n
    if args.exact:
        import json
        hist = exact_disc_freq(g, args.k, args.d)
        doc = {"algorithm": "num-disc-exact", "n": n, "k": args.k, "d": args.d,
               "per_type": {dt.hex: c for dt, c in sorted(hist.items())}}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
        return EXIT_OK
    report = num_disc(_stream_for(args, g), n, args.k, args.d, _params(args))
    _emit(args, report.to_json())
    return EXIT_OK


def cmd_run_mis(args) -> int:
    g = _load_graph(args)
    n = args.n if args.n is not None else g.n
    if args.exact:
        import json
        size, witness = exact_mis(g, args.mis_component_cap)
        doc = {"algorithm": "mis-exact", "n": n, "estimate": size,
               "witness": witness}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
        return EXIT_OK
    oracle = make_component_mis_oracle(g, args.mis_component_cap)
    report = num_disc(_stream_for(args, g), n, args.k + 1, args.d,
                      _params(args))
    mis = mis_estimate(report, n, args.d, args.k, args.mis_samples, oracle,
                       seed=split_seed(args.seed, "mis"),
                       oracle_name="exact-component")
    _emit(args, mis.to_json())
    return EXIT_OK


def cmd_gen(args) -> int:
    g = _generate(args.preset, None)
    _emit(args, serialize_edge_list(g))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks(only=args.only, jobs=args.jobs, fast=args.fast,
                         mutate=args.mutate)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(r.line())
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed")
        return EXIT_CHECK_FAILED
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def cmd_params(args) -> int:
    log_tau, log_s = cc_param_scales(args.epsilon, args.rho)
    print(f"component counting: log10(tau) = {log_tau:.2f}, "
          f"log10(samples) = {log_s:.2f}")
    if args.k is not None and args.d is not None:
        dt, ds = disc_param_scales(args.k, args.d, args.delta or args.epsilon,
                                   args.rho)
        print(f"disc frequency:     log10(tau) = {dt:.2f}, "
              f"log10(samples) = {ds:.2f}")
    print("documentation only; these magnitudes are not runnable settings")
    return EXIT_OK


def _add_common(p, weighted: bool = False, kmax: bool = False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--gen", help="generator preset, e.g. cc-benchmark")
    p.add_argument("--n", type=int, default=None,
                   help="vertex count (required when isolated vertices exist "
                        "and the file has no n= header)")
    p.add_argument("--tau", type=float, required=True,
                   help="first-phase probability in (0,1)")
    p.add_argument("--samples", type=int, required=True,
                   help="number of sampled roots")
    if kmax:
        p.add_argument("--kmax", type=int, required=True,
                       help="largest component size the estimator resolves")
    p.add_argument("--seed", type=int, default=_default_seed(),
                   help="master seed (default: STREAMSCOPE_SEED or 0)")
    p.add_argument("--out", help="report file (default: stdout)")
    p.add_argument("--exact", action="store_true",
                   help="bypass streaming and emit the exact oracle answer")
    p.add_argument("--stream-order", choices=("shuffled", "given"),
                   default="shuffled",
                   help="'given' replays the file order in one pass without "
                        "materializing the edge set (debugging)")
    if weighted:
        p.add_argument("--W", type=int, default=None,
                       help="maximum edge weight (inferred when omitted)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="streamscope",
        description="Random-order stream estimators for component counts, "
                    "spanning weight, disc-type frequencies and independent "
                    "set size, with exact verification oracles.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-cc", help="estimate number of connected components")
    _add_common(p, kmax=True)
    p.set_defaults(fn=cmd_run_cc)

    p = sub.add_parser("run-mst", help="estimate minimum spanning tree weight")
    _add_common(p, weighted=True, kmax=True)
    p.set_defaults(fn=cmd_run_mst)

    p = sub.add_parser("run-disc", help="estimate bounded-disc type frequencies")
    _add_common(p)
    p.add_argument("--k", type=int, required=True, help="disc radius")
    p.add_argument("--d", type=int, required=True, help="degree bound")
    p.set_defaults(fn=cmd_run_disc)

    p = sub.add_parser("run-mis", help="estimate maximum independent set size")
    _add_common(p)
    p.add_argument("--k", type=int, required=True, help="disc radius")
    p.add_argument("--d", type=int, required=True, help="degree bound")
    p.add_argument("--mis-samples", type=int, default=500,
                   help="disc-type draws for the membership estimate")
    p.add_argument("--mis-component-cap", type=int, default=20,
                   help="largest component the reference oracle will solve")
    p.set_defaults(fn=cmd_run_mis)

    p = sub.add_parser("gen", help="write a benchmark corpus as an edge list")
    p.add_argument("--preset", required=True,
                   help="cc-benchmark | disc-benchmark | mst-path | "
                        "mis-components[:seed] | triangles:N | "
                        "padded-triangles:M | random:n,m[,seed]")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="run the verification check suite")
    p.add_argument("--only", default=None, help="run a single named check")
    p.add_argument("--fast", action="store_true",
                   help="smaller randomized case counts")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for the Monte-Carlo sweep; results "
                        "are identical for any value")
    p.add_argument("--mutate", default=None, choices=("depth-gap",),
                   help="inject a deliberate defect (meta-testing)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("params", help="print the analysis-mandated parameter "
                                      "magnitudes (documentation only)")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.set_defaults(fn=cmd_params)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ComponentTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPONENT_CAP
    except (BadWeightError, BadWError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WEIGHT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StreamscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
