"""Command line interface: ``hmotifs <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 resource limit.
Every output carries the hash of its :class:`RunManifest`; with ``-o`` the
manifest itself is written next to the output as ``<output>.manifest.json``.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from ._parallel import WORKERS_ENV, fresh_seed, resolve_workers
from .bench import DEFAULT_BUDGETS, DEFAULT_FRACTIONS, memo_sweep, sample_sweep, thread_sweep, write_csv
from .exact import count_exact, enumerate_instances, per_hyperedge_features
from .exceptions import HypergraphError, InputFormatError, ResourceLimitError
from .formats import read_vector, vector_json, vector_tsv
from .hypergraph import degree_stats, load_hypergraph, write_hypergraph
from .memo import POLICIES, NeighborhoodProvider, neighborhood_sizes, parse_budget, wedge_sampling_with_cache
from .motifs import N_MOTIFS, motif_table, pattern_to_bits
from .profile import characteristic_profile, cp_similarity_matrix, rank_difference, relative_count, significance
from .projection import project, wedge_index
from .randomize import RandomizationConfig, null_counts, randomize_hypergraph, trial_seeds
from .sampling import SamplerConfig, count_approx_edge, count_approx_wedge, relative_error

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

logger = logging.getLogger("hmotifs")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    """Configuration and provenance of one CLI run.

    The hash covers everything that determines the output; wall-clock time,
    output paths and cache instrumentation are recorded but not hashed.
    """

    subcommand: str
    argv: list
    inputs: list = field(default_factory=list)
    seed: int | None = None
    workers: int | None = None
    sample_count: int | None = None
    memo_budget: str | None = None
    memo_policy: str | None = None
    trials: int | None = None
    options: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    wall_clock: float | None = None
    neighborhoods_constructed: int | None = None
    version: str = __version__

    _UNHASHED = ("argv", "outputs", "wall_clock", "neighborhoods_constructed")

    def add_input(self, path) -> None:
        self.inputs.append({"path": str(path), "sha256": _file_digest(path)})

    def digest(self) -> str:
        d = {k: v for k, v in asdict(self).items() if k not in self._UNHASHED}
        blob = json.dumps(d, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["hash"] = self.digest()
        return d


def _load(path, manifest: RunManifest, fmt: str):
    G = load_hypergraph(path, format=fmt)
    manifest.add_input(path)
    return G


def _sample_count(spec: str, population: int) -> int:
    text = str(spec).strip()
    if text[:2] in ("s=", "r="):
        text = text[2:]
    try:
        if text.endswith("%"):
            n = math.ceil(float(text[:-1]) / 100.0 * population)
        else:
            n = int(text)
    except ValueError:
        raise UsageError(f"invalid sample count {spec!r}") from None
    if n < 1:
        raise UsageError(f"sample count must be positive, got {spec!r}")
    return n


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"invalid number list {text!r}") from None


def _finish(args, manifest: RunManifest) -> None:
    """Record timing and write the manifest sidecar(s)."""
    manifest.wall_clock = time.perf_counter() - args._t0
    targets = [args.manifest] if args.manifest else []
    if args.output:
        manifest.outputs.append(str(args.output))
        targets.append(str(args.output) + ".manifest.json")
    blob = json.dumps(manifest.to_dict(), indent=2, default=str) + "\n"
    for path in targets:
        Path(path).write_text(blob, encoding="utf-8")


def _emit(args, manifest: RunManifest, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    _finish(args, manifest)


def _vector(args, manifest, columns: dict, kind: str, meta: dict) -> str:
    meta = {**meta, "manifest": manifest.digest()}
    return vector_json(columns, kind, meta) if args.json else vector_tsv(columns, kind, meta)


# subcommands


def cmd_stats(args, manifest):
    G = _load(args.input, manifest, args.format)
    n_wedges = len(wedge_index(G, workers=manifest.workers)[0])
    stats = degree_stats(G).to_dict()
    stats.update(n_wedges=n_wedges, dropped_duplicates=G.dropped_duplicates,
                 total_incidences=int(G.edge_ptr[-1]))
    if args.json:
        text = json.dumps({**stats, "manifest": manifest.digest()}, indent=2) + "\n"
    else:
        lines = [f"# hmotifs stats manifest={manifest.digest()}"]
        for key in ("n_nodes", "n_edges", "n_wedges", "max_edge_size",
                    "dropped_duplicates", "total_incidences"):
            lines.append(f"{key}\t{stats[key]}")
        for key in ("size_distribution", "degree_distribution"):
            lines.extend(f"{key}\t{k}\t{v}" for k, v in stats[key].items())
        text = "\n".join(lines) + "\n"
    _emit(args, manifest, text)


def cmd_project(args, manifest):
    G = _load(args.input, manifest, args.format)
    manifest.options["max_wedges"] = args.max_wedges
    P = project(G, workers=manifest.workers, max_wedges=args.max_wedges)
    wedges = [(int(i), int(j), int(w)) for i, j, w in zip(P.wedge_i, P.wedge_j, P.wedge_w)]
    if args.json:
        text = json.dumps({"n_edges": G.n_edges, "n_wedges": P.n_wedges,
                           "manifest": manifest.digest(), "wedges": wedges}) + "\n"
    else:
        head = f"# hmotifs projection n_edges={G.n_edges} n_wedges={P.n_wedges} manifest={manifest.digest()}"
        text = "\n".join([head, "i\tj\tw", *(f"{i}\t{j}\t{w}" for i, j, w in wedges)]) + "\n"
    _emit(args, manifest, text)


def cmd_motif_table(args, manifest):
    table = motif_table()
    rows = table.rows()
    if args.json:
        text = json.dumps({"manifest": manifest.digest(), "motifs": rows}, indent=2) + "\n"
    else:
        lines = [f"# hmotifs motif-table regions=i,j,k,ij,jk,ki,ijk manifest={manifest.digest()}",
                 "motif\topen\tpattern\tpattern_value\torbit_size"]
        for r in rows:
            bits = "".join(str(b) for b in pattern_to_bits(r["pattern_value"]))
            lines.append(f"{r['motif']}\t{int(r['open'])}\t{bits}\t{r['pattern_value']}\t{len(r['orbit'])}")
        text = "\n".join(lines) + "\n"
    _emit(args, manifest, text)


def _approx(G, P, method, n, seed, workers, provider=None, wedges=None):
    cfg = SamplerConfig(n, seed, workers)
    if method == "edge":
        return count_approx_edge(G, P, cfg)
    if provider is not None:
        return wedge_sampling_with_cache(G, provider, cfg, wedges)
    return count_approx_wedge(G, P, cfg)


def cmd_count(args, manifest):
    G = _load(args.input, manifest, args.format)
    workers = manifest.workers
    memo = args.memo_budget is not None
    if memo and args.approx_wedge is None:
        raise UsageError("--memo-budget applies to --approx-wedge only")
    meta = {}
    if args.exact:
        if args.trials != 1:
            raise UsageError("--trials applies to approximate counting only")
        P = project(G, workers=workers, max_wedges=args.max_wedges)
        counts = count_exact(G, P, workers=workers).counts
        columns = {"count": [int(x) for x in counts]}
        meta["method"] = "exact"
        result = counts.astype(np.float64)
    else:
        method = "edge" if args.approx_edge is not None else "wedge"
        spec = args.approx_edge if method == "edge" else args.approx_wedge
        seed = manifest.seed
        provider = wedges = None
        if memo:
            wedges = wedge_index(G, workers=workers)
            sizes = neighborhood_sizes(wedges, G.n_edges)
            budget = parse_budget(args.memo_budget, int(sizes.sum()))
            manifest.memo_budget, manifest.memo_policy = args.memo_budget, args.memo_policy
            provider = NeighborhoodProvider(G, budget, args.memo_policy, seed=seed, sizes=sizes)
            P, population = None, len(wedges[0])
        else:
            P = project(G, workers=workers, max_wedges=args.max_wedges)
            population = G.n_edges if method == "edge" else P.n_wedges
        n = _sample_count(spec, max(population, 1))
        manifest.sample_count, manifest.trials = n, args.trials
        seeds = [seed] if args.trials == 1 else list(trial_seeds(seed, args.trials))
        trials = np.vstack([
            _approx(G, P, method, n, s, workers, provider, wedges).estimates for s in seeds
        ])
        result = trials.mean(axis=0)
        columns = {"count": result.tolist()}
        if args.trials > 1:
            columns["stderr"] = (trials.std(axis=0, ddof=1) / math.sqrt(args.trials)).tolist()
        meta.update(method=method, samples=n, population=population, trials=args.trials)
        if provider is not None:
            manifest.neighborhoods_constructed = provider.stats.constructed
            logger.info("cache: %s", provider.stats.to_dict())
    if args.reference:
        ref = read_vector(args.reference)
        manifest.add_input(args.reference)
        if ref.sum() > 0:
            meta["relative_error"] = repr(relative_error(ref, result))
    _emit(args, manifest, _vector(args, manifest, columns, "counts", meta))


def cmd_enumerate(args, manifest):
    G = _load(args.input, manifest, args.format)
    P = project(G, workers=manifest.workers, max_wedges=args.max_wedges)
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        if not args.json:
            out.write(f"# hmotifs instances manifest={manifest.digest()}\ni\tj\tk\tmotif\n")
        for i, j, k, t in enumerate_instances(G, P):
            if args.json:
                out.write(json.dumps({"i": i, "j": j, "k": k, "motif": t}) + "\n")
            else:
                out.write(f"{i}\t{j}\t{k}\t{t}\n")
    finally:
        if args.output:
            out.close()
    _finish(args, manifest)


def cmd_features(args, manifest):
    G = _load(args.input, manifest, args.format)
    P = project(G, workers=manifest.workers, max_wedges=args.max_wedges)
    X = per_hyperedge_features(G, P, workers=manifest.workers)
    names = [f"motif_{t}" for t in range(1, N_MOTIFS + 1)]
    if args.json:
        text = json.dumps({"manifest": manifest.digest(), "columns": names,
                           "features": X.tolist()}) + "\n"
    else:
        lines = [f"# hmotifs features manifest={manifest.digest()}", "\t".join(["edge", *names])]
        lines.extend("\t".join([str(i), *map(str, row)]) for i, row in enumerate(X.tolist()))
        text = "\n".join(lines) + "\n"
    _emit(args, manifest, text)


def cmd_randomize(args, manifest):
    G = _load(args.input, manifest, args.format)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    manifest.trials = args.trials
    workers = manifest.workers
    method = args.count
    manifest.options["count"] = method
    if method != "exact":
        manifest.options["samples"] = args.samples

    def counter(H, s):
        if H.n_edges == 0:
            return np.zeros(N_MOTIFS)
        P = project(H, workers=workers)
        if method == "exact":
            return count_exact(H, P, workers=workers).counts
        population = H.n_edges if method == "edge" else P.n_wedges
        if population == 0:
            return np.zeros(N_MOTIFS)
        return _approx(H, P, method, _sample_count(args.samples, population), s, workers).estimates

    cfg = RandomizationConfig(args.trials, manifest.seed)
    nulls = null_counts(G, cfg, counter, approximate=method != "exact")
    if args.emit_dir:
        out = Path(args.emit_dir)
        out.mkdir(parents=True, exist_ok=True)
        for k, s in enumerate(nulls.trial_seeds, start=1):
            path = out / f"randomized_{k}.txt"
            write_hypergraph(randomize_hypergraph(G, seed=s), path)
            manifest.outputs.append(str(path))
    columns = {"count": nulls.mean.tolist()}
    for k, row in enumerate(nulls.trial_counts, start=1):
        columns[f"trial_{k}"] = row.tolist()
    meta = {"method": method, "trials": args.trials, "approximate": int(nulls.approximate)}
    _emit(args, manifest, _vector(args, manifest, columns, "null-counts", meta))


def cmd_cp(args, manifest):
    real = read_vector(args.real)
    manifest.add_input(args.real)
    nulls = []
    for path in args.null:
        nulls.append(read_vector(path))
        manifest.add_input(path)
    null_mean = np.array([math.fsum(col) / len(nulls) for col in np.vstack(nulls).T])
    manifest.options["epsilon"] = args.epsilon
    sig = significance(real, null_mean, args.epsilon)
    columns = {
        "delta": sig.delta.tolist(),
        "cp": characteristic_profile(sig).tolist(),
        "relative_count": relative_count(real, null_mean).tolist(),
        "rank_difference": [int(x) for x in rank_difference(real, null_mean)],
        "real": real.tolist(),
        "null": null_mean.tolist(),
    }
    meta = {"epsilon": args.epsilon, "rd": "rank_null-rank_real"}
    _emit(args, manifest, _vector(args, manifest, columns, "profile", meta))


def cmd_compare(args, manifest):
    if len(args.profiles) < 2:
        raise UsageError("compare needs at least two profile files")
    names = args.names.split(",") if args.names else [Path(p).stem for p in args.profiles]
    if len(names) != len(args.profiles):
        raise UsageError("--names must list one name per profile")
    profiles = []
    for path in args.profiles:
        profiles.append(read_vector(path, args.column))
        manifest.add_input(path)
    C = cp_similarity_matrix(profiles)
    if args.json:
        text = json.dumps({"manifest": manifest.digest(), "names": names,
                           "matrix": C.tolist()}, indent=2) + "\n"
    else:
        lines = [f"# hmotifs correlation manifest={manifest.digest()}", "\t".join(["name", *names])]
        lines.extend("\t".join([n, *(repr(float(x)) for x in row)]) for n, row in zip(names, C))
        text = "\n".join(lines) + "\n"
    _emit(args, manifest, text)


def cmd_bench(args, manifest):
    G = _load(args.input, manifest, args.format)
    workers = manifest.workers
    samplers = [s for s, on in (("edge", args.approx_edge), ("wedge", args.approx_wedge)) if on]
    threads = [int(x) for x in _float_list(args.threads)] if args.threads else []
    budgets = [b if b.endswith("%") else b + "%" for b in args.memo_budgets.split(",")] \
        if args.memo_budgets else []
    if not (samplers or threads or budgets):
        samplers = ["wedge"]
    fractions = [f / 100.0 for f in _float_list(args.fractions)] if args.fractions \
        else list(DEFAULT_FRACTIONS)
    manifest.trials = args.trials
    manifest.options.update(samplers=samplers, threads=threads, budgets=budgets,
                            fractions=fractions)
    if args.reference:
        exact = read_vector(args.reference)
        manifest.add_input(args.reference)
    elif samplers or budgets:
        exact = count_exact(G, project(G, workers=workers), workers=workers).counts
    rows = []
    if samplers:
        rows += sample_sweep(G, exact, samplers, fractions, args.trials, manifest.seed, workers)
    if threads:
        rows += thread_sweep(G, threads)
    if budgets:
        rows += memo_sweep(G, exact, fractions[len(fractions) // 2] if args.fractions else 0.1,
                           budgets, args.memo_policy.split(","), args.trials, manifest.seed,
                           workers)
    buf = io.StringIO()
    buf.write(f"# hmotifs bench manifest={manifest.digest()}\n")
    write_csv(rows, buf)
    _emit(args, manifest, buf.getvalue())


COMMANDS = {
    "stats": cmd_stats,
    "project": cmd_project,
    "motif-table": cmd_motif_table,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "features": cmd_features,
    "randomize": cmd_randomize,
    "cp": cmd_cp,
    "compare": cmd_compare,
    "bench": cmd_bench,
}

_SEEDED = {"count", "randomize", "bench"}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--json", action="store_true", help="JSON instead of TSV")
    common.add_argument("--manifest", help="also write the run manifest to this path")
    common.add_argument("--seed", type=int, help="top-level seed for every random stream")
    common.add_argument("--workers", type=int,
                        help=f"worker threads (default: ${WORKERS_ENV} or all cores)")
    common.add_argument("-v", "--verbose", action="store_true")

    graph = _Parser(add_help=False)
    graph.add_argument("input", help="hypergraph file, one hyperedge per line")
    graph.add_argument("--format", choices=("auto", "whitespace", "csv"), default="auto")

    guard = _Parser(add_help=False)
    guard.add_argument("--max-wedges", type=int,
                       help="abort with exit code 3 if the projection exceeds this many hyperwedges")

    parser = _Parser(prog="hmotifs", description="Hypergraph motif counting and profiling.")
    parser.add_argument("--version", action="version", version=f"hmotifs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("stats", parents=[common, graph], help="dataset statistics")
    sub.add_parser("project", parents=[common, graph, guard], help="projected graph as i j w")
    sub.add_parser("motif-table", parents=[common], help="the 26 motif classes")

    p = sub.add_parser("count", parents=[common, graph, guard], help="count motif instances")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--exact", action="store_true")
    how.add_argument("--approx-edge", metavar="N", help="hyperedge samples (count or percent of |E|)")
    how.add_argument("--approx-wedge", metavar="N", help="hyperwedge samples (count or percent)")
    p.add_argument("--trials", type=int, default=1, help="independent sampling runs to average")
    p.add_argument("--reference", help="exact counts file; reports relative error")
    p.add_argument("--memo-budget", help="lazy neighborhoods with a cache of N entries or N%%")
    p.add_argument("--memo-policy", choices=POLICIES, default="degree")

    sub.add_parser("enumerate", parents=[common, graph, guard], help="list every instance")
    sub.add_parser("features", parents=[common, graph, guard], help="per-hyperedge motif counts")

    p = sub.add_parser("randomize", parents=[common, graph], help="null-model counts")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--emit-dir", help="write each randomized hypergraph into this directory")
    p.add_argument("--count", choices=("exact", "edge", "wedge"), default="exact")
    p.add_argument("--samples", default="10%", help="sample count for approximate counting")

    p = sub.add_parser("cp", parents=[common], help="significance and characteristic profile")
    p.add_argument("--real", required=True, help="counts file of the real hypergraph")
    p.add_argument("--null", required=True, nargs="+", help="null-model counts file(s)")
    p.add_argument("--epsilon", type=float, default=1.0)

    p = sub.add_parser("compare", parents=[common], help="correlation of profiles")
    p.add_argument("profiles", nargs="+")
    p.add_argument("--names", help="comma separated labels (default: file stems)")
    p.add_argument("--column", default=None, help="vector column to compare (default: cp)")

    p = sub.add_parser("bench", parents=[common, graph], help="speed/accuracy sweeps as CSV")
    p.add_argument("--approx-edge", action="store_true", help="sweep hyperedge sampling")
    p.add_argument("--approx-wedge", action="store_true", help="sweep hyperwedge sampling")
    p.add_argument("--fractions", help="sample percentages (default 2.5,5,...,25)")
    p.add_argument("--threads", help="worker counts for the exact run, e.g. 1,2,4,8")
    p.add_argument("--memo-budgets", nargs="?", const=",".join(DEFAULT_BUDGETS),
                   help="cache budgets in percent (default 0,0.1,1,10,100)")
    p.add_argument("--memo-policy", default="degree", help="comma separated policies")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--reference", help="exact counts file (skips the exact run)")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    args._t0 = time.perf_counter()
    try:
        if args.command in _SEEDED and args.seed is None:
            args.seed = fresh_seed()
            argv += ["--seed", str(args.seed)]
        if args.seed is not None and args.seed < 0:
            raise UsageError("--seed must be non-negative")
        manifest = RunManifest(args.command, argv, seed=args.seed,
                               workers=resolve_workers(args.workers))
        if getattr(args, "format", None):
            manifest.options["format"] = args.format
        if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 1:
            raise UsageError("--trials must be positive")
        COMMANDS[args.command](args, manifest)
    except UsageError as exc:
        print(f"hmotifs {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"hmotifs {args.command}: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MemoryError:
        print(f"hmotifs {args.command}: out of memory", file=sys.stderr)
        return EXIT_RESOURCE
    except (HypergraphError, InputFormatError, OSError) as exc:
        print(f"hmotifs {args.command}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"hmotifs {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
