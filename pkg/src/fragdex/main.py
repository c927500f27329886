"""CLI entry point and argument parsing for fragdex."""

import argparse
import sys
from typing import List, Optional

from . import __version__
from .errors import FragdexError, VerificationError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("Common Options")
    group.add_argument("--config", metavar="FILE", help="Settings file layered over user and project settings")
    group.add_argument("--seed", type=int, help="Seed for every random choice (default: 0)")
    group.add_argument("--output", metavar="FILE", help="Primary output file (default: stdout)")
    group.add_argument("--format", dest="output_format", choices=["tsv", "json"], help="Hit output format")
    group.add_argument("--log-file", metavar="FILE", help="JSON-lines run log")
    group.add_argument("--workers", type=int, help="Threads for batch queries")
    group.add_argument("--verbose", action="store_true", help="Progress messages on stderr")
    return common


def _dataset_options(parser: argparse.ArgumentParser, index: bool = True) -> None:
    group = parser.add_argument_group("Dataset Options")
    group.add_argument("--fasta", metavar="FILE", help="FASTA dataset (.gz accepted)")
    if index:
        group.add_argument("--index", metavar="FILE", help="Index file")
    group.add_argument("--frag-length", dest="frag_length", type=int, help="Fragment length m")
    group.add_argument("--partitions", metavar="SPEC", help="Alphabet partitions, e.g. 'TSAN,ILVM,KR,DEQ,WFYH,GPC'")
    group.add_argument("--matrix", metavar="NAME", help="Score matrix file or bundled name (default: BLOSUM62)")


def create_parser() -> argparse.ArgumentParser:
    """Create the main argument parser with all subcommands."""
    parser = argparse.ArgumentParser(
        prog="fragdex",
        description="fragdex - indexed similarity search over protein fragments.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  fragdex build --fasta db.fa --index db.fsix --frag-length 6
  fragdex search --fasta db.fa --index db.fsix --query ACDEFG --k 10
  fragdex search --fasta db.fa --index db.fsix --query-fasta q.fa --evalue 1.0
  fragdex bench --fasta db.fa --index db.fsix --bench-queries 200 --verify
  fragdex iterate --fasta db.fa --index db.fsix --query-fasta protein.fa --pssm-dir pssms
  fragdex distexp --generator cube --dim 3
  fragdex audit
        """,
    )
    parser.add_argument("--version", action="version", version=f"fragdex {__version__}")

    common = _common_options()
    subparsers = parser.add_subparsers(title="Subcommands", dest="command", metavar="COMMAND")

    build = subparsers.add_parser("build", parents=[common], help="Build an index from a FASTA file")
    _dataset_options(build)
    build.add_argument("--report", metavar="FILE", help="Write the build report as JSON")

    search = subparsers.add_parser("search", parents=[common], help="Range, kNN, PSSM or E-value search")
    _dataset_options(search)
    queries = search.add_argument_group("Query Options")
    queries.add_argument("--query", action="append", metavar="FRAGMENT", help="Query fragment (repeatable)")
    queries.add_argument("--query-fasta", metavar="FILE", help="One query fragment per FASTA record")
    queries.add_argument("--random", type=int, metavar="COUNT", help="Random background queries")
    queries.add_argument("--pssm", metavar="FILE", help="PSSM query")
    mode = search.add_argument_group("Mode Options")
    mode.add_argument("--radius", type=int, help="Range search radius")
    mode.add_argument("--k", type=int, help="Nearest neighbours (ties at the k-th distance included)")
    mode.add_argument("--evalue", type=float, help="Range search at the radius for this E-value")
    mode.add_argument("--symmetric", action="store_true", help="Use max(d(x,y), d(y,x)) instead of d")
    mode.add_argument("--verify", action="store_true", help="Check every result against a full scan")
    mode.add_argument("--dist-output", metavar="FILE", help="Score distribution dump in E-value mode")

    bench = subparsers.add_parser("bench", parents=[common], help="Random-query benchmark")
    _dataset_options(bench)
    bench.add_argument("--bench-queries", type=int, metavar="COUNT", help="Number of random queries")
    bench.add_argument("--bench-k", type=int, nargs="+", metavar="K", help="k values to run")
    bench.add_argument("--mixture", metavar="FILE", help="Draw queries from a Dirichlet mixture")
    bench.add_argument("--symmetric", action="store_true", help="Use max(d(x,y), d(y,x)) instead of d")
    bench.add_argument("--verify", action="store_true", help="Check every result against a full scan")

    iterate = subparsers.add_parser("iterate", parents=[common], help="Iterative PSSM search over query windows")
    _dataset_options(iterate)
    iterate.add_argument("--query", action="append", metavar="SEQUENCE", help="Query sequence (repeatable)")
    iterate.add_argument("--query-fasta", metavar="FILE", help="Query sequences")
    iterate.add_argument("--mixture", metavar="FILE", help="Dirichlet mixture (default: bundled uniform)")
    iterate.add_argument("--evalue-schedule", type=float, nargs="+", metavar="E", help="E-value per iteration")
    iterate.add_argument("--min-hits", type=int, help="Hits needed to keep a window active (default: 30)")
    iterate.add_argument("--max-iterations", type=int, help="Iterations per window (default: 5)")
    iterate.add_argument("--pssm-dir", metavar="DIR", help="Write the final PSSM of every window")

    distexp = subparsers.add_parser("distexp", parents=[common], help="Estimate the distance exponent")
    _dataset_options(distexp, index=False)
    distexp.add_argument("--generator", choices=sorted(_generator_names()), help="Built-in point generator")
    distexp.add_argument("--dim", type=int, help="Generator dimension")
    distexp.add_argument("--points", type=int, help="Generated points (default: 5000)")
    distexp.add_argument("--points-file", metavar="FILE", help="Whitespace-separated coordinates, one point per line")
    distexp.add_argument("--metric", choices=["linf", "l2", "l1", "geodesic"], help="Point metric")
    distexp.add_argument("--pair-budget", type=int, help="Pairs to evaluate (default: 200000)")
    distexp.add_argument("--percentile-cap", type=float, help="Upper F value of the log-log fit")
    distexp.add_argument("--min-pair-count", type=int, help="Pairs needed per log-log point")
    distexp.add_argument("--window-levels", type=float, nargs="+", metavar="F", help="Monomial fit window levels")
    distexp.add_argument("--candidate-exponents", type=float, nargs="+", metavar="P", help="Exponents to try")
    distexp.add_argument("--refine", action="store_true", help="Refine the best exponent off the grid")
    distexp.add_argument("--cdf-output", metavar="FILE", help="Dump the sampled distance CDF")

    audit = subparsers.add_parser("audit", parents=[common], help="Triangle inequality audit of score matrices")
    audit.add_argument("matrices", nargs="*", metavar="MATRIX", help="Matrix files or bundled names (default: all bundled)")

    return parser


def _generator_names():
    from .distexp.generators import GENERATORS
    return GENERATORS.keys()


def _dispatch(config, renderer) -> None:
    from .commands import cmd_audit, cmd_bench, cmd_build, cmd_distexp, cmd_iterate, cmd_search

    if config.command == "build":
        renderer.build_report(cmd_build(config))
    elif config.command == "search":
        results = cmd_search(config)
        if config.verbose:
            renderer.dim(f"{len(results)} queries, {sum(len(r.hits) for r in results)} hits")
    elif config.command == "bench":
        report = cmd_bench(config)
        renderer.bench_report(report.aggregates)
        if report.verified:
            renderer.success(f"All {len(report.rows)} searches match the sequential scan")
    elif config.command == "iterate":
        runs = cmd_iterate(config, renderer)
        renderer.dim(f"{sum(len(states) for _, states in runs)} windows iterated")
    elif config.command == "distexp":
        renderer.exponent_report(cmd_distexp(config))
    elif config.command == "audit":
        renderer.audit_report(cmd_audit(config))


def run_command(config, renderer) -> int:
    """Dispatch one configured subcommand and render its summary.

    Run events go to --log-file while the command runs.
    """
    from .runlog import close_run_log, configure_run_log

    configure_run_log(config.log_file)
    try:
        _dispatch(config, renderer)
    finally:
        close_run_log()
    return EXIT_OK


def main(args: Optional[List[str]] = None) -> int:
    """Main entry point for the fragdex command.

    Args:
        args: Command line arguments (defaults to sys.argv[1:])

    Returns:
        0 success, 1 usage error, 2 data error, 3 verification failure
    """
    from .commands.config import RunConfig
    from .ui.renderer import Renderer

    parser = create_parser()
    try:
        parsed_args = parser.parse_args(args)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if parsed_args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    renderer = Renderer()
    try:
        config = RunConfig.from_args(parsed_args)
    except (ValueError, FileNotFoundError) as e:
        renderer.error(str(e))
        return EXIT_USAGE

    try:
        return run_command(config, renderer)
    except VerificationError as e:
        renderer.error(f"Verification failed for query {e.query}: {e}")
        return EXIT_VERIFY
    except (FragdexError, OSError) as e:
        if config.verbose:
            import traceback
            traceback.print_exc()
        renderer.error(str(e))
        return EXIT_DATA
    except KeyboardInterrupt:
        print("\nInterrupted.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
