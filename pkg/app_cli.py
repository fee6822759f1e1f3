"""
Sawtooth Mode Decomposition command line.

    python app_cli.py decompose --input data.csv --out out --svg
    python app_cli.py bench --sizes 10000 100000 --seed 1
    python app_cli.py generate --kind two-tone --n 4000 --out two_tone.csv
"""

import argparse
import sys
from typing import List, Optional

from colorama import init

from io_tool.commands import DEFAULT_BENCH_SIZES, EMD_LIMIT, cmd_bench, cmd_decompose, cmd_generate
from io_tool.signals import KINDS
from series_tool.extension import ExtensionPolicy
from sawtooth_tool.mode import ResidueStrategy
from utilities.config import LOG_LEVEL, MAX_COMPONENTS, MAX_MODES, METHODS, RunConfig
from utilities.utilities import setup_logging

# Initialize colorama
init()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="app_cli.py", description="Sawtooth intrinsic mode decomposition")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    dec = commands.add_parser("decompose", help="decompose a CSV series into modes")
    source = dec.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", dest="input_path", help="CSV file of t,value rows")
    source.add_argument("--generate", choices=KINDS, help="use a generated series instead of a file")
    dec.add_argument("--n", type=int, default=2000, help="samples for --generate")
    dec.add_argument("--seed", type=int, default=0)
    dec.add_argument("--method", choices=METHODS, default="sawtooth")
    dec.add_argument("--extension", dest="policy", choices=[p.value for p in ExtensionPolicy], default="even")
    dec.add_argument("--strategy", choices=[s.value for s in ResidueStrategy], default="mean")
    dec.add_argument("--epsilon", type=float, help="stop threshold of the expansion method")
    dec.add_argument("--max-modes", type=int, default=MAX_MODES)
    dec.add_argument("--max-components", type=int, default=MAX_COMPONENTS)
    dec.add_argument("--out", dest="out_dir", default="out")
    dec.add_argument("--svg", action="store_true", help="also write SVG charts")

    bench = commands.add_parser("bench", help="time the sawtooth method against EMD")
    bench.add_argument("--sizes", type=int, nargs="+", default=list(DEFAULT_BENCH_SIZES))
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--kind", choices=KINDS, default="randomwalk")
    bench.add_argument("--emd-limit", type=int, default=EMD_LIMIT, help="largest size EMD also runs on")
    bench.add_argument("--extension", dest="policy", choices=[p.value for p in ExtensionPolicy], default="even")
    bench.add_argument("--strategy", choices=[s.value for s in ResidueStrategy], default="mean")
    bench.add_argument("--max-modes", type=int, default=MAX_MODES)
    bench.add_argument("--out", dest="out_dir", default="out")

    gen = commands.add_parser("generate", help="write a generated series as CSV")
    gen.add_argument("--kind", choices=KINDS, default="sine")
    gen.add_argument("--n", type=int, default=2000)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="output file (stdout when omitted)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    if args.command == "decompose":
        config = RunConfig(
            method=args.method,
            policy=args.policy,
            strategy=args.strategy,
            max_modes=args.max_modes,
            epsilon=args.epsilon,
            max_components=args.max_components,
            input_path=args.input_path,
            generate=args.generate,
            n=args.n,
            seed=args.seed,
            out_dir=args.out_dir,
            svg=args.svg,
        )
        return cmd_decompose(config)
    if args.command == "bench":
        return cmd_bench(
            sizes=args.sizes,
            seed=args.seed,
            out_dir=args.out_dir,
            kind=args.kind,
            emd_limit=args.emd_limit,
            policy=ExtensionPolicy.from_name(args.policy),
            strategy=ResidueStrategy.from_name(args.strategy),
            max_modes=args.max_modes,
        )
    return cmd_generate(args.kind, args.n, args.seed, args.out)


if __name__ == "__main__":
    sys.exit(main())
