"""
The decompose, bench and generate commands behind app_cli.py.
"""

import functools
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from colorama import Fore

from series_tool.errors import DecompositionError
from series_tool.extension import ExtensionPolicy
from series_tool.series import TimeSeries, find_extrema
from emd_tool.compare import compare_methods
from emd_tool.emd import SiftConfig, emd_decompose
from io_tool.csv_io import frame_to_csv, mode_frame, read_csv, residue_frame, write_csv
from io_tool.signals import generate
from io_tool.svg_chart import line_chart
from sawtooth_tool.decomposer import decompose
from sawtooth_tool.expansion import expand_sawtooth, expansion_decompose, expansion_envelopes
from sawtooth_tool.mode import ResidueStrategy
from utilities.config import MAX_MODES, RunConfig
from utilities.utilities import LoadingAnimation, render_box

logger = logging.getLogger(__name__)

DEFAULT_BENCH_SIZES = (10_000, 100_000, 1_000_000)
EMD_LIMIT = 100_000
# A size step counts as linear while time grows at most this much faster than size.
LINEAR_SLACK = 1.3


@dataclass
class ModeColumns:
    """Per-sample columns of one output mode."""
    input: np.ndarray
    imf: np.ndarray
    residue: np.ndarray
    upper: np.ndarray
    lower: np.ndarray


def exit_status(command: Callable[..., int]) -> Callable[..., int]:
    """Turn library and I/O failures into a red box and exit status 1."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)
        except (DecompositionError, OSError) as e:
            logger.debug("command failed", exc_info=True)
            print(render_box(f"{type(e).__name__}: {e}", header="Error", color=Fore.RED), file=sys.stderr)
            return 1
    return wrapper


def load_series(config: RunConfig) -> TimeSeries:
    if config.generate is not None:
        return generate(config.generate, config.n, config.seed)
    return read_csv(config.input_path)


def _write_text(path: str, text: str) -> str:
    with open(path, "w", newline="") as f:
        f.write(text)
    logger.info(f"wrote {path}")
    return path


def write_outputs(out_dir: str, files: Dict[str, Callable[[], str]], max_workers: int = 4) -> List[str]:
    """Render and write every file concurrently; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_name = {
            executor.submit(lambda render=render, name=name: _write_text(os.path.join(out_dir, name), render())): name
            for name, render in files.items()
        }
        for future in as_completed(future_to_name):
            written.append(future.result())
    return sorted(written)


def _run_method(series: TimeSeries, config: RunConfig):
    """Returns (mode columns, final residue, summary extras)."""
    policy = ExtensionPolicy.from_name(config.policy)
    strategy = ResidueStrategy.from_name(config.strategy)

    if config.method == "expansion":
        expansion = expand_sawtooth(series, config.epsilon, config.max_components)
        imf, residue = expansion_decompose(expansion, strategy, policy)
        upper, lower = expansion_envelopes(expansion, policy)
        columns = [ModeColumns(series.values, imf, residue, upper, lower)]
        extras = {
            "components": len(expansion.components),
            "epsilon": expansion.epsilon,
            "achieved_error": expansion.achieved_error,
            "converged": expansion.converged,
            "modes": [{"index": 1, "extrema_count": len(find_extrema(series)),
                       "envelope_passes": len(expansion.components)}],
            "reconstruction_error": float(np.max(np.abs(imf + residue - series.values))),
            "diagnostics": [] if expansion.converged else
            [f"expansion stopped at {len(expansion.components)} components above epsilon"],
        }
        return columns, residue, extras

    if config.method == "emd":
        result = emd_decompose(series, SiftConfig(extension_policy=policy), config.max_modes)
    else:
        result = decompose(series, policy, strategy, config.max_modes)

    columns = []
    mode_input = series.values
    for mode in result.modes:
        columns.append(ModeColumns(mode_input, mode.imf, mode.residue, mode.upper_env, mode.lower_env))
        mode_input = mode.residue
    summary = result.to_dict()
    extras = {
        "modes": summary["modes"],
        "reconstruction_error": summary["reconstruction_error"],
        "diagnostics": summary["diagnostics"],
    }
    return columns, result.final_residue, extras


@exit_status
def cmd_decompose(config: RunConfig) -> int:
    """
    Decompose one series and write modeK.csv, residue.csv, summary.json and,
    with config.svg, modeK.svg, meanK.svg and overview.svg into config.out_dir.
    """
    config.validate()
    series = load_series(config)
    start_time = time.perf_counter()
    with LoadingAnimation(f"Decomposing {len(series)} samples ({config.method})"):
        columns, final_residue, extras = _run_method(series, config)
    seconds = time.perf_counter() - start_time
    logger.info(f"{config.method}: {len(columns)} modes in {seconds:.4f} s")

    times = series.times
    summary = {
        "method": config.method,
        "samples": len(series),
        "mode_count": len(columns),
        "seconds": seconds,
        "config": asdict(config),
    }
    summary.update(extras)

    files: Dict[str, Callable[[], str]] = {
        "residue.csv": lambda: frame_to_csv(residue_frame(times, final_residue)),
        "summary.json": lambda: json.dumps(summary, indent=2) + "\n",
    }
    for k, mode in enumerate(columns, start=1):
        files[f"mode{k}.csv"] = functools.partial(
            lambda m: frame_to_csv(mode_frame(times, m.imf, m.residue, m.upper, m.lower)), mode)
        if config.svg:
            files[f"mode{k}.svg"] = functools.partial(
                lambda m, k: line_chart(f"IMF {k}", [(f"imf {k}", times, m.imf)]), mode, k)
            files[f"mean{k}.svg"] = functools.partial(
                lambda m, k: line_chart(f"Mode {k} input and residue",
                                        [("input", times, m.input), (f"residue {k}", times, m.residue)]), mode, k)
    if config.svg:
        files["overview.svg"] = lambda: line_chart(
            "Data and final residue", [("data", times, series.values), ("residue", times, final_residue)])

    written = write_outputs(config.out_dir, files)
    print(render_box("\n".join(os.path.basename(p) for p in written),
                     header=f"{config.method}: {len(columns)} modes, {len(series)} samples"))
    return 0


def scaling_step(small: Dict, large: Dict, slack: float = LINEAR_SLACK) -> Dict:
    """Compare the sawtooth runtime of two bench reports against their size ratio."""
    size_ratio = large["size"] / small["size"]
    time_ratio = large["sawtooth_seconds"] / small["sawtooth_seconds"] if small["sawtooth_seconds"] > 0 else None
    return {
        "from": small["size"],
        "to": large["size"],
        "size_ratio": size_ratio,
        "time_ratio": time_ratio,
        "linear": time_ratio is None or time_ratio <= slack * size_ratio,
    }


@exit_status
def cmd_bench(sizes: Sequence[int] = DEFAULT_BENCH_SIZES, seed: int = 0, out_dir: str = "out",
              kind: str = "randomwalk", emd_limit: int = EMD_LIMIT,
              policy: ExtensionPolicy = ExtensionPolicy.EVEN,
              strategy: ResidueStrategy = ResidueStrategy.MEAN,
              max_modes: int = MAX_MODES) -> int:
    """Compare both methods over the sizes and write bench.json."""
    reports = []
    for n in sorted(sizes):
        series = generate(kind, n, seed)
        with LoadingAnimation(f"Benchmarking {n} samples"):
            report = compare_methods(series, SiftConfig(extension_policy=policy), policy, strategy,
                                     max_modes, include_emd=n <= emd_limit)
        logger.info(f"bench size {n} finished")
        reports.append(report.to_dict())

    scaling = [scaling_step(small, large) for small, large in zip(reports, reports[1:])]
    linear = all(step["linear"] for step in scaling)
    if not linear:
        logger.warning(f"sawtooth runtime grew faster than linear: {scaling}")

    bench = {"kind": kind, "seed": seed, "emd_limit": emd_limit, "reports": reports,
             "sawtooth_scaling": scaling, "sawtooth_linear": linear}
    written = write_outputs(out_dir, {"bench.json": lambda: json.dumps(bench, indent=2) + "\n"})

    lines = [f"{r['size']:>9,} samples: sawtooth {r['sawtooth_seconds']:.4f} s"
             + (f", emd {r['emd_seconds']:.4f} s" if r["emd_seconds"] is not None else "")
             for r in reports]
    print(render_box("\n".join(lines + written), header="Benchmark"))
    return 0


@exit_status
def cmd_generate(kind: str, n: int, seed: int = 0, out: Optional[str] = None) -> int:
    """Write a generated series as CSV to `out`, or to stdout."""
    text = write_csv(generate(kind, n, seed))
    if out is None:
        sys.stdout.write(text)
    else:
        _write_text(out, text)
    return 0
