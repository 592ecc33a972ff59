"""Command-line front end: bound sweeps, pmf dumps, oracle suites, point probes.

Commands
--------
peak-sweep / expected-sweep
    Evaluate one bound over a cache-size grid, optionally with overlay
    curves and (expected only) a Monte-Carlo cross-check column.
distribution
    Dump the exact distinct-count pmf.
verify
    Run every oracle suite and report one line per check family.
point
    Evaluate a single bound value with the maximizing cut size and the
    active envelope segment, for debugging the envelope-then-max pipeline.

Exit codes: 0 ok, 1 bad configuration, 2 infeasible (peak bound with fewer
files than receivers).  Output is byte-identical for identical inputs,
including the seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    ENVELOPE_ORDERS,
    InfeasibleLibrary,
    NetworkConfig,
    category_bound,
    category_bound_detail,
    expected_ndt_lower_bound,
    peak_ndt_lower_bound,
    sweep,
)
from .combinatorics import to_decimal
from .comparator import Unavailable, default_registry
from .demands import distinct_count, distinct_distribution, sample_demands
from .oracle import full_verification

# fixed stride mixing the user seed with the grid index for per-point
# Monte-Carlo sub-streams
SUB_SEED_STRIDE = 1_000_003


class CliError(Exception):
    """Invalid configuration; maps to exit status 1."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    transmitters: int = 5
    receivers: int = 20
    files: int = 100
    mu_grid: tuple[Fraction, ...] | None = None
    mu: Fraction | None = None
    samples: int | None = None
    seed: int = 0
    decimal: int | None = None
    output_format: str = "csv"
    output_path: str | None = None
    overlays: tuple[str, ...] = ()
    envelope_order: str = "theorem"
    kind: str = "peak"
    limit: int = 16
    max_transmitters: int = 6


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', an integer, or a decimal literal to the exact fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot parse {text!r} as an exact rational") from None


def parse_grid(text: str) -> tuple[Fraction, ...]:
    """Parse 'start:stop:count' or a comma-separated list of rationals.

    The colon form yields count points linearly spaced from start to stop,
    endpoints inclusive, all exact.
    """
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"colon grid form must be start:stop:count, got {text!r}")
        start, stop = parse_rational(parts[0]), parse_rational(parts[1])
        try:
            count = int(parts[2])
        except ValueError:
            raise CliError(f"grid count must be an integer, got {parts[2]!r}") from None
        if count < 1:
            raise CliError(f"grid count must be positive, got {count}")
        if count == 1:
            if start != stop:
                raise CliError("grid of one point needs start == stop")
            return (start,)
        step = (stop - start) / (count - 1)
        return tuple(start + i * step for i in range(count))
    return tuple(parse_rational(part) for part in text.split(","))


def _read_config_file(path: str) -> dict[str, str]:
    """Flat key=value file mirroring the flags; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config file {path!r}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ndtbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, net=False, grid=False, mu=False, sampling=False):
        p.add_argument("--config", help="flat key=value config file; flags override it")
        if net:
            p.add_argument("--kt", type=int, help="number of transmitters (default 5)")
            p.add_argument("--kr", type=int, help="number of receivers (default 20)")
            p.add_argument("--files", type=int, help="library size (default 100)")
        if grid:
            p.add_argument(
                "--grid",
                help="cache-size grid: start:stop:count or a comma list of rationals",
            )
        if mu:
            p.add_argument("--mu", help="normalized cache size (exact rational)")
        if sampling:
            p.add_argument(
                "--samples",
                type=int,
                help="Monte-Carlo sample count for the cross-check column",
            )
            p.add_argument("--seed", type=int, help="sampler seed (default 0)")
        p.add_argument("--decimal", type=int, help="render rationals with this many decimals")
        p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
        p.add_argument("--out", help="output path (default standard output)")

    peak = sub.add_parser("peak-sweep", help="worst-case bound over a cache-size grid")
    add_common(peak, net=True, grid=True)
    peak.add_argument("--overlay", action="append", help="reference curve to overlay")
    peak.add_argument("--envelope-order", choices=ENVELOPE_ORDERS)

    expected = sub.add_parser(
        "expected-sweep", help="expected-demand bound over a cache-size grid"
    )
    add_common(expected, net=True, grid=True, sampling=True)
    expected.add_argument("--overlay", action="append", help="reference curve to overlay")
    expected.add_argument("--envelope-order", choices=ENVELOPE_ORDERS)

    dist = sub.add_parser("distribution", help="exact distinct-count pmf")
    add_common(dist)
    dist.add_argument("--kr", type=int, help="number of receivers (default 20)")
    dist.add_argument("--files", type=int, help="library size (default 100)")

    verify = sub.add_parser("verify", help="run every oracle suite")
    add_common(verify)
    verify.add_argument("--limit", type=int, help="identity-suite range (default 16)")
    verify.add_argument(
        "--kt-max", type=int, help="largest transmitter count for the LP suites (default 6)"
    )

    point = sub.add_parser("point", help="one bound value with its evidence")
    add_common(point, net=True, mu=True)
    point.add_argument("--kind", choices=("peak", "expected"))
    point.add_argument("--envelope-order", choices=ENVELOPE_ORDERS)

    return parser


def _merge(args: argparse.Namespace) -> RunConfig:
    file_values = _read_config_file(args.config) if args.config else {}

    def pick(flag: str, parse, default=None):
        value = getattr(args, flag.replace("-", "_"), None)
        if value is not None:
            return value
        if flag in file_values:
            return parse(file_values[flag])
        return default

    def parse_int(text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise CliError(f"expected an integer, got {text!r}") from None

    overlays = pick(
        "overlay", lambda text: [p.strip() for p in text.split(",") if p.strip()], []
    )
    mu_text = pick("mu", str)
    grid_text = pick("grid", str)
    fmt = pick("format", str, "csv")
    if fmt not in ("csv", "json"):
        raise CliError(f"format must be csv or json, got {fmt!r}")
    order = pick("envelope-order", str, "theorem")
    if order not in ENVELOPE_ORDERS:
        raise CliError(f"envelope-order must be one of {ENVELOPE_ORDERS}, got {order!r}")
    kind = pick("kind", str, "peak")
    if kind not in ("peak", "expected"):
        raise CliError(f"kind must be peak or expected, got {kind!r}")

    return RunConfig(
        command=args.command,
        transmitters=pick("kt", parse_int, 5),
        receivers=pick("kr", parse_int, 20),
        files=pick("files", parse_int, 100),
        mu_grid=parse_grid(grid_text) if grid_text is not None else None,
        mu=parse_rational(mu_text) if mu_text is not None else None,
        samples=pick("samples", parse_int),
        seed=pick("seed", parse_int, 0),
        decimal=pick("decimal", parse_int),
        output_format=fmt,
        output_path=pick("out", str),
        overlays=tuple(overlays),
        envelope_order=order,
        kind=kind,
        limit=pick("limit", parse_int, 16),
        max_transmitters=pick("kt-max", parse_int, 6),
    )


def _require(config: RunConfig, *fields: str):
    flags = {"mu_grid": "--grid", "mu": "--mu"}
    missing = [f for f in fields if getattr(config, f) is None]
    if missing:
        raise CliError(
            "missing required options: " + ", ".join(flags[name] for name in missing)
        )


def _renderer(config: RunConfig):
    if config.decimal is None:
        return str
    digits = config.decimal
    if digits < 0:
        raise CliError(f"--decimal must be nonnegative, got {digits}")
    return lambda value: to_decimal(value, digits)


def _emit(config: RunConfig, text: str):
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def _metadata(config: RunConfig) -> dict:
    return {
        "command": config.command,
        "kt": config.transmitters,
        "kr": config.receivers,
        "files": config.files,
        "samples": config.samples,
        "seed": config.seed,
        "envelope_order": config.envelope_order,
        "version": __version__,
    }


def _emit_table(config: RunConfig, header: list[str], rows: list[list[str]]):
    if config.output_format == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        _emit(config, "\n".join(lines) + "\n")
    else:
        records = [dict(zip(header, row)) for row in rows]
        payload = {"metadata": _metadata(config), "rows": records}
        _emit(config, json.dumps(payload, indent=2) + "\n")


def _mc_column(config: RunConfig, grid: tuple[Fraction, ...]) -> list[Fraction]:
    """Per-point sample mean of the per-demand category bound."""
    means = []
    for index, mu in enumerate(grid):
        replication = config.transmitters * mu
        sub_seed = config.seed * SUB_SEED_STRIDE + index
        total = Fraction(0)
        for demand in sample_demands(
            config.files, config.receivers, config.samples, sub_seed
        ):
            total += category_bound(
                config.transmitters,
                distinct_count(demand),
                replication,
                config.envelope_order,
            )
        means.append(total / config.samples)
    return means


def _run_sweep(config: RunConfig) -> int:
    _require(config, "mu_grid")
    if config.samples is not None and config.samples < 1:
        raise CliError(f"--samples must be positive, got {config.samples}")
    kind = "peak" if config.command == "peak-sweep" else "expected"
    curve = sweep(
        config.transmitters,
        config.receivers,
        config.files,
        config.mu_grid,
        kind,
        config.envelope_order,
    )

    registry = default_registry()
    known = registry.names()
    for name in config.overlays:
        if name not in known:
            raise CliError(f"unknown overlay {name!r}; registered: {', '.join(known)}")
    # overlay columns follow registration order, not request order
    overlay_names = [name for name in known if name in config.overlays]

    header = ["mu", "value"]
    columns: list[list] = [
        [mu for mu, _ in curve.samples],
        [value for _, value in curve.samples],
    ]
    if kind == "expected" and config.samples:
        header.append("mc_value")
        columns.append(_mc_column(config, tuple(mu for mu, _ in curve.samples)))
    for name in overlay_names:
        header.append(name)
        column = []
        for mu, _ in curve.samples:
            point_config = NetworkConfig(
                transmitters=config.transmitters,
                receivers=config.receivers,
                files=config.files,
                cache_fraction=mu,
            )
            column.append(registry.evaluate(name, point_config))
        columns.append(column)

    render = _renderer(config)

    def cell(value) -> str:
        if isinstance(value, Unavailable):
            return "unavailable"
        return render(value)

    rows = [[cell(col[i]) for col in columns] for i in range(len(curve.samples))]
    _emit_table(config, header, rows)
    return 0


def _run_distribution(config: RunConfig) -> int:
    dist = distinct_distribution(config.files, config.receivers)
    render = _renderer(config)
    rows = [[str(s), render(dist.masses[s])] for s in dist.support()]
    _emit_table(config, ["s", "mass"], rows)
    return 0


def _run_verify(config: RunConfig) -> int:
    if not 1 <= config.limit <= 16:
        raise CliError(f"--limit must lie in [1, 16], got {config.limit}")
    if not 1 <= config.max_transmitters <= 10:
        raise CliError(f"--kt-max must lie in [1, 10], got {config.max_transmitters}")
    report = full_verification(config.limit, config.max_transmitters)
    if config.output_format == "json":
        _emit(config, report.to_json_lines() + "\n")
    else:
        _emit(config, report.to_text() + "\n")
    return 0 if report.passed else 1


def _run_point(config: RunConfig) -> int:
    _require(config, "mu")
    net = NetworkConfig(
        transmitters=config.transmitters,
        receivers=config.receivers,
        files=config.files,
        cache_fraction=config.mu,
    )
    render = _renderer(config)
    lines: list[tuple[str, object]] = [
        ("command", "point"),
        ("kind", config.kind),
        ("kt", config.transmitters),
        ("kr", config.receivers),
        ("files", config.files),
        ("mu", render(net.cache_fraction)),
        ("t", render(net.replication)),
        ("envelope_order", config.envelope_order),
    ]
    if config.kind == "peak":
        value = peak_ndt_lower_bound(net, config.envelope_order)
        detail = category_bound_detail(
            net.transmitters, net.receivers, net.replication, config.envelope_order
        )
        lines.append(("value", render(value)))
        lines.append(("argmax_cut", detail.best_cut))
        lines.append(("segment", list(detail.segment)))
    else:
        value = expected_ndt_lower_bound(net, config.envelope_order)
        lines.append(("value", render(value)))
        dist = distinct_distribution(net.files, net.receivers)
        categories = []
        for s in dist.support():
            detail = category_bound_detail(
                net.transmitters, s, net.replication, config.envelope_order
            )
            categories.append(
                {
                    "s": s,
                    "mass": render(dist.masses[s]),
                    "bound": render(detail.value),
                    "argmax_cut": detail.best_cut,
                    "segment": list(detail.segment),
                }
            )
        lines.append(("categories", categories))

    if config.output_format == "json":
        _emit(config, json.dumps(dict(lines), indent=2) + "\n")
    else:
        text_lines = []
        for key, value in lines:
            if key == "categories":
                for entry in value:
                    text_lines.append(
                        "category s={s}: mass={mass} bound={bound} "
                        "argmax_cut={argmax_cut} segment={segment}".format(**entry)
                    )
            else:
                text_lines.append(f"{key} = {value}")
        _emit(config, "\n".join(text_lines) + "\n")
    return 0


def run(config: RunConfig) -> int:
    if config.command in ("peak-sweep", "expected-sweep"):
        return _run_sweep(config)
    if config.command == "distribution":
        return _run_distribution(config)
    if config.command == "verify":
        return _run_verify(config)
    if config.command == "point":
        return _run_point(config)
    raise CliError(f"unknown command {config.command!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return run(_merge(args))
    except InfeasibleLibrary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
