"""Command line front end.

Subcommands: predict, breakpoint-curve, simulate, fit, coverage, validate.
Exit status is 0 on success, 1 on a domain error (bad value, unreadable
file, failed validation), 2 on a usage error. Every flag can also be set
through an environment variable named RMA_<FLAG> (dashes as underscores,
e.g. --freq-ghz -> RMA_FREQ_GHZ); an explicit flag wins.

Numeric output on stdout uses fixed 2-decimal formatting; files written by
simulate/fit/breakpoint-curve keep full float precision.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .campaign import (
    CAMPAIGN_CSV_HEADER,
    DEFAULT_BUDGET,
    LinkBudget,
    load_campaign_csv,
    max_range,
    records_to_samples,
)
from .fitting import fit_ci, fit_report_dict
from .models import (
    RURAL_73GHZ_LOS_PLE,
    RURAL_73GHZ_NLOS_PLE,
    ApplicabilityError,
    Environment,
    RmaParams,
    breakpoint_distance,
    ci_pathloss,
    distance_3d,
    validate_applicability,
    _los_mean,
    _nlos_mean,
)
from .simulate import (
    DATASET_CSV_HEADER,
    DEFAULT_SAMPLES_PER_FREQUENCY,
    SimulationConfig,
    generate_3gpp_dataset,
    read_dataset_csv,
)


class _EnvVarError(Exception):
    """An RMA_* environment variable held an unusable value."""


def _env_override(flag: str, cast, choices=None):
    key = "RMA_" + flag.lstrip("-").upper().replace("-", "_")
    raw = os.environ.get(key)
    if raw is None:
        return None
    try:
        value = cast(raw)
    except (TypeError, ValueError) as exc:
        raise _EnvVarError(f"invalid value for {key}: {raw!r}") from exc
    if choices is not None and value not in choices:
        raise _EnvVarError(f"invalid value for {key}: {raw!r} (choose from {choices})")
    return value


def _add(parser, flag: str, *, cast=str, default=None, required=False,
         choices=None, help=None):
    env_value = _env_override(flag, cast, choices)
    if env_value is not None:
        default = env_value
        required = False
    parser.add_argument(flag, type=cast, default=default, required=required,
                        choices=choices, help=help)


def _add_params(parser):
    _add(parser, "--hbs", cast=float, default=35.0, help="base station height m")
    _add(parser, "--hut", cast=float, default=1.5, help="user terminal height m")
    _add(parser, "--w", cast=float, default=20.0, help="average street width m")
    _add(parser, "--h", cast=float, default=5.0, help="average building height m")


def _add_budget(parser):
    _add(parser, "--tx-power-dbm", cast=float, default=DEFAULT_BUDGET.tx_power_dbm)
    _add(parser, "--tx-gain-dbi", cast=float, default=DEFAULT_BUDGET.tx_gain_dbi)
    _add(parser, "--rx-gain-dbi", cast=float, default=DEFAULT_BUDGET.rx_gain_dbi)
    _add(parser, "--max-pl-db", cast=float,
         default=DEFAULT_BUDGET.max_measurable_pl_db,
         help="maximum measurable path loss dB")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmapath",
        description="Rural macrocell mmWave path loss modeling toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="mean path loss for one link")
    _add(p, "--model", choices=("ci", "3gpp-rma"), required=True)
    _add(p, "--env", choices=("los", "nlos"), required=True)
    _add(p, "--freq-ghz", cast=float, required=True)
    _add(p, "--dist-m", cast=float, required=True,
         help="T-R separation m (2D ground distance for 3gpp-rma, which "
              "converts to the 3D slant distance internally)")
    _add(p, "--ple", cast=float,
         help="CI path loss exponent; defaults to the 73.5 GHz rural "
              f"coefficients ({RURAL_73GHZ_LOS_PLE} LOS / {RURAL_73GHZ_NLOS_PLE} NLOS)")
    _add_params(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("breakpoint-curve",
                       help="CSV of LOS breakpoint distance vs frequency")
    _add(p, "--fmin", cast=float, default=0.5, help="start frequency GHz")
    _add(p, "--fmax", cast=float, default=100.0, help="end frequency GHz")
    _add(p, "--steps", cast=int, default=200, help="number of grid points")
    _add(p, "--spacing", choices=("log", "linear"), default="log")
    _add(p, "--hbs", cast=float, default=35.0)
    _add(p, "--hut", cast=float, default=1.5)
    _add(p, "--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_breakpoint_curve)

    p = sub.add_parser("simulate", help="Monte Carlo RMa dataset as CSV")
    _add(p, "--env", choices=("los", "nlos"), required=True)
    _add(p, "--seed", cast=int, default=0)
    _add(p, "--samples", cast=int, default=DEFAULT_SAMPLES_PER_FREQUENCY,
         help="samples per frequency")
    _add(p, "--sampling", choices=("linear", "log"), default="linear",
         help="2D distance sampling distribution")
    _add(p, "--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="fit the CI model to a dataset or campaign CSV")
    _add(p, "--input", required=True)
    _add(p, "--out", help="output file (default: stdout)")
    _add_budget(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("coverage", help="range at which CI loss reaches a budget")
    _add(p, "--max-pl", cast=float, required=True, help="loss budget dB")
    _add(p, "--ple", cast=float, required=True)
    _add(p, "--freq-ghz", cast=float, required=True)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("validate", help="run the acceptance checks")
    p.set_defaults(func=cmd_validate)

    return parser


def cmd_predict(args) -> int:
    environment = Environment(args.env.upper())
    if args.model == "ci":
        ple = args.ple
        if ple is None:
            ple = (RURAL_73GHZ_LOS_PLE if environment is Environment.LOS
                   else RURAL_73GHZ_NLOS_PLE)
        pl = ci_pathloss(args.freq_ghz, args.dist_m, ple)
    else:
        params = RmaParams(h_bs=args.hbs, h_ut=args.hut, w=args.w, h=args.h)
        findings = validate_applicability(params, args.dist_m, args.freq_ghz,
                                          environment)
        hard = [f for f in findings if f.severity == "hard"]
        if hard:
            raise ApplicabilityError("; ".join(f.message for f in hard))
        for finding in findings:
            print(f"warning: {finding.message}", file=sys.stderr)
        # The span was checked on the 2D distance above; evaluate the mean
        # model at the 3D distance without re-checking.
        d3d = distance_3d(args.dist_m, params.h_bs, params.h_ut)
        mean = _los_mean if environment is Environment.LOS else _nlos_mean
        pl = float(mean(params, d3d, args.freq_ghz))
    print(f"{pl:.2f} dB")
    return 0


def cmd_breakpoint_curve(args) -> int:
    if args.fmin <= 0:
        raise ValueError("--fmin must be positive")
    if args.fmax < args.fmin:
        raise ValueError("--fmax must be >= --fmin")
    if args.steps < 1:
        raise ValueError("--steps must be >= 1")
    if args.spacing == "log":
        fcs = np.geomspace(args.fmin, args.fmax, args.steps)
    else:
        fcs = np.linspace(args.fmin, args.fmax, args.steps)
    rows = [(repr(float(fc)), repr(breakpoint_distance(args.hbs, args.hut, float(fc))))
            for fc in fcs]
    _write_csv_rows(args.out, ("fc_ghz", "dbp_m"), rows)
    return 0


def _write_csv_rows(out, header, rows) -> None:
    if out:
        with open(out, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_simulate(args) -> int:
    config = SimulationConfig(
        environment=Environment(args.env.upper()),
        samples_per_frequency=args.samples,
        seed=args.seed,
        distance_sampling=args.sampling,
    )
    dataset = generate_3gpp_dataset(config)
    dataset.write_csv(args.out)
    print(f"wrote {len(dataset)} samples to {args.out}", file=sys.stderr)
    return 0


def _group_by_environment(samples):
    groups: dict[Environment, list] = {}
    for sample in samples:
        groups.setdefault(sample.environment, []).append(sample)
    return [groups[env] for env in sorted(groups, key=lambda e: e.value)]


def cmd_fit(args) -> int:
    path = Path(args.input)
    with path.open() as f:
        first_line = f.readline().strip()
    source = path.name
    if first_line == ",".join(DATASET_CSV_HEADER):
        samples, meta = read_dataset_csv(path)
        seed, sampling_mode = meta["seed"], meta["sampling_mode"]
    elif first_line == ",".join(CAMPAIGN_CSV_HEADER):
        budget = LinkBudget(args.tx_power_dbm, args.tx_gain_dbi, args.rx_gain_dbi,
                            args.max_pl_db)
        records = load_campaign_csv(path)
        samples, summary = records_to_samples(records, budget)
        print(f"{summary.converted} of {summary.total} records fitted "
              f"({summary.outage_dropped} outage, "
              f"{summary.diffraction_dropped} diffraction dropped)", file=sys.stderr)
        seed = sampling_mode = None
    else:
        raise ValueError(
            f"{path}: unrecognized input; expected a dataset CSV "
            f"({DATASET_CSV_HEADER[0]},...) or campaign CSV "
            f"({CAMPAIGN_CSV_HEADER[0]},...) header")
    reports = [fit_report_dict(fit_ci(group), source, seed, sampling_mode)
               for group in _group_by_environment(samples)]
    if not reports:
        raise ValueError(f"{path}: no fittable samples")
    payload = reports[0] if len(reports) == 1 else reports
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_coverage(args) -> int:
    meters = max_range(args.freq_ghz, args.ple, args.max_pl)
    print(f"{meters:.2f} m")
    return 0


def cmd_validate(args) -> int:
    from .acceptance import ALL_CHECKS

    failed = 0
    for check in ALL_CHECKS:
        result = check()
        failed += not result.passed
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}",
              flush=True)
    print(f"{len(ALL_CHECKS) - failed}/{len(ALL_CHECKS)} acceptance checks passed")
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except _EnvVarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
