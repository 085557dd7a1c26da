"""Command-line front end for :mod:`focklab.experiments`.

Exit codes: 0 success, 1 failed verdict under ``--strict``, 2 precondition
error, 3 numerical refusal.  Errors are written to stderr as one JSON object.
"""

import argparse
import json
import sys

from .errors import FockError, NumericalRefusal, PreconditionError
from .experiments import KINDS, ExperimentConfig, emit, run

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_PRECONDITION = 2
EXIT_REFUSAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report({"error": "UsageError", "message": message})
        sys.exit(EXIT_PRECONDITION)


def _report(payload):
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def build_parser():
    p = _Parser(prog="focklab", description="Run a Fock-space Toeplitz experiment and emit CSV or JSON.")
    p.add_argument("--experiment", choices=KINDS, help="experiment kind")
    p.add_argument("--config", help="JSON config (or an emitted JSON record); flags override its fields")
    p.add_argument("--symbol", help="symbol DSL, e.g. 'gaussian:lambda=2' or 'step:r=0,1,2;v=1,0'")
    p.add_argument("--t", type=float, help="Fock time parameter (default 1)")
    p.add_argument("--s", type=float, help="heat time")
    p.add_argument("--dim", type=int, help="complex dimension n")
    p.add_argument("--degree", type=int, help="truncation degree D")
    p.add_argument("--grid-extent", type=float)
    p.add_argument("--grid-step", type=float)
    p.add_argument("--quad-order", type=int, help="Gauss-Hermite order per real coordinate (default: automatic)")
    p.add_argument("--lambda-min", type=float)
    p.add_argument("--lambda-max", type=float)
    p.add_argument("--lambda-step", type=float)
    p.add_argument("--band-width", type=float, help="band width for pbdop")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--timing", action="store_true", help="include wall-clock duration in JSON output")
    p.add_argument("--strict", action="store_true", help="exit 1 when a verdict fails")
    return p


_FIELDS = (
    "symbol", "t", "s", "dim", "degree", "grid_extent", "grid_step", "quad_order",
    "lambda_min", "lambda_max", "lambda_step", "band_width", "out", "format",
)


def config_from_args(args):
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise PreconditionError(f"cannot read config {args.config}: {exc}", field="config") from exc
        if "schema" in data and "inputs" in data:
            data = data["inputs"]
        if args.experiment and args.experiment != data.get("kind"):
            # a different kind resolves its own defaults
            data = {k: v for k, v in data.items() if k not in ("s", "degree", "grid_extent", "grid_step")}
    if args.experiment:
        data["kind"] = args.experiment
    if "kind" not in data:
        raise PreconditionError("--experiment is required", field="experiment")
    for name in _FIELDS:
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    return ExperimentConfig.from_dict(data)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        record = run(cfg)
        text = emit(record, cfg.format, cfg.out, timing=args.timing)
    except NumericalRefusal as exc:
        _report(exc.to_dict())
        return EXIT_REFUSAL
    except (FockError, PreconditionError) as exc:
        _report(exc.to_dict() if isinstance(exc, FockError) else {"error": type(exc).__name__, "message": str(exc)})
        return EXIT_PRECONDITION
    if cfg.out is None:
        sys.stdout.write(text)
    if args.strict and not record.ok:
        return EXIT_VERDICT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
