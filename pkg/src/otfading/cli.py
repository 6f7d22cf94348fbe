"""Command-line driver.

Subcommands: sweep, baseline, pairing, alloc, protocol, audit, asymptote.
Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

import argparse
import json
import sys

from .channels import MimoModel, OfdmModel
from .errors import NumericalError
from .harness import (
    CSV_HEADER,
    RateCurve,
    SweepConfig,
    curve_to_csv,
    curve_to_json,
    run_capacity_baseline,
    run_sweep,
)
from .pairing import brute_force_best_pairing, optimal_pairing
from .protocol import (
    SessionConfig,
    audit_alice_privacy,
    audit_bob_secrecy,
    assign_subchannels,
    leaky_assignment,
    run_session,
)
from .rates import asymptotic_constant, pair_rates
from .waterfill import allocate_block


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_snr_points(text):
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _UsageError(f"bad SNR range {text!r}, want start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise _UsageError("SNR step must be positive")
        points = []
        value = start
        while value <= stop + 1e-9:
            points.append(round(value, 9))
            value += step
        if not points:
            raise _UsageError(f"SNR range {text!r} is empty")
        return tuple(points)
    return tuple(float(p) for p in text.split(","))


def _parse_pairs(text):
    pairs = []
    for chunk in text.split(","):
        a, _, b = chunk.partition(":")
        if not _:
            raise _UsageError(f"bad pair {chunk!r}, want strong:weak")
        pairs.append((float(a), float(b)))
    return pairs


def _model_from(args):
    if args.model == "ofdm":
        return OfdmModel(args.subchannels)
    if args.model == "mimo":
        if args.na is None or args.nb is None:
            raise _UsageError("--na and --nb are required for --model mimo")
        return MimoModel(args.na, args.nb)
    raise _UsageError(f"unknown model {args.model!r}")


def _add_model_flags(p):
    p.add_argument("--model", required=True, choices=["ofdm", "mimo"])
    p.add_argument("--subchannels", type=int, default=2)
    p.add_argument("--na", type=int)
    p.add_argument("--nb", type=int)


def _add_sweep_flags(p):
    _add_model_flags(p)
    p.add_argument("--snr-db", required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument(
        "--allocation", choices=["per-block", "ergodic"], default="per-block"
    )
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _build_parser():
    parser = _Parser(prog="otfading")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("sweep", "baseline"):
        _add_sweep_flags(sub.add_parser(name))

    p = sub.add_parser("pairing")
    p.add_argument("--gains", required=True)
    p.add_argument("--budget", type=float, required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--grid-step", type=float, default=0.05)

    p = sub.add_parser("alloc")
    p.add_argument("--pairs", required=True)
    p.add_argument("--budget", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=0.0)

    p = sub.add_parser("protocol")
    _add_model_flags(p)
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--choice", type=int, choices=[0, 1], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--block-length", type=int, default=1024)

    p = sub.add_parser("audit")
    _add_model_flags(p)
    p.add_argument("--snr-db", type=float, default=30.0)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--planted", action="store_true")

    p = sub.add_parser("asymptote")
    p.add_argument("--model", required=True, choices=["ofdm2", "mimo2x2"])
    return parser


def _emit_curve(curve_fn, cfg, args):
    fmt = args.format
    if args.out:
        # flush completed points as they arrive so interrupts keep progress
        with open(args.out, "w", encoding="utf-8") as fh:
            if fmt == "csv":
                fh.write(CSV_HEADER + "\n")

                def flush(point):
                    fh.write(
                        f"{point.snr_db:.9g},{point.mean_rate_bits:.9g},"
                        f"{point.std_error:.9g},{point.trials}\n"
                    )
                    fh.flush()

                curve_fn(cfg, on_point=flush)
            else:
                curve = curve_fn(cfg)
                fh.write(curve_to_json(curve))
    else:
        curve = curve_fn(cfg)
        sys.stdout.write(
            curve_to_csv(curve) if fmt == "csv" else curve_to_json(curve) + "\n"
        )


def _cmd_sweep(args, baseline=False):
    cfg = SweepConfig(
        model=_model_from(args),
        snr_db_points=_parse_snr_points(args.snr_db),
        trials=args.trials,
        allocation=args.allocation.replace("-", "_"),
        seed=args.seed,
        epsilon=args.epsilon,
        output_path=args.out,
    )
    _emit_curve(run_capacity_baseline if baseline else run_sweep, cfg, args)


def _cmd_pairing(args):
    gains = [float(g) for g in args.gains.split(",")]
    pairing = optimal_pairing(gains)
    alloc = allocate_block(pairing.pair_gains(gains), args.budget)
    doc = {
        "pairs": [list(p) for p in pairing.pairs()],
        "powers": list(alloc.per_pair),
        "eta": alloc.eta,
        "rate_bits": alloc.achieved_rate,
    }
    if args.oracle:
        bp, _, brate = brute_force_best_pairing(
            gains, args.budget, args.grid_step
        )
        doc["oracle"] = {
            "pairs": [list(p) for p in bp.pairs()],
            "rate_bits": brate,
        }
    print(json.dumps(doc, indent=2))


def _cmd_alloc(args):
    pairs = _parse_pairs(args.pairs)
    alloc = allocate_block(pairs, args.budget)
    report = pair_rates(pairs, alloc, args.epsilon)
    print(
        json.dumps(
            {
                "powers": list(alloc.per_pair),
                "eta": alloc.eta,
                "budget": alloc.budget,
                "rate_bits": alloc.achieved_rate,
                "per_pair_bits": list(report.per_pair_bits),
                "total_bits": report.total_bits,
            },
            indent=2,
        )
    )


def _cmd_protocol(args):
    cfg = SessionConfig(
        model=_model_from(args),
        snr_db=args.snr_db,
        epsilon=args.epsilon,
        block_length=args.block_length,
        seed=args.seed,
    )
    result = run_session(cfg, None, None, args.choice)
    print(result.transcript.to_json())
    print(
        json.dumps(
            {
                "decode_success": result.decode_success,
                "rate_bits_per_use": result.rate_bits_per_use,
                "leakage_bits_other_file": audit_bob_secrecy(result),
                "decoded_bits": len(result.decoded),
            },
            indent=2,
        )
    )


def _cmd_audit(args):
    cfg = SessionConfig(model=_model_from(args), snr_db=args.snr_db, seed=args.seed)
    builder = leaky_assignment if args.planted else assign_subchannels
    report = audit_alice_privacy(cfg, args.trials, assignment_builder=builder)
    print(report.to_json())


def _cmd_asymptote(args):
    print(f"{asymptotic_constant(args.model):.4f}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep":
            _cmd_sweep(args)
        elif args.command == "baseline":
            _cmd_sweep(args, baseline=True)
        elif args.command == "pairing":
            _cmd_pairing(args)
        elif args.command == "alloc":
            _cmd_alloc(args)
        elif args.command == "protocol":
            _cmd_protocol(args)
        elif args.command == "audit":
            _cmd_audit(args)
        elif args.command == "asymptote":
            _cmd_asymptote(args)
        return 0
    except (_UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
