"""Command-line front end.

Subcommands: degree, reduce, symbol, density, charsum, check, plus a batch
mode reading one JSON config per stdin line and writing one JSON report per
line.  JSON reports have the stable shape {config, result, checkpoints,
warnings}; integers are serialized as decimal strings so that degrees and
norms survive consumers with 64-bit number parsing.  Identical configs give
byte-identical JSON regardless of --threads.

Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .arith import FactorizationError, is_prime
from .cyclotomic import poly_str, primes_above, residue_symbol
from .density import character_sum, density_experiment
from .radical import (
    DegreeMismatchError,
    OracleScaleError,
    brute_force_kernel,
    consistency_check,
    degree,
    exponent_matrix,
    normalize_inputs,
    rank_and_kernel,
    reduce_basis,
)

EXIT_OK = 0
EXIT_USER = 2
EXIT_INTERNAL = 3

_ORACLE_GUARD = 10**7


@dataclass(frozen=True)
class RunConfig:
    command: str
    l: int = 3
    radicands: tuple[int, ...] = ()
    targets: tuple[int, ...] | None = None
    norm_bound: int | None = None
    seed: int = 0
    output_format: str = "text"
    threads: int = 1
    oracle: bool = False
    prime: int | None = None
    ideal: str = "all"
    n: int | None = None


def _validate_config(cfg: RunConfig) -> None:
    if cfg.l < 3 or cfg.l % 2 == 0 or not is_prime(cfg.l):
        raise ValueError(f"l must be an odd prime >= 3, got {cfg.l}")
    if any(a == 0 for a in cfg.radicands):
        raise ValueError("radicands must be nonzero")
    if cfg.targets is not None and len(cfg.targets) != len(cfg.radicands):
        raise ValueError(
            f"got {len(cfg.targets)} targets for {len(cfg.radicands)} radicands"
        )
    if cfg.threads < 1:
        raise ValueError("threads must be >= 1")
    if cfg.output_format not in ("text", "json"):
        raise ValueError(f"unknown format {cfg.output_format!r}")


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "l": cfg.l,
        "radicands": list(cfg.radicands),
        "targets": None if cfg.targets is None else list(cfg.targets),
        "norm_bound": cfg.norm_bound,
        "seed": cfg.seed,
        "format": cfg.output_format,
        "threads": cfg.threads,
        "oracle": cfg.oracle,
        "prime": cfg.prime,
        "ideal": cfg.ideal,
        "n": cfg.n,
    }


def _report(cfg: RunConfig, result: dict, checkpoints=(), warnings=()) -> dict:
    return {
        "config": _config_echo(cfg),
        "result": result,
        "checkpoints": list(checkpoints),
        "warnings": list(warnings),
    }


def _cmd_degree(cfg: RunConfig) -> dict:
    s = normalize_inputs(cfg.l, cfg.radicands)
    red = reduce_basis(s)
    kernel = rank_and_kernel(exponent_matrix(s))
    value = degree(s, "rank")
    warnings = []
    oracle = None
    m = len(s.normalized)
    if cfg.l**m <= _ORACLE_GUARD:
        relations = brute_force_kernel(s)
        cross = cfg.l**m // relations
        if cross != value:
            raise DegreeMismatchError(
                f"exhaustive oracle gives {cross}, methods give {value}"
            )
        oracle = {"relation_count": relations, "degree": cross}
    elif cfg.oracle:
        raise OracleScaleError(
            f"--oracle requested but l**{m} exceeds the scale guard {_ORACLE_GUARD}"
        )
    else:
        warnings.append("brute-force cross-check skipped: beyond the scale guard")
    result = {
        "degree": value,
        "rank": kernel.rank,
        "t": red.t,
        "b": list(red.b),
        "exclusive_primes": list(red.exclusive_primes),
        "kernel_basis": [list(v) for v in kernel.basis],
        "normalized": list(s.normalized),
        "dropped_indices": [i for i, pos in enumerate(s.index_map) if pos is None],
        "oracle": oracle,
    }
    return _report(cfg, result, warnings=warnings)


def _cmd_reduce(cfg: RunConfig) -> dict:
    s = normalize_inputs(cfg.l, cfg.radicands)
    red = reduce_basis(s)
    result = {
        "t": red.t,
        "b": list(red.b),
        "exclusive_primes": list(red.exclusive_primes),
        "transform": [[int(x) for x in row] for row in red.transform],
        "degree": degree(s, "reduction"),
        "normalized": list(s.normalized),
        "dropped_indices": [i for i, pos in enumerate(s.index_map) if pos is None],
    }
    return _report(cfg, result)


def _cmd_symbol(cfg: RunConfig) -> dict:
    if cfg.prime is None:
        raise ValueError("symbol requires -p/--prime")
    if not is_prime(cfg.prime):
        raise ValueError(f"{cfg.prime} is not prime")
    ideals = primes_above(cfg.prime, cfg.l, seed=cfg.seed)
    if cfg.ideal != "all":
        try:
            index = int(cfg.ideal)
        except ValueError:
            raise ValueError(f"--ideal must be an index or 'all', got {cfg.ideal!r}")
        if not 0 <= index < len(ideals):
            raise ValueError(f"ideal index {index} out of range 0..{len(ideals) - 1}")
        ideals = [ideals[index]]
    rows = []
    for k, ideal in enumerate(ideals):
        symbols = [
            {"radicand": a, "exponent": residue_symbol(a, ideal)}
            for a in cfg.radicands
        ]
        rows.append(
            {
                "index": k if cfg.ideal == "all" else int(cfg.ideal),
                "g": poly_str(ideal.g),
                "g_coeffs": list(ideal.g),
                "norm": ideal.norm,
                "symbols": symbols,
            }
        )
    result = {
        "prime": cfg.prime,
        "inertia_degree": ideals[0].f,
        "ideal_count": len(primes_above(cfg.prime, cfg.l, seed=cfg.seed)),
        "ideals": rows,
    }
    return _report(cfg, result)


def _char_sum_dict(stat) -> dict:
    return {
        "n": stat.n,
        "bound": stat.bound,
        "ideals": stat.ideals,
        "tallies": list(stat.tallies),
        "value_re": stat.value.real,
        "value_im": stat.value.imag,
        "magnitude": stat.magnitude,
        "normalized": stat.normalized,
    }


def _cmd_density(cfg: RunConfig) -> dict:
    if cfg.targets is None:
        raise ValueError("density requires --targets")
    if cfg.norm_bound is None:
        raise ValueError("density requires -x/--norm-bound")
    s = normalize_inputs(cfg.l, cfg.radicands)
    rep = density_experiment(
        s, cfg.targets, cfg.norm_bound, seed=cfg.seed, threads=cfg.threads
    )
    result = {
        "consistent": rep.consistent,
        "t": rep.t,
        "predicted": rep.predicted,
        "reduced": list(rep.reduced),
        "translated": list(rep.translated),
        "ideals_scanned": rep.ideals_scanned,
        "matches": rep.matches,
        "empirical": rep.empirical,
        "char_sums": [_char_sum_dict(c) for c in rep.char_sums],
    }
    checkpoints = [
        {
            "bound": row.bound,
            "ideals": row.ideals,
            "matches": row.matches,
            "empirical": row.empirical,
        }
        for row in rep.checkpoints
    ]
    return _report(cfg, result, checkpoints=checkpoints)


def _cmd_charsum(cfg: RunConfig) -> dict:
    if cfg.n is None:
        raise ValueError("charsum requires an integer argument")
    if cfg.norm_bound is None:
        raise ValueError("charsum requires -x/--norm-bound")
    rep = character_sum(
        cfg.n, cfg.l, cfg.norm_bound, seed=cfg.seed, threads=cfg.threads
    )
    return _report(
        cfg,
        _char_sum_dict(rep.final),
        checkpoints=[_char_sum_dict(row) for row in rep.checkpoints],
    )


def _cmd_check(cfg: RunConfig) -> dict:
    if cfg.targets is None:
        raise ValueError("check requires --targets")
    s = normalize_inputs(cfg.l, cfg.radicands)
    kernel = rank_and_kernel(exponent_matrix(s))
    result = {
        "consistent": consistency_check(s, cfg.targets),
        "rank": kernel.rank,
        "kernel_basis": [list(v) for v in kernel.basis],
        "dropped_indices": [i for i, pos in enumerate(s.index_map) if pos is None],
    }
    return _report(cfg, result)


_HANDLERS = {
    "degree": _cmd_degree,
    "reduce": _cmd_reduce,
    "symbol": _cmd_symbol,
    "density": _cmd_density,
    "charsum": _cmd_charsum,
    "check": _cmd_check,
}


def _stringify(obj):
    """Integers become decimal strings (bools stay bools) for safe transport."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_stringify(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    return obj


def _dumps(report: dict) -> str:
    return json.dumps(_stringify(report), sort_keys=True, separators=(",", ":"))


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + " ".join(f"{k}={_fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def _render_text(report: dict) -> str:
    lines = ["config: " + " ".join(f"{k}={_fmt(v)}" for k, v in report["config"].items())]
    for key, value in report["result"].items():
        lines.append(f"{key}: {_fmt(value)}")
    if report["checkpoints"]:
        lines.append("checkpoints:")
        for row in report["checkpoints"]:
            lines.append("  " + " ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
    for warning in report["warnings"]:
        lines.append(f"warning: {warning}")
    return "\n".join(lines)


def _targets_type(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"targets must be comma-separated integers, got {text!r}"
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radsym",
        description=(
            "Degrees of radical extensions, power residue symbols at prime "
            "ideals, and empirical symbol-density experiments."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed echoed into reports")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=1)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", parents=[common], help="degree of the radical extension")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("radicands", type=int, nargs="+")
    p.add_argument("--oracle", action="store_true", help="force the exhaustive cross-check")

    p = sub.add_parser("reduce", parents=[common], help="exclusive-prime reduction basis")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("radicands", type=int, nargs="+")

    p = sub.add_parser("symbol", parents=[common], help="residue symbols at ideals above p")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("--ideal", default="all", help="canonical ideal index, or 'all'")
    p.add_argument("radicands", type=int, nargs="+")

    p = sub.add_parser("density", parents=[common], help="empirical symbol-tuple density")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("-x", "--norm-bound", dest="norm_bound", type=int, required=True)
    p.add_argument("--targets", type=_targets_type, required=True,
                   help="comma-separated exponents, one per radicand (may be empty)")
    p.add_argument("radicands", type=int, nargs="*")

    p = sub.add_parser("charsum", parents=[common], help="root-of-unity character sum")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("-x", "--norm-bound", dest="norm_bound", type=int, required=True)
    p.add_argument("n", type=int)

    p = sub.add_parser("check", parents=[common], help="consistency of a target assignment")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--targets", type=_targets_type, required=True)
    p.add_argument("radicands", type=int, nargs="*")

    sub.add_parser("batch", help="read JSON configs from stdin, one per line")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        l=args.l,
        radicands=tuple(getattr(args, "radicands", ())),
        targets=getattr(args, "targets", None),
        norm_bound=getattr(args, "norm_bound", None),
        seed=args.seed,
        output_format=args.format,
        threads=args.threads,
        oracle=getattr(args, "oracle", False),
        prime=getattr(args, "prime", None),
        ideal=str(getattr(args, "ideal", "all")),
        n=getattr(args, "n", None),
    )


def _config_from_json(payload: dict) -> RunConfig:
    known = {
        "command", "l", "radicands", "targets", "norm_bound", "seed",
        "format", "threads", "oracle", "prime", "ideal", "n",
    }
    unknown = set(payload) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "command" not in payload:
        raise ValueError("config must name a command")
    command = payload["command"]
    if command not in _HANDLERS:
        raise ValueError(f"unknown command {command!r}")
    targets = payload.get("targets")
    return RunConfig(
        command=command,
        l=int(payload.get("l", 3)),
        radicands=tuple(int(a) for a in payload.get("radicands", ())),
        targets=None if targets is None else tuple(int(r) for r in targets),
        norm_bound=None if payload.get("norm_bound") is None else int(payload["norm_bound"]),
        seed=int(payload.get("seed", 0)),
        output_format=str(payload.get("format", "json")),
        threads=int(payload.get("threads", 1)),
        oracle=bool(payload.get("oracle", False)),
        prime=None if payload.get("prime") is None else int(payload["prime"]),
        ideal=str(payload.get("ideal", "all")),
        n=None if payload.get("n") is None else int(payload["n"]),
    )


def _run(cfg: RunConfig) -> int:
    try:
        _validate_config(cfg)
        report = _HANDLERS[cfg.command](cfg)
    except (DegreeMismatchError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, FactorizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    if cfg.output_format == "json":
        print(_dumps(report))
    else:
        print(_render_text(report))
    return EXIT_OK


def _run_batch(stream=None) -> int:
    stream = sys.stdin if stream is None else stream
    worst = EXIT_OK
    for line_no, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            cfg = _config_from_json(json.loads(line))
            _validate_config(cfg)
            report = _HANDLERS[cfg.command](cfg)
            print(_dumps(report))
        except (DegreeMismatchError, AssertionError) as exc:
            print(_dumps({"error": f"internal: {exc}", "line": line_no}))
            worst = EXIT_INTERNAL
        except (ValueError, KeyError, FactorizationError) as exc:
            print(_dumps({"error": str(exc), "line": line_no}))
            if worst == EXIT_OK:
                worst = EXIT_USER
    return worst


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "batch":
        return _run_batch()
    return _run(_config_from_args(args))


if __name__ == "__main__":
    raise SystemExit(main())
