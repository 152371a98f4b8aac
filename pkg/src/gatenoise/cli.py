"""Config-driven command line frontend.

Subcommands: ``rates``, ``scan``, ``couplings``, ``mc``, ``validate``.
Configuration is a JSON document with a strict schema (unknown keys are
rejected); command line flags override file values.  Every output file embeds
the fully resolved configuration and seed in its header, so a run can be
reproduced byte-for-byte from its own output.

Exit codes: 0 success / all validations passed, 1 validation failure,
2 configuration parse error, 3 physical-constraint violation.

Units: natural units (hbar = k_B = 1) by default.  An optional ``units``
block accepts frequencies in GHz and temperatures in kelvin; they are
converted at this boundary (time unit: ns) and the conversion factors are
recorded in the output header.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Mapping, Sequence

from . import __version__
from .couplings import (
    CouplingKind,
    coupling_matrix,
    drive_enhancement,
    kernel_h,
)
from .mcsim import (
    DEFAULT_MASTER_SEED,
    default_validation_suite,
    fit_rate,
    make_validation_scenario,
    simulate_dephasing,
    validate_against_analytic,
)
from .noise import Geometry, OhmicBath
from .rates import (
    ArchKind,
    NoiseKind,
    rate_bus,
    rate_fsa_independent,
    rate_fsa_uniform,
    scaling_scan,
    worst_case_pair,
)
from .register import (
    CoherencePair,
    GateDrive,
    hamming_distance,
    iter_coherence_pairs,
    pointer_bus,
    pointer_fsa_uniform,
    total_spin,
)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_PHYSICAL_ERROR = 3

# Conversion factors applied by the optional "units" block (time unit: ns).
GHZ_TO_NATURAL = 2.0 * math.pi          # GHz -> rad/ns
KELVIN_TO_NATURAL = 130.92034           # k_B/hbar in rad/ns per kelvin

_MAX_ALL_PAIRS_QUBITS = 8


class ConfigError(Exception):
    """Malformed configuration (unknown key, wrong type, bad structure)."""


class PhysicalParameterError(ValueError):
    """A physical parameter is missing or violates its constraints."""


def _check_keys(mapping: Mapping, allowed: Sequence[str], context: str) -> None:
    if not isinstance(mapping, Mapping):
        raise ConfigError(f"{context} must be an object, got {type(mapping).__name__}")
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {context}: {', '.join(unknown)}")


def _structural(mapping: Mapping, key: str, context: str) -> Any:
    if key not in mapping:
        raise ConfigError(f"missing required key '{key}' in {context}")
    return mapping[key]


def _physical(mapping: Mapping, key: str, context: str) -> float:
    if key not in mapping:
        raise PhysicalParameterError(f"missing physical parameter '{context}.{key}'")
    return float(mapping[key])


def _units_from_config(config: Mapping) -> dict[str, float]:
    block = config.get("units", {})
    _check_keys(block, ["frequency", "temperature"], "units")
    factors = {"frequency": 1.0, "temperature": 1.0}
    freq = block.get("frequency", "natural")
    if freq == "ghz":
        factors["frequency"] = GHZ_TO_NATURAL
    elif freq != "natural":
        raise ConfigError(f"units.frequency must be 'natural' or 'ghz', got {freq!r}")
    temp = block.get("temperature", "natural")
    if temp == "kelvin":
        factors["temperature"] = KELVIN_TO_NATURAL
    elif temp != "natural":
        raise ConfigError(
            f"units.temperature must be 'natural' or 'kelvin', got {temp!r}"
        )
    return factors


def _bath_from_config(
    config: Mapping, units: Mapping[str, float], require_temperature: bool
) -> OhmicBath:
    _check_keys(config, ["coupling", "cutoff", "temperature", "geometry", "velocity"], "bath")
    coupling = _physical(config, "coupling", "bath")
    cutoff = _physical(config, "cutoff", "bath") * units["frequency"]
    if require_temperature:
        temperature = _physical(config, "temperature", "bath") * units["temperature"]
    else:
        temperature = float(config.get("temperature", 0.0)) * units["temperature"]
    geometry = config.get("geometry", "1d")
    try:
        geometry = Geometry(geometry)
    except ValueError:
        raise ConfigError(f"bath.geometry must be '1d' or '3d', got {geometry!r}") from None
    return OhmicBath(
        coupling=coupling,
        cutoff=cutoff,
        temperature=temperature,
        geometry=geometry,
        velocity=float(config.get("velocity", 1.0)),
    )


def _drive_from_config(config: Mapping, n_qubits: int) -> GateDrive | None:
    if "drive" not in config:
        return None
    raw = config["drive"]
    if not isinstance(raw, (list, tuple)):
        raise ConfigError("drive must be a list of per-qubit amplitudes")
    if len(raw) != n_qubits:
        raise ConfigError(f"drive has {len(raw)} entries for L = {n_qubits}")
    return GateDrive(tuple(float(p) for p in raw))


def _pairs_from_config(
    config: Mapping, kind: ArchKind, n_qubits: int, drive: GateDrive | None
) -> list[CoherencePair]:
    spec = config.get("pairs", "all")
    if spec == "all":
        if n_qubits > _MAX_ALL_PAIRS_QUBITS:
            raise ConfigError(
                f"pairs: 'all' enumerates 4^L/2 rows and is capped at "
                f"L <= {_MAX_ALL_PAIRS_QUBITS}; list pairs explicitly"
            )
        return list(iter_coherence_pairs(n_qubits))
    if spec == "worst_case":
        return [worst_case_pair(kind, n_qubits, drive)]
    if isinstance(spec, list):
        pairs = []
        for i, entry in enumerate(spec):
            _check_keys(entry, ["left", "right"], f"pairs[{i}]")
            try:
                pairs.append(
                    CoherencePair.from_strings(
                        _structural(entry, "left", f"pairs[{i}]"),
                        _structural(entry, "right", f"pairs[{i}]"),
                    )
                )
            except ValueError as exc:
                raise ConfigError(f"pairs[{i}]: {exc}") from None
        return pairs
    raise ConfigError("pairs must be 'all', 'worst_case', or a list of label pairs")


def _canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_output(
    destination: str | None,
    fmt: str,
    meta: dict[str, Any],
    columns: Sequence[str],
    rows: Sequence[Mapping[str, Any]],
) -> None:
    if fmt == "csv":
        buffer = io.StringIO()
        for key, value in meta.items():
            buffer.write(f"# {key}: {_canonical_json(value)}\n")
        writer = csv.writer(buffer)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row.get(c)) for c in columns])
        text = buffer.getvalue()
    else:
        payload = {"meta": meta, "rows": [dict(r) for r in rows]}
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if destination is None:
        sys.stdout.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def _base_meta(command: str, config: Mapping, seed: int | None) -> dict[str, Any]:
    meta: dict[str, Any] = {
        "tool": f"gatenoise {command} v{__version__}",
        "config": config,
    }
    if seed is not None:
        meta["seed"] = seed
    units = _units_from_config(config)
    if units["frequency"] != 1.0 or units["temperature"] != 1.0:
        meta["unit_conversion"] = {
            "frequency_to_natural": units["frequency"],
            "temperature_to_natural": units["temperature"],
            "note": "natural units: hbar = k_B = 1, time in ns",
        }
    return meta


def _cmd_rates(config: Mapping, args: argparse.Namespace) -> int:
    _check_keys(
        config, ["architecture", "L", "bath", "pairs", "drive", "units"], "rates config"
    )
    try:
        kind = ArchKind(_structural(config, "architecture", "rates config"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    n_qubits = int(_structural(config, "L", "rates config"))
    units = _units_from_config(config)
    bath = _bath_from_config(
        _structural(config, "bath", "rates config"), units, require_temperature=True
    )
    drive = _drive_from_config(config, n_qubits)
    if kind is ArchKind.BUS and drive is None:
        raise ConfigError("bus rates require a 'drive' entry")
    pairs = _pairs_from_config(config, kind, n_qubits, drive)

    rows = []
    for pair in pairs:
        m, mp = total_spin(pair.left), total_spin(pair.right)
        nd = hamming_distance(pair)
        q = qp = None
        if kind is ArchKind.FSA_UNIFORM:
            q, qp = pointer_fsa_uniform(pair.left), pointer_fsa_uniform(pair.right)
            gamma = rate_fsa_uniform(bath, pair).gamma
        elif kind is ArchKind.FSA_INDEPENDENT:
            gamma = rate_fsa_independent(bath, pair).gamma
        elif kind is ArchKind.BUS:
            q, qp = pointer_bus(pair.left, drive), pointer_bus(pair.right, drive)
            gamma = rate_bus(bath, pair, drive).gamma
        else:
            raise ConfigError(
                f"rate tables exist for fsa_uniform, fsa_independent and bus, "
                f"not {kind.value}"
            )
        rows.append(
            {
                "architecture": kind.value,
                "L": n_qubits,
                "left": str(pair.left),
                "right": str(pair.right),
                "M": m,
                "Mp": mp,
                "Nd": nd,
                "Q": q,
                "Qp": qp,
                "gamma": gamma,
            }
        )
    meta = _base_meta("rates", config, seed=None)
    columns = ["architecture", "L", "left", "right", "M", "Mp", "Nd", "Q", "Qp", "gamma"]
    _write_output(args.output, args.format, meta, columns, rows)
    return EXIT_OK


def _cmd_scan(config: Mapping, args: argparse.Namespace) -> int:
    _check_keys(config, ["architecture", "noise", "L_values", "units"], "scan config")
    try:
        kind = ArchKind(_structural(config, "architecture", "scan config"))
        noise = NoiseKind(_structural(config, "noise", "scan config"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    l_values = _structural(config, "L_values", "scan config")
    if not isinstance(l_values, list) or not l_values:
        raise ConfigError("L_values must be a non-empty list of register lengths")
    points = scaling_scan(kind, noise, [int(v) for v in l_values])
    rows = []
    previous = None
    for point in points:
        exponent = None
        if previous is not None and point.n_qubits != previous.n_qubits:
            exponent = math.log(point.relative_rate / previous.relative_rate) / math.log(
                point.n_qubits / previous.n_qubits
            )
        rows.append(
            {
                "architecture": kind.value,
                "noise": noise.value,
                "L": point.n_qubits,
                "relative_rate": point.relative_rate,
                "local_exponent": exponent,
            }
        )
        previous = point
    meta = _base_meta("scan", config, seed=None)
    columns = ["architecture", "noise", "L", "relative_rate", "local_exponent"]
    _write_output(args.output, args.format, meta, columns, rows)
    return EXIT_OK


def _positions_from_config(config: Mapping) -> list[float]:
    raw = _structural(config, "positions", "couplings config")
    if isinstance(raw, Mapping):
        _check_keys(raw, ["count", "spacing"], "positions")
        count = int(_structural(raw, "count", "positions"))
        spacing = float(_structural(raw, "spacing", "positions"))
        if count < 1:
            raise ConfigError("positions.count must be >= 1")
        return [j * spacing for j in range(count)]
    if isinstance(raw, list) and raw:
        return [float(p) for p in raw]
    raise ConfigError("positions must be a list or {count, spacing}")


def _cmd_couplings(config: Mapping, args: argparse.Namespace) -> int:
    _check_keys(config, ["bath", "positions", "units"], "couplings config")
    units = _units_from_config(config)
    bath = _bath_from_config(
        _structural(config, "bath", "couplings config"), units, require_temperature=False
    )
    positions = _positions_from_config(config)
    n = len(positions)
    mu_sc = coupling_matrix(bath, positions, CouplingKind.SPURIOUS)
    mu_tr = coupling_matrix(bath, positions, CouplingKind.TRANSIENT)
    rows = []
    for j in range(n):
        for k in range(j + 1, n):
            r = abs(positions[k] - positions[j])
            x = bath.cutoff * r / bath.velocity
            tr_1d = 2.0 * bath.coupling * bath.cutoff / math.pi * kernel_h(x, Geometry.ONE_D)
            tr_3d = 2.0 * bath.coupling * bath.cutoff / math.pi * kernel_h(x, Geometry.THREE_D)
            rows.append(
                {
                    "j": j,
                    "k": k,
                    "r_jk": r,
                    "x": x,
                    "mu_sc": float(mu_sc.values[j, k]),
                    "mu_tr": float(mu_tr.values[j, k]),
                    "mu_tr_1d": tr_1d,
                    "mu_tr_3d": tr_3d,
                    "tr_3d_dominates": bool(tr_3d >= tr_1d),
                }
            )
    meta = _base_meta("couplings", config, seed=None)
    meta["drive_enhancement"] = drive_enhancement(n, bath)
    meta["geometry"] = bath.geometry.value
    if args.format == "json":
        meta["mu_sc_matrix"] = [list(map(float, row)) for row in mu_sc.values]
        meta["mu_tr_matrix"] = [list(map(float, row)) for row in mu_tr.values]
    columns = ["j", "k", "r_jk", "x", "mu_sc", "mu_tr", "mu_tr_1d", "mu_tr_3d", "tr_3d_dominates"]
    _write_output(args.output, args.format, meta, columns, rows)
    return EXIT_OK


_SCENARIO_KEYS = [
    "name",
    "architecture",
    "L",
    "pair",
    "drive",
    "coupling",
    "temperature",
    "cutoff_ratio",
    "reference_rate",
    "n_trajectories",
    "fit_window",
]


def _scenario_from_config(config: Mapping, seed: int, default_trajectories: int):
    _check_keys(config, _SCENARIO_KEYS, "scenario")
    try:
        kind = ArchKind(_structural(config, "architecture", "scenario"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    n_qubits = int(_structural(config, "L", "scenario"))
    drive = _drive_from_config(config, n_qubits)
    if kind is ArchKind.BUS and drive is None:
        drive = GateDrive.two_qubit_gate(n_qubits, 0, min(1, n_qubits - 1))
    pair_spec = _structural(config, "pair", "scenario")
    if pair_spec == "worst_case":
        pair = worst_case_pair(kind, n_qubits, drive)
    else:
        _check_keys(pair_spec, ["left", "right"], "scenario.pair")
        try:
            pair = CoherencePair.from_strings(
                _structural(pair_spec, "left", "scenario.pair"),
                _structural(pair_spec, "right", "scenario.pair"),
            )
        except ValueError as exc:
            raise ConfigError(f"scenario.pair: {exc}") from None
    if pair.n_qubits != n_qubits:
        raise ConfigError(
            f"scenario.pair has {pair.n_qubits} qubits but L = {n_qubits}"
        )
    fit_window = tuple(config.get("fit_window", (0.5, 2.0)))
    if len(fit_window) != 2:
        raise ConfigError("fit_window must be [t_min, t_max] in units of 1/rate")
    return make_validation_scenario(
        kind,
        pair,
        drive=drive,
        coupling=float(config.get("coupling", 1.0)),
        temperature=float(config.get("temperature", 1.0)),
        cutoff_ratio=float(config.get("cutoff_ratio", 128.0)),
        n_trajectories=int(config.get("n_trajectories", default_trajectories)),
        master_seed=seed,
        fit_window=fit_window,
        reference_rate=config.get("reference_rate"),
        name=config.get("name"),
    )


def _resolve_seed(config: Mapping, args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    return int(config.get("seed", DEFAULT_MASTER_SEED))


def _cmd_mc(config: Mapping, args: argparse.Namespace) -> int:
    _check_keys(config, ["scenario", "seed", "units"], "mc config")
    seed = _resolve_seed(config, args)
    resolved = dict(config)
    resolved["seed"] = seed
    scenario = _scenario_from_config(
        _structural(config, "scenario", "mc config"), seed, default_trajectories=10_000
    )
    trace = simulate_dephasing(
        scenario.arch, scenario.pair, scenario.bath, scenario.topology,
        scenario.cfg, jobs=args.jobs,
    )
    gamma = scenario.gamma_analytic
    if gamma > 0:
        window = (scenario.cfg.fit_window[0] / gamma, scenario.cfg.fit_window[1] / gamma)
    else:
        window = (0.05 * scenario.cfg.duration, 0.95 * scenario.cfg.duration)
    estimate = fit_rate(trace, window)
    meta = _base_meta("mc", resolved, seed=seed)
    meta["scenario"] = scenario.name
    meta["gamma_analytic"] = gamma
    meta["gamma_hat"] = estimate.gamma_hat
    meta["stderr_gamma"] = estimate.stderr_gamma
    meta["r_squared"] = estimate.r_squared
    rows = [
        {
            "t": float(t),
            "abs_C": float(a),
            "arg_C": float(p),
            "stderr": float(s),
        }
        for t, a, p, s in zip(
            trace.times, trace.abs_coherence, trace.arg_coherence, trace.stderr
        )
    ]
    _write_output(args.output, args.format, meta, ["t", "abs_C", "arg_C", "stderr"], rows)
    return EXIT_OK


def _cmd_validate(config: Mapping, args: argparse.Namespace) -> int:
    _check_keys(config, ["suite", "scenarios", "n_trajectories", "seed", "units"], "validate config")
    seed = _resolve_seed(config, args)
    resolved = dict(config)
    resolved["seed"] = seed
    n_override = config.get("n_trajectories")
    if "scenarios" in config:
        scenarios = [
            _scenario_from_config(entry, seed, default_trajectories=n_override or 10_000)
            for entry in config["scenarios"]
        ]
    else:
        suite = config.get("suite", "default")
        if suite != "default":
            raise ConfigError(f"unknown suite {suite!r}; only 'default' is bundled")
        scenarios = default_validation_suite(
            master_seed=seed, n_trajectories=n_override
        )
    reports = [validate_against_analytic(s, jobs=args.jobs) for s in scenarios]
    rows = [r.to_dict() for r in reports]
    meta = _base_meta("validate", resolved, seed=seed)
    meta["all_pass"] = all(r.passed for r in reports)
    columns = [
        "scenario", "gamma_analytic", "gamma_hat", "stderr", "rel_err", "z",
        "pass", "r_squared", "n_trajectories", "master_seed",
    ]
    _write_output(args.output, args.format, meta, columns, rows)
    return EXIT_OK if meta["all_pass"] else EXIT_VALIDATION_FAILED


_COMMANDS = {
    "rates": (_cmd_rates, True),
    "scan": (_cmd_scan, True),
    "couplings": (_cmd_couplings, True),
    "mc": (_cmd_mc, True),
    "validate": (_cmd_validate, False),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatenoise",
        description="Gate-control-noise dephasing: rates, couplings, scaling scans "
        "and Monte-Carlo validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("rates", "tabulate analytic dephasing rates for coherence pairs"),
        ("scan", "worst-case rate scaling vs register length"),
        ("couplings", "noise-induced inter-qubit coupling map"),
        ("mc", "Monte-Carlo coherence trace for one scenario"),
        ("validate", "run Monte-Carlo validation against the analytic rates"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", type=str, default=None, help="JSON config file")
        cmd.add_argument("--seed", type=int, default=None, help="master seed override")
        cmd.add_argument("--output", type=str, default=None, help="output file (default: stdout)")
        cmd.add_argument("--format", choices=["csv", "json"], default="csv")
        cmd.add_argument("--jobs", type=int, default=1, help="worker threads")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handler, config_required = _COMMANDS[args.command]
    try:
        if args.config is not None:
            try:
                with open(args.config) as fh:
                    config = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from None
            if not isinstance(config, dict):
                raise ConfigError("config must be a JSON object")
        elif config_required:
            raise ConfigError(f"'{args.command}' requires --config")
        else:
            config = {}
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        return handler(config, args)
    except ConfigError as exc:
        print(f"gatenoise: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ValueError as exc:
        print(f"gatenoise: {exc}", file=sys.stderr)
        return EXIT_PHYSICAL_ERROR


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
