"""Command-line entry point.

    diracosc spectrum | level | lines | scan | wavefunction | verify [options]

Exit codes: 0 success, 1 verification failure, 2 bad input (one diagnostic
line on stderr). A JSON file given with --config-file supplies any option by
its RunConfig field name; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Sequence

from scipy import constants

from . import oracle, serialize
from .core import (
    ALL_COMPONENTS,
    ALL_CONFIGS,
    Component,
    Configuration,
    DomainError,
    NoRealBoundState,
    PhysicalParams,
    QuantumNumbers,
    enumerate_states,
    larmor_from_field,
)
from .spectrum import energy, intermediates_consistency, scan_field, transition_lines
from .wavefunctions import (
    AXIAL_EXTENT,
    AXIAL_POINTS,
    RADIAL_EXTENT,
    RADIAL_POINTS,
    assemble_component,
    default_axial_grid,
    default_radial_grid,
)

COMMANDS = ("spectrum", "level", "lines", "scan", "wavefunction", "verify")
LINE_FIELDS = (
    "config", "lower_component", "lower_N", "lower_n", "lower_m_l",
    "upper_component", "upper_N", "upper_n", "upper_m_l", "dK", "tag",
)
SCAN_FIELDS = ("b", "K", "E2", "E", "bound")
PROFILE_FIELDS = ("coordinate", "amplitude")
CHECK_FIELDS = ("name", "expected", "actual", "rel_error", "passed")
INTERMEDIATE_FIELDS = ("eps", "lam", "D", "E2_reconstructed")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    a: float = 1.0
    b: float | None = None
    B_tesla: float | None = None
    mass: float = constants.m_e
    charge: float = constants.e
    config: str = "I"
    component: str | None = None
    max_N: int = 2
    max_n: int = 2
    N: int = 0
    n: int = 0
    m_l: int = 0
    b_values: list[float] | None = None
    part: str = "radial"
    points: int | None = None
    extent: float | None = None
    ml_set: list[int] = field(default_factory=lambda: [0, 1, 2, 3])
    tol: float = oracle.PASS_REL
    format: str = "csv"
    output: str | None = None

    @classmethod
    def build(cls, file_values: dict[str, Any], flag_values: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(file_values) - known
        if unknown:
            raise UsageError(f"unknown config-file keys: {', '.join(sorted(unknown))}")
        merged = {**file_values, **flag_values}
        cfg = cls(**merged)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.b is not None and self.B_tesla is not None:
            raise UsageError("supply exactly one of b and B_tesla, not both")
        if self.config not in ("I", "II", "both"):
            raise UsageError(f"config must be I, II or both, got {self.config!r}")
        if self.component not in (None, "upper", "lower", "both"):
            raise UsageError(f"component must be upper, lower or both, got {self.component!r}")
        if self.format not in serialize.FORMATS:
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if self.max_N < 0 or self.max_n < 0:
            raise UsageError("max_N and max_n must be >= 0")

    def params(self) -> PhysicalParams:
        if self.B_tesla is not None:
            omega_L = larmor_from_field(self.B_tesla, self.mass, self.charge)
            b = constants.hbar * omega_L / (self.mass * constants.c**2)
        else:
            b = 0.0 if self.b is None else self.b
        return PhysicalParams(self.a, b)

    def configs(self) -> tuple[Configuration, ...]:
        return ALL_CONFIGS if self.config == "both" else (Configuration(self.config),)

    def single_config(self) -> Configuration:
        if self.config == "both":
            raise UsageError("this command needs a single configuration (I or II)")
        return Configuration(self.config)

    def components(self, default: str) -> tuple[Component, ...]:
        choice = self.component or default
        return ALL_COMPONENTS if choice == "both" else (Component(choice),)

    def single_component(self) -> Component:
        choice = self.component or "upper"
        if choice == "both":
            raise UsageError("this command needs a single component (upper or lower)")
        return Component(choice)

    def qn(self) -> QuantumNumbers:
        return QuantumNumbers(self.single_config(), self.single_component(), self.N, self.n, self.m_l)


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config-file", dest="config_file", help="JSON file with RunConfig fields")
    common.add_argument("--a", type=float, help="hbar*omega / mc^2")
    field_group = common.add_mutually_exclusive_group()
    field_group.add_argument("--b", type=float, help="hbar*omega_L / mc^2")
    field_group.add_argument("--B-tesla", dest="B_tesla", type=float, help="field in tesla (converted to b)")
    common.add_argument("--mass", type=float, help="particle mass in kg (with --B-tesla)")
    common.add_argument("--charge", type=float, help="particle charge in C (with --B-tesla)")
    common.add_argument("--config", choices=("I", "II", "both"))
    common.add_argument("--component", choices=("upper", "lower", "both"))
    common.add_argument("--format", choices=serialize.FORMATS)
    common.add_argument("--output", "-o", help="output file (default stdout)")

    cutoffs = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    cutoffs.add_argument("--max-N", dest="max_N", type=int)
    cutoffs.add_argument("--max-n", dest="max_n", type=int)

    state = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    state.add_argument("--N", dest="N", type=int)
    state.add_argument("--n", dest="n", type=int)
    state.add_argument("--ml", dest="m_l", type=int)

    parser = _Parser(prog="diracosc", description="Dirac oscillator in an axial magnetic field")
    sub = parser.add_subparsers(dest="command", required=True)
    quiet = {"argument_default": argparse.SUPPRESS}
    sub.add_parser("spectrum", parents=[common, cutoffs], **quiet, help="level table over enumerated states")
    sub.add_parser("level", parents=[common, state], **quiet, help="one level with its separation constants")
    sub.add_parser("lines", parents=[common, cutoffs], **quiet, help="transition catalog for one configuration")
    p = sub.add_parser("scan", parents=[common, state], **quiet, help="sweep the Larmor ratio b")
    p.add_argument("--b-values", dest="b_values", type=_float_list, help="comma-separated b values")
    p = sub.add_parser("wavefunction", parents=[common, state], **quiet, help="sampled radial or axial profile")
    p.add_argument("--part", choices=("radial", "axial"))
    p.add_argument("--points", type=int)
    p.add_argument("--extent", type=float)
    p = sub.add_parser("verify", parents=[common, cutoffs], **quiet, help="finite-difference oracle report")
    p.add_argument("--ml-set", dest="ml_set", type=_int_list, help="comma-separated |m_l| values")
    p.add_argument("--points", type=int, help="radial grid points")
    p.add_argument("--tol", type=float, help="relative pass tolerance")
    return parser


def _load_config_file(path: str) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    return data


def _cmd_spectrum(cfg: RunConfig) -> tuple[str, int]:
    params = cfg.params()
    states = enumerate_states(cfg.max_N, cfg.max_n, cfg.configs(), cfg.components("both"))
    return serialize.serialize_levels([energy(params, qn) for qn in states], cfg.format), 0


def _cmd_level(cfg: RunConfig) -> tuple[str, int]:
    params = cfg.params()
    level = energy(params, cfg.qn())
    inter, E2_rec = intermediates_consistency(params, level.qn)
    rec = serialize.level_record(level)
    rec.update(eps=inter.eps, lam=inter.lam, D=inter.D, E2_reconstructed=E2_rec)
    if cfg.format == "json":
        return serialize.write_json(rec), 0
    return serialize.write_csv([rec], serialize.LEVEL_FIELDS + INTERMEDIATE_FIELDS), 0


def _cmd_lines(cfg: RunConfig) -> tuple[str, int]:
    params = cfg.params()
    config = cfg.single_config()
    states = enumerate_states(cfg.max_N, cfg.max_n, [config], cfg.components("both"))
    catalog = transition_lines(params, [energy(params, qn) for qn in states], config)
    records = [
        {
            "config": config.value,
            "lower_component": ln.lower.component.value,
            "lower_N": ln.lower.N,
            "lower_n": ln.lower.n,
            "lower_m_l": ln.lower.m_l,
            "upper_component": ln.upper.component.value,
            "upper_N": ln.upper.N,
            "upper_n": ln.upper.n,
            "upper_m_l": ln.upper.m_l,
            "dK": ln.dK,
            "tag": ln.tag,
        }
        for ln in catalog.lines
    ]
    if cfg.format == "json":
        return serialize.write_json(
            {"canonical": catalog.canonical, "counts": catalog.counts(), "lines": records}
        ), 0
    return serialize.write_csv(records, LINE_FIELDS), 0


def _cmd_scan(cfg: RunConfig) -> tuple[str, int]:
    if not cfg.b_values:
        raise UsageError("scan needs --b-values")
    rows = scan_field(cfg.params(), cfg.qn(), cfg.b_values)
    records = [{"b": r.b, "K": r.K, "E2": r.E2, "E": r.E, "bound": r.bound} for r in rows]
    return serialize.serialize_records(records, cfg.format, SCAN_FIELDS), 0


def _cmd_wavefunction(cfg: RunConfig) -> tuple[str, int]:
    if cfg.part == "radial":
        grid = default_radial_grid(cfg.extent or RADIAL_EXTENT, cfg.points or RADIAL_POINTS)
        wave = assemble_component(cfg.qn(), cfg.params(), radial_grid=grid)
        xs, ys = wave.radial.xi, wave.radial.F
    elif cfg.part == "axial":
        grid = default_axial_grid(cfg.extent or AXIAL_EXTENT, cfg.points or AXIAL_POINTS)
        wave = assemble_component(cfg.qn(), cfg.params(), axial_grid=grid)
        xs, ys = wave.axial.y, wave.axial.G
    else:
        raise UsageError(f"part must be radial or axial, got {cfg.part!r}")
    records = [{"coordinate": float(x), "amplitude": float(y)} for x, y in zip(xs, ys)]
    return serialize.serialize_records(records, cfg.format, PROFILE_FIELDS), 0


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    params = cfg.params()
    report = oracle.VerificationReport()
    for config in cfg.configs():
        part = oracle.verify_against_closed_form(
            params, config, cfg.max_N, cfg.max_n, cfg.ml_set,
            rel_tol=cfg.tol, radial_points=cfg.points or oracle.RADIAL_POINTS,
        )
        report.checks.extend(
            oracle.Check(f"config={config.value} {c.name}", c.expected, c.actual, c.rel_error, c.passed)
            for c in part.checks
        )
    ok, worst = oracle.pauli_identity_check(1000, seed=0)
    report.checks.append(oracle.Check("pauli (sigma.v)^2 = |v|^2", 0.0, worst, worst, ok))
    text = serialize.serialize_records(report.to_records(), cfg.format, CHECK_FIELDS)
    return text, 0 if report.passed else 1


HANDLERS = {
    "spectrum": _cmd_spectrum,
    "level": _cmd_level,
    "lines": _cmd_lines,
    "scan": _cmd_scan,
    "wavefunction": _cmd_wavefunction,
    "verify": _cmd_verify,
}


def run_cli(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        ns = vars(build_parser().parse_args(argv))
        command = ns.pop("command")
        file_values = _load_config_file(ns.pop("config_file")) if "config_file" in ns else {}
        cfg = RunConfig.build(file_values, ns)
        text, code = HANDLERS[command](cfg)
        if cfg.output:
            Path(cfg.output).write_text(text)
        else:
            stdout.write(text)
        return code
    except (UsageError, DomainError, NoRealBoundState, TypeError, ValueError, OSError) as exc:
        message = " ".join(str(exc).split())
        print(f"error: {message}", file=stderr)
    return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
