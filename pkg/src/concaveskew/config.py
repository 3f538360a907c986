"""Run-configuration files: flat key = value under fixed sections.

Example::

    [maps]
    f0 = logistic(c=0.5)
    f1 = moebius(A=2, B=1, d=0.4)
    modulus = 2.0

    [tolerances]
    tau_bisect = 1e-12
    tau_parab = 1e-9
    tau_meas = 1e-9

    [budgets]
    node_cap = 50000000
    iteration_cap = 100000
    workers = 1

    [run]
    seed = 20260808

A bifurcation family replaces ``f1`` by ``f1_base``; the declared pair
must pass the hypothesis check unless loaded with force=True.
"""

from __future__ import annotations

import configparser
import hashlib
import re
from dataclasses import dataclass, field

from concaveskew.bifurcation import BifFamily, make_family
from concaveskew.errors import ConfigError
from concaveskew.maps import (
    FiberMap,
    FiberPair,
    affine,
    check_hypotheses,
    logistic,
    moebius,
    reference_pair,
)

_FAMILY_BUILDERS = {
    "logistic": (logistic, ("c",)),
    "moebius": (moebius, ("A", "B", "d")),
    "affine": (affine, ("slope", "d")),
}

DEFAULT_CONFIG_TEXT = """\
[maps]
f0 = logistic(c=0.5)
f1 = moebius(A=2, B=1, d=0.4)
modulus = 2.0
"""

_CALL_RE = re.compile(r"^\s*([a-zA-Z_]\w*)\s*\((.*)\)\s*$")


def parse_map_expr(text: str) -> FiberMap:
    """Parse ``name(k=v, ...)`` or ``name(v, ...)`` into a FiberMap."""
    match = _CALL_RE.match(text)
    if not match:
        raise ConfigError(f"cannot parse map declaration {text!r}")
    name, arglist = match.group(1), match.group(2)
    if name not in _FAMILY_BUILDERS:
        raise ConfigError(f"unknown map family {name!r}")
    builder, names = _FAMILY_BUILDERS[name]
    positional = []
    keyword = {}
    for chunk in filter(None, (s.strip() for s in arglist.split(","))):
        if "=" in chunk:
            key, value = chunk.split("=", 1)
            keyword[key.strip()] = value.strip()
        else:
            positional.append(chunk)
    try:
        args = [float(v) for v in positional]
        kwargs = {k: float(v) for k, v in keyword.items()}
    except ValueError as exc:
        raise ConfigError(f"non-numeric argument in {text!r}") from exc
    if len(args) > len(names) or any(k not in names for k in kwargs):
        raise ConfigError(f"bad arguments for {name}: expected {names}")
    try:
        return builder(*args, **kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad map declaration {text!r}: {exc}") from exc


@dataclass
class RunConfig:
    text: str
    f0: FiberMap
    f1: FiberMap = None
    f1_base: FiberMap = None
    modulus: float = 0.0
    tau_bisect: float = 1e-12
    tau_parab: float = 1e-9
    tau_meas: float = 1e-9
    node_cap: int = 50_000_000
    iteration_cap: int = 100_000
    workers: int = 1
    seed: int = 20260808
    out_dir: str = "."
    warnings: list = field(default_factory=list)

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()

    def pair(self, force: bool = False) -> FiberPair:
        if self.f1 is None:
            raise ConfigError("config declares no f1 map (family config?)")
        modulus = self.modulus
        pair = FiberPair(self.f0, self.f1, modulus, self.tau_bisect)
        report = check_hypotheses(pair, 500)
        if modulus <= 0.0:
            modulus = report.modulus_estimate * (1.0 + 1e-9)
            pair = FiberPair(self.f0, self.f1, modulus, self.tau_bisect)
            report = check_hypotheses(pair, 500)
        if not report.all_ok:
            message = (f"declared pair fails hypotheses "
                       f"(h1={report.h1_ok} h2={report.h2_ok} "
                       f"h2+={report.h2plus_ok}, worst={report.worst_violation})")
            if not force:
                raise ConfigError(message)
            self.warnings.append(message)
        return pair

    def family(self) -> BifFamily:
        if self.f1_base is None:
            raise ConfigError("config declares no f1_base map")
        return make_family(self.f0, self.f1_base, self.tau_bisect)


def _get(parser, section, key, cast, default):
    if parser.has_option(section, key):
        try:
            return cast(parser.get(section, key))
        except ValueError as exc:
            raise ConfigError(f"bad value for [{section}] {key}") from exc
    return default


def load_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    if not parser.has_section("maps") or not parser.has_option("maps", "f0"):
        raise ConfigError("config must declare [maps] f0")
    cfg = RunConfig(text=text, f0=parse_map_expr(parser.get("maps", "f0")))
    if parser.has_option("maps", "f1"):
        cfg.f1 = parse_map_expr(parser.get("maps", "f1"))
    if parser.has_option("maps", "f1_base"):
        cfg.f1_base = parse_map_expr(parser.get("maps", "f1_base"))
    if cfg.f1 is None and cfg.f1_base is None:
        raise ConfigError("config must declare [maps] f1 or f1_base")
    cfg.modulus = _get(parser, "maps", "modulus", float, 0.0)
    cfg.tau_bisect = _get(parser, "tolerances", "tau_bisect", float, 1e-12)
    cfg.tau_parab = _get(parser, "tolerances", "tau_parab", float, 1e-9)
    cfg.tau_meas = _get(parser, "tolerances", "tau_meas", float, 1e-9)
    cfg.node_cap = _get(parser, "budgets", "node_cap", int, 50_000_000)
    cfg.iteration_cap = _get(parser, "budgets", "iteration_cap", int, 100_000)
    cfg.workers = _get(parser, "budgets", "workers", int, 1)
    cfg.seed = _get(parser, "run", "seed", int, 20260808)
    cfg.out_dir = _get(parser, "run", "out_dir", str, ".")
    for tol in ("tau_bisect", "tau_parab", "tau_meas"):
        if getattr(cfg, tol) <= 0.0:
            raise ConfigError(f"{tol} must be positive")
    return cfg


def load_config_file(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return load_config(handle.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def default_config() -> RunConfig:
    """The built-in reference configuration."""
    cfg = load_config(DEFAULT_CONFIG_TEXT)
    assert abs(cfg.pair().d - reference_pair().d) < 1e-15
    return cfg
