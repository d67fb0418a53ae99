"""Experiment configuration: a flat key-section text file (INI syntax).

Example:

    [field]
    kind = prime
    p = 2

    [monoid]
    kind = numerical
    generators = 2,3

    [endomorphism]
    kind = frobenius

    [run]
    e_max = 8
    t_grid = -1,-0.5,0,0.5,1
    output_dir = out
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .errors import ConfigError
from .field import FieldSpec
from .grring import EndomorphismSpec, RingSpec
from .monoid import ENUMERATION_CAP, MonoidSpec

DEFAULT_T_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)


@dataclass(frozen=True)
class ExperimentConfig:
    field_kind: str
    p: int
    s: int
    m: int
    monoid_kind: str
    generators: tuple
    rank: int
    endo_kind: str
    scale_m: int
    e_max: int
    t_grid: tuple
    output_dir: str
    workers: int
    seed: int
    figures: bool
    window_cutoff: tuple | None
    window_margin: tuple | None
    rate_tol: float
    ratio_bound: float
    drift_factor: float
    multiplicity_tol: float
    enumeration_cap: int
    class_cap: int
    raw_text: str = dc_field(repr=False, default="")

    def as_dict(self) -> dict:
        return {
            "field": {"kind": self.field_kind, "p": self.p, "s": self.s,
                      "m": self.m},
            "monoid": {"kind": self.monoid_kind,
                       "generators": list(self.generators), "rank": self.rank},
            "endomorphism": {"kind": self.endo_kind, "m": self.scale_m},
            # workers and the figures toggle are runtime details, not part of
            # the experiment identity; reports stay byte-identical across them
            "run": {"e_max": self.e_max, "t_grid": list(self.t_grid),
                    "seed": self.seed},
            "tolerance": {"rate_tol": self.rate_tol,
                          "ratio_bound": self.ratio_bound,
                          "drift_factor": self.drift_factor,
                          "multiplicity_tol": self.multiplicity_tol,
                          "enumeration_cap": self.enumeration_cap,
                          "class_cap": self.class_cap},
        }


def _ints(raw: str) -> tuple:
    try:
        return tuple(int(x.strip()) for x in raw.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated integers, got {raw!r}") from exc


def _floats(raw: str) -> tuple:
    try:
        return tuple(float(x.strip()) for x in raw.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {raw!r}") from exc


def parse_config_text(text: str) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc

    def get(section, key, fallback=None):
        return parser.get(section, key, fallback=fallback)

    field_kind = get("field", "kind", "prime").strip()
    if field_kind not in ("prime", "finite", "rational_function"):
        raise ConfigError(f"unknown field kind {field_kind!r}")
    try:
        p = int(get("field", "p", "2"))
        s = int(get("field", "s", "1"))
        m = int(get("field", "m", "0"))
    except ValueError as exc:
        raise ConfigError(f"bad field parameters: {exc}") from exc
    if field_kind == "rational_function" and m < 1:
        raise ConfigError("rational_function field needs m >= 1")

    monoid_kind = get("monoid", "kind", "numerical").strip()
    if monoid_kind not in ("numerical", "free", "product"):
        raise ConfigError(f"unknown monoid kind {monoid_kind!r}")
    generators = _ints(get("monoid", "generators", ""))
    try:
        rank = int(get("monoid", "rank", "0"))
    except ValueError as exc:
        raise ConfigError(f"bad monoid rank: {exc}") from exc
    if monoid_kind in ("numerical", "product") and not generators:
        raise ConfigError(f"{monoid_kind} monoid needs generators")

    endo_kind = get("endomorphism", "kind", "frobenius").strip()
    if endo_kind not in ("frobenius", "scale"):
        raise ConfigError(f"unknown endomorphism kind {endo_kind!r}")
    try:
        scale_m = int(get("endomorphism", "m", "1"))
    except ValueError as exc:
        raise ConfigError(f"bad endomorphism scale: {exc}") from exc
    if endo_kind == "scale" and scale_m < 1:
        raise ConfigError("scale endomorphism needs m >= 1")

    try:
        e_max = int(get("run", "e_max", "8"))
    except ValueError as exc:
        raise ConfigError(f"bad e_max: {exc}") from exc
    if e_max < 1:
        raise ConfigError("e_max must be >= 1")
    t_raw = get("run", "t_grid", "")
    t_grid = _floats(t_raw) if t_raw else DEFAULT_T_GRID
    if not t_grid:
        raise ConfigError("t_grid must be nonempty")

    cutoff_raw = get("window", "cutoff", "auto").strip()
    margin_raw = get("window", "margin", "auto").strip()
    window_cutoff = None if cutoff_raw == "auto" else _ints(cutoff_raw)
    window_margin = None if margin_raw == "auto" else _ints(margin_raw)

    try:
        cfg = ExperimentConfig(
            field_kind=field_kind, p=p, s=s, m=m,
            monoid_kind=monoid_kind, generators=generators, rank=rank,
            endo_kind=endo_kind, scale_m=scale_m,
            e_max=e_max, t_grid=t_grid,
            output_dir=get("run", "output_dir", "out"),
            workers=int(get("run", "workers", "1")),
            seed=int(get("run", "seed", "0")),
            figures=parser.getboolean("run", "figures", fallback=True),
            window_cutoff=window_cutoff, window_margin=window_margin,
            rate_tol=float(get("tolerance", "rate_tol", "0.1")),
            ratio_bound=float(get("tolerance", "ratio_bound", "10")),
            drift_factor=float(get("tolerance", "drift_factor", "2")),
            multiplicity_tol=float(get("tolerance", "multiplicity_tol", "1e-6")),
            enumeration_cap=int(get("tolerance", "enumeration_cap",
                                    str(ENUMERATION_CAP))),
            class_cap=int(get("tolerance", "class_cap", "65536")),
            raw_text=text,
        )
    except ValueError as exc:
        raise ConfigError(f"bad run/tolerance parameter: {exc}") from exc
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1")
    return cfg


def parse_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


def build_field(cfg: ExperimentConfig) -> FieldSpec:
    try:
        if cfg.field_kind == "prime":
            return FieldSpec.prime(cfg.p)
        if cfg.field_kind == "finite":
            return FieldSpec.finite(cfg.p, cfg.s)
        return FieldSpec.rational_function(cfg.p, cfg.m)
    except Exception as exc:
        raise ConfigError(f"field construction failed: {exc}") from exc


def build_monoid(cfg: ExperimentConfig) -> MonoidSpec:
    try:
        if cfg.monoid_kind == "numerical":
            return MonoidSpec.numerical(*cfg.generators)
        if cfg.monoid_kind == "free":
            return MonoidSpec.free(cfg.rank)
        return MonoidSpec.product(cfg.generators, cfg.rank)
    except Exception as exc:
        raise ConfigError(f"monoid construction failed: {exc}") from exc


def build_ring(cfg: ExperimentConfig) -> RingSpec:
    return RingSpec(build_field(cfg), build_monoid(cfg))


def build_endomorphism(cfg: ExperimentConfig, ring: RingSpec) -> EndomorphismSpec:
    try:
        if cfg.endo_kind == "frobenius":
            return EndomorphismSpec.frobenius(ring)
        return EndomorphismSpec.scale(ring, cfg.scale_m)
    except Exception as exc:
        raise ConfigError(f"endomorphism construction failed: {exc}") from exc
