"""Line-oriented ``key = value`` experiment configuration.

Blank lines and ``#`` comments are ignored.  Unknown keys are errors.

Function syntaxes::

    f   = series:seed=<u64>,m=<int>,decay=geometric:<ratio>
    f   = zero
    f   = scaled-phi:<c>          # c * phi, an adversarial non-generic f
    phi = embed:<cantor-name>     # cantor-name: fat | lean | middle:<ratio>
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..cantor import RemovalSchedule, build_cantor
from ..errors import ConfigError, ParameterError
from ..funcgen import AffineCombo, CodeFunction, Embedding, coord_series_random, zero_function
from ..rng import SplitMix64


@dataclass(frozen=True)
class FunctionSpec:
    kind: str  # "series" | "zero" | "scaled-phi"
    seed: int = 0
    m: int = 0
    decay: float = 0.5
    scale: float = 1.0

    @classmethod
    def parse(cls, text: str) -> FunctionSpec:
        text = text.strip()
        name, _, arg = text.partition(":")
        if name == "zero" and not arg:
            return cls("zero")
        if name == "scaled-phi":
            try:
                return cls("scaled-phi", scale=float(arg))
            except ValueError as exc:
                raise ConfigError(f"bad scale in {text!r}") from exc
        if name == "series":
            fields = {}
            for part in arg.split(","):
                key, eq, value = part.partition("=")
                if not eq:
                    raise ConfigError(f"expected key=value in {text!r}")
                fields[key.strip()] = value.strip()
            unknown = set(fields) - {"seed", "m", "decay"}
            if unknown or not {"seed", "m"} <= set(fields):
                raise ConfigError(f"series needs seed and m (and optional decay): {text!r}")
            decay = fields.get("decay", "geometric:0.5")
            dname, _, ratio = decay.partition(":")
            try:
                seed = int(fields["seed"], 0)
                m = int(fields["m"])
                if dname != "geometric":
                    raise ValueError(decay)
                ratio_f = float(ratio)
            except ValueError as exc:
                raise ConfigError(f"bad series parameters in {text!r}") from exc
            if not 0 <= seed < 2 ** 64:
                raise ConfigError("series seed must be an unsigned 64-bit integer")
            return cls("series", seed=seed, m=m, decay=ratio_f)
        raise ConfigError(f"unrecognised function spec {text!r}")

    @property
    def text(self) -> str:
        if self.kind == "series":
            return f"series:seed={self.seed},m={self.m},decay=geometric:{self.decay!r}"
        if self.kind == "scaled-phi":
            return f"scaled-phi:{self.scale!r}"
        return "zero"

    def build(self, phi: CodeFunction, seed: int | None = None, m: int | None = None) -> CodeFunction:
        if self.kind == "series":
            return coord_series_random(self.seed if seed is None else seed, m or self.m, self.decay)
        if self.kind == "scaled-phi":
            return AffineCombo(phi, zero_function(phi.max_depth), self.scale, 0.0)
        return zero_function(max(64, phi.max_depth))


def _floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(v, 0) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"expected integers or lo:hi, got {text!r}") from exc


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _schedule(text: str) -> RemovalSchedule:
    try:
        return RemovalSchedule.parse(text)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def _phi(text: str) -> RemovalSchedule:
    name, _, arg = text.strip().partition(":")
    if name != "embed" or not arg:
        raise ConfigError(f"phi must be embed:<cantor-name>, got {text!r}")
    return _schedule(arg)


@dataclass(frozen=True)
class ExperimentConfig:
    cantor: RemovalSchedule = field(default_factory=RemovalSchedule.fat)
    depth: int = 14
    phi: RemovalSchedule = field(default_factory=RemovalSchedule.fat)
    f: FunctionSpec = field(default_factory=lambda: FunctionSpec("series", seed=1, m=14, decay=0.5))
    seeds: tuple[int, ...] = ()
    n: float = 2.0
    lambda_samples: int = 64
    lambda_random: int = 0
    lambda_seed: int = 0
    lambda_points: tuple[float, ...] = ()
    t: tuple[float, ...] = (0.5,)
    fubini_n: tuple[float, ...] = (1.0, 4.0)
    fubini_depth: int = 8
    energy_depth: int = 10
    profile_depths: tuple[int, ...] = tuple(range(4, 13))
    box_base: float = 2.0
    box_jmin: int = 1
    box_jmax: int = 11
    slope_threshold: float = 0.8
    graph_tol: float = 0.15
    product_depth: int = 10
    product_cap: int = 1 << 22
    max_atoms: int = 1 << 14
    out: str = "out"
    threads: int = 1
    deterministic: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.depth < 1 or 2 ** self.depth > self.max_atoms:
            raise ConfigError(f"depth {self.depth} exceeds the atom cap {self.max_atoms}")
        if min(self.fubini_depth, self.energy_depth) < 1:
            raise ConfigError("fubini_depth and energy_depth must be >= 1")
        if 2 ** max(self.fubini_depth, self.energy_depth) > self.max_atoms:
            raise ConfigError("fubini_depth/energy_depth exceed the atom cap")
        if self.profile_depths and 2 ** max(self.profile_depths) > self.max_atoms:
            raise ConfigError("profile depths exceed the atom cap")
        if self.lambda_samples < 0 or self.lambda_random < 0:
            raise ConfigError("lambda sample counts must be nonnegative")
        if len(self.lambdas()) < 3:
            raise ConfigError("need at least 3 lambda samples")
        if any(not 0 <= t < 1 for t in self.t):
            raise ConfigError("t values must lie in [0, 1)")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def lambdas(self) -> list[float]:
        """Uniform grid on [-n, n], optional seeded uniform draws, explicit points; sorted."""
        grid = np.linspace(-self.n, self.n, self.lambda_samples).tolist() if self.lambda_samples else []
        rng = SplitMix64(self.lambda_seed)
        draws = [self.n * rng.next_symmetric() for _ in range(self.lambda_random)]
        return sorted(set(float(v) for v in grid + draws + list(self.lambda_points)))

    def seed_list(self) -> list[int | None]:
        if self.f.kind != "series":
            return [None]
        return list(self.seeds) if self.seeds else [self.f.seed]

    def phi_function(self, depth: int) -> Embedding:
        return Embedding(build_cantor(self.phi, depth))

    def echo(self) -> dict:
        """Experiment parameters for reports; output directory and thread count are left out."""
        out = {}
        for fld in dataclasses.fields(self):
            if fld.name in ("out", "threads"):
                continue
            value = getattr(self, fld.name)
            if isinstance(value, RemovalSchedule):
                value = value.name
            elif isinstance(value, FunctionSpec):
                value = value.text
            elif isinstance(value, tuple):
                value = list(value)
            out[fld.name] = value
        out["phi"] = "embed:" + out["phi"]
        return out

    def with_overrides(self, **overrides) -> ExperimentConfig:
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if "seed" in overrides:
            overrides["seeds"] = (int(overrides.pop("seed")),)
        if "depth" in overrides and self.f.kind == "series" and self.f.m < overrides["depth"]:
            overrides["f"] = dataclasses.replace(self.f, m=overrides["depth"])
        return dataclasses.replace(self, **overrides)


_PARSERS = {
    "cantor": _schedule,
    "depth": int,
    "phi": _phi,
    "f": FunctionSpec.parse,
    "seeds": _ints,
    "n": float,
    "lambda_samples": int,
    "lambda_random": int,
    "lambda_seed": lambda v: int(v, 0),
    "lambda_points": _floats,
    "t": _floats,
    "fubini_n": _floats,
    "fubini_depth": int,
    "energy_depth": int,
    "profile_depths": _ints,
    "box_base": float,
    "box_jmin": int,
    "box_jmax": int,
    "slope_threshold": float,
    "graph_tol": float,
    "product_depth": int,
    "product_cap": int,
    "max_atoms": int,
    "out": str,
    "threads": int,
    "deterministic": _bool,
}


def parse_config(text: str) -> ExperimentConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        if not eq:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _PARSERS[key](value.strip())
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {value.strip()!r}") from exc
    if "f" not in values and "depth" in values:
        values["f"] = FunctionSpec("series", seed=1, m=values["depth"], decay=0.5)
    if math.isnan(values.get("n", 1.0)):
        raise ConfigError("n must be a number")
    return ExperimentConfig(**values)


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())
