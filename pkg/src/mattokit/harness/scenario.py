"""Scenario files: flat ``key = value`` text parsed with configparser.

A file may start with a ``[scenario]`` header or omit it. Any key outside
``SCENARIO_KEYS`` is rejected.
"""

from __future__ import annotations

import configparser
import zlib
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..inner import STRATEGIES

__all__ = [
    "Scenario",
    "ScenarioError",
    "SCENARIO_KEYS",
    "DEFAULT_TOL",
    "load_scenario",
    "parse_scenario",
    "substream",
]

DEFAULT_TOL = 1e-9
MAX_LAMBDA = 0.7
DEFAULT_LAMBDAS = (0.3 + 0j, -0.5j, 0.2 + 0.4j, -0.6 + 0.1j)

SCENARIO_KEYS = (
    "seed",
    "d",
    "strategy",
    "degrees",
    "N",
    "lambda_samples",
    "tol",
    "checks",
    "phi_band",
    "phi_scale",
    "zero_radius",
    "trunc",
)


class ScenarioError(ValueError):
    """Invalid scenario configuration (maps to exit status 2)."""


@dataclass(frozen=True)
class Scenario:
    seed: int = 1
    d: int = 2
    strategy: str = "powers-of-common-factor"
    degrees: tuple[int, int] = (1, 2)
    N: int | str = "auto"
    lambda_samples: tuple[complex, ...] = DEFAULT_LAMBDAS
    tol: float = DEFAULT_TOL
    checks: tuple[str, ...] = ("all",)
    phi_band: int = 2
    phi_scale: float = 1.0
    zero_radius: float = 0.0
    trunc: int = 24
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ScenarioError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 1 <= self.d <= 8:
            raise ScenarioError(f"d must be in 1..8, got {self.d}")
        if self.strategy not in STRATEGIES:
            raise ScenarioError(f"unknown strategy {self.strategy!r}; expected one of {', '.join(STRATEGIES)}")
        if len(self.degrees) != 2 or min(self.degrees) < 0:
            raise ScenarioError(f"degrees must be two nonnegative integers, got {self.degrees}")
        if self.N != "auto" and (not isinstance(self.N, int) or self.N < 1):
            raise ScenarioError(f"N must be a positive integer or 'auto', got {self.N!r}")
        for lam in self.lambda_samples:
            if abs(lam) > MAX_LAMBDA:
                raise ScenarioError(f"lambda sample {lam} has modulus above {MAX_LAMBDA}")
        if not self.lambda_samples:
            raise ScenarioError("lambda_samples must not be empty")
        if not self.tol >= 0:
            raise ScenarioError(f"tol must be nonnegative, got {self.tol}")
        if self.phi_band < 0 or self.phi_scale < 0:
            raise ScenarioError("phi_band and phi_scale must be nonnegative")
        if not 0 <= self.zero_radius < 1:
            raise ScenarioError(f"zero_radius must lie in [0, 1), got {self.zero_radius}")
        if self.trunc < 1:
            raise ScenarioError("trunc must be positive")

    @property
    def exact(self) -> bool:
        return self.zero_radius == 0

    def with_(self, **kw) -> "Scenario":
        try:
            return replace(self, **kw)
        except TypeError as exc:
            raise ScenarioError(str(exc)) from None


def substream(seed: int, name: str) -> np.random.Generator:
    """PCG64 generator seeded by ``SeedSequence(seed, spawn_key=(crc32(name),))``.

    Every check draws from its own stream, so the execution order of checks
    never changes what any single check sees.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(name.encode()),))
    return np.random.Generator(np.random.PCG64(ss))


def _int(key, text):
    try:
        return int(text, 0)
    except ValueError:
        raise ScenarioError(f"{key}: expected an integer, got {text!r}") from None


def _float(key, text):
    try:
        return float(text)
    except ValueError:
        raise ScenarioError(f"{key}: expected a number, got {text!r}") from None


def _list(text):
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def _parse_value(key: str, text: str):
    text = text.strip()
    if key in ("seed", "d", "phi_band", "trunc"):
        return _int(key, text)
    if key in ("tol", "phi_scale", "zero_radius"):
        return _float(key, text)
    if key == "strategy":
        return text
    if key == "degrees":
        vals = tuple(_int(key, t) for t in _list(text))
        if len(vals) != 2:
            raise ScenarioError(f"degrees: expected two integers, got {text!r}")
        return vals
    if key == "N":
        return "auto" if text.lower() == "auto" else _int(key, text)
    if key == "lambda_samples":
        try:
            return tuple(complex(t.replace(" ", "")) for t in _list(text))
        except ValueError:
            raise ScenarioError(f"lambda_samples: cannot parse {text!r}") from None
    if key == "checks":
        return tuple(_list(text)) or ("all",)
    raise ScenarioError(f"unknown scenario key {key!r}")


def parse_scenario(text: str, source: str | None = None) -> Scenario:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    has_header = any(line.strip().startswith("[") for line in text.splitlines())
    body = text if has_header else "[scenario]\n" + text
    try:
        cp.read_string(body, source=source or "<scenario>")
    except configparser.Error as exc:
        raise ScenarioError(f"malformed scenario file: {exc}") from None
    extra = [s for s in cp.sections() if s != "scenario"]
    if extra:
        raise ScenarioError(f"unknown section {extra[0]!r}; only [scenario] is allowed")
    kw = {}
    for key, value in cp["scenario"].items() if cp.has_section("scenario") else []:
        if key not in SCENARIO_KEYS:
            raise ScenarioError(f"unknown scenario key {key!r}")
        kw[key] = _parse_value(key, value)
    return Scenario(source=source, **kw)


def load_scenario(path: str | Path) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {p}: {exc.strerror}") from None
    return parse_scenario(text, str(p))
