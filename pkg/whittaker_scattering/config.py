"""Analysis configuration: pydantic models, environment defaults and the config file."""

import json
import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from sympy import isprime

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "WHITTAKER_"

# an int residue (f = 1), a coordinate list lowest power first, or "g^k"
UnitSpec = Union[int, List[int], str]

GENERATOR_POWER = re.compile(r"^g\^(-?\d+)$")


def _check_unit_spec(unit: UnitSpec) -> UnitSpec:
    if isinstance(unit, str) and not GENERATOR_POWER.match(unit.strip()):
        raise ValueError(f"unit {unit!r} must be an integer, a coefficient list or 'g^k'")
    return unit.strip() if isinstance(unit, str) else unit


class CSpec(BaseModel):
    """An element pi^valuation * unit of F*."""

    model_config = ConfigDict(extra="forbid")

    valuation: int = 0
    unit: UnitSpec = 1

    @field_validator("unit")
    @classmethod
    def _check_unit(cls, value: UnitSpec) -> UnitSpec:
        return _check_unit_spec(value)

    @classmethod
    def parse(cls, text: str) -> "CSpec":
        """'v:unit' with unit an int, 'g^k' or a comma list 'a,b'."""
        valuation, sep, unit = text.partition(":")
        try:
            if not sep:
                return cls(valuation=0, unit=int(valuation))
            unit = unit.strip()
            if "," in unit:
                return cls(valuation=int(valuation), unit=[int(u) for u in unit.split(",")])
            if GENERATOR_POWER.match(unit):
                return cls(valuation=int(valuation), unit=unit)
            return cls(valuation=int(valuation), unit=int(unit))
        except ValueError as exc:
            raise ValueError(f"cannot parse element {text!r}: expected 'v:unit'") from exc

    def label(self) -> str:
        unit = ",".join(map(str, self.unit)) if isinstance(self.unit, list) else str(self.unit)
        return f"{self.valuation}:{unit}"


class AnalysisConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int = 7
    f: int = 1
    n: int = 3
    modulus_poly: Optional[List[int]] = None
    theta: Literal["unramified", "ramified_plus", "ramified_minus"] = "unramified"
    psi_conductor: int = 0
    psi_twist: Optional[UnitSpec] = None
    c_list: List[CSpec] = Field(default_factory=lambda: [CSpec()])
    pair_policy: str = "standard"

    @field_validator("c_list", mode="before")
    @classmethod
    def _parse_c_strings(cls, value: Any) -> Any:
        if isinstance(value, (str, dict)):
            value = [value]
        return [CSpec.parse(v) if isinstance(v, str) else v for v in value]

    @field_validator("psi_twist")
    @classmethod
    def _check_twist(cls, value: Optional[UnitSpec]) -> Optional[UnitSpec]:
        return None if value is None else _check_unit_spec(value)

    @field_validator("pair_policy")
    @classmethod
    def _check_policy(cls, value: str) -> str:
        value = str(value).strip()
        if value not in ("standard", "all") and not value.isdigit():
            raise ValueError(f"pair policy must be 'standard', 'all' or an index, got {value!r}")
        return value

    @model_validator(mode="after")
    def _check_tame_datum(self) -> "AnalysisConfig":
        if self.p < 3 or not isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.f < 1:
            raise ValueError(f"f must be at least 1, got {self.f}")
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"n must be odd and at least 3, got {self.n}")
        q = self.p**self.f
        if (q - 1) % self.n:
            raise ValueError(f"n = {self.n} must divide p^f - 1 = {q - 1}")
        if self.f > 1:
            if self.modulus_poly is None:
                raise ValueError("modulus_poly is required when f > 1")
            if len(self.modulus_poly) != self.f + 1 or self.modulus_poly[0] % self.p != 1:
                raise ValueError(f"modulus_poly must be monic of degree {self.f}, highest coefficient first")
        elif self.modulus_poly is not None:
            raise ValueError("modulus_poly is only used when f > 1")
        units = [c.unit for c in self.c_list] + ([self.psi_twist] if self.psi_twist is not None else [])
        for unit in units:
            if isinstance(unit, int) and unit % self.p == 0:
                raise ValueError(f"unit {unit} vanishes mod {self.p}")
            if isinstance(unit, list) and len(unit) > self.f:
                raise ValueError(f"unit {unit} has more than f = {self.f} coordinates")
            if isinstance(unit, list) and not any(u % self.p for u in unit):
                raise ValueError(f"unit {unit} vanishes in F_{q}")
        if not self.c_list:
            raise ValueError("c_list must not be empty")
        return self


class Settings(BaseModel):
    """Defaults read from WHITTAKER_* environment variables (and a .env file)."""

    p: Optional[int] = None
    f: Optional[int] = None
    n: Optional[int] = None
    format: Literal["text", "machine"] = "text"
    log_config: Optional[str] = None

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, dotenv_path: Optional[str] = None) -> "Settings":
        if environ is None:
            load_dotenv(dotenv_path)
            environ = os.environ
        values = {}
        for name in cls.model_fields:
            key = ENV_PREFIX + name.upper()
            if environ.get(key):
                values[name] = environ[key]
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigError(f"invalid {ENV_PREFIX}* environment: {exc}") from exc

    def config_defaults(self) -> Dict[str, Any]:
        return {k: v for k, v in (("p", self.p), ("f", self.f), ("n", self.n)) if v is not None}


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    settings: Optional[Settings] = None,
) -> AnalysisConfig:
    """Merge defaults < environment < JSON file < explicit overrides into a validated config."""
    values: Dict[str, Any] = {}
    if settings is not None:
        values.update(settings.config_defaults())
    if path is not None:
        try:
            values.update(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        config = AnalysisConfig(**values)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    logger.debug("configuration: %s", config.model_dump_json())
    return config
