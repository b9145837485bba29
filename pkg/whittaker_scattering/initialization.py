from typing import List, Optional

from .config import AnalysisConfig, CSpec, UnitSpec, GENERATOR_POWER
from .exceptions import ConfigError, DomainError
from .finite_field import FqDescriptor, FqElem
from .local_field import FStarElem, IsotropicPair, TameLocalDatum, select_pairs
from .tate_factors import AdditiveCharData, TameMultChar, nontrivial_quadratic_characters

THETA_INDEX = {"unramified": 0, "ramified_plus": 1, "ramified_minus": 2}


def create_local_datum(config: AnalysisConfig) -> TameLocalDatum:
    """Build the residue field and the tame datum a configuration describes."""
    try:
        field = FqDescriptor(config.p, config.f, config.modulus_poly)
        return TameLocalDatum(field, config.n)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def resolve_unit(datum: TameLocalDatum, spec: UnitSpec) -> FqElem:
    if isinstance(spec, str):
        return datum.field.gen_power(int(GENERATOR_POWER.match(spec).group(1)))
    try:
        unit = datum.field.element(spec)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    if unit.is_zero():
        raise ConfigError(f"unit {spec!r} is zero in F_{datum.q}")
    return unit


def resolve_element(datum: TameLocalDatum, spec: CSpec) -> FStarElem:
    return FStarElem(spec.valuation, resolve_unit(datum, spec.unit))


def theta_from_config(datum: TameLocalDatum, config: AnalysisConfig) -> TameMultChar:
    return nontrivial_quadratic_characters(datum)[THETA_INDEX[config.theta]]


def psi_from_config(datum: TameLocalDatum, config: AnalysisConfig) -> AdditiveCharData:
    twist = resolve_unit(datum, config.psi_twist) if config.psi_twist is not None else datum.field.one
    return AdditiveCharData(datum, config.psi_conductor, twist)


def cs_from_config(datum: TameLocalDatum, config: AnalysisConfig) -> List[FStarElem]:
    return [resolve_element(datum, spec) for spec in config.c_list]


def pairs_from_config(datum: TameLocalDatum, config: AnalysisConfig, policy: Optional[str] = None) -> List[IsotropicPair]:
    try:
        return select_pairs(datum, policy or config.pair_policy)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
