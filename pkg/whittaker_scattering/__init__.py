from .cyclo import CycloNum, cyclotomic_polynomial, root_of_unity
from .finite_field import FqDescriptor, FqElem, find_generator
from .local_field import (
    ClassModN,
    FStarElem,
    IsotropicPair,
    TameLocalDatum,
    class_of,
    enumerate_maximal_isotropics,
    eta_character,
    gram_table,
    hilbert_symbol,
    isotropic_pairs,
    lift,
    pairing_radical,
    standard_pair,
)
from .tate_factors import (
    AdditiveCharData,
    LaurentRat,
    TameMultChar,
    epsilon_factor,
    evaluate,
    gamma_factor,
    l_factor,
    nontrivial_quadratic_characters,
)
from .linalg import Matrix, identity, is_scalar, mat_add, mat_mul, rank, scalar_mul, trace
from .whittaker import (
    Action,
    ScatteringReport,
    analyze,
    conductor_sum_check,
    gl2_action_predict,
    inverse_plancherel,
    knapp_stein_reducible,
    normalized_operator,
    normalizer_compare,
    partial_gamma,
    plancherel,
    psi_c_matrix,
    reducibility_test,
    scattering_matrix,
    unramified_labels,
    whittaker_dims,
)
from .config import AnalysisConfig, load_config
from .initialization import create_local_datum
from .report import ReportDocument
from .exceptions import (
    WhittakerScatteringError,
    IncompatibleModulusError,
    DivisionByZeroError,
    DomainError,
    DimensionMismatchError,
    NormalizationError,
    ConfigError,
    PoleError,
    IdentityViolation,
)

__all__ = [
    'CycloNum', 'cyclotomic_polynomial', 'root_of_unity',
    'FqDescriptor', 'FqElem', 'find_generator',
    'ClassModN', 'FStarElem', 'IsotropicPair', 'TameLocalDatum', 'class_of',
    'enumerate_maximal_isotropics', 'eta_character', 'gram_table', 'hilbert_symbol',
    'isotropic_pairs', 'lift', 'pairing_radical', 'standard_pair',
    'AdditiveCharData', 'LaurentRat', 'TameMultChar', 'epsilon_factor', 'evaluate',
    'gamma_factor', 'l_factor', 'nontrivial_quadratic_characters',
    'Matrix', 'identity', 'is_scalar', 'mat_add', 'mat_mul', 'rank', 'scalar_mul', 'trace',
    'Action', 'ScatteringReport', 'analyze', 'conductor_sum_check', 'gl2_action_predict',
    'inverse_plancherel', 'knapp_stein_reducible', 'normalized_operator', 'normalizer_compare',
    'partial_gamma', 'plancherel', 'psi_c_matrix', 'reducibility_test', 'scattering_matrix',
    'unramified_labels', 'whittaker_dims',
    'AnalysisConfig', 'load_config', 'create_local_datum', 'ReportDocument',
    'WhittakerScatteringError', 'IncompatibleModulusError', 'DivisionByZeroError', 'DomainError',
    'DimensionMismatchError', 'NormalizationError', 'ConfigError', 'PoleError', 'IdentityViolation',
]
