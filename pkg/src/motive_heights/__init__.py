"""Height-counting toolkit for mixed Tate motive extension counts.

Exact arithmetic constants (Bernoulli numbers, zeta special values,
binomials), tabulated K-group data with Soule-element regulators,
quadratic-form height models over the places of Q, mixed
discrete/continuous lattice counting with its leading-order predictions,
and the assembled desk-scale counting experiments.
"""

from .counting import (
    CountResult,
    HomogeneityMismatch,
    HomogeneousFn,
    RatioRow,
    RatioSeries,
    beta_integral,
    beta_integral_quadrature,
    divisibility_density,
    euler_summation,
    exact_count,
    form_power_fn,
    pair_count_exact,
    pair_count_leading,
    power_fn,
    ratio_experiment,
    region_volume,
)
from .heights import (
    AdelicPoint,
    DimensionMismatch,
    HeightModel,
    InvalidForm,
    PlaceBlock,
    QuadraticForm,
    height,
    log_height,
    sublevel_volume_arch,
)
from .ktheory import (
    KGroupShape,
    MotiveTateParams,
    NonIntegralSha,
    NonIntegralTorsion,
    OutOfTable,
    RegulatorValue,
    cup_product_support,
    extension_sha_order,
    h2_order,
    k_group_shape,
    mazur_wiles_torsion_order,
    regulator,
)
from .modelfile import ModelFileError, ModelValidationError, load_model_config
from .motive_counts import (
    CoefficientForm,
    TamagawaRatioRow,
    TamagawaRatioSeries,
    ThreeQuotientCounts,
    ThreeQuotientModel,
    TwoQuotientModel,
    make_three_quotient_model,
    make_two_quotient_model,
    tamagawa_ratio_series,
    three_quotient_coefficient,
    three_quotient_counts,
    three_quotient_exact,
    three_quotient_leading,
    two_quotient_coefficient,
    two_quotient_display_forms,
    two_quotient_exact,
    two_quotient_leading,
)
from .special_values import (
    DEFAULT_PRECISION,
    bernoulli,
    binomial,
    zeta_neg_odd,
    zeta_pos_odd,
)

__version__ = "0.1.0"
