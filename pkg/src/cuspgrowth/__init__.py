"""cuspgrowth: exact arithmetic for ball-quotient covering towers.

Weight-tuple integrality checks and contractions, Smith normal form and
finite-abelian-group indices, covering-tower cusp and b1 accounting,
exact classical group orders with brute-force oracles, and log-log
growth-exponent fits.
"""

from .counts import (
    DEFAULT_BRUTE_CAP,
    DTowerDatum,
    GroupFamily,
    GroupOrder,
    Method,
    brute_force_order,
    cusp_index_proxy,
    d_tower_series,
    primes_in_range,
    psl2_order,
    sl2_order,
    sl_order,
    su_order,
    u_order,
    unitriangular_u_order,
)
from .errors import (
    CuspGrowthError,
    InexactDivisionError,
    ResourceLimitError,
    ValidationError,
)
from .fitting import ExponentFit, fit_exponent, match_verdict
from .lattice import (
    AbelianHom,
    FiniteAbelianGroup,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    image_index,
    is_surjective,
    kernel_contains,
    smith_normal_form,
)
from .towers import (
    HIRZEBRUCH,
    BaseSpace,
    CTowerLevel,
    CuspData,
    FibrationData,
    LevelReport,
    TowerReport,
    TowerSpec,
    analyze_level,
    analyze_tower,
    b1_bound_for,
    build_a_tower,
    build_b_tower,
    c_tower_report,
)
from .weights import (
    ContractionPartition,
    IntStatus,
    IntVerdict,
    PairWitness,
    WeightTuple,
    check_int,
    contract,
    enumerate_tuples,
    find_contraction,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianHom",
    "BaseSpace",
    "CTowerLevel",
    "ContractionPartition",
    "CuspData",
    "CuspGrowthError",
    "DEFAULT_BRUTE_CAP",
    "DTowerDatum",
    "ExponentFit",
    "FibrationData",
    "FiniteAbelianGroup",
    "GroupFamily",
    "GroupOrder",
    "HIRZEBRUCH",
    "InexactDivisionError",
    "IntMatrix",
    "IntStatus",
    "IntVerdict",
    "LevelReport",
    "Method",
    "PairWitness",
    "ResourceLimitError",
    "SmithDecomposition",
    "TowerReport",
    "TowerSpec",
    "ValidationError",
    "WeightTuple",
    "analyze_level",
    "analyze_tower",
    "b1_bound_for",
    "brute_force_order",
    "build_a_tower",
    "build_b_tower",
    "c_tower_report",
    "check_int",
    "cokernel",
    "contract",
    "cusp_index_proxy",
    "d_tower_series",
    "enumerate_tuples",
    "find_contraction",
    "fit_exponent",
    "image_index",
    "is_surjective",
    "kernel_contains",
    "match_verdict",
    "primes_in_range",
    "psl2_order",
    "sl2_order",
    "sl_order",
    "smith_normal_form",
    "su_order",
    "u_order",
    "unitriangular_u_order",
]
