"""Ages of metrically homogeneous graphs of generic type and their orbit algebras."""

from .algebra import (
    OrbitFunction,
    RationalSeries,
    euler_transform,
    orbit_product,
    verify_hilbert,
    verify_polynomial_rank,
)
from .antipodal import alpha, antipodal_profile, beta, signature_decompose, signature_leq
from .enumeration import (
    Budget,
    Census,
    Profile,
    enumerate_age,
    indecomposable_census,
    oracle_enumerate,
    profile,
)
from .errors import (
    EmptyRange,
    InvalidInput,
    NonPositiveDistance,
    NotInClass,
    ResourceLimit,
    TriangleViolation,
)
from .metric import (
    MetricSpace,
    TriangleType,
    canonical_code,
    embeds,
    induced,
    make_space,
    triangle_types,
)
from .params import INF, ParameterSequence, classify_admissible, in_age, triangle_allowed
from .sumop import decompose, leq, magic_range, sum_m, verify_closure, verify_freeness

__version__ = "0.1.0"
