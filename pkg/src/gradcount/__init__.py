"""Exact counts of gradings by finite groups on matrix algebras and upper block-triangular matrix algebras."""
from .division import (
    Bicharacter,
    count_nondegenerate_alternating,
    division_census,
    square_type_subgroups,
)
from .elementary import (
    AsymptoticPolynomial,
    BlockShape,
    asymptotic_polynomial,
    count_cyclic_prime_power,
    count_elementary,
    count_elementary_matrix,
    count_prime_exponent,
)
from .errors import (
    BoundExceeded,
    CayleyTableError,
    DomainError,
    GradCountError,
    GroupParseError,
    InconsistentSequenceError,
    IntegralityError,
)
from .full import count_all, count_all_matrix, sandwich_check
from .groups import (
    AbelianGroupType,
    CayleyGroup,
    NonAbelianCertificate,
    OrderProfile,
    SubgroupHandle,
    enumerate_subgroups,
    exponent,
    identify_from_profile,
    iso_type_of_subgroup,
    make_abelian,
    order_profile,
    quotient_profile,
)
from .oracle import WeightMap, act, count_orbits, enumerate_gamma, list_orbit_representatives
from .reconstruction import (
    CountSequence,
    collision_demo,
    profile_from_sequence,
    round_trip,
)

__version__ = "0.1.0"
