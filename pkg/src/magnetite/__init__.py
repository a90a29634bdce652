"""Pure magnets of the self-action of a diagonalizable monoid scheme.

Exact computations for finitely generated cancellative monoids inside
``Z^r x Z/d_1 x ... x Z/d_k``: face of units, sharp quotient, minimal
generators, attractor ideals and the pure-magnet classification, plus a
brute-force oracle to cross-check them.
"""

__version__ = "0.1.0"

from .ambient import AmbientGroup, GroupElement, QuotientMap, quotient_by_subgroup, smith_normal_form
from .errors import (
    DimensionError,
    InvariantViolation,
    MagnetiteError,
    NotInMonoidError,
    NotSharpError,
    ResourceLimitError,
)
from .generators import is_minimal_generating, minimal_generators
from .magnets import (
    ActionSpec,
    PureMagnetReport,
    attractor_equal,
    attractor_ideal,
    attractor_is_empty,
    classify,
    ideal_membership,
    is_pure,
    preimage,
    pure_magnet_count,
    pure_magnets,
    quotient_presentation,
)
from .monoid import (
    FgMonoid,
    Grading,
    MembershipCertificate,
    SharpQuotient,
    ball,
    contains,
    is_sharp,
    limits,
    normalize,
    positive_grading,
    sharp_quotient,
    unit_generators,
    units_subgroup,
    zero_monoid,
)
