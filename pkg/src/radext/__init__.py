"""radext: exact criteria for when stacked radicals over Q multiply degrees.

The package decides whether adjoining the m_i-th roots of nonzero rationals
N_1, ..., N_l to Q produces an extension of degree m_1 * ... * m_l, and
cross-checks every verdict against an independent brute-force oracle that
computes inside the quotient algebra Q[x_1, ..., x_l]/(x_i**m_i - N_i).
"""

from .arith import (
    FactoredRational,
    factor,
    factor_fraction,
    is_prime,
    neg_square_root,
    power_product,
    pth_root,
)
from .criteria import (
    AnchoredProduct,
    DecisionReport,
    EvenDefect,
    IrreducibilityVerdict,
    PrimeLocalView,
    PthPowerWitness,
    RadicalTower,
    anchored_products,
    binomial_irreducibility,
    build_tower,
    decide_full_degree,
    even_prime_obstruction,
    find_even_defect,
    local_view,
    multiplicative_independence,
    multiplicative_independence_bruteforce,
    odd_prime_obstruction,
)
from .errors import (
    CapacityError,
    DomainError,
    InternalInvariantError,
    OracleInconclusiveError,
    UnsupportedInputError,
)
from .etale import (
    AlgebraElement,
    FieldTestResult,
    RadicalAlgebra,
    build_algebra,
    is_field,
    minimal_polynomial,
    multiply,
    verify_primitive_sum,
)
from .polyfactor import (
    FactorizationResult,
    IntPolynomial,
    factor_mod_p,
    factor_over_Q,
    factor_over_Z,
    is_irreducible_over_Q,
    squarefree_decomposition,
)

__version__ = "0.1.0"
