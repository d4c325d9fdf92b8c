"""Transversal monomial ideals: block monomial arithmetic, the polytopal
complexes supporting their minimal free resolutions, and machine
certification of the resolution properties against an independent oracle.
"""

from tmi.monomials import (
    BlockConfig,
    Monomial,
    MonomialIdeal,
    ParameterError,
    SizeCapError,
    VarId,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    minimalize,
    prime_block,
    q_range,
    transversal_generators,
)
from tmi.complexes import (
    Cell,
    IncidencePair,
    LabeledComplex,
    boundary,
    cell_from_vertices,
    f_vector,
    geometric_realization,
    glue,
    intersection,
    is_connected,
    is_subcomplex,
    product,
    restrict_below,
    simplex,
)
from tmi.gamma import gamma, gamma_closed, gamma_full, gamma_nminus1, gamma_prefix, gamma_prefixes
from tmi.gf import DEFAULT_PRIME, PrimeFieldMatrix, rank_gf, rank_rational
from tmi.resolution import (
    BettiTable,
    ChainComplex,
    betti_table,
    cellular_complex,
    check_acyclic,
    check_d2,
    check_minimal,
    hilbert_numerator_check,
)
from tmi.oracle import betti_oracle, matroid_exchange, strong_exchange, upper_koszul
from tmi.veronese import depolarize, polarize, veronese_checks

__version__ = "0.1.0"
