"""Almost complex structures on connected sums of CP^{2n}: exact ring,
K-theory and Chern-class computations, witness checks and search."""

from .chern import (
    ChernData,
    NonIntegralError,
    character_to_chern,
    chern_character,
    top_chern_of_sacs,
    total_chern_closed_form,
)
from .ktheory import (
    BasisKey,
    BasisKind,
    KSpec,
    SacsCoefficients,
    ShapeError,
    basis_element,
    conjugate,
    kernel_basis,
    phi,
    sacs_element,
    stable_tangent,
)
from .ring import Domain, RingSpec, TruncatedClass, generator
from .search import SearchBox, SearchMode, contribution_table, search_witnesses
from .topology import (
    ManifoldInvariants,
    WitnessRecord,
    acs_criterion,
    hirzebruch_check,
    invariants,
    prop31_witness,
)

__version__ = "0.1.0"
