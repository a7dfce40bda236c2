"""hhx: exact Hochschild homology over pointed simplicial sets.

Computes the homology of a commutative algebra (with module coefficients)
with respect to a truncated pointed simplicial set, entirely in exact
arithmetic over Q or a prime field, and constructs and verifies the maps
these homology groups inherit from coalgebra measurings and from simplicial
maps.
"""

__version__ = "0.1.0"

from .algebras import (
    FiniteAlgebra,
    FiniteCoalgebra,
    FiniteComodule,
    FiniteModule,
    iterated_coaction,
    iterated_coproduct,
    regular_comodule,
    regular_module,
    validate_algebra,
    validate_coalgebra,
    validate_comodule,
    validate_module,
)
from .errors import HHXError
from .fields import QQ, PrimeField, RationalField, field_from_name
from .hochschild import (
    ChainComplex,
    ChainMap,
    LodayModule,
    chain_complex,
    homology,
    homology_map,
    loday_map,
    loday_space,
    measuring_chain_map,
    simplicial_chain_map,
    verify_naturality_square,
)
from .linalg import (
    HomologyPresentation,
    SparseMatrix,
    homology_presentation,
    induced_on_homology,
    kernel_basis,
    rank,
)
from .measurings import (
    ComoduleMeasuring,
    Measuring,
    multilinear_operator,
    operator,
    self_comodule_measuring,
    validate_comodule_measuring,
    validate_measuring,
)
from .simplicial import (
    PointedMap,
    PointedSet,
    PointedSimplicialSet,
    SimplicialMap,
    circle,
    collapse_map,
    point,
    product,
    sphere,
    validate_simplicial_map,
    validate_simplicial_set,
    wedge,
)

__all__ = [name for name in dir() if not name.startswith("_")]
