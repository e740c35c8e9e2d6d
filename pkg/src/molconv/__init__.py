"""Exact computation with molecular measures on concrete topological groups."""
from .errors import DataError, DomainError, MolconvError, PreconditionError, SolverError
from .groups import (
    AFFINE,
    REAL,
    Group,
    GroupElement,
    conjugate,
    element,
    free_group,
    inverse,
    multiply,
    parse_group,
    real_vector,
)
from .lipnorm import (
    NormReport,
    blip_membership,
    blip_norm,
    delta_m,
    delta_m_pseudometric,
    mcshane_extend,
    normalized_sqrt_map,
    two_point_norm,
)
from .measures import (
    MolecularMeasure,
    SampledFunction,
    bullet,
    combine,
    convolve,
    integrate,
    point_mass,
)
from .pseudometrics import GroupNorm, Pseudometric, distortion_probe, make_pseudometric

__version__ = "0.1.0"
