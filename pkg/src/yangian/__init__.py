"""Finite two-site realizations of Y(sl(2)) and Y(su(3)) and their entanglement transitions."""
from .entanglement import (
    PureState,
    c_ini_closed_form,
    concurrence,
    entropy_base3,
    mean_entropy,
    reduced_density,
)
from .errors import NumericalError, ValidationError, YangianError
from .generators import GeneratorSet, RelationReport, SU2Params, SU3Params, YangianParams
from .mesons import construct_eta, decay_report, decompose, meson_dictionary
from .su2_yangian import reduced_generators_su2, tau_matrix, verify_su2_relations, yangian_j
from .su3_yangian import (
    a_matrix,
    reduced_generators_su3,
    structure_constants,
    tilde_operators,
    two_site_generators,
    verify_su3_relations,
    verify_tilde_commutators,
)
from .transitions import (
    TransitionOutcome,
    apply_transition,
    qubit_initial_state,
    sl2_operator_catalog,
    su3_operator_catalog,
    sweep_c1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
