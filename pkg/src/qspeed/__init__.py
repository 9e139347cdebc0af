"""Speed limits on entropy, maximal information, and coherence for
finite-dimensional Lindblad dynamics."""

from .qmath import (
    DEFAULT_CLIP,
    MatrixLog,
    NonHermitianInput,
    NotPositive,
    Spectrum,
    eigh,
    hermitize,
    matrix_log,
    schatten_norm,
)
from .dynamics import (
    DimensionMismatch,
    Jump,
    Lindbladian,
    PositivityLost,
    Trajectory,
    check_density,
    evolve,
    is_fixed_point,
    lindblad_apply,
    lindbladian_from_dict,
    lindbladian_to_dict,
    load_lindbladian,
    save_lindbladian,
)
from .functionals import (
    ReferenceBasis,
    coherence,
    coherence_rate,
    dephase,
    dephase_matrix,
    entropy,
    entropy_rate,
    max_information,
)
from .models import (
    InvalidParams,
    ModelParams,
    analytic_quantities,
    analytic_state,
    builtin_lindbladian,
    initial_state,
    thermalization_params,
    thermalization_state,
)
from .bounds import (
    BoundReport,
    GridTooCoarse,
    action_bound,
    all_reports,
    avg_log_norm,
    erasure_time,
    info_rate_bound,
    rms_speed,
    saturation_slack,
    t_csl,
    t_esl,
    t_isl,
)

__version__ = "0.1.0"
