"""Time-frequency operator toolkit on C^N.

Spreading functions, twisted convolution and best Hilbert-Schmidt
approximation by Gabor multipliers, multiple Gabor multipliers and
twisted-spline-type operators.
"""
from .core import (
    COND_LIMIT,
    DimensionError,
    FrameError,
    LatticeError,
    TFLattice,
    TFOpError,
    as_signal,
    as_square,
    dual_window,
    frame_bounds,
    frame_operator,
    gabor_system,
    gauss_window,
    hs_inner,
    hs_norm,
    omega,
)
from .tfr import (
    delta,
    gabor_analysis,
    gabor_synthesis,
    stft,
    stft_inverse,
    symplectic_dft,
    tf_shift,
    tf_shift_matrix,
    twisted_conv,
)
from .spread import (
    apply_tf_domain,
    compose_spreading,
    kernel_from_spreading,
    rank_one_kernel,
    spreading_from_kernel,
    support_box,
)
from .gm import (
    GMError,
    RieszError,
    SupportError,
    best_gm_mask,
    best_transfer,
    fold,
    gm_apply,
    gm_error_and_bound,
    gm_matrix,
    gm_spreading,
    mask_to_transfer,
    multiplier_from_spreading,
    projection_gram,
    relative_error,
    transfer_to_mask,
    u_bounds,
    u_function,
    underspread_check,
    unfold,
)
from .mgm import (
    adjoint_lattice_gamma,
    best_mgm,
    best_mgm_transfer,
    gamma_field,
    gamma_from_adjoint,
    gamma_summary,
    mgm_apply,
    mgm_matrix,
    mgm_spreading,
    projection_frame_expand,
    projection_frame_synthesis,
    shifted_windows,
    solve_adjoint_twisted,
    tensor_frame_bounds,
)
from .tst import (
    GMTerm,
    StructureError,
    TSTSpec,
    alpha_comb,
    gm_sum_matrix,
    tst_operator,
    tst_spreading,
    tst_spreading_twisted,
    tst_to_gm_sum,
    tst_to_single_gm,
    tst_windows,
)

__version__ = "0.1.0"
