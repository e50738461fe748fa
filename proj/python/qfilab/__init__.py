"""Quantum Fisher information vs variance toolkit.

The heavy lifting lives in the C++ core; this package re-exports it.
"""

from qfilab._core import (  # noqa: F401
    AverageReport,
    BoundCheck,
    DensityMatrix,
    GeneratorBasis,
    Observable,
    QfilabError,
    __version__,
    avg_gap,
    avg_qfi,
    avg_qfi_kmb,
    avg_qfi_math,
    avg_variance,
    bound_h_times_sigma,
    bound_linear_entropy,
    collective_operator,
    covariance_matrix,
    entropies,
    fidelity_bound,
    fisher_matrix,
    gap,
    generalized_variance,
    ghz_purity_relation,
    ghz_state,
    global_min_probe,
    h_exp_s_gap,
    hessian_min_eig,
    kmb_second_derivative_check,
    lagrange_stationarity,
    landscape_hessian,
    max_gap_over_spectrum,
    max_vprime_over_spectrum,
    noisy_ghz,
    observable_from_unit_vector,
    qfi,
    qfi_generalized,
    qfi_math,
    qfi_rearranged,
    random_decomposition,
    random_density_matrix,
    random_unit_vector,
    rank2_gap_identity,
    relative_entropy,
    spectral_decompose,
    variance,
    white_noise_curve,
)
