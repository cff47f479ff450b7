"""Hypersoft configuration model: samplers, degree theory and entropy numerics."""

from ._core import (
    DomainError,
    EnsembleParams,
    HscmError,
    IoError,
    NumericalError,
    ScmInstance,
    degree_pmf,
    degree_pmf_oracle,
    expected_avg_degree_classical,
    expected_avg_degree_finite_n,
    finite_n_degree_pmf,
    gibbs_entropy_bounds,
    graphon_entropy,
    mu_n_quantile,
    sample_coordinates,
    sample_graph,
    scm_expected_degrees,
    solve_scm,
    tail_exponent,
    tv_distance,
    w_classical,
    w_fermi_dirac,
)

__all__ = [name for name in dir() if not name.startswith("_")]
