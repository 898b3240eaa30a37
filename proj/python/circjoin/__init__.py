"""Spectra of joins of circulant matrices, graph joins and Kuramoto equilibria."""

from ._core import (
    CirculantMatrix,
    ConvergenceError,
    IllConditionedError,
    JoinSpec,
    NumericalError,
    PreconditionError,
    SpectralDecomposition,
    circulant_eigenpairs,
    circulant_eigenpairs_of_join,
    condensed_matrix,
    dft_matrix,
    eigenbasis_matrix,
    eigenvalues,
    expand_dense,
    expand_join_dense,
    fourier_vector,
    full_spectrum,
    graphs,
    jordan_chains,
    kuramoto,
    reduced_char_poly,
    row_sum,
    tensor_expand,
)

__all__ = [
    "CirculantMatrix",
    "ConvergenceError",
    "IllConditionedError",
    "JoinSpec",
    "NumericalError",
    "PreconditionError",
    "SpectralDecomposition",
    "circulant_eigenpairs",
    "circulant_eigenpairs_of_join",
    "condensed_matrix",
    "dft_matrix",
    "eigenbasis_matrix",
    "eigenvalues",
    "expand_dense",
    "expand_join_dense",
    "fourier_vector",
    "full_spectrum",
    "graphs",
    "jordan_chains",
    "kuramoto",
    "reduced_char_poly",
    "row_sum",
    "tensor_expand",
]
