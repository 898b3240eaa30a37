#pragma once

#include <cstddef>
#include <vector>

#include "circjoin/types.hpp"

namespace circjoin {

/// Tolerances of the small dense eigensolver. The relative ones are scaled
/// by (1 + ||M||_inf) before use.
struct SmallDenseOptions {
    /// Eigenvalues closer than this are merged into one cluster.
    double cluster_tol = 1e-7;
    /// Singular values below this count as zero in rank decisions.
    double null_tol = 1e-8;
    /// Minimum smallest singular value of the column-normalised chain matrix.
    double independence_tol = 1e-6;
    /// QR sweep budget is iteration_factor * d^2.
    std::size_t iteration_factor = 100;
};

struct EigenvalueCluster {
    Complex value;
    std::size_t multiplicity = 1;
};

/// A Jordan chain u_1, ..., u_m: (M - lambda I) u_1 = 0 and
/// (M - lambda I) u_r = u_{r-1}.
struct JordanChain {
    Complex eigenvalue;
    std::vector<CVector> vectors;

    std::size_t length() const { return vectors.size(); }
};

/// Eigenvalues of a square matrix without clustering: closed forms for
/// d <= 2, Hessenberg reduction plus shifted QR sweeps otherwise.
/// Throws ConvergenceError when the sweep budget runs out.
std::vector<Complex> raw_eigenvalues(const CMatrix& m, const SmallDenseOptions& options = {});

/// Eigenvalues with multiplicity, sorted by (Re, Im). Values within
/// cluster_tol * (1 + ||M||) of each other are merged to their mean.
std::vector<EigenvalueCluster> eigenvalues(const CMatrix& m, const SmallDenseOptions& options = {});

/// Expands clusters back into a flat multiset of size d.
std::vector<Complex> flatten(const std::vector<EigenvalueCluster>& clusters);

/// Jordan chains for the eigenvalue `lambda` of algebraic multiplicity
/// `multiplicity`. Chain lengths add up to `multiplicity`; longest chains first.
/// Throws IllConditionedError when the rank sequence is not a Jordan structure
/// or the resulting vectors are not independent.
std::vector<JordanChain> jordan_chains(const CMatrix& m, Complex lambda, std::size_t multiplicity,
                                       const SmallDenseOptions& options = {});

/// Numerical rank with absolute singular-value threshold.
std::size_t numerical_rank(const CMatrix& m, double threshold);

} // namespace circjoin
