#pragma once

// Test-only oracles. Everything here goes through Eigen's dense solvers or
// brute force, never through the analytic code paths under test.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "circjoin/join.hpp"

namespace circjoin::testing {

inline Complex unit_disk(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(u(rng));
    const double angle = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, angle);
}

inline JoinSpec random_join(std::mt19937_64& rng, std::size_t max_blocks, std::size_t max_size) {
    std::uniform_int_distribution<std::size_t> blocks_dist(1, max_blocks);
    std::uniform_int_distribution<std::size_t> size_dist(1, max_size);
    const std::size_t d = blocks_dist(rng);
    std::vector<CirculantMatrix> blocks;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Complex> c(size_dist(rng));
        for (auto& x : c) x = unit_disk(rng);
        blocks.emplace_back(std::move(c));
    }
    CMatrix a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = unit_disk(rng);
    }
    return JoinSpec(std::move(blocks), std::move(a));
}

/// Eigenvalues of a dense matrix from Eigen's complex Schur solver.
inline std::vector<Complex> dense_eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
    std::vector<Complex> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
    return out;
}

/// Greedy pairing of two multisets; returns the largest pair distance,
/// infinity when sizes differ.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        std::size_t best = b.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && std::abs(x - b[i]) < best_dist) {
                best_dist = std::abs(x - b[i]);
                best = i;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_dist);
    }
    return worst;
}

/// Largest residual of a chain: ||(A - l I) u_1|| and ||(A - l I) u_r - u_{r-1}||.
inline double chain_residual(const CMatrix& a, Complex lambda, const std::vector<CVector>& chain) {
    const CMatrix shifted = a - lambda * CMatrix::Identity(a.rows(), a.cols());
    double worst = 0.0;
    for (std::size_t r = 0; r < chain.size(); ++r) {
        CVector res = shifted * chain[r];
        if (r > 0) res -= chain[r - 1];
        worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    return worst;
}

inline double smallest_singular_value_normalised(CMatrix m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c).normalize();
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

inline Complex determinant(const CMatrix& m) { return m.partialPivLu().determinant(); }

/// Independent defectiveness verdict: cluster Eigen's eigenvalues and compare
/// the geometric multiplicity (nullity of M - mu I) with the cluster size.
inline bool is_defective(const CMatrix& m, double cluster_tol = 1e-7, double rank_tol = 1e-8) {
    const double scale = 1.0 + m.cwiseAbs().rowwise().sum().maxCoeff();
    const auto values = dense_eigenvalues(m);
    std::vector<bool> done(values.size(), false);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (done[i]) continue;
        Complex sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = i; j < values.size(); ++j) {
            if (!done[j] && std::abs(values[j] - values[i]) <= cluster_tol * scale) {
                done[j] = true;
                sum += values[j];
                ++count;
            }
        }
        const Complex mu = sum / static_cast<double>(count);
        const CMatrix shifted = m - mu * CMatrix::Identity(m.rows(), m.cols());
        Eigen::JacobiSVD<CMatrix> svd(shifted);
        std::size_t nullity = 0;
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
            if (svd.singularValues()(k) <= rank_tol * scale) ++nullity;
        }
        if (nullity < count) return true;
    }
    return false;
}

} // namespace circjoin::testing
