#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "circjoin/circulant.hpp"
#include "circjoin/smalldense.hpp"
#include "circjoin/types.hpp"

namespace circjoin {

/// Default cap on n for dense expansions.
inline constexpr std::size_t kDefaultDenseCap = 4096;

/// A join of d circulant blocks: block C_i on the diagonal, the constant
/// block a_ij * 1 (k_i x k_j) off the diagonal. Diagonal couplings are ignored.
class JoinSpec {
  public:
    /// Throws PreconditionError when there are no blocks or the coupling
    /// table is not d x d.
    JoinSpec(std::vector<CirculantMatrix> blocks, CMatrix couplings);

    /// All off-diagonal couplings equal to `coupling`.
    static JoinSpec uniform(std::vector<CirculantMatrix> blocks, Complex coupling = 1.0);

    std::size_t block_count() const { return blocks_.size(); }
    /// n = k_1 + ... + k_d.
    std::size_t dimension() const { return offsets_.back(); }
    const std::vector<CirculantMatrix>& blocks() const { return blocks_; }
    const CirculantMatrix& block(std::size_t i) const { return blocks_.at(i); }
    const CMatrix& couplings() const { return couplings_; }
    /// a_ij; zero on the diagonal.
    Complex coupling(std::size_t i, std::size_t j) const;
    std::vector<std::size_t> block_sizes() const;
    /// First dense index of block i; offset(d) == n.
    std::size_t offset(std::size_t i) const { return offsets_.at(i); }

    bool is_real() const;

  private:
    std::vector<CirculantMatrix> blocks_;
    CMatrix couplings_;
    std::vector<std::size_t> offsets_;
};

/// Dense n x n matrix of the join. Throws SizeError when n > cap.
CMatrix expand_join_dense(const JoinSpec& join, std::size_t cap = kDefaultDenseCap);

/// The d x d condensed matrix: row sums of the blocks on the diagonal,
/// a_ij * k_j off the diagonal.
CMatrix condensed_matrix(const JoinSpec& join);

/// Eigenpair of the join carried by a single block (Fourier index j >= 1).
struct CirculantEigenpair {
    std::size_t block = 0;         ///< 0-based block index
    std::size_t fourier_index = 0; ///< 1 <= j <= k_i - 1
    Complex eigenvalue;
    CVector eigenvector; ///< length n, zero outside block `block`
};

/// The sum(k_i) - d circulant eigenpairs, in block order then j order.
std::vector<CirculantEigenpair> circulant_eigenpairs_of_join(const JoinSpec& join);

/// Repeats coordinate i of `v` sizes[i] times.
CVector tensor_expand(const CVector& v, std::span<const std::size_t> sizes);

/// Where an eigenvalue of the join comes from.
struct Origin {
    /// Block index for circulant eigenvalues, empty for condensed ones.
    std::optional<std::size_t> block;

    bool condensed() const { return !block.has_value(); }
    friend bool operator==(const Origin&, const Origin&) = default;
};

struct LabeledEigenvalue {
    Complex value;
    std::size_t multiplicity = 1;
    Origin origin;
};

/// A Jordan chain of the join with its origin.
struct JoinChain {
    Complex eigenvalue;
    Origin origin;
    std::vector<CVector> vectors;
};

struct SpectralOptions {
    SmallDenseOptions dense;
};

/// Spectrum and generalised eigenbasis of a join.
struct SpectralDecomposition {
    std::vector<std::size_t> block_sizes;
    CMatrix condensed;
    std::vector<CirculantEigenpair> circulant;
    /// Eigenvalue clusters of the condensed matrix.
    std::vector<EigenvalueCluster> condensed_eigenvalues;
    /// Jordan chains of the condensed matrix (d-vectors), grouped by cluster.
    std::vector<JordanChain> condensed_chains;
    /// Tensor expansions of condensed_chains (n-vectors), same order.
    std::vector<JordanChain> lifted_chains;
    bool diagonalizable = true;

    std::size_t dimension() const;
    /// Multiset of all n eigenvalues sorted by (Re, Im); condensed clusters
    /// carry their multiplicity, circulant eigenvalues count once each.
    std::vector<LabeledEigenvalue> eigenvalues() const;
    /// Flat multiset of n eigenvalues, sorted by (Re, Im).
    std::vector<Complex> eigenvalue_multiset() const;
    /// Every chain of the join: circulant eigenpairs as length-1 chains, then
    /// the lifted condensed chains.
    std::vector<JoinChain> chains() const;
    /// Condensed chain vectors as columns, in chain order (the matrix X).
    CMatrix condensed_basis() const;
};

SpectralDecomposition full_spectrum(const JoinSpec& join, const SpectralOptions& options = {});

/// Characteristic polynomial of a square matrix, monic, coefficients from the
/// highest degree down. Principal-minor expansion for d <= 4, trace
/// recursion otherwise.
std::vector<Complex> characteristic_polynomial(const CMatrix& m);

/// Reduced characteristic polynomial of the join: the characteristic
/// polynomial of its condensed matrix.
std::vector<Complex> reduced_char_poly(const JoinSpec& join);

/// Horner evaluation of a highest-degree-first coefficient list.
Complex evaluate_polynomial(std::span<const Complex> coefficients, Complex x);

/// n x n matrix of generalised eigenvectors. Column layout: for each block i,
/// the i-th condensed chain vector (tensor-expanded) followed by the
/// w_{i,1}, ..., w_{i,k_i-1}.
CMatrix eigenbasis_matrix(const SpectralDecomposition& spectrum);

} // namespace circjoin
