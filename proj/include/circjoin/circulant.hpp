#pragma once

#include <cstddef>
#include <vector>

#include "circjoin/types.hpp"

namespace circjoin {

/// A k x k circulant matrix, stored as its first column (c_0, ..., c_{k-1}).
///
/// Entry (r, s) of the dense matrix is c_{(r - s) mod k}, so every row is the
/// previous one shifted cyclically to the right.
class CirculantMatrix {
  public:
    /// Throws PreconditionError on an empty defining vector.
    explicit CirculantMatrix(std::vector<Complex> defining_vector);

    std::size_t size() const { return coefficients_.size(); }
    const std::vector<Complex>& defining_vector() const { return coefficients_; }

    Complex operator()(std::size_t row, std::size_t col) const {
        const std::size_t k = coefficients_.size();
        return coefficients_[(row + k - col % k) % k];
    }

    /// True when every coefficient has zero imaginary part.
    bool is_real() const;
    /// True when c_j == c_{k-j} for all j, i.e. the dense matrix is symmetric.
    bool is_symmetric() const;

    friend bool operator==(const CirculantMatrix&, const CirculantMatrix&) = default;

  private:
    std::vector<Complex> coefficients_;
};

/// The k distinct powers of omega_k = exp(2 pi i / k), indexed mod k.
///
/// Powers that land on a quarter turn are stored exactly (1, i, -1, -i).
class RootsOfUnity {
  public:
    explicit RootsOfUnity(std::size_t k);

    std::size_t order() const { return table_.size(); }
    /// omega_k^m for any integer exponent.
    Complex power(long long m) const;

  private:
    std::vector<Complex> table_;
};

/// v_{k,j} = (1, w^j, w^{2j}, ..., w^{(k-1)j}).
CVector fourier_vector(std::size_t k, std::size_t j);

/// E_k: the k x k matrix whose columns are v_{k,0}, ..., v_{k,k-1}.
CMatrix dft_matrix(std::size_t k);

struct FourierEigenpair {
    Complex eigenvalue;
    CVector eigenvector;
};

/// lambda_j = c_0 + c_{k-1} w^j + c_{k-2} w^{2j} + ... + c_1 w^{(k-1)j},
/// summed in exactly that order.
Complex circulant_eigenvalue(const CirculantMatrix& c, std::size_t j);

/// All k eigenpairs (lambda_j, v_{k,j}), ordered by j.
std::vector<FourierEigenpair> circulant_eigenpairs(const CirculantMatrix& c);

/// Sum of the defining vector, bitwise equal to circulant_eigenvalue(c, 0).
Complex row_sum(const CirculantMatrix& c);

CMatrix expand_dense(const CirculantMatrix& c);

} // namespace circjoin
