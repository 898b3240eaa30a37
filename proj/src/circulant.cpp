#include "circjoin/circulant.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace circjoin {

CirculantMatrix::CirculantMatrix(std::vector<Complex> defining_vector)
    : coefficients_(std::move(defining_vector)) {
    if (coefficients_.empty()) {
        throw PreconditionError("circulant matrix needs at least one coefficient");
    }
}

bool CirculantMatrix::is_real() const {
    for (const auto& c : coefficients_) {
        if (c.imag() != 0.0) return false;
    }
    return true;
}

bool CirculantMatrix::is_symmetric() const {
    const std::size_t k = coefficients_.size();
    for (std::size_t j = 1; j < k; ++j) {
        if (coefficients_[j] != coefficients_[k - j]) return false;
    }
    return true;
}

RootsOfUnity::RootsOfUnity(std::size_t k) {
    if (k == 0) throw PreconditionError("root of unity order must be positive");
    table_.resize(k);
    for (std::size_t m = 0; m < k; ++m) {
        if ((4 * m) % k == 0) {
            static constexpr Complex quarter_turns[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
            table_[m] = quarter_turns[(4 * m) / k];
        } else {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(k);
            table_[m] = Complex(std::cos(angle), std::sin(angle));
        }
    }
}

Complex RootsOfUnity::power(long long m) const {
    const auto k = static_cast<long long>(table_.size());
    long long r = m % k;
    if (r < 0) r += k;
    return table_[static_cast<std::size_t>(r)];
}

CVector fourier_vector(std::size_t k, std::size_t j) {
    const RootsOfUnity roots(k);
    CVector v(static_cast<Eigen::Index>(k));
    for (std::size_t m = 0; m < k; ++m) {
        v(static_cast<Eigen::Index>(m)) = roots.power(static_cast<long long>((m * j) % k));
    }
    return v;
}

CMatrix dft_matrix(std::size_t k) {
    const RootsOfUnity roots(k);
    const auto kk = static_cast<Eigen::Index>(k);
    CMatrix e(kk, kk);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < k; ++j) {
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
                roots.power(static_cast<long long>((r * j) % k));
        }
    }
    return e;
}

namespace {

Complex eigenvalue_with(const std::vector<Complex>& c, const RootsOfUnity& roots, std::size_t j) {
    const std::size_t k = c.size();
    Complex sum = c[0];
    for (std::size_t m = 1; m < k; ++m) {
        sum += c[k - m] * roots.power(static_cast<long long>((m * j) % k));
    }
    return sum;
}

} // namespace

Complex circulant_eigenvalue(const CirculantMatrix& c, std::size_t j) {
    return eigenvalue_with(c.defining_vector(), RootsOfUnity(c.size()), j);
}

std::vector<FourierEigenpair> circulant_eigenpairs(const CirculantMatrix& c) {
    const std::size_t k = c.size();
    const RootsOfUnity roots(k);
    std::vector<FourierEigenpair> pairs;
    pairs.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        pairs.push_back({eigenvalue_with(c.defining_vector(), roots, j), fourier_vector(k, j)});
    }
    return pairs;
}

Complex row_sum(const CirculantMatrix& c) {
    // Same order as the j = 0 eigenvalue: c_0, c_{k-1}, ..., c_1.
    const auto& v = c.defining_vector();
    const std::size_t k = v.size();
    Complex sum = v[0];
    for (std::size_t m = 1; m < k; ++m) sum += v[k - m] * Complex(1.0, 0.0);
    return sum;
}

CMatrix expand_dense(const CirculantMatrix& c) {
    const auto k = static_cast<Eigen::Index>(c.size());
    CMatrix dense(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index s = 0; s < k; ++s) {
            dense(r, s) = c(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
        }
    }
    return dense;
}

} // namespace circjoin
