#include "circjoin/join.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace circjoin {

JoinSpec::JoinSpec(std::vector<CirculantMatrix> blocks, CMatrix couplings)
    : blocks_(std::move(blocks)), couplings_(std::move(couplings)) {
    if (blocks_.empty()) throw PreconditionError("a join needs at least one block");
    const auto d = static_cast<Eigen::Index>(blocks_.size());
    if (couplings_.rows() != d || couplings_.cols() != d) {
        throw PreconditionError("coupling table must be " + std::to_string(d) + "x" + std::to_string(d) + ", got " +
                                std::to_string(couplings_.rows()) + "x" + std::to_string(couplings_.cols()));
    }
    couplings_.diagonal().setZero();
    offsets_.reserve(blocks_.size() + 1);
    offsets_.push_back(0);
    for (const auto& b : blocks_) offsets_.push_back(offsets_.back() + b.size());
}

JoinSpec JoinSpec::uniform(std::vector<CirculantMatrix> blocks, Complex coupling) {
    const auto d = static_cast<Eigen::Index>(blocks.size());
    CMatrix a = CMatrix::Constant(d, d, coupling);
    return JoinSpec(std::move(blocks), std::move(a));
}

Complex JoinSpec::coupling(std::size_t i, std::size_t j) const {
    return couplings_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<std::size_t> JoinSpec::block_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(blocks_.size());
    for (const auto& b : blocks_) sizes.push_back(b.size());
    return sizes;
}

bool JoinSpec::is_real() const {
    if (couplings_.imag().cwiseAbs().maxCoeff() != 0.0) return false;
    return std::all_of(blocks_.begin(), blocks_.end(), [](const CirculantMatrix& b) { return b.is_real(); });
}

CMatrix expand_join_dense(const JoinSpec& join, std::size_t cap) {
    const std::size_t n = join.dimension();
    if (n > cap) {
        throw SizeError("dense expansion of dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    const auto nn = static_cast<Eigen::Index>(n);
    CMatrix dense(nn, nn);
    const std::size_t d = join.block_count();
    for (std::size_t i = 0; i < d; ++i) {
        const auto ro = static_cast<Eigen::Index>(join.offset(i));
        const auto ki = static_cast<Eigen::Index>(join.block(i).size());
        for (std::size_t j = 0; j < d; ++j) {
            const auto co = static_cast<Eigen::Index>(join.offset(j));
            const auto kj = static_cast<Eigen::Index>(join.block(j).size());
            if (i == j) {
                dense.block(ro, co, ki, kj) = expand_dense(join.block(i));
            } else {
                dense.block(ro, co, ki, kj).setConstant(join.coupling(i, j));
            }
        }
    }
    return dense;
}

CMatrix condensed_matrix(const JoinSpec& join) {
    const std::size_t d = join.block_count();
    const auto dd = static_cast<Eigen::Index>(d);
    CMatrix condensed(dd, dd);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            condensed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                i == j ? row_sum(join.block(i)) : join.coupling(i, j) * static_cast<double>(join.block(j).size());
        }
    }
    return condensed;
}

std::vector<CirculantEigenpair> circulant_eigenpairs_of_join(const JoinSpec& join) {
    const auto n = static_cast<Eigen::Index>(join.dimension());
    std::vector<CirculantEigenpair> pairs;
    pairs.reserve(join.dimension() - join.block_count());
    for (std::size_t i = 0; i < join.block_count(); ++i) {
        const auto& block = join.block(i);
        const auto block_pairs = circulant_eigenpairs(block);
        const auto off = static_cast<Eigen::Index>(join.offset(i));
        for (std::size_t j = 1; j < block.size(); ++j) {
            CVector w = CVector::Zero(n);
            w.segment(off, static_cast<Eigen::Index>(block.size())) = block_pairs[j].eigenvector;
            pairs.push_back({i, j, block_pairs[j].eigenvalue, std::move(w)});
        }
    }
    return pairs;
}

CVector tensor_expand(const CVector& v, std::span<const std::size_t> sizes) {
    if (static_cast<std::size_t>(v.size()) != sizes.size()) {
        throw PreconditionError("tensor expansion: vector has " + std::to_string(v.size()) + " entries but " +
                                std::to_string(sizes.size()) + " block sizes were given");
    }
    std::size_t n = 0;
    for (auto k : sizes) n += k;
    CVector out(static_cast<Eigen::Index>(n));
    Eigen::Index pos = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(sizes[i]);
        out.segment(pos, k).setConstant(v(static_cast<Eigen::Index>(i)));
        pos += k;
    }
    return out;
}

std::size_t SpectralDecomposition::dimension() const {
    std::size_t n = 0;
    for (auto k : block_sizes) n += k;
    return n;
}

std::vector<LabeledEigenvalue> SpectralDecomposition::eigenvalues() const {
    std::vector<LabeledEigenvalue> out;
    for (const auto& cl : condensed_eigenvalues) out.push_back({cl.value, cl.multiplicity, Origin{}});
    for (const auto& p : circulant) out.push_back({p.eigenvalue, 1, Origin{p.block}});
    std::stable_sort(out.begin(), out.end(), [](const LabeledEigenvalue& a, const LabeledEigenvalue& b) {
        return complex_less(a.value, b.value);
    });
    return out;
}

std::vector<Complex> SpectralDecomposition::eigenvalue_multiset() const {
    std::vector<Complex> values;
    for (const auto& e : eigenvalues()) values.insert(values.end(), e.multiplicity, e.value);
    return values;
}

std::vector<JoinChain> SpectralDecomposition::chains() const {
    std::vector<JoinChain> out;
    out.reserve(circulant.size() + lifted_chains.size());
    for (const auto& p : circulant) out.push_back({p.eigenvalue, Origin{p.block}, {p.eigenvector}});
    for (const auto& c : lifted_chains) out.push_back({c.eigenvalue, Origin{}, c.vectors});
    return out;
}

CMatrix SpectralDecomposition::condensed_basis() const {
    const auto d = static_cast<Eigen::Index>(block_sizes.size());
    CMatrix x(d, d);
    Eigen::Index col = 0;
    for (const auto& c : condensed_chains) {
        for (const auto& v : c.vectors) x.col(col++) = v;
    }
    return x;
}

SpectralDecomposition full_spectrum(const JoinSpec& join, const SpectralOptions& options) {
    SpectralDecomposition s;
    s.block_sizes = join.block_sizes();
    s.condensed = condensed_matrix(join);
    s.circulant = circulant_eigenpairs_of_join(join);
    s.condensed_eigenvalues = eigenvalues(s.condensed, options.dense);
    for (const auto& cl : s.condensed_eigenvalues) {
        for (auto& chain : jordan_chains(s.condensed, cl.value, cl.multiplicity, options.dense)) {
            if (chain.length() > 1) s.diagonalizable = false;
            JordanChain lifted{chain.eigenvalue, {}};
            for (const auto& v : chain.vectors) lifted.vectors.push_back(tensor_expand(v, s.block_sizes));
            s.lifted_chains.push_back(std::move(lifted));
            s.condensed_chains.push_back(std::move(chain));
        }
    }
    return s;
}

namespace {

Complex small_determinant(const CMatrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    // cofactor expansion along the first row
    Complex det = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        CMatrix minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index k = 0; k < n; ++k) {
                if (k != c) minor(r - 1, cc++) = m(r, k);
            }
        }
        const Complex term = m(0, c) * small_determinant(minor);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

std::vector<Complex> principal_minor_expansion(const CMatrix& m) {
    const Eigen::Index d = m.rows();
    std::vector<Complex> coefficients(static_cast<std::size_t>(d + 1), Complex(0.0));
    coefficients[0] = 1.0;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (mask & (1u << i)) idx.push_back(i);
        }
        const auto size = static_cast<Eigen::Index>(idx.size());
        CMatrix sub(size, size);
        for (Eigen::Index r = 0; r < size; ++r) {
            for (Eigen::Index c = 0; c < size; ++c) sub(r, c) = m(idx[r], idx[c]);
        }
        const Complex minor = small_determinant(sub);
        coefficients[static_cast<std::size_t>(size)] += (size % 2 == 0) ? minor : -minor;
    }
    return coefficients;
}

std::vector<Complex> faddeev_leverrier(const CMatrix& m) {
    const Eigen::Index d = m.rows();
    std::vector<Complex> coefficients(static_cast<std::size_t>(d + 1), Complex(0.0));
    coefficients[0] = 1.0;
    CMatrix aux = CMatrix::Zero(d, d);
    const CMatrix identity = CMatrix::Identity(d, d);
    for (Eigen::Index k = 1; k <= d; ++k) {
        aux = m * aux + coefficients[static_cast<std::size_t>(k - 1)] * identity;
        coefficients[static_cast<std::size_t>(k)] = -(m * aux).trace() / static_cast<double>(k);
    }
    return coefficients;
}

} // namespace

std::vector<Complex> characteristic_polynomial(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw PreconditionError("expected a non-empty square matrix");
    return m.rows() <= 4 ? principal_minor_expansion(m) : faddeev_leverrier(m);
}

std::vector<Complex> reduced_char_poly(const JoinSpec& join) {
    return characteristic_polynomial(condensed_matrix(join));
}

Complex evaluate_polynomial(std::span<const Complex> coefficients, Complex x) {
    Complex acc = 0.0;
    for (const auto& c : coefficients) acc = acc * x + c;
    return acc;
}

CMatrix eigenbasis_matrix(const SpectralDecomposition& spectrum) {
    const auto n = static_cast<Eigen::Index>(spectrum.dimension());
    const std::size_t d = spectrum.block_sizes.size();
    std::vector<const CVector*> lifted;
    for (const auto& c : spectrum.lifted_chains) {
        for (const auto& v : c.vectors) lifted.push_back(&v);
    }
    if (lifted.size() != d || spectrum.circulant.size() + d != static_cast<std::size_t>(n)) {
        throw PreconditionError("spectral decomposition is incomplete");
    }
    CMatrix basis(n, n);
    Eigen::Index col = 0;
    std::size_t next_pair = 0;
    for (std::size_t i = 0; i < d; ++i) {
        basis.col(col++) = *lifted[i];
        while (next_pair < spectrum.circulant.size() && spectrum.circulant[next_pair].block == i) {
            basis.col(col++) = spectrum.circulant[next_pair++].eigenvector;
        }
    }
    return basis;
}

} // namespace circjoin
