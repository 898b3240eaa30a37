#include "circjoin/smalldense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace circjoin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw PreconditionError("expected a non-empty square matrix, got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
    if (!m.allFinite()) throw PreconditionError("matrix has non-finite entries");
}

// Householder reduction to upper Hessenberg form; eigenvalues only, so the
// transformations are not accumulated.
CMatrix hessenberg(CMatrix h) {
    const Eigen::Index d = h.rows();
    for (Eigen::Index k = 0; k + 2 < d; ++k) {
        const Eigen::Index len = d - k - 1;
        CVector v = h.col(k).segment(k + 1, len);
        const double alpha = v.norm();
        if (alpha == 0.0) continue;
        const Complex phase = std::abs(v(0)) == 0.0 ? Complex(1.0) : v(0) / std::abs(v(0));
        v(0) += phase * alpha;
        const double vnorm = v.norm();
        if (vnorm == 0.0) continue;
        v /= vnorm;
        // H <- P H P with P = I - 2 v v^*
        auto rows = h.middleRows(k + 1, len);
        const Eigen::RowVectorXcd vh_rows = v.adjoint() * rows;
        rows.noalias() -= 2.0 * v * vh_rows;
        auto cols = h.middleCols(k + 1, len);
        const CVector cols_v = cols * v;
        cols.noalias() -= 2.0 * cols_v * v.adjoint();
        h.col(k).segment(k + 2, len - 1).setZero();
    }
    return h;
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex half = 0.5 * (a - d);
    const Complex disc = std::sqrt(half * half + b * c);
    const Complex mean = 0.5 * (a + d);
    const Complex mu1 = mean + disc;
    const Complex mu2 = mean - disc;
    return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

// One explicitly shifted QR step on the active window of a Hessenberg matrix.
void qr_step(CMatrix& h, Eigen::Index lo, Eigen::Index hi, Complex shift) {
    const Eigen::Index n = hi - lo + 1;
    auto w = h.block(lo, lo, n, n);
    for (Eigen::Index i = 0; i < n; ++i) w(i, i) -= shift;

    std::vector<Complex> cs(static_cast<std::size_t>(n), Complex(1.0));
    std::vector<Complex> ss(static_cast<std::size_t>(n), Complex(0.0));
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const Complex a = w(k, k);
        const Complex b = w(k + 1, k);
        const double r = std::hypot(std::abs(a), std::abs(b));
        if (r == 0.0) continue;
        const Complex c = a / r;
        const Complex s = b / r;
        cs[static_cast<std::size_t>(k)] = c;
        ss[static_cast<std::size_t>(k)] = s;
        for (Eigen::Index col = k; col < n; ++col) {
            const Complex x = w(k, col);
            const Complex y = w(k + 1, col);
            w(k, col) = std::conj(c) * x + std::conj(s) * y;
            w(k + 1, col) = -s * x + c * y;
        }
        w(k + 1, k) = 0.0;
    }
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const Complex c = cs[static_cast<std::size_t>(k)];
        const Complex s = ss[static_cast<std::size_t>(k)];
        const Eigen::Index last = std::min(k + 2, n - 1);
        for (Eigen::Index row = 0; row <= last; ++row) {
            const Complex x = w(row, k);
            const Complex y = w(row, k + 1);
            w(row, k) = x * c + y * s;
            w(row, k + 1) = -x * std::conj(s) + y * std::conj(c);
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) w(i, i) += shift;
}

std::vector<Complex> schur_eigenvalues(const CMatrix& m, std::size_t budget) {
    CMatrix h = hessenberg(m);
    const Eigen::Index d = h.rows();
    const double scale = std::max(inf_norm(h), std::numeric_limits<double>::min());
    std::vector<Complex> values(static_cast<std::size_t>(d));

    std::size_t iterations = 0;
    std::size_t since_deflation = 0;
    Eigen::Index hi = d - 1;
    while (hi >= 0) {
        Eigen::Index lo = hi;
        while (lo > 0) {
            const double local = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
            const double ref = local == 0.0 ? scale : local;
            if (std::abs(h(lo, lo - 1)) <= kEps * ref) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            values[static_cast<std::size_t>(hi)] = h(hi, hi);
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++iterations > budget) {
            throw ConvergenceError("QR iteration did not converge within " + std::to_string(budget) + " sweeps");
        }
        ++since_deflation;
        Complex shift;
        if (since_deflation % 11 == 0) {
            // exceptional shift to break cycles
            shift = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.0);
        } else {
            shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        qr_step(h, lo, hi, shift);
    }
    return values;
}

// Orthonormal basis of the null space of x, taken as the right singular
// vectors of the `nullity` smallest singular values.
CMatrix null_basis(const CMatrix& x, std::size_t nullity) {
    const Eigen::Index cols = x.cols();
    const auto q = static_cast<Eigen::Index>(nullity);
    if (q == 0) return CMatrix(cols, 0);
    if (x.isZero(0.0)) return CMatrix::Identity(cols, cols).rightCols(q);
    Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(q);
}

// Orthonormal basis of span(columns) after column normalisation.
CMatrix orthonormal_span(const CMatrix& s) {
    if (s.cols() == 0) return CMatrix(s.rows(), 0);
    CMatrix normalised = s;
    for (Eigen::Index c = 0; c < normalised.cols(); ++c) {
        const double nrm = normalised.col(c).norm();
        if (nrm > 0.0) normalised.col(c) /= nrm;
    }
    Eigen::JacobiSVD<CMatrix> svd(normalised, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-8) ++rank;
    return svd.matrixU().leftCols(rank);
}

void normalise_phase(std::vector<CVector>& chain, Eigen::Index head) {
    const CVector& h = chain[static_cast<std::size_t>(head)];
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        // first entry of (numerically) largest modulus
        if (std::abs(h(i)) > best * (1.0 + 1e-12)) {
            best = std::abs(h(i));
            pivot = i;
        }
    }
    if (best <= 0.0) return;
    const Complex factor = std::conj(h(pivot)) / best;
    for (auto& v : chain) v *= factor;
}

} // namespace

std::size_t numerical_rank(const CMatrix& m, double threshold) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) ++rank;
    }
    return rank;
}

std::vector<Complex> raw_eigenvalues(const CMatrix& m, const SmallDenseOptions& options) {
    require_square(m);
    const Eigen::Index d = m.rows();
    if (d == 1) return {m(0, 0)};
    if (d == 2) {
        const Complex a = m(0, 0);
        const Complex b = m(0, 1);
        const Complex c = m(1, 0);
        const Complex dd = m(1, 1);
        const Complex root = std::sqrt((a - dd) * (a - dd) + 4.0 * b * c);
        return {(a + dd + root) / 2.0, (a + dd - root) / 2.0};
    }
    const auto dd = static_cast<std::size_t>(d);
    return schur_eigenvalues(m, options.iteration_factor * dd * dd);
}

std::vector<EigenvalueCluster> eigenvalues(const CMatrix& m, const SmallDenseOptions& options) {
    const std::vector<Complex> raw = raw_eigenvalues(m, options);
    const double delta = options.cluster_tol * (1.0 + inf_norm(m));

    // single-linkage clustering
    const std::size_t count = raw.size();
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            if (std::abs(raw[a] - raw[b]) <= delta) parent[find(a)] = find(b);
        }
    }

    std::vector<EigenvalueCluster> clusters;
    std::vector<std::size_t> root_of_cluster;
    for (std::size_t a = 0; a < count; ++a) {
        const std::size_t root = find(a);
        auto it = std::find(root_of_cluster.begin(), root_of_cluster.end(), root);
        if (it == root_of_cluster.end()) {
            root_of_cluster.push_back(root);
            clusters.push_back({raw[a], 1});
        } else {
            auto& cl = clusters[static_cast<std::size_t>(it - root_of_cluster.begin())];
            cl.value += raw[a];
            ++cl.multiplicity;
        }
    }
    for (auto& cl : clusters) cl.value /= static_cast<double>(cl.multiplicity);
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const EigenvalueCluster& x, const EigenvalueCluster& y) {
                         return complex_less(x.value, y.value);
                     });
    return clusters;
}

std::vector<Complex> flatten(const std::vector<EigenvalueCluster>& clusters) {
    std::vector<Complex> values;
    for (const auto& cl : clusters) values.insert(values.end(), cl.multiplicity, cl.value);
    return values;
}

std::vector<JordanChain> jordan_chains(const CMatrix& m, Complex lambda, std::size_t multiplicity,
                                       const SmallDenseOptions& options) {
    require_square(m);
    const Eigen::Index d = m.rows();
    if (multiplicity == 0 || multiplicity > static_cast<std::size_t>(d)) {
        throw PreconditionError("multiplicity " + std::to_string(multiplicity) + " out of range for a " +
                                std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    const double tol = options.null_tol * (1.0 + inf_norm(m));
    const CMatrix shifted = m - lambda * CMatrix::Identity(d, d);
    const auto mult = static_cast<Eigen::Index>(multiplicity);

    // Orthonormal basis of the generalised eigenspace, then the nilpotent
    // restriction of (M - lambda I) to it.
    CMatrix basis;
    if (mult == d) {
        basis = CMatrix::Identity(d, d);
    } else {
        CMatrix power = shifted;
        for (std::size_t p = 1; p < multiplicity; ++p) power = power * shifted;
        basis = null_basis(power, multiplicity);
    }
    const CMatrix nilpotent = basis.adjoint() * shifted * basis;

    // ranks[p] = rank(T^p)
    std::vector<std::size_t> ranks{multiplicity};
    std::vector<CMatrix> powers{CMatrix::Identity(mult, mult)};
    while (ranks.back() > 0) {
        if (ranks.size() > multiplicity) {
            throw IllConditionedError("restriction of (M - lambda I) is not nilpotent at tolerance " +
                                      std::to_string(tol) + "; perturb the input exactly to split or merge eigenvalues");
        }
        powers.push_back(powers.back() * nilpotent);
        ranks.push_back(numerical_rank(powers.back(), tol));
    }
    const std::size_t longest = ranks.size() - 1;
    // at_least[p] = number of chains of length >= p
    std::vector<std::size_t> at_least(longest + 2, 0);
    for (std::size_t p = 1; p <= longest; ++p) {
        if (ranks[p] > ranks[p - 1]) {
            throw IllConditionedError("null-space dimensions of (M - lambda I)^p are not monotone");
        }
        at_least[p] = ranks[p - 1] - ranks[p];
        if (p > 1 && at_least[p] > at_least[p - 1]) {
            throw IllConditionedError("rank sequence of (M - lambda I)^p is not a Jordan structure");
        }
    }

    struct Head {
        CVector vector;
        std::size_t length;
    };
    std::vector<Head> heads;
    for (std::size_t p = longest; p >= 1; --p) {
        const std::size_t wanted = at_least[p] - at_least[p + 1];
        if (wanted == 0) continue;
        const CMatrix kernel = null_basis(powers[p], multiplicity - ranks[p]);
        CMatrix avoid(mult, 0);
        if (p > 1) avoid = null_basis(powers[p - 1], multiplicity - ranks[p - 1]);
        for (const auto& h : heads) {
            avoid.conservativeResize(Eigen::NoChange, avoid.cols() + 1);
            avoid.col(avoid.cols() - 1) = powers[h.length - p] * h.vector;
        }
        const CMatrix span = orthonormal_span(avoid);
        const CMatrix residual = kernel - span * (span.adjoint() * kernel);
        Eigen::JacobiSVD<CMatrix> svd(residual, Eigen::ComputeThinU);
        const auto w = static_cast<Eigen::Index>(wanted);
        if (svd.singularValues().size() < w || svd.singularValues()(w - 1) <= tol) {
            throw IllConditionedError("could not extend Jordan chains of length " + std::to_string(p));
        }
        for (Eigen::Index c = 0; c < w; ++c) heads.push_back({svd.matrixU().col(c), p});
    }

    std::vector<JordanChain> chains;
    CMatrix all(d, mult);
    Eigen::Index column = 0;
    for (const auto& h : heads) {
        std::vector<CVector> local(h.length);
        for (std::size_t r = 0; r < h.length; ++r) {
            // u_{length - r} = T^r head
            local[h.length - 1 - r] = powers[r] * h.vector;
        }
        normalise_phase(local, static_cast<Eigen::Index>(h.length - 1));
        JordanChain chain{lambda, {}};
        for (const auto& y : local) {
            CVector u = basis * y;
            const double nrm = u.norm();
            all.col(column++) = nrm > 0.0 ? CVector(u / nrm) : u;
            chain.vectors.push_back(std::move(u));
        }
        chains.push_back(std::move(chain));
    }

    Eigen::JacobiSVD<CMatrix> check(all);
    const double smallest = check.singularValues()(check.singularValues().size() - 1);
    if (!(smallest >= options.independence_tol)) {
        throw IllConditionedError("Jordan chain vectors are numerically dependent (smallest singular value " +
                                  std::to_string(smallest) + ")");
    }
    return chains;
}

} // namespace circjoin
