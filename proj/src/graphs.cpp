#include "circjoin/graphs.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace circjoin::graphs {

CirculantGraph::CirculantGraph(std::vector<int> connections, bool directed)
    : connections_(std::move(connections)), directed_(directed) {
    if (connections_.empty()) throw PreconditionError("a circulant graph needs at least one vertex");
    if (connections_[0] != 0) throw PreconditionError("circulant graph must not have self-loops (c_0 != 0)");
    const std::size_t k = connections_.size();
    for (std::size_t j = 0; j < k; ++j) {
        if (connections_[j] != 0 && connections_[j] != 1) {
            throw PreconditionError("connection vector entries must be 0 or 1");
        }
        if (!directed_ && j > 0 && connections_[j] != connections_[k - j]) {
            throw PreconditionError("undirected circulant graph needs c_j == c_{k-j} (offset " + std::to_string(j) +
                                    ")");
        }
    }
}

CirculantMatrix CirculantGraph::adjacency() const {
    std::vector<Complex> c;
    c.reserve(connections_.size());
    for (int v : connections_) c.emplace_back(static_cast<double>(v), 0.0);
    return CirculantMatrix(std::move(c));
}

CirculantGraph complete_graph(std::size_t n) {
    if (n == 0) throw PreconditionError("complete graph needs n >= 1");
    std::vector<int> c(n, 1);
    c[0] = 0;
    return CirculantGraph(std::move(c), false);
}

CirculantGraph directed_cycle(std::size_t k) {
    if (k < 2) throw PreconditionError("directed cycle needs k >= 2");
    std::vector<int> c(k, 0);
    // entry (r, s) = c_{(r - s) mod k}; A_{r, r+1} = 1 needs c_{k-1} = 1
    c[k - 1] = 1;
    return CirculantGraph(std::move(c), true);
}

CirculantGraph ring_graph(std::size_t k, std::size_t m) {
    if (k == 0 || m == 0) throw PreconditionError("ring graph needs k >= 1 and m >= 1");
    if (k <= 2 * m + 1) return complete_graph(k);
    std::vector<int> c(k, 0);
    for (std::size_t j = 1; j <= m; ++j) {
        c[j] = 1;
        c[k - j] = 1;
    }
    return CirculantGraph(std::move(c), false);
}

CirculantGraph complement(const CirculantGraph& g) {
    std::vector<int> c(g.connections());
    for (std::size_t j = 1; j < c.size(); ++j) c[j] = 1 - c[j];
    return CirculantGraph(std::move(c), g.directed());
}

JoinSpec join(const std::vector<CirculantGraph>& parts) {
    if (parts.empty()) throw PreconditionError("join needs at least one graph");
    std::vector<CirculantMatrix> blocks;
    blocks.reserve(parts.size());
    for (const auto& p : parts) blocks.push_back(p.adjacency());
    return JoinSpec::uniform(std::move(blocks), 1.0);
}

namespace {

void require_cycle_removal(std::size_t n, std::size_t k) {
    if (k < 3) throw PreconditionError("cycle removal needs k >= 3");
    if (n <= k) {
        throw PreconditionError("cycle removal needs n > k (got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ")");
    }
}

// Connection vector of K_k minus a k-cycle.
std::vector<int> cycle_removed_part(std::size_t k, bool directed) {
    std::vector<int> c(k, 1);
    c[0] = 0;
    c[k - 1] = 0;
    if (!directed) c[1] = 0;
    return c;
}

} // namespace

JoinSpec remove_cycle_from_complete(std::size_t n, std::size_t k, bool directed) {
    require_cycle_removal(n, k);
    return join({CirculantGraph(cycle_removed_part(k, directed), directed), complete_graph(n - k)});
}

std::array<double, 2> ring_join_condensed_eigenvalues(std::size_t k1, std::size_t m1, std::size_t k2,
                                                       std::size_t m2) {
    if (k1 <= 2 * m1 + 1 || k2 <= 2 * m2 + 1) {
        throw PreconditionError("ring join formula needs k_i > 2 m_i + 1");
    }
    const double a = static_cast<double>(m1);
    const double b = static_cast<double>(m2);
    const double root = std::sqrt((a - b) * (a - b) + static_cast<double>(k1) * static_cast<double>(k2));
    return {a + b + root, a + b - root};
}

std::array<double, 2> cycle_removal_condensed_eigenvalues(std::size_t n, std::size_t k, bool directed) {
    require_cycle_removal(n, k);
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    const double base = directed ? nn - 3.0 : nn - 4.0;
    const double disc = directed ? (nn + 1.0) * (nn + 1.0) - 4.0 * kk : (nn + 2.0) * (nn + 2.0) - 8.0 * kk;
    const double root = std::sqrt(disc);
    return {(base + root) / 2.0, (base - root) / 2.0};
}

std::vector<Complex> cycle_removal_spectrum(std::size_t n, std::size_t k, bool directed) {
    require_cycle_removal(n, k);
    const RootsOfUnity roots(k);
    const std::size_t last = directed ? k - 1 : k - 2;
    std::vector<Complex> spectrum;
    for (std::size_t j = 1; j < k; ++j) {
        Complex sum = 0.0;
        for (std::size_t r = 2; r <= last; ++r) sum += roots.power(static_cast<long long>((r * j) % k));
        spectrum.push_back(sum);
    }
    spectrum.insert(spectrum.end(), n - k - 1, Complex(-1.0));
    for (double v : cycle_removal_condensed_eigenvalues(n, k, directed)) spectrum.emplace_back(v);
    return spectrum;
}

} // namespace circjoin::graphs
