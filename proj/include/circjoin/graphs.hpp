#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "circjoin/circulant.hpp"
#include "circjoin/join.hpp"

namespace circjoin::graphs {

/// A graph with a circulant 0/1 adjacency matrix and no self-loops.
class CirculantGraph {
  public:
    /// Throws PreconditionError unless connections[0] == 0, every entry is
    /// 0 or 1, and (for undirected graphs) connections[j] == connections[k-j].
    CirculantGraph(std::vector<int> connections, bool directed);

    std::size_t size() const { return connections_.size(); }
    const std::vector<int>& connections() const { return connections_; }
    bool directed() const { return directed_; }
    CirculantMatrix adjacency() const;

    friend bool operator==(const CirculantGraph&, const CirculantGraph&) = default;

  private:
    std::vector<int> connections_;
    bool directed_;
};

/// K_n: Circ(0, 1, ..., 1).
CirculantGraph complete_graph(std::size_t n);

/// Directed k-cycle with edges i -> i+1 and k -> 1, i.e. Circ(0, ..., 0, 1).
CirculantGraph directed_cycle(std::size_t k);

/// RG(k, m): each vertex adjacent to its m nearest neighbours on each side;
/// the complete graph K_k when k <= 2m + 1.
CirculantGraph ring_graph(std::size_t k, std::size_t m);

CirculantGraph complement(const CirculantGraph& g);

/// Join of graphs: all couplings equal to one.
JoinSpec join(const std::vector<CirculantGraph>& parts);

/// K_n with a k-cycle removed, realised as G + K_{n-k}. The undirected
/// case uses G = Circ(0, 0, 1, ..., 1, 0), the directed one Circ(0, 1, ..., 1, 0).
JoinSpec remove_cycle_from_complete(std::size_t n, std::size_t k, bool directed);

/// The two non-circulant eigenvalues of RG(k1, m1) + RG(k2, m2):
/// m1 + m2 +- sqrt((m1 - m2)^2 + k1 k2). Requires k_i > 2 m_i + 1.
std::array<double, 2> ring_join_condensed_eigenvalues(std::size_t k1, std::size_t m1, std::size_t k2,
                                                       std::size_t m2);

/// The two non-circulant eigenvalues after removing a k-cycle from K_n:
/// ((n - 4) +- sqrt((n + 2)^2 - 8k)) / 2 undirected,
/// ((n - 3) +- sqrt((n + 1)^2 - 4k)) / 2 directed.
std::array<double, 2> cycle_removal_condensed_eigenvalues(std::size_t n, std::size_t k, bool directed);

/// Full closed-form spectrum of K_n minus a k-cycle: the sums of roots of
/// unity over the remaining offsets for j = 1..k-1, -1 with multiplicity
/// n - k - 1, and the two condensed eigenvalues. Unsorted.
std::vector<Complex> cycle_removal_spectrum(std::size_t n, std::size_t k, bool directed);

} // namespace circjoin::graphs
