#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "circjoin/join.hpp"
#include "circjoin/types.hpp"

namespace circjoin::kuramoto {

/// Phase oscillators coupled through the dense matrix of a real join:
/// d theta_i / dt = omega_i + epsilon * sum_j A_ij sin(theta_j - theta_i).
class KuramotoSystem {
  public:
    /// Throws PreconditionError if the network has complex entries or
    /// `omega` is neither empty (all zero) nor of length N.
    KuramotoSystem(JoinSpec network, double epsilon, std::vector<double> omega = {});

    const JoinSpec& network() const { return network_; }
    const RMatrix& adjacency() const { return adjacency_; }
    double epsilon() const { return epsilon_; }
    const RVector& omega() const { return omega_; }
    std::size_t size() const { return static_cast<std::size_t>(adjacency_.rows()); }

  private:
    JoinSpec network_;
    RMatrix adjacency_;
    double epsilon_;
    RVector omega_;
};

using PhaseState = RVector;

/// Maps every phase into (-pi, pi].
PhaseState reduce_phases(const PhaseState& theta);

RVector rhs(const KuramotoSystem& system, const PhaseState& theta);

struct TwistedEquilibrium {
    std::size_t j = 0;
    std::vector<double> phis;
    /// Block i, position r holds 2 pi r j / k + phi_i, reduced to (-pi, pi].
    PhaseState theta;
};

/// Twisted state on a join of d identical real symmetric circulant blocks.
/// Throws PreconditionError when the blocks differ, the block is not real
/// symmetric, j is outside [1, k-1] or phis does not have d entries.
TwistedEquilibrium build_twisted_equilibrium(const KuramotoSystem& system, std::size_t j,
                                             const std::vector<double>& phis);

struct EquilibriumCheck {
    bool is_equilibrium = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

/// 1e-8 * (1 + |epsilon| * ||A||_inf).
double default_equilibrium_tolerance(const KuramotoSystem& system);

EquilibriumCheck check_equilibrium(const KuramotoSystem& system, const PhaseState& theta,
                                   std::optional<double> tolerance = std::nullopt);

/// Phases of an eigenvector with constant modulus at a real eigenvalue.
/// Returns nothing when the eigenvalue is not real or the moduli differ.
/// Throws NotAnEigenpairError when ||A v - lambda v|| > 1e-8 (1 + ||A||).
std::optional<PhaseState> eigenvector_equilibrium(const KuramotoSystem& system, const CVector& v, Complex lambda);

struct Trajectory {
    double dt = 0.0;
    /// states[s] is the state after s steps; phases are not reduced.
    std::vector<PhaseState> states;

    double time(std::size_t step) const { return dt * static_cast<double>(step); }
    PhaseState reduced(std::size_t step) const { return reduce_phases(states.at(step)); }
    /// max_s ||theta(s) - theta(0)||_inf on the unreduced phases.
    double max_drift() const;
};

/// Classical fixed-step RK4. Throws PreconditionError for dt <= 0 or
/// steps == 0 and DivergenceError when the state stops being finite.
Trajectory integrate(const KuramotoSystem& system, const PhaseState& theta0, double dt, std::size_t steps);

} // namespace circjoin::kuramoto
