#include "circjoin/kuramoto.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace circjoin::kuramoto {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_size(const KuramotoSystem& system, const PhaseState& theta) {
    if (static_cast<std::size_t>(theta.size()) != system.size()) {
        throw PreconditionError("phase state has " + std::to_string(theta.size()) + " entries, system has " +
                                std::to_string(system.size()) + " oscillators");
    }
}

} // namespace

KuramotoSystem::KuramotoSystem(JoinSpec network, double epsilon, std::vector<double> omega)
    : network_(std::move(network)), epsilon_(epsilon) {
    if (!network_.is_real()) throw PreconditionError("Kuramoto network must have real entries");
    adjacency_ = expand_join_dense(network_).real();
    const auto n = adjacency_.rows();
    if (omega.empty()) {
        omega_ = RVector::Zero(n);
    } else if (static_cast<Eigen::Index>(omega.size()) == n) {
        omega_ = Eigen::Map<const RVector>(omega.data(), n);
    } else {
        throw PreconditionError("omega has " + std::to_string(omega.size()) + " entries, expected " +
                                std::to_string(n));
    }
    if (!std::isfinite(epsilon_) || !omega_.allFinite()) {
        throw PreconditionError("coupling strength and frequencies must be finite");
    }
}

PhaseState reduce_phases(const PhaseState& theta) {
    PhaseState out(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        double r = std::remainder(theta(i), kTwoPi);
        if (r <= -std::numbers::pi) r += kTwoPi;
        out(i) = r;
    }
    return out;
}

RVector rhs(const KuramotoSystem& system, const PhaseState& theta) {
    require_size(system, theta);
    const auto& a = system.adjacency();
    const Eigen::Index n = a.rows();
    RVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double coupling = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (a(i, j) != 0.0) coupling += a(i, j) * std::sin(theta(j) - theta(i));
        }
        out(i) = system.omega()(i) + system.epsilon() * coupling;
    }
    return out;
}

TwistedEquilibrium build_twisted_equilibrium(const KuramotoSystem& system, std::size_t j,
                                             const std::vector<double>& phis) {
    const auto& net = system.network();
    const auto& block = net.block(0);
    for (const auto& b : net.blocks()) {
        if (!(b == block)) throw PreconditionError("twisted equilibria need identical circulant blocks");
    }
    if (!block.is_real() || !block.is_symmetric()) {
        throw PreconditionError("twisted equilibria need a real symmetric circulant block");
    }
    const std::size_t k = block.size();
    if (j < 1 || j >= k) {
        throw PreconditionError("Fourier index j = " + std::to_string(j) + " outside [1, " + std::to_string(k - 1) +
                                "]");
    }
    if (phis.size() != net.block_count()) {
        throw PreconditionError("expected " + std::to_string(net.block_count()) + " block phases, got " +
                                std::to_string(phis.size()));
    }
    TwistedEquilibrium eq{j, phis, PhaseState(static_cast<Eigen::Index>(net.dimension()))};
    for (std::size_t i = 0; i < net.block_count(); ++i) {
        for (std::size_t r = 0; r < k; ++r) {
            const double winding = kTwoPi * static_cast<double>((r * j) % k) / static_cast<double>(k);
            eq.theta(static_cast<Eigen::Index>(net.offset(i) + r)) = winding + phis[i];
        }
    }
    eq.theta = reduce_phases(eq.theta);
    return eq;
}

double default_equilibrium_tolerance(const KuramotoSystem& system) {
    return 1e-8 * (1.0 + std::abs(system.epsilon()) * inf_norm(system.adjacency()));
}

EquilibriumCheck check_equilibrium(const KuramotoSystem& system, const PhaseState& theta,
                                   std::optional<double> tolerance) {
    const double tol = tolerance.value_or(default_equilibrium_tolerance(system));
    const RVector f = rhs(system, theta);
    const double residual = f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
    return {residual <= tol, residual, tol};
}

std::optional<PhaseState> eigenvector_equilibrium(const KuramotoSystem& system, const CVector& v, Complex lambda) {
    if (static_cast<std::size_t>(v.size()) != system.size()) {
        throw PreconditionError("eigenvector has " + std::to_string(v.size()) + " entries, system has " +
                                std::to_string(system.size()) + " oscillators");
    }
    const CMatrix a = system.adjacency().cast<Complex>();
    const double residual = (a * v - lambda * v).cwiseAbs().maxCoeff();
    const double bound = 1e-8 * (1.0 + inf_norm(system.adjacency()));
    if (!(residual <= bound)) {
        throw NotAnEigenpairError("vector is not an eigenvector for the given eigenvalue (residual " +
                                  std::to_string(residual) + ")");
    }
    if (std::abs(lambda.imag()) > 1e-10) return std::nullopt;
    const RVector moduli = v.cwiseAbs();
    const double lo = moduli.minCoeff();
    const double hi = moduli.maxCoeff();
    const double common = 0.5 * (lo + hi);
    if (!(common > 1e-8) || hi - common > 1e-8) return std::nullopt;
    PhaseState theta(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) theta(i) = std::arg(v(i));
    return reduce_phases(theta);
}

double Trajectory::max_drift() const {
    double drift = 0.0;
    for (const auto& s : states) drift = std::max(drift, (s - states.front()).cwiseAbs().maxCoeff());
    return drift;
}

Trajectory integrate(const KuramotoSystem& system, const PhaseState& theta0, double dt, std::size_t steps) {
    require_size(system, theta0);
    if (!(dt > 0.0)) throw PreconditionError("time step must be positive");
    if (steps == 0) throw PreconditionError("need at least one step");
    if (!theta0.allFinite()) throw DivergenceError("initial state is not finite");
    Trajectory traj{dt, {}};
    traj.states.reserve(steps + 1);
    traj.states.push_back(theta0);
    PhaseState y = theta0;
    for (std::size_t s = 1; s <= steps; ++s) {
        const RVector k1 = rhs(system, y);
        const RVector k2 = rhs(system, y + 0.5 * dt * k1);
        const RVector k3 = rhs(system, y + 0.5 * dt * k2);
        const RVector k4 = rhs(system, y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!y.allFinite()) throw DivergenceError("state became non-finite at step " + std::to_string(s));
        traj.states.push_back(y);
    }
    return traj;
}

} // namespace circjoin::kuramoto
