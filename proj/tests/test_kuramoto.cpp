#include <doctest.h>

#include <numbers>
#include <random>

#include "circjoin/graphs.hpp"
#include "circjoin/kuramoto.hpp"
#include "support.hpp"

using namespace circjoin;
using namespace circjoin::kuramoto;

namespace {

constexpr double pi = std::numbers::pi;

CirculantMatrix circ(std::initializer_list<double> c) {
    std::vector<Complex> v;
    for (double x : c) v.emplace_back(x);
    return CirculantMatrix(std::move(v));
}

KuramotoSystem pair_system(double epsilon = 1.0) {
    return KuramotoSystem(JoinSpec::uniform({circ({0}), circ({0})}), epsilon);
}

double phase_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * pi)); }

RVector random_phases(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-pi, pi);
    RVector t(static_cast<Eigen::Index>(n));
    for (auto& x : t) x = u(rng);
    return t;
}

} // namespace

TEST_CASE("system construction") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 1) = Complex(0.0, 1.0);
    CHECK_THROWS_AS(KuramotoSystem(JoinSpec({circ({0}), circ({0})}, a), 1.0), PreconditionError);
    CHECK_THROWS_AS(KuramotoSystem(JoinSpec::uniform({circ({0, 1, 1})}), 1.0, {1.0, 2.0}), PreconditionError);
    const KuramotoSystem s(JoinSpec::uniform({circ({0, 1, 1})}), 0.5, {1.0, 2.0, 3.0});
    CHECK(s.size() == 3);
    CHECK(s.omega()(2) == 3.0);
    CHECK(pair_system().omega() == RVector::Zero(2));
}

TEST_CASE("phase reduction") {
    RVector t(5);
    t << pi, -pi, 3.0 * pi, 2.0 * pi, -0.5;
    const RVector r = reduce_phases(t);
    CHECK(r(0) == pi);
    CHECK(r(1) == pi);
    CHECK(r(2) == doctest::Approx(pi));
    CHECK(r(3) == 0.0);
    CHECK(r(4) == -0.5);
    for (auto x : r) {
        CHECK(x > -pi);
        CHECK(x <= pi);
    }
}

TEST_CASE("right-hand side") {
    const auto k3 = KuramotoSystem(JoinSpec::uniform({circ({0, 1, 1})}), 1.0);
    CHECK(rhs(k3, RVector::Zero(3)) == RVector::Zero(3));

    RVector t(2);
    t << 0.0, pi / 2.0;
    const RVector r = rhs(pair_system(), t);
    CHECK(r(0) == doctest::Approx(1.0));
    CHECK(r(1) == doctest::Approx(-1.0));

    const KuramotoSystem driven(JoinSpec::uniform({circ({0}), circ({0})}), 2.0, {0.25, -0.5});
    const RVector d = rhs(driven, t);
    CHECK(d(0) == doctest::Approx(2.25));
    CHECK(d(1) == doctest::Approx(-2.5));
}

TEST_CASE("global phase shift leaves the right-hand side unchanged") {
    std::mt19937_64 rng(9);
    const KuramotoSystem sys(graphs::join({graphs::ring_graph(6, 1), graphs::complete_graph(3)}), 0.75);
    // dyadic phases and a power-of-two shift keep every difference exact
    std::uniform_int_distribution<int> grid(-64, 64);
    for (int trial = 0; trial < 50; ++trial) {
        RVector t(9);
        for (auto& x : t) x = grid(rng) / 32.0;
        const double c = std::ldexp(1.0, grid(rng) % 4);
        CHECK(rhs(sys, t) == rhs(sys, (t.array() + c).matrix()));
    }
    std::uniform_real_distribution<double> shift(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const RVector t = random_phases(rng, 9);
        const RVector shifted = (t.array() + shift(rng)).matrix();
        CHECK((rhs(sys, t) - rhs(sys, shifted)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("twisted equilibria") {
    SUBCASE("single ring gives the classic twisted state") {
        for (std::size_t k = 3; k <= 10; ++k) {
            const KuramotoSystem sys(graphs::join({graphs::ring_graph(k, 1)}), 1.0);
            for (std::size_t j = 1; j < k; ++j) {
                const auto eq = build_twisted_equilibrium(sys, j, {0.0});
                for (std::size_t r = 0; r < k; ++r) {
                    const double expected = 2.0 * pi * static_cast<double>(r * j) / static_cast<double>(k);
                    CHECK(phase_distance(eq.theta(static_cast<Eigen::Index>(r)), expected) <= 1e-12);
                }
                CHECK(rhs(sys, eq.theta).cwiseAbs().maxCoeff() <= 1e-9);
                CHECK(eq.theta.maxCoeff() - eq.theta.minCoeff() > 1e-3);
            }
        }
    }
    SUBCASE("two blocks of Circ(0,1,0,1)") {
        const KuramotoSystem sys(JoinSpec::uniform({circ({0, 1, 0, 1}), circ({0, 1, 0, 1})}), 1.0);
        const auto eq = build_twisted_equilibrium(sys, 2, {0.0, pi / 3.0});
        const std::vector<double> expected{0, pi, 0, pi, pi / 3, pi / 3 + pi, pi / 3, pi / 3 + pi};
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(phase_distance(eq.theta(static_cast<Eigen::Index>(i)), expected[i]) <= 1e-12);
        }
        CHECK(check_equilibrium(sys, eq.theta).is_equilibrium);
    }
    SUBCASE("exponential is the combination of block eigenvectors") {
        const auto block = graphs::ring_graph(7, 2);
        const auto network = graphs::join({block, block, block});
        const KuramotoSystem sys(network, 1.3);
        const auto pairs = circulant_eigenpairs_of_join(network);
        const std::vector<double> phis{0.3, -2.0, 1.1};
        for (std::size_t j = 1; j < 7; ++j) {
            const auto eq = build_twisted_equilibrium(sys, j, phis);
            CVector combo = CVector::Zero(21);
            for (const auto& p : pairs) {
                if (p.fourier_index == j) combo += std::polar(1.0, phis[p.block]) * p.eigenvector;
            }
            const CVector expo = eq.theta.unaryExpr([](double x) { return std::polar(1.0, x); });
            CHECK((expo - combo).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SUBCASE("random phases for every Fourier index") {
        std::mt19937_64 rng(101);
        const auto block = graphs::ring_graph(9, 3);
        const KuramotoSystem sys(graphs::join({block, block}), 0.4);
        for (std::size_t j = 1; j < 9; ++j) {
            for (int sample = 0; sample < 10; ++sample) {
                const RVector phi = random_phases(rng, 2);
                const auto eq = build_twisted_equilibrium(sys, j, {phi(0), phi(1)});
                CHECK(check_equilibrium(sys, eq.theta).is_equilibrium);
            }
        }
    }
    SUBCASE("preconditions") {
        const KuramotoSystem mixed(JoinSpec::uniform({circ({0, 1, 1}), circ({0, 1, 0, 1})}), 1.0);
        CHECK_THROWS_AS(build_twisted_equilibrium(mixed, 1, {0.0, 0.0}), PreconditionError);
        const KuramotoSystem directed(JoinSpec::uniform({circ({0, 1, 0})}), 1.0);
        CHECK_THROWS_AS(build_twisted_equilibrium(directed, 1, {0.0}), PreconditionError);
        const KuramotoSystem ring(graphs::join({graphs::ring_graph(5, 1)}), 1.0);
        CHECK_THROWS_AS(build_twisted_equilibrium(ring, 0, {0.0}), PreconditionError);
        CHECK_THROWS_AS(build_twisted_equilibrium(ring, 5, {0.0}), PreconditionError);
        CHECK_THROWS_AS(build_twisted_equilibrium(ring, 1, {0.0, 1.0}), PreconditionError);
    }
}

TEST_CASE("equilibrium checks") {
    const KuramotoSystem sys(graphs::join({graphs::ring_graph(6, 2), graphs::complete_graph(4)}), 2.0);
    const auto constant = check_equilibrium(sys, RVector::Constant(10, 1.25));
    CHECK(constant.is_equilibrium);
    CHECK(constant.residual <= 1e-15);
    CHECK(constant.tolerance == doctest::Approx(1e-8 * (1.0 + 2.0 * 9.0)));

    std::mt19937_64 rng(3);
    int equilibria = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = check_equilibrium(sys, random_phases(rng, 10));
        if (c.is_equilibrium) ++equilibria;
        CHECK(c.residual > 0.0);
    }
    CHECK(equilibria == 0);

    const auto loose = check_equilibrium(sys, random_phases(rng, 10), 1e6);
    CHECK(loose.is_equilibrium);
    CHECK(loose.tolerance == 1e6);
}

TEST_CASE("equilibria from eigenvectors") {
    SUBCASE("all-ones vector of a single block") {
        const auto c = circ({0, 1, 0, 0, 1});
        const KuramotoSystem sys(JoinSpec::uniform({c}), 1.0);
        const auto theta = eigenvector_equilibrium(sys, CVector::Ones(5), row_sum(c));
        REQUIRE(theta.has_value());
        CHECK(*theta == RVector::Zero(5));
    }
    SUBCASE("block eigenvectors have zero entries") {
        const auto network = graphs::join({graphs::ring_graph(5, 1), graphs::ring_graph(5, 1)});
        const KuramotoSystem sys(network, 1.0);
        const auto p = circulant_eigenpairs_of_join(network).front();
        CHECK_FALSE(eigenvector_equilibrium(sys, p.eigenvector, p.eigenvalue).has_value());
    }
    SUBCASE("complex eigenvalue") {
        const KuramotoSystem sys(JoinSpec::uniform({circ({0, 1, 0})}), 1.0);
        const auto p = circulant_eigenpairs(circ({0, 1, 0}))[1];
        CHECK_FALSE(eigenvector_equilibrium(sys, p.eigenvector, p.eigenvalue).has_value());
    }
    SUBCASE("not an eigenpair") {
        const KuramotoSystem sys(graphs::join({graphs::ring_graph(5, 1)}), 1.0);
        CHECK_THROWS_AS(eigenvector_equilibrium(sys, CVector::Ones(5), 3.0), NotAnEigenpairError);
        CHECK_THROWS_AS(eigenvector_equilibrium(sys, CVector::Ones(4), 2.0), PreconditionError);
    }
    SUBCASE("combinations of block eigenvectors reproduce the twisted state") {
        std::mt19937_64 rng(17);
        const auto block = graphs::ring_graph(8, 2);
        const auto network = graphs::join({block, block});
        const KuramotoSystem sys(network, 0.9);
        const auto pairs = circulant_eigenpairs_of_join(network);
        for (std::size_t j = 1; j < 8; ++j) {
            const RVector phi = random_phases(rng, 2);
            CVector v = CVector::Zero(16);
            Complex lambda;
            for (const auto& p : pairs) {
                if (p.fourier_index != j) continue;
                v += std::polar(1.0, phi(static_cast<Eigen::Index>(p.block))) * p.eigenvector;
                lambda = p.eigenvalue;
            }
            const auto theta = eigenvector_equilibrium(sys, v, Complex(lambda.real(), 0.0));
            REQUIRE(theta.has_value());
            const auto eq = build_twisted_equilibrium(sys, j, {phi(0), phi(1)});
            for (Eigen::Index i = 0; i < 16; ++i) CHECK(phase_distance((*theta)(i), eq.theta(i)) <= 1e-8);
            CHECK(check_equilibrium(sys, *theta).is_equilibrium);
        }
    }
}

TEST_CASE("integration") {
    SUBCASE("equilibria stay put") {
        const KuramotoSystem sys(graphs::join({graphs::ring_graph(10, 1)}), 1.0);
        const auto eq = build_twisted_equilibrium(sys, 1, {0.0});
        const auto traj = integrate(sys, eq.theta, 1e-2, 1000);
        CHECK(traj.states.size() == 1001);
        CHECK(traj.max_drift() <= 1e-6);
        CHECK(traj.time(1000) == doctest::Approx(10.0));
    }
    SUBCASE("no coupling and no frequencies") {
        const KuramotoSystem sys(graphs::join({graphs::complete_graph(4)}), 0.0);
        std::mt19937_64 rng(2);
        const RVector t0 = random_phases(rng, 4);
        const auto traj = integrate(sys, t0, 0.1, 50);
        for (const auto& s : traj.states) CHECK(s == t0);
        CHECK(traj.max_drift() == 0.0);
    }
    SUBCASE("natural frequencies advance linearly") {
        const KuramotoSystem sys(JoinSpec::uniform({circ({0}), circ({0})}), 0.0, {1.0, -2.0});
        const auto traj = integrate(sys, RVector::Zero(2), 0.25, 8);
        CHECK(traj.states.back()(0) == doctest::Approx(2.0));
        CHECK(traj.states.back()(1) == doctest::Approx(-4.0));
        CHECK(traj.reduced(8)(1) == doctest::Approx(-4.0 + 2.0 * pi));
    }
    SUBCASE("two oscillators synchronise") {
        RVector t0(2);
        t0 << 0.0, pi - 0.1;
        const auto traj = integrate(pair_system(), t0, 1e-2, 2000);
        double previous = pi - 0.1;
        for (std::size_t s = 100; s < traj.states.size(); s += 100) {
            const double gap = traj.states[s](1) - traj.states[s](0);
            CHECK(gap <= previous);
            previous = gap;
        }
        CHECK(previous < 1e-3);
        // d(gap)/dt = -2 sin(gap): tan(gap/2) decays like exp(-2t)
        const double expected = 2.0 * std::atan(std::tan((pi - 0.1) / 2.0) * std::exp(-2.0 * 20.0));
        CHECK(std::abs(previous - expected) <= 1e-8);
    }
    SUBCASE("fourth order convergence") {
        std::mt19937_64 rng(44);
        const KuramotoSystem sys(graphs::join({graphs::ring_graph(6, 1), graphs::complete_graph(3)}), 1.0,
                                 {0.1, -0.2, 0.3, 0.0, 0.5, -0.1, 0.2, 0.0, -0.4});
        const RVector t0 = random_phases(rng, 9);
        const double T = 2.0;
        const double dt = 0.1;
        const auto final_state = [&](double h) {
            return integrate(sys, t0, h, static_cast<std::size_t>(std::lround(T / h))).states.back();
        };
        const RVector reference = final_state(dt / 8.0);
        const double e1 = (final_state(dt) - reference).cwiseAbs().maxCoeff();
        const double e2 = (final_state(dt / 2.0) - reference).cwiseAbs().maxCoeff();
        const double ratio = e1 / e2;
        CHECK(ratio >= 12.0);
        CHECK(ratio <= 20.0);
    }
    SUBCASE("errors") {
        const auto sys = pair_system();
        CHECK_THROWS_AS(integrate(sys, RVector::Zero(2), 0.0, 10), PreconditionError);
        CHECK_THROWS_AS(integrate(sys, RVector::Zero(2), 0.1, 0), PreconditionError);
        CHECK_THROWS_AS(integrate(sys, RVector::Zero(3), 0.1, 1), PreconditionError);
        RVector bad(2);
        bad << 0.0, std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(integrate(sys, bad, 0.1, 1), DivergenceError);
        const KuramotoSystem fast(JoinSpec::uniform({circ({0}), circ({0})}), 1.0, {1e300, 0.0});
        try {
            integrate(fast, RVector::Zero(2), 1e300, 5);
            FAIL("expected divergence");
        } catch (const DivergenceError& e) {
            CHECK(std::string(e.what()).find("step 1") != std::string::npos);
        }
    }
}
