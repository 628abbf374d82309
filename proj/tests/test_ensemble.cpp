#include "lgsim/ensemble.hpp"

#include "test_reference.hpp"

#include <doctest.h>

#include <cmath>

using namespace lgsim;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("decompose") {
    SUBCASE("maximally mixed state is degenerate with epsilon 0") {
        PseudoPureState s = decompose(maximally_mixed());
        CHECK(s.epsilon == 0.0);
        CHECK(s.degenerate);
        CHECK(approx_equal(s.pure_part.matrix(), ket0_density().matrix()));
    }

    SUBCASE("pure state decomposes onto itself") {
        PseudoPureState s = decompose(ket0_density());
        CHECK(s.epsilon == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(s.degenerate);
        CHECK(approx_equal(s.pure_part.matrix(), ket0_density().matrix()));
    }

    SUBCASE("0.6|0><0| + 0.4|1><1| has epsilon 0.2 along |0>") {
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(0, 0) = 0.6;
        m(1, 1) = 0.4;
        PseudoPureState s = decompose(DensityMatrix(m));
        CHECK(s.epsilon == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(approx_equal(s.pure_part.matrix(), ket0_density().matrix()));
        CHECK(approx_equal(s.reconstruct().matrix(), m));
    }

    SUBCASE("round-trips random single-qubit states") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 200; ++i) {
            DensityMatrix rho = testgen::random_density(1, rng);
            PseudoPureState s = decompose(rho);
            CHECK(max_abs_diff(s.reconstruct().matrix(), rho.matrix()) <=
                  kTolAlgebra);
            s.reconstruct().validate();
            // The pure part must be rank one.
            CHECK(s.pure_part.min_eigenvalue() ==
                  doctest::Approx(0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("thermal_epsilon") {
    SUBCASE("zero field carries zero polarization") {
        CHECK(thermal_epsilon(ThermalParams(1e-26, 0.0, 300.0)) == 0.0);
    }

    SUBCASE("low temperature saturates toward full polarization") {
        CHECK(thermal_epsilon(ThermalParams(1.41060679736e-26, 10.0, 1e-4)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("equals tanh(mu B / 2kT) to 1e-15 relative over a grid") {
        for (double field : {0.1, 1.0, 7.05, 11.7, 20.0}) {
            for (double temp : {4.2, 77.0, 300.0, 400.0}) {
                ThermalParams p(1.41060679736e-26, field, temp);
                const double eps = thermal_epsilon(p);
                const double tanh_form =
                    std::tanh(p.magnetic_moment * field /
                              (2.0 * ThermalParams::boltzmann * temp));
                CHECK(std::abs(eps - tanh_form) <= 1e-15 * tanh_form);
            }
        }
    }

    SUBCASE("monotone in field and temperature") {
        double last = -1.0;
        for (double field : {0.0, 1.0, 5.0, 11.7, 50.0}) {
            const double eps =
                thermal_epsilon(ThermalParams(1.41060679736e-26, field, 300.0));
            CHECK(eps >= last);
            last = eps;
        }
        last = 2.0;
        for (double temp : {10.0, 77.0, 300.0, 1000.0}) {
            const double eps =
                thermal_epsilon(ThermalParams(1.41060679736e-26, 11.7, temp));
            CHECK(eps <= last);
            last = eps;
        }
    }

    SUBCASE("small-argument value mu B / kT = 8e-5 gives about 4e-5") {
        // Choose parameters that hit the ratio exactly.
        const double k = ThermalParams::boltzmann;
        ThermalParams p(8e-5 * k * 300.0, 1.0, 300.0);
        CHECK(std::abs(thermal_epsilon(p) - 4e-5) <= 1e-12);
        CHECK(thermal_epsilon(p) ==
              doctest::Approx(std::tanh(4e-5)).epsilon(1e-14));
    }

    SUBCASE("invalid parameters throw") {
        CHECK_THROWS_AS(ThermalParams(1e-26, -1.0, 300.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(ThermalParams(1e-26, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(ThermalParams(0.0, 1.0, 300.0), std::invalid_argument);
    }
}

TEST_CASE("observable_signal") {
    SUBCASE("epsilon = 0 silences any pure part") {
        PseudoPureState s(0.0, plus_density());
        CHECK(observable_signal(s, sigma_z_observable()) ==
              doctest::Approx(0.0).epsilon(1e-15));
    }

    SUBCASE("epsilon = 1 recovers the pure expectation") {
        PseudoPureState s(1.0, ket0_density());
        CHECK(observable_signal(s, sigma_z_observable()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("tiny epsilon scales linearly") {
        PseudoPureState s(4e-5, ket0_density());
        const double full = observable_signal(s, sigma_z_observable());
        CHECK(full == doctest::Approx(4e-5).epsilon(1e-10));
        // Same number via the epsilon-scaled route.
        const double scaled =
            s.epsilon * expectation(sigma_z_observable(), s.pure_part);
        CHECK(full == doctest::Approx(scaled).epsilon(1e-12));
    }

    SUBCASE("linearity holds on random pure parts") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            PseudoPureState pure(1.0, decompose(testgen::random_density(1, rng))
                                          .pure_part);
            const double eps = unit(rng);
            PseudoPureState scaled(eps, pure.pure_part);
            CHECK(observable_signal(scaled, sigma_z_observable()) ==
                  doctest::Approx(eps * observable_signal(
                                            pure, sigma_z_observable()))
                      .epsilon(1e-12));
        }
    }

    SUBCASE("rejects observables with nonzero trace") {
        ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
        proj(0, 0) = 1.0;
        proj(1, 1) = 1.0;
        CHECK_THROWS_AS(
            observable_signal(PseudoPureState(0.5, ket0_density()),
                              Observable(proj)),
            std::invalid_argument);
    }
}

TEST_CASE("fair_sampling_report") {
    SUBCASE("bare sigma_z measurement separates the components") {
        PseudoPureState s(0.3, ket0_density());
        FairSamplingReport r =
            fair_sampling_report(s, {}, sigma_z_observable());
        CHECK(r.pure_component.p_plus == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.identity_component.p_plus ==
              doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.distributions_differ);
    }

    SUBCASE("u_theta(pi/6) then sigma_z: pure 3/4, identity 1/2") {
        PseudoPureState s(0.3, ket0_density());
        FairSamplingReport r = fair_sampling_report(
            s, {u_theta(kPi / 6.0)}, sigma_z_observable());
        // Quantum-core oracle for the pure branch.
        const double expected = measure(sigma_z_observable(),
                                        apply(u_theta(kPi / 6.0),
                                              ket0_density()))
                                    .first.probability;
        CHECK(expected == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(r.pure_component.p_plus ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(r.identity_component.p_plus ==
              doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("weighted signal is epsilon times the pure signal") {
        PseudoPureState s(2e-5, ket0_density());
        FairSamplingReport r = fair_sampling_report(
            s, {u_theta(0.4)}, sigma_z_observable());
        CHECK(r.identity_component.signal ==
              doctest::Approx(0.0).epsilon(1e-15));
        CHECK(r.weighted_signal ==
              doctest::Approx(s.epsilon * r.pure_component.signal)
                  .epsilon(1e-12));
    }

    SUBCASE("the identity component stays uniform under any unitary") {
        std::mt19937_64 rng(19);
        for (int i = 0; i < 50; ++i) {
            PseudoPureState s(0.7, ket0_density());
            FairSamplingReport r = fair_sampling_report(
                s, {testgen::random_unitary(1, rng)}, sigma_z_observable());
            CHECK(r.identity_component.p_plus ==
                  doctest::Approx(0.5).epsilon(1e-12));
            CHECK(r.identity_component.p_minus ==
                  doctest::Approx(0.5).epsilon(1e-12));
        }
    }
}
