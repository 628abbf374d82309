#include "lgsim/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace lgsim {

PseudoPureState::PseudoPureState(double epsilon, DensityMatrix pure_part,
                                 bool degenerate)
    : epsilon(epsilon), pure_part(std::move(pure_part)), degenerate(degenerate) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0 + kTolStatistic)) {
        throw std::invalid_argument("PseudoPureState: epsilon outside [0, 1]");
    }
    if (this->pure_part.dim() != 2) {
        throw std::invalid_argument("PseudoPureState: pure part must be 2x2");
    }
}

DensityMatrix PseudoPureState::reconstruct() const {
    ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) * 0.5;
    return DensityMatrix(epsilon * pure_part.matrix() +
                         (1.0 - epsilon) * mixed);
}

ThermalParams::ThermalParams(double magnetic_moment, double field,
                             double temperature)
    : magnetic_moment(magnetic_moment), field(field), temperature(temperature) {
    if (!(field >= 0.0) || !(temperature > 0.0) || !(magnetic_moment > 0.0)) {
        throw std::invalid_argument(
            "ThermalParams: need field >= 0, temperature > 0, moment > 0");
    }
}

PseudoPureState decompose(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("decompose: expected a single qubit");
    }
    const std::array<double, 3> b = bloch_vector(rho);
    const double epsilon =
        std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    if (epsilon <= kTolAlgebra) {
        return PseudoPureState(0.0, ket0_density(), /*degenerate=*/true);
    }
    ComplexMatrix pure = 0.5 * (ComplexMatrix::Identity(2, 2) +
                                (b[0] / epsilon) * pauli_x() +
                                (b[1] / epsilon) * pauli_y() +
                                (b[2] / epsilon) * pauli_z());
    return PseudoPureState(std::min(epsilon, 1.0), DensityMatrix(pure));
}

double thermal_epsilon(const ThermalParams& params) {
    const double ratio = params.magnetic_moment * params.field /
                         (ThermalParams::boltzmann * params.temperature);
    // (1 - alpha)/(1 + alpha) with alpha = exp(-ratio). The numerator goes
    // through expm1 so sub-1e-5 polarizations keep full relative accuracy.
    return -std::expm1(-ratio) / (1.0 + std::exp(-ratio));
}

double observable_signal(const PseudoPureState& state, const Observable& obs) {
    if (!obs.dichotomic()) {
        throw std::invalid_argument(
            "observable_signal: observable must be dichotomic");
    }
    if (std::abs(obs.matrix().trace()) > kTolAlgebra) {
        throw std::invalid_argument(
            "observable_signal: identity-component cancellation requires a "
            "traceless observable");
    }
    return expectation(obs, state.reconstruct());
}

FairSamplingReport fair_sampling_report(const PseudoPureState& state,
                                        const std::vector<Unitary>& gates,
                                        const Observable& obs) {
    auto run_component = [&](DensityMatrix rho) {
        for (const Unitary& g : gates) rho = apply(g, rho);
        auto [plus, minus] = measure(obs, rho);
        return ComponentStatistics{plus.probability, minus.probability,
                                   expectation(obs, rho)};
    };

    ComponentStatistics pure = run_component(state.pure_part);
    ComponentStatistics mixed = run_component(maximally_mixed());

    const double weighted =
        state.epsilon * pure.signal + (1.0 - state.epsilon) * mixed.signal;
    const bool differ =
        std::abs(pure.p_plus - mixed.p_plus) > kTolStatistic;
    return FairSamplingReport{pure, mixed, weighted, differ};
}

}  // namespace lgsim
