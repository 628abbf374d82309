#pragma once

#include "lgsim/quantum.hpp"

#include <vector>

namespace lgsim {

/// Pseudo-pure decomposition of a single-qubit thermal ensemble state:
/// rho = epsilon * rho_pp + (1 - epsilon) * I/2. When epsilon is zero the
/// Bloch direction is undefined; rho_pp then defaults to |0><0| and the
/// state is flagged degenerate so callers cannot silently trust it.
struct PseudoPureState {
    double epsilon;
    DensityMatrix pure_part;
    bool degenerate = false;

    PseudoPureState(double epsilon, DensityMatrix pure_part,
                    bool degenerate = false);

    DensityMatrix reconstruct() const;
};

/// Thermal-equilibrium parameters of a spin ensemble. Boltzmann's constant
/// is fixed to its CODATA value; the default magnetic moment is the proton
/// value, with an 11.7 T field at room temperature.
struct ThermalParams {
    double magnetic_moment = 1.41060679736e-26;  // J/T, proton
    double field = 11.7;                         // T
    double temperature = 300.0;                  // K
    static constexpr double boltzmann = 1.380649e-23;  // J/K

    ThermalParams() = default;
    ThermalParams(double magnetic_moment, double field, double temperature);
};

/// Hypothetical outcome statistics of one ensemble component pushed through
/// a circuit.
struct ComponentStatistics {
    double p_plus;
    double p_minus;
    double signal;  // <O> for this component alone
};

/// Side-by-side statistics of the pure and identity components of a
/// pseudo-pure ensemble under the same circuit, plus the epsilon-weighted
/// signal an apparatus averaging the whole ensemble would record.
struct FairSamplingReport {
    ComponentStatistics pure_component;
    ComponentStatistics identity_component;
    double weighted_signal;
    bool distributions_differ;
};

/// Splits a single-qubit state into pseudo-pure form: epsilon is the Bloch
/// vector norm and rho_pp the pure state along the Bloch direction.
/// reconstruct() returns the input to within 1e-12.
PseudoPureState decompose(const DensityMatrix& rho);

/// Thermal polarization (1 - alpha) / (1 + alpha) with
/// alpha = exp(-mu B / k T); analytically equal to tanh(mu B / 2 k T).
double thermal_epsilon(const ThermalParams& params);

/// tr(O * reconstruct()) for a traceless dichotomic observable. The
/// identity component contributes exactly zero, so the signal is
/// epsilon * tr(O * rho_pp).
double observable_signal(const PseudoPureState& state, const Observable& obs);

/// Runs `gates` (applied in order) followed by a measurement of `obs`
/// separately on the pure component and on I/2, recording how differently
/// the unobserved identity component would have behaved.
FairSamplingReport fair_sampling_report(const PseudoPureState& state,
                                        const std::vector<Unitary>& gates,
                                        const Observable& obs);

}  // namespace lgsim
