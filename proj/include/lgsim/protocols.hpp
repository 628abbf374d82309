#pragma once

#include "lgsim/quantum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lgsim {

/// The three two-time correlators of the Leggett-Garg test. K is derived,
/// recomputed on every access, never stored.
struct CorrelatorSet {
    double c12;
    double c23;
    double c13;

    CorrelatorSet(double c12, double c23, double c13);

    double k() const { return c12 + c23 - c13; }
};

/// Shared configuration of the three-time protocols. The single angle theta
/// parameterises the evolution over each of the two equal intervals
/// t2 - t1 = t3 - t2; the state is evolved by u_theta(theta) per interval.
struct ProtocolConfig {
    double theta;
    DensityMatrix initial_state;
    Observable observable;

    explicit ProtocolConfig(double theta,
                            DensityMatrix initial_state = maximally_mixed(),
                            Observable observable = sigma_z_observable());
};

/// Bloch-vector record of how one step of the measurement interaction moves
/// a state relative to the interaction-free evolution. "Before" and "after"
/// refer to switching the coupling on, not to time: bloch_before is the
/// state evolved with no coupling, bloch_after the state that went through
/// the coupled circuit over the same interval.
struct PerturbationReport {
    std::string input_label;
    std::array<double, 3> bloch_before;
    std::array<double, 3> bloch_after;
    std::array<double, 3> displacement;  // after - before

    PerturbationReport(std::string label, std::array<double, 3> before,
                       std::array<double, 3> after);
};

/// One post-selected half of an ideal-negative-result measurement, exposed
/// for inspection and tests.
struct InrmSubExperiment {
    int coupled_state;            // basis state that would flip the probe
    int inferred_outcome;         // observable value assigned to kept runs
    double kept_probability;      // probe did not flip
    double probe_flip_probability;
    double conditional_expectation;  // <O(t_m)> over kept runs
};

enum class Engine { separate, simultaneous, inrm };

enum class AncillaReadout { sigma_x, sigma_y };

/// <O(t_k) O(t_m)> from the separate-run protocol: evolve to t_k, measure O
/// projectively (both branches followed exactly), evolve each branch to t_m,
/// measure again. Nothing touches the state at the unprobed intermediate
/// time; each correlator is its own experiment. Requires 1 <= k < m <= 3.
double correlator_separate(const ProtocolConfig& config, int k, int m);

/// The three separate-run correlators and K. For the default config
/// (initial I/2, O = sigma_z) this equals K(theta) = 2cos2θ - cos4θ.
CorrelatorSet k_statistic_separate(const ProtocolConfig& config);

/// All three correlators from one run of the four-qubit circuit: three
/// ancillas in |+>, a pair of controlled-phase gates at each of t1, t2, t3
/// (ancilla 1 couples at t1,t2; ancilla 2 at t2,t3; ancilla 3 at t1,t3),
/// u_theta(theta) on the system between instants. C12, C23, C13 are read
/// out as <sigma_x> of ancillas 1, 2, 3 on the same final state. Requires
/// O = sigma_z; readout basis is sigma_x unless overridden.
CorrelatorSet simultaneous_circuit(
    const ProtocolConfig& config,
    AncillaReadout readout = AncillaReadout::sigma_x);

/// <O(t_k) O(t_m)> with the t_k measurement replaced by an ideal-negative-
/// result scheme: a probe qubit is coupled by a one-sided controlled-NOT
/// (the probe flips only if the system occupies the coupled state) and only
/// no-flip runs are kept. The two sub-experiments (couple to each basis
/// state) are weighted by their kept-run probabilities so together they
/// reconstruct the full correlator. The t_m measurement is projective.
double inrm_correlator(const ProtocolConfig& config, int k, int m);

/// Per-sub-experiment breakdown backing inrm_correlator.
std::pair<InrmSubExperiment, InrmSubExperiment> inrm_details(
    const ProtocolConfig& config, int k, int m);

/// Pushes |0>, |1> and I/2 through one step of the scattering interaction
/// (ancilla |+>, controlled-phase, u_theta(theta), controlled-phase, trace
/// out the ancilla) and reports each system Bloch vector against the
/// interaction-free evolution over the same interval. The displacements of
/// |0> and |1> are equal and opposite; I/2 does not move at all.
std::array<PerturbationReport, 3> invasiveness_demo(double theta);

/// Evaluates the chosen engine at every grid point, in grid order.
std::vector<std::pair<double, CorrelatorSet>> sweep_k(
    const std::vector<double>& theta_grid, Engine engine);

/// Monte Carlo estimate of correlator_separate with `shots` sampled runs.
/// Optional layer on top of the exact engine; deterministic for a fixed
/// seed state.
double sample_correlator_separate(const ProtocolConfig& config, int k, int m,
                                  std::uint64_t shots, std::uint64_t seed);

}  // namespace lgsim
