#include "lgsim/protocols.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lgsim {

namespace {

void check_time_indices(int k, int m) {
    if (k < 1 || m > 3 || k >= m) {
        throw std::invalid_argument(
            "time indices must satisfy 1 <= k < m <= 3");
    }
}

void check_single_qubit_config(const ProtocolConfig& config) {
    if (config.initial_state.dim() != 2 || config.observable.dim() != 2) {
        throw std::invalid_argument(
            "protocol expects a single-qubit state and observable");
    }
}

bool is_sigma_z(const Observable& obs) {
    return obs.dim() == 2 && approx_equal(obs.matrix(), pauli_z());
}

DensityMatrix evolve(const DensityMatrix& rho, double theta, int steps) {
    if (steps == 0) return rho;
    return apply(u_theta(theta * steps), rho);
}

}  // namespace

CorrelatorSet::CorrelatorSet(double c12, double c23, double c13)
    : c12(c12), c23(c23), c13(c13) {
    for (double c : {c12, c23, c13}) {
        if (std::abs(c) > 1.0 + kTolStatistic) {
            throw std::invalid_argument(
                "CorrelatorSet: correlator outside [-1, 1]");
        }
    }
}

ProtocolConfig::ProtocolConfig(double theta, DensityMatrix initial_state,
                               Observable observable)
    : theta(theta),
      initial_state(std::move(initial_state)),
      observable(std::move(observable)) {
    if (this->initial_state.dim() != this->observable.dim()) {
        throw std::invalid_argument(
            "ProtocolConfig: state and observable dimensions differ");
    }
}

PerturbationReport::PerturbationReport(std::string label,
                                       std::array<double, 3> before,
                                       std::array<double, 3> after)
    : input_label(std::move(label)),
      bloch_before(before),
      bloch_after(after),
      displacement{after[0] - before[0], after[1] - before[1],
                   after[2] - before[2]} {
    auto norm = [](const std::array<double, 3>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    if (norm(before) > 1.0 + kTolStatistic ||
        norm(after) > 1.0 + kTolStatistic) {
        throw std::invalid_argument(
            "PerturbationReport: Bloch vector norm exceeds 1");
    }
}

double correlator_separate(const ProtocolConfig& config, int k, int m) {
    check_time_indices(k, m);
    DensityMatrix at_tk = evolve(config.initial_state, config.theta, k - 1);
    auto [plus, minus] = measure(config.observable, at_tk);

    double correlator = 0.0;
    for (const MeasurementRecord& rec : {plus, minus}) {
        if (rec.probability <= kTolAlgebra) continue;
        DensityMatrix at_tm = evolve(rec.post_state, config.theta, m - k);
        correlator += rec.probability * rec.outcome *
                      expectation(config.observable, at_tm);
    }
    return correlator;
}

CorrelatorSet k_statistic_separate(const ProtocolConfig& config) {
    return CorrelatorSet(correlator_separate(config, 1, 2),
                         correlator_separate(config, 2, 3),
                         correlator_separate(config, 1, 3));
}

CorrelatorSet simultaneous_circuit(const ProtocolConfig& config,
                                   AncillaReadout readout) {
    check_single_qubit_config(config);
    if (!is_sigma_z(config.observable)) {
        throw std::invalid_argument(
            "simultaneous_circuit: construction requires O = sigma_z");
    }

    // Register layout: qubit 0 system, qubits 1..3 ancillas for C12, C23,
    // C13. Every ancilla starts in |+>.
    const int n = 4;
    DensityMatrix reg = tensor(
        tensor(tensor(config.initial_state, plus_density()), plus_density()),
        plus_density());

    const Unitary step = embed(u_theta(config.theta), 0, n);
    const Unitary cz1 = controlled_phase(0, 1, n);
    const Unitary cz2 = controlled_phase(0, 2, n);
    const Unitary cz3 = controlled_phase(0, 3, n);

    // t1: ancillas 1 and 3; t2: ancillas 1 and 2; t3: ancillas 2 and 3.
    const Unitary circuit = cz3 * cz2 * step * cz2 * cz1 * step * cz3 * cz1;
    DensityMatrix final_state = apply(circuit, reg);

    const Observable probe = readout == AncillaReadout::sigma_x
                                 ? sigma_x_observable()
                                 : Observable(pauli_y());
    auto read = [&](int ancilla) {
        return expectation(probe, partial_trace(final_state, {ancilla}));
    };
    return CorrelatorSet(read(1), read(2), read(3));
}

std::pair<InrmSubExperiment, InrmSubExperiment> inrm_details(
    const ProtocolConfig& config, int k, int m) {
    check_time_indices(k, m);
    check_single_qubit_config(config);

    // Work in the eigenbasis of the observable so the probe couples to a
    // definite eigenstate even for O != sigma_z. Columns of V are the +1 and
    // -1 eigenvectors.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        config.observable.matrix());
    if (std::abs(solver.eigenvalues()(0) + 1.0) > kTolStatistic ||
        std::abs(solver.eigenvalues()(1) - 1.0) > kTolStatistic) {
        throw std::invalid_argument(
            "inrm: observable must have one +1 and one -1 eigenstate");
    }
    ComplexMatrix basis(2, 2);  // column 0 <-> outcome +1
    basis.col(0) = solver.eigenvectors().col(1);
    basis.col(1) = solver.eigenvectors().col(0);

    DensityMatrix at_tk = evolve(config.initial_state, config.theta, k - 1);

    auto run_sub = [&](int coupled_state) {
        // Probe W |0> on qubit 1; one-sided CNOT in the observable
        // eigenbasis flips it only when the system sits in `coupled_state`.
        DensityMatrix joint = tensor(at_tk, ket0_density());
        Unitary basis_change = tensor(Unitary(basis), identity_gate(1));
        Unitary coupling = basis_change *
                           controlled_not(0, 1, 2, coupled_state) *
                           basis_change.adjoint();
        DensityMatrix coupled = apply(coupling, joint);

        Observable probe_z(
            tensor(identity_gate(1), Unitary(pauli_z())).matrix());
        auto [no_flip, flip] = measure(probe_z, coupled);

        // Keeping only no-flip runs means the system was not in the coupled
        // state, so the inferred outcome is the other eigenvalue.
        const int inferred = coupled_state == 0 ? -1 : +1;
        DensityMatrix system_kept = partial_trace(no_flip.post_state, {0});
        DensityMatrix at_tm = evolve(system_kept, config.theta, m - k);
        double conditional = expectation(config.observable, at_tm);
        return InrmSubExperiment{coupled_state, inferred, no_flip.probability,
                                 flip.probability, conditional};
    };

    // Couple to the -1 eigenstate to certify +1 outcomes, and vice versa.
    return {run_sub(1), run_sub(0)};
}

double inrm_correlator(const ProtocolConfig& config, int k, int m) {
    auto [keep_plus, keep_minus] = inrm_details(config, k, m);
    return keep_plus.kept_probability * keep_plus.inferred_outcome *
               keep_plus.conditional_expectation +
           keep_minus.kept_probability * keep_minus.inferred_outcome *
               keep_minus.conditional_expectation;
}

std::array<PerturbationReport, 3> invasiveness_demo(double theta) {
    const Unitary free_step = u_theta(theta);
    const Unitary step2 = embed(u_theta(theta), 0, 2);
    const Unitary cz = controlled_phase(0, 1, 2);
    const Unitary interaction = cz * step2 * cz;

    auto report = [&](const DensityMatrix& input, std::string label) {
        DensityMatrix free_evolved = apply(free_step, input);
        DensityMatrix coupled = partial_trace(
            apply(interaction, tensor(input, plus_density())), {0});
        return PerturbationReport(std::move(label), bloch_vector(free_evolved),
                                  bloch_vector(coupled));
    };

    return {report(ket0_density(), "|0>"), report(ket1_density(), "|1>"),
            report(maximally_mixed(), "I/2")};
}

std::vector<std::pair<double, CorrelatorSet>> sweep_k(
    const std::vector<double>& theta_grid, Engine engine) {
    if (theta_grid.empty()) {
        throw std::invalid_argument("sweep_k: empty theta grid");
    }
    std::vector<std::pair<double, CorrelatorSet>> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        ProtocolConfig config(theta);
        switch (engine) {
            case Engine::separate:
                out.emplace_back(theta, k_statistic_separate(config));
                break;
            case Engine::simultaneous:
                out.emplace_back(theta, simultaneous_circuit(config));
                break;
            case Engine::inrm:
                out.emplace_back(theta,
                                 CorrelatorSet(inrm_correlator(config, 1, 2),
                                               inrm_correlator(config, 2, 3),
                                               inrm_correlator(config, 1, 3)));
                break;
        }
    }
    return out;
}

double sample_correlator_separate(const ProtocolConfig& config, int k, int m,
                                  std::uint64_t shots, std::uint64_t seed) {
    check_time_indices(k, m);
    if (shots == 0) {
        throw std::invalid_argument("sample_correlator_separate: zero shots");
    }
    std::mt19937_64 rng(seed);
    // Canonical [0,1) doubles, bit-reproducible across platforms.
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    DensityMatrix at_tk = evolve(config.initial_state, config.theta, k - 1);
    auto [plus, minus] = measure(config.observable, at_tk);

    double pm_given_plus = 0.0, pm_given_minus = 0.0;
    if (plus.probability > kTolAlgebra) {
        DensityMatrix at_tm = evolve(plus.post_state, config.theta, m - k);
        pm_given_plus = measure(config.observable, at_tm).first.probability;
    }
    if (minus.probability > kTolAlgebra) {
        DensityMatrix at_tm = evolve(minus.post_state, config.theta, m - k);
        pm_given_minus = measure(config.observable, at_tm).first.probability;
    }

    std::int64_t sum = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        bool first_plus = uniform() < plus.probability;
        double p_plus_second = first_plus ? pm_given_plus : pm_given_minus;
        bool second_plus = uniform() < p_plus_second;
        sum += (first_plus == second_plus) ? 1 : -1;
    }
    return static_cast<double>(sum) / static_cast<double>(shots);
}

}  // namespace lgsim
