#include "lgsim/macrorealist.hpp"

#include <cmath>
#include <stdexcept>

namespace lgsim {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) +
                                    " must lie in [0, 1]");
    }
}

double correlator_from(const std::vector<Trajectory>& trajectories, int k,
                       int m) {
    double c = 0.0;
    for (const Trajectory& t : trajectories) {
        c += t.probability * t.states[k - 1] * t.states[m - 1];
    }
    return c;
}

}  // namespace

TelegraphModel::TelegraphModel(double p_flip_per_step, double initial_prob_up,
                               double invasive_kick)
    : p_flip_per_step(p_flip_per_step),
      initial_prob_up(initial_prob_up),
      invasive_kick(invasive_kick) {
    check_probability(p_flip_per_step, "p_flip_per_step");
    check_probability(initial_prob_up, "initial_prob_up");
    check_probability(invasive_kick, "invasive_kick");
}

CoinWorld::CoinWorld(int face, std::array<double, 2> observer_distribution)
    : face(face), observer_distribution(observer_distribution) {
    if (face != 1 && face != -1) {
        throw std::invalid_argument("CoinWorld: face must be +1 or -1");
    }
    const double sum = observer_distribution[0] + observer_distribution[1];
    if (observer_distribution[0] < 0.0 || observer_distribution[1] < 0.0 ||
        std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "CoinWorld: observer distribution must be nonnegative and sum to 1");
    }
}

std::vector<Trajectory> enumerate_trajectories(
    const TelegraphModel& model, const std::array<bool, 3>& kicked) {
    // Net flip probability over one interval: an invasive kick (if the
    // readout at the interval's start kicked) followed by the telegraph
    // dynamics. Exactly one of the two flips must fire for a net flip.
    auto interval_flip = [&](bool kick_at_start) {
        const double kick = kick_at_start ? model.invasive_kick : 0.0;
        const double p = model.p_flip_per_step;
        return kick * (1.0 - p) + (1.0 - kick) * p;
    };
    const double f1 = interval_flip(kicked[0]);
    const double f2 = interval_flip(kicked[1]);

    std::vector<Trajectory> out;
    out.reserve(8);
    for (int s1 : {+1, -1}) {
        double p1 = s1 == +1 ? model.initial_prob_up
                             : 1.0 - model.initial_prob_up;
        for (int s2 : {+1, -1}) {
            double p2 = s2 == s1 ? 1.0 - f1 : f1;
            for (int s3 : {+1, -1}) {
                double p3 = s3 == s2 ? 1.0 - f2 : f2;
                out.push_back(Trajectory{{s1, s2, s3}, p1 * p2 * p3});
            }
        }
    }
    return out;
}

CorrelatorSet enumerate_k(const TelegraphModel& model) {
    if (model.invasive_kick > 0.0) {
        throw std::invalid_argument(
            "enumerate_k models non-invasive readout; use invasive_k");
    }
    // One joint distribution supplies all three correlators; this is the
    // macrorealist premise that forces K <= 1.
    std::vector<Trajectory> trajectories = enumerate_trajectories(model);
    return CorrelatorSet(correlator_from(trajectories, 1, 2),
                         correlator_from(trajectories, 2, 3),
                         correlator_from(trajectories, 1, 3));
}

CorrelatorSet invasive_k(const TelegraphModel& model) {
    // Pairwise runs: only the measured times kick. The kick trailing the
    // last readout of a run is retained for faithfulness but cannot affect
    // any recorded value.
    auto pair_run = [&](int k, int m) {
        std::array<bool, 3> kicked{false, false, false};
        kicked[k - 1] = true;
        kicked[m - 1] = true;
        return correlator_from(enumerate_trajectories(model, kicked), k, m);
    };
    return CorrelatorSet(pair_run(1, 2), pair_run(2, 3), pair_run(1, 3));
}

std::vector<CoinStep> coin_demo(int n_steps) {
    if (n_steps < 1) {
        throw std::invalid_argument("coin_demo: n_steps must be >= 1");
    }
    // Alice never sees the face; the start value is bookkeeping only.
    const std::array<double, 2> blindfolded{0.5, 0.5};
    std::vector<CoinStep> steps;
    steps.reserve(n_steps);
    int face = +1;
    for (int i = 0; i < n_steps; ++i) {
        CoinWorld before(face, blindfolded);
        face = -face;
        steps.push_back(CoinStep{before, "flip", CoinWorld(face, blindfolded)});
    }
    return steps;
}

}  // namespace lgsim
