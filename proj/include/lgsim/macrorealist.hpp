#pragma once

#include "lgsim/protocols.hpp"

#include <array>
#include <string>
#include <vector>

namespace lgsim {

/// Two-state stochastic (telegraph) model of a macrorealist system. The
/// hidden state is +1 or -1 at every instant; between consecutive
/// measurement times it flips with probability p_flip_per_step. A readout
/// reports the hidden state faithfully and, in the invasive variant, then
/// flips it with probability invasive_kick.
struct TelegraphModel {
    double p_flip_per_step;
    double initial_prob_up;
    double invasive_kick = 0.0;

    TelegraphModel(double p_flip_per_step, double initial_prob_up,
                   double invasive_kick = 0.0);
};

/// One classical history: the hidden state at (t1, t2, t3) and its
/// probability under the model.
struct Trajectory {
    std::array<int, 3> states;  // each +1 or -1
    double probability;
};

/// Alice's blindfolded coin: the physical face and her subjective state
/// ascription, which flipping the coin never updates.
struct CoinWorld {
    int face;  // +1 heads, -1 tails
    std::array<double, 2> observer_distribution;  // (p_heads, p_tails)

    CoinWorld(int face, std::array<double, 2> observer_distribution);
};

struct CoinStep {
    CoinWorld before;
    std::string operation;
    CoinWorld after;
};

/// All 8 hidden-state histories over (t1, t2, t3). `kicked` marks the times
/// whose readout is followed by an invasive_kick flip; probabilities sum
/// to 1.
std::vector<Trajectory> enumerate_trajectories(
    const TelegraphModel& model, const std::array<bool, 3>& kicked = {
                                     false, false, false});

/// Exact K for the non-invasive model: every correlator is taken from the
/// same exhaustively enumerated trajectory ensemble, which is why K <= 1
/// holds for every parameter choice. Rejects invasive_kick > 0.
CorrelatorSet enumerate_k(const TelegraphModel& model);

/// Same enumeration, but each correlator comes from its own pairwise run in
/// which every readout kicks the hidden state with probability
/// invasive_kick. C13 has no intermediate measurement, so its run carries
/// no t2 kick; this mismatch is what lets a clumsy classical model exceed
/// K = 1.
CorrelatorSet invasive_k(const TelegraphModel& model);

/// Alternates coin flips with observer-state reports: the hidden face
/// toggles every step while the observer distribution stays (1/2, 1/2).
std::vector<CoinStep> coin_demo(int n_steps);

}  // namespace lgsim
