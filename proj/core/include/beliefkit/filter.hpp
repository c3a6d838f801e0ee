#pragma once

#include <cstdint>
#include <optional>

#include "beliefkit/continuity.hpp"
#include "beliefkit/instances.hpp"
#include "beliefkit/kernel.hpp"
#include "beliefkit/measure.hpp"

namespace beliefkit {

// Model with hidden states W, observations Y, actions A. The one-step kernel
// P on W x Y is conditioned on (w, y, a) in general; the Platzman variant and
// the two POMDP factorizations drop the dependence on the current
// observation.
enum class ModelVariant { General, Platzman, Pomdp1, Pomdp2 };

std::string to_string(ModelVariant v);
ModelVariant variant_from_string(const std::string& s);

class MdpiiModel {
  public:
    /// Joint rows indexed (w, y, a).
    static MdpiiModel general(SpacePtr w, SpacePtr y, SpacePtr a,
                              std::vector<JointMeasure> rows);
    /// Joint rows indexed (w, a); the current observation is ignored.
    static MdpiiModel platzman(SpacePtr w, SpacePtr y, SpacePtr a,
                               std::vector<JointMeasure> rows);
    /// Product factorization: P1 rows on W and Q1 rows on Y, both indexed
    /// (w, a); the observation is drawn given the current hidden state.
    static MdpiiModel pomdp1(SpacePtr w, SpacePtr y, SpacePtr a,
                             std::vector<Measure> p1_rows, std::vector<Measure> q1_rows);
    /// Composed factorization: P2 rows on W indexed (w, a) and Q2 rows on Y
    /// indexed (w_next, a); the observation is drawn given the next state.
    static MdpiiModel pomdp2(SpacePtr w, SpacePtr y, SpacePtr a,
                             std::vector<Measure> p2_rows, std::vector<Measure> q2_rows);

    const SpacePtr& w_space() const { return w_; }
    const SpacePtr& y_space() const { return y_; }
    const SpacePtr& a_space() const { return a_; }
    ModelVariant variant() const { return variant_; }

    /// P(. | w, y, a); Platzman-family variants ignore y.
    const JointMeasure& p_row(std::size_t w, std::size_t y, std::size_t a) const;

    // Factor rows, available only on the matching variant.
    const Measure& p1_row(std::size_t w, std::size_t a) const;
    const Measure& q1_row(std::size_t w, std::size_t a) const;
    const Measure& p2_row(std::size_t w, std::size_t a) const;
    const Measure& q2_row(std::size_t w_next, std::size_t a) const;

  private:
    MdpiiModel() = default;
    void validate_rows() const;

    SpacePtr w_, y_, a_;
    ModelVariant variant_ = ModelVariant::General;
    std::vector<JointMeasure> p_rows_;  // (w*|Y| + y)*|A| + a, or (w*|A| + a)
    std::vector<Measure> f1_rows_;      // P1 or P2, indexed w*|A| + a
    std::vector<Measure> f2_rows_;      // Q1 (w*|A| + a) or Q2 (w_next*|A| + a)
};

/// R(B x C | z, y, a) = sum_w z({w}) P(B x C | w, y, a): the joint law of the
/// next hidden state and observation under belief z. Linear in z.
JointMeasure r_kernel(const MdpiiModel& model, const Measure& z, std::size_t y,
                      std::size_t a);

struct FilterResult {
    Measure posterior;
    bool zero_evidence;  // observation had zero predictive mass
};

/// Bayes update: the conditional of R at the observed y_next. When the
/// evidence mass is zero the posterior is set to uniform and flagged; the
/// convention never affects q because the corresponding atom carries no mass.
FilterResult filter_update(const MdpiiModel& model, const Measure& z, std::size_t y,
                           std::size_t a, std::size_t y_next);

/// Distribution of the next belief-MDP state (posterior, y_next): the
/// belief-image of R.
BeliefAtomDist q_eval(const MdpiiModel& model, const Measure& z, std::size_t y,
                      std::size_t a);

/// Observation-marginalized belief transition: atoms of q merged across y by
/// canonical belief key. Defined only when P does not depend on the current
/// observation; throws std::domain_error on the general variant.
BeliefAtomDist q_hat(const MdpiiModel& model, const Measure& z, std::size_t a);

struct BeliefState {
    Measure z;
    std::size_t y;  // most recent observation index
};

struct TrajectoryStep {
    std::size_t action;
    std::size_t observation;
    Measure posterior;
    bool zero_evidence;
};

struct BeliefTrajectory {
    BeliefState start;
    std::vector<TrajectoryStep> steps;
};

/// Iterates filter_update over equal-length action and observation lists.
BeliefTrajectory run_filter(const MdpiiModel& model, const Measure& z0, std::size_t y0,
                            const std::vector<std::size_t>& actions,
                            const std::vector<std::size_t>& observations);

/// Max atom error of the tower identity
/// sum_{y'} R(W x {y'}) H({w'} | y') = R({w'} x Y); zero-evidence
/// observations contribute nothing.
double bayes_reconstruction_error(const MdpiiModel& model, const Measure& z, std::size_t y,
                                  std::size_t a);

/// True when the explicit Bayes construction of q (posterior per observation,
/// weighted by evidence) matches the belief image of R atom for atom:
/// identical keys, s2 indices, and masses.
bool q_matches_belief_image(const MdpiiModel& model, const Measure& z, std::size_t y,
                            std::size_t a);

// ---------------------------------------------------------------------------
// Parametric models and the three-way equivalence diagnostic: the original
// kernel P, the mixed kernel R, and the belief transition q are semi-uniform
// Feller together.

/// One diagnostic sequence: model parameter t_n -> t_limit together with a
/// belief sequence z_n -> z_limit at fixed (y, a).
struct MdpciSequence {
    std::vector<double> t_terms;
    double t_limit;
    std::vector<Measure> z_terms;
    Measure z_limit;
    std::size_t y = 0;
    std::size_t a = 0;
};

/// Straight-line belief mixtures z_n = (1 - 1/n) z_to + (1/n) z_from.
std::vector<Measure> belief_line(const Measure& z_to, const Measure& z_from,
                                 std::size_t len = kDefaultSequenceLength);

struct EquivalenceCheckReport {
    GapReport p;  // worst over Dirac beliefs, determining family on W
    GapReport r;  // along the (z_n, t_n) sequence
    GapReport q;  // belief-valued, distance-to-net family on P(W)
    bool agree = false;
    Verdict consensus = Verdict::Inconclusive;
};

EquivalenceCheckReport mdpci_equivalence_check(
    const std::function<MdpiiModel(double)>& model_at, const MdpciSequence& seq,
    const FunctionFamily& w_family, const GapOptions& opt = {});

/// Random two-state / two-observation parametric model in the composed
/// (next-state observation) form. Continuous instances are constant in t;
/// discontinuous instances jump at t = 0 with the observation marginal
/// shifted by 0.12 uniformly in the hidden state, so P, R and q all fail
/// together.
struct Pomdp2Instance {
    std::function<MdpiiModel(double)> model_at;
    GroundTruth truth;
    SpacePtr w, y, a;
};
Pomdp2Instance generate_pomdp2_instance(std::uint64_t seed, GroundTruth truth);

}  // namespace beliefkit
