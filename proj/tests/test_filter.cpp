#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "beliefkit/filter.hpp"
#include "beliefkit/model_spec.hpp"

using namespace beliefkit;

namespace {

// identity transition, 0.9 / 0.2 observation channel
MdpiiModel demo_model() { return builtin_model_spec("twostate-demo").model; }

}  // namespace

TEST_CASE("model construction validates its tables") {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});
    const SpacePtr a = make_space("A", {"a1"});

    CHECK_THROWS_AS(
        (void)MdpiiModel::platzman(w, y, a, {JointMeasure(w, y, {0.4, 0.1, 0.1, 0.3})}),
        std::invalid_argument);  // row mass 0.9
    CHECK_THROWS_AS((void)MdpiiModel::platzman(w, y, a, {}), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)MdpiiModel::pomdp2(w, y, a, {Measure::dirac(w, std::size_t{0})},
                                 {Measure(y, {0.9, 0.1}), Measure(y, {0.2, 0.8})}),
        std::invalid_argument);  // p2 table short

    const MdpiiModel m = demo_model();
    CHECK(m.variant() == ModelVariant::Pomdp2);
    CHECK(m.p_row(0, 0, 0).at(0, 0) == doctest::Approx(0.9));
    CHECK(m.p_row(0, 1, 0).at(0, 0) == doctest::Approx(0.9));  // y ignored
    CHECK(m.p2_row(0, 0)[0] == 1.0);
    CHECK(m.q2_row(1, 0)[0] == doctest::Approx(0.2));
    CHECK_THROWS_AS((void)m.p1_row(0, 0), std::domain_error);
    CHECK_THROWS_AS((void)m.p_row(2, 0, 0), std::invalid_argument);
}

TEST_CASE("joint conditional law of belief and observation") {
    const MdpiiModel m = demo_model();
    const Measure z(m.w_space(), {0.5, 0.5});
    const JointMeasure r = r_kernel(m, z, 0, 0);
    CHECK(r.at(0, 0) == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(r.at(0, 1) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(r.at(1, 0) == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(r.at(1, 1) == doctest::Approx(0.40).epsilon(1e-14));
    CHECK(r.mass() == doctest::Approx(1.0));

    // Dirac integration collapses to the kernel row
    const JointMeasure row = r_kernel(m, Measure::dirac(m.w_space(), "w1"), 0, 0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(row.at(i, j) == m.p_row(0, 0, 0).at(i, j));

    // mixture linearity
    const Measure z1(m.w_space(), {0.9, 0.1});
    const Measure z2(m.w_space(), {0.1, 0.9});
    const Measure mix(m.w_space(), {0.9 * 0.25 + 0.1 * 0.75, 0.1 * 0.25 + 0.9 * 0.75});
    const JointMeasure ra = r_kernel(m, z1, 0, 0);
    const JointMeasure rb = r_kernel(m, z2, 0, 0);
    const JointMeasure rm = r_kernel(m, mix, 0, 0);
    for (std::size_t t = 0; t < rm.weights().size(); ++t)
        CHECK(rm.weights()[t] ==
              doctest::Approx(0.25 * ra.weights()[t] + 0.75 * rb.weights()[t])
                  .epsilon(1e-12));

    CHECK_THROWS_AS((void)r_kernel(m, Measure(m.w_space(), {0.5, 0.4}), 0, 0),
                    std::invalid_argument);
}

TEST_CASE("posterior update reproduces the joint-enumeration values") {
    const MdpiiModel m = demo_model();
    const Measure z(m.w_space(), {0.5, 0.5});

    const FilterResult up1 = filter_update(m, z, 0, 0, 0);
    CHECK_FALSE(up1.zero_evidence);
    CHECK(std::abs(up1.posterior[0] - 9.0 / 11.0) <= 1e-12);
    CHECK(std::abs(up1.posterior[1] - 2.0 / 11.0) <= 1e-12);

    const FilterResult up2 = filter_update(m, z, 0, 0, 1);
    CHECK(std::abs(up2.posterior[0] - 1.0 / 9.0) <= 1e-12);
    CHECK(std::abs(up2.posterior[1] - 8.0 / 9.0) <= 1e-12);
}

TEST_CASE("deterministic observation channels give Dirac posteriors") {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});
    const SpacePtr a = make_space("A", {"a1"});
    const MdpiiModel m = MdpiiModel::pomdp2(
        w, y, a, {Measure::dirac(w, std::size_t{0}), Measure::dirac(w, std::size_t{1})},
        {Measure::dirac(y, std::size_t{0}), Measure::dirac(y, std::size_t{1})});
    const Measure z(w, {0.5, 0.5});
    const FilterResult up = filter_update(m, z, 0, 0, 1);
    CHECK(up.posterior[1] == 1.0);

    // an impossible observation: all mass would need to sit on the other atom
    const MdpiiModel drift = MdpiiModel::pomdp2(
        w, y, a, {Measure::dirac(w, std::size_t{0}), Measure::dirac(w, std::size_t{0})},
        {Measure::dirac(y, std::size_t{0}), Measure::dirac(y, std::size_t{1})});
    const FilterResult dead = filter_update(drift, z, 0, 0, 1);
    CHECK(dead.zero_evidence);
    CHECK(dead.posterior[0] == doctest::Approx(0.5));  // uniform reset
    // the zero-evidence atom carries no q mass
    const BeliefAtomDist q = q_eval(drift, z, 0, 0);
    REQUIRE(q.atoms.size() == 1);
    CHECK(q.atoms[0].s2 == 0);
    CHECK(q.atoms[0].mass == doctest::Approx(1.0));
}

TEST_CASE("belief transition atoms and observation marginalization") {
    const MdpiiModel m = demo_model();
    const Measure z(m.w_space(), {0.5, 0.5});
    const BeliefAtomDist q = q_eval(m, z, 0, 0);
    REQUIRE(q.atoms.size() == 2);
    CHECK(q.atoms[0].mass == doctest::Approx(0.55));
    CHECK(q.atoms[1].mass == doctest::Approx(0.45));
    CHECK(q.atoms[0].belief[0] == doctest::Approx(9.0 / 11.0));
    CHECK(q.mass() == doctest::Approx(1.0));

    const BeliefAtomDist qh = q_hat(m, z, 0);
    REQUIRE(qh.atoms.size() == 2);
    CHECK(qh.mass() == doctest::Approx(1.0));

    // distinct observations leading to the same posterior merge in q-hat
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});
    const SpacePtr a = make_space("A", {"a1"});
    const MdpiiModel blind = MdpiiModel::pomdp2(
        w, y, a, {Measure(w, {0.7, 0.3}), Measure(w, {0.7, 0.3})},
        {Measure(y, {0.5, 0.5}), Measure(y, {0.5, 0.5})});
    const BeliefAtomDist merged = q_hat(blind, Measure(w, {0.5, 0.5}), 0);
    REQUIRE(merged.atoms.size() == 1);  // uninformative channel: one belief atom
    CHECK(merged.atoms[0].mass == doctest::Approx(1.0));
    CHECK(merged.atoms[0].belief[0] == doctest::Approx(0.7));

    const MdpiiModel general = MdpiiModel::general(
        w, y, a,
        std::vector<JointMeasure>(4, JointMeasure(w, y, {0.25, 0.25, 0.25, 0.25})));
    CHECK_THROWS_AS((void)q_hat(general, Measure(w, {0.5, 0.5}), 0), std::domain_error);
}

TEST_CASE("filter trajectories") {
    const MdpiiModel m = demo_model();
    const Measure z0(m.w_space(), {0.5, 0.5});

    const BeliefTrajectory empty = run_filter(m, z0, 0, {}, {});
    CHECK(empty.steps.empty());
    CHECK(empty.start.z[0] == 0.5);

    const BeliefTrajectory one = run_filter(m, z0, 0, {0}, {0});
    REQUIRE(one.steps.size() == 1);
    CHECK(std::abs(one.steps[0].posterior[0] - 9.0 / 11.0) <= 1e-12);

    // repeated informative observations: the consistent state's mass climbs
    const BeliefTrajectory rep = run_filter(m, z0, 0, {0, 0, 0, 0}, {0, 0, 0, 0});
    double prev = z0[0];
    for (const auto& step : rep.steps) {
        CHECK(step.posterior[0] >= prev);
        CHECK(step.posterior.is_probability(1e-12));
        prev = step.posterior[0];
    }

    CHECK_THROWS_AS((void)run_filter(m, z0, 0, {0}, {}), std::invalid_argument);
}

TEST_CASE("Bayes reconstruction and the belief-image identity") {
    const MdpiiModel m = demo_model();
    for (double p : {0.5, 0.2, 0.99}) {
        const Measure z(m.w_space(), {p, 1.0 - p});
        CHECK(bayes_reconstruction_error(m, z, 0, 0) <= 1e-12);
        CHECK(q_matches_belief_image(m, z, 0, 0));
    }
}

TEST_CASE("three-way equivalence on parametric composed models") {
    for (GroundTruth truth : {GroundTruth::Continuous, GroundTruth::DiscontinuousAtLimit}) {
        const Pomdp2Instance inst = generate_pomdp2_instance(3, truth);
        MdpciSequence seq{{}, 0.0, {}, Measure(inst.w, {0.6, 0.4}), 0, 0};
        for (std::size_t n = 1; n <= kDefaultSequenceLength; ++n)
            seq.t_terms.push_back(1.0 / double(n));
        seq.z_terms = belief_line(seq.z_limit, Measure(inst.w, {0.2, 0.8}));

        const EquivalenceCheckReport rep = mdpci_equivalence_check(
            inst.model_at, seq, FunctionFamily::discrete_default(inst.w));
        const Verdict expected =
            truth == GroundTruth::Continuous ? Verdict::Pass : Verdict::Fail;
        CHECK(rep.agree);
        CHECK(rep.consensus == expected);
        CHECK(rep.p.verdict == expected);
        CHECK(rep.r.verdict == expected);
        CHECK(rep.q.verdict == expected);
    }
}

TEST_CASE("constant models pass the equivalence check trivially") {
    const MdpiiModel base = demo_model();
    MdpciSequence seq{{}, 0.0, {}, Measure(base.w_space(), {0.5, 0.5}), 0, 0};
    for (std::size_t n = 1; n <= kDefaultSequenceLength; ++n) {
        seq.t_terms.push_back(1.0 / double(n));
        seq.z_terms.push_back(seq.z_limit);
    }
    const EquivalenceCheckReport rep = mdpci_equivalence_check(
        [&](double) { return base; }, seq,
        FunctionFamily::discrete_default(base.w_space()));
    CHECK(rep.agree);
    CHECK(rep.consensus == Verdict::Pass);
}
