#include "doctest.h"

#include <stdexcept>

#include "beliefkit/kernel.hpp"

using namespace beliefkit;

namespace {

// the two-state joint used throughout: identity transition, 0.9 / 0.2 channel,
// uniform prior
JointMeasure demo_joint() {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});
    return JointMeasure(w, y, {0.45, 0.05, 0.10, 0.40});
}

}  // namespace

TEST_CASE("disintegration of the two-state joint") {
    const JointMeasure jm = demo_joint();
    const Disintegration d = disintegrate(jm);

    CHECK(d.marginal[0] == doctest::Approx(0.55));
    CHECK(d.marginal[1] == doctest::Approx(0.45));
    CHECK(d.conditional[0][0] == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
    CHECK(d.conditional[0][1] == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
    CHECK(d.conditional[1][0] == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(d.conditional[1][1] == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK_FALSE(d.null_atom[0]);
    CHECK_FALSE(d.null_atom[1]);

    const JointMeasure back = reconstruct(d, jm.s1(), jm.s2());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(back.at(i, j) == doctest::Approx(jm.at(i, j)).epsilon(1e-14));
}

TEST_CASE("zero-mass columns get the uniform conditional and a flag") {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});
    const JointMeasure jm(w, y, {0.6, 0.0, 0.4, 0.0});
    const Disintegration d = disintegrate(jm);
    CHECK(d.null_atom[1]);
    CHECK(d.conditional[1][0] == doctest::Approx(0.5));
    // reconstruction drops nothing because the column had no mass
    const JointMeasure back = reconstruct(d, w, y);
    CHECK(back.at(0, 1) == 0.0);
    CHECK(back.mass() == doctest::Approx(1.0));
}

TEST_CASE("belief image of the joint kernel") {
    const BeliefAtomDist phi = belief_kernel_phi(demo_joint());
    REQUIRE(phi.atoms.size() == 2);
    CHECK(phi.atoms[0].s2 == 0);
    CHECK(phi.atoms[0].mass == doctest::Approx(0.55));
    CHECK(phi.atoms[0].belief[0] == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
    CHECK(phi.atoms[1].s2 == 1);
    CHECK(phi.atoms[1].mass == doctest::Approx(0.45));
    CHECK(phi.atoms[1].belief[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(phi.mass() == doctest::Approx(1.0));
    CHECK(phi.atoms[0].key == phi.atoms[0].belief.canonical_key());

    const Measure marg = phi.marginal_s2(demo_joint().s2());
    CHECK(marg[0] == doctest::Approx(0.55));
}

TEST_CASE("belief image skips uncharged observation atoms") {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});
    const BeliefAtomDist phi = belief_kernel_phi(JointMeasure(w, y, {0.6, 0.0, 0.4, 0.0}));
    REQUIRE(phi.atoms.size() == 1);
    CHECK(phi.atoms[0].s2 == 0);
    CHECK(phi.atoms[0].mass == doctest::Approx(1.0));
}

TEST_CASE("kernel integration against a mixing measure") {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1"});
    const SpacePtr s3 = make_space("S3", {"m1", "m2"});
    const JointMeasure xi0(w, y, {1.0, 0.0});
    const JointMeasure xi1(w, y, {0.0, 1.0});
    auto xi = [&](std::size_t k) { return k == 0 ? xi0 : xi1; };

    const JointMeasure mixed = integrate_kernel(xi, Measure(s3, {0.3, 0.7}));
    CHECK(mixed.at(0, 0) == doctest::Approx(0.3));
    CHECK(mixed.at(1, 0) == doctest::Approx(0.7));

    CHECK_THROWS_AS((void)integrate_kernel(xi, Measure(s3, {0.3, 0.3})),
                    std::invalid_argument);
}

TEST_CASE("product and composed joint rows") {
    const SpacePtr w = make_space("W", {"w1", "w2"});
    const SpacePtr y = make_space("Y", {"y1", "y2"});

    const JointMeasure prod =
        product_pomdp1_row(Measure(w, {0.6, 0.4}), Measure(y, {0.9, 0.1}));
    CHECK(prod.at(0, 0) == doctest::Approx(0.54));
    CHECK(prod.at(1, 1) == doctest::Approx(0.04));

    const std::vector<Measure> q2 = {Measure(y, {0.9, 0.1}), Measure(y, {0.2, 0.8})};
    const JointMeasure comp = compose_pomdp2_row(
        Measure(w, {0.5, 0.5}), [&](std::size_t i) -> const Measure& { return q2[i]; });
    CHECK(comp.at(0, 0) == doctest::Approx(0.45));
    CHECK(comp.at(0, 1) == doctest::Approx(0.05));
    CHECK(comp.at(1, 0) == doctest::Approx(0.10));
    CHECK(comp.at(1, 1) == doctest::Approx(0.40));
}
