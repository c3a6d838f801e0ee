// End-to-end acceptance checks. Each criterion prints exactly one line:
//   criterion <n>: PASS|FAIL — <summary>
// The process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "beliefkit/continuity.hpp"
#include "beliefkit/filter.hpp"
#include "beliefkit/instances.hpp"
#include "beliefkit/model_spec.hpp"

using namespace beliefkit;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::printf("criterion %d: %s — %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

// 1: one-sided TV jumps of the factor kernels, exact harmonic gap of the
// composed kernel, and a PASS verdict at eps 1e-6 with the tail starting at 48
void criterion1() {
    const Example1 e = example1();
    bool ok = true;
    for (std::size_t n = 1; n <= 64; ++n) {
        const double x = 1.0 / double(n);
        ok &= tv_distance_real(e.p2.eval(x), e.p2.eval(0.0)) == 1.0;
        ok &= tv_distance_real(e.q2.eval(-x), e.q2.eval(0.0)) == 1.0;
    }
    const RealFn clip{"clip-abs", 1.0,
                      [](double w) { return std::min(std::abs(w), 1.0); }};
    const GapReport r = suf_gap_real(e.p, harmonic_seq(), clip, GapOptions{1e-6, 1e-3, 48});
    for (std::size_t n = 1; n <= r.gaps.size(); ++n) ok &= r.gaps[n - 1] == 1.0 / double(n);
    ok &= r.verdict == Verdict::Pass;
    report(1, ok, "one-sided TV jumps and exact harmonic gap of the composed kernel");
}

// 2: the identity-revealing kernel fails with a constant unit gap while its
// belief transition stays weakly continuous
void criterion2() {
    const RemarkModel m = remark_model();
    const RealFn one{"one", 1.0, [](double) { return 1.0; }};
    const GapReport suf = suf_gap_real(m.p, harmonic_seq(), one);
    bool ok = suf.verdict == Verdict::Fail;
    for (double g : suf.gaps) ok &= g == 1.0;

    const SpacePtr w = make_space(
        "W", {Point{"0", {0.0}}, Point{"1", {1.0}}}, Metric::Euclidean);
    const std::vector<double> gaps =
        remark_qhat_weak_gaps(Measure(w, {0.5, 0.5}), Measure(w, {0.9, 0.1}));
    ok &= classify_gaps(gaps, GapOptions{}) == Verdict::Pass;
    report(2, ok, "constant unit gap of the kernel, weakly continuous belief transition");
}

// 3: the subset-sum form of the sup equals the exhaustive subset oracle, with
// zero floating-point difference, on 1000 random instances
void criterion3() {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> size1(1, 5), size2(1, 10);
    std::uniform_real_distribution<double> uf(-1.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const GeneratedInstance inst =
            generate_instance(rng(), GroundTruth::Continuous, size1(rng), size2(rng));
        std::vector<double> fv(inst.s1->size());
        for (double& v : fv) v = uf(rng);
        auto f = [&](const Point& p) { return fv[inst.s1->index(p.id)]; };
        const JointMeasure a = inst.eval(0.85), b = inst.eval(0.15);
        std::vector<double> diffs = a.slice_integrals(f);
        const std::vector<double> base = b.slice_integrals(f);
        for (std::size_t j = 0; j < diffs.size(); ++j) diffs[j] -= base[j];
        ok &= signed_sup_gap(diffs) == brute_force_gap(a, b, f);
    }
    report(3, ok, "signed-sum supremum equals the exhaustive subset oracle exactly");
}

// 4-6: verdict agreement across the equivalent conditions, the countable-base
// / conditional-convergence reformulations, and the determining-family check,
// over 100 continuous and 100 discontinuous instances
void criteria456() {
    bool ok4 = true, ok5 = true, ok6 = true;
    const auto seq = instance_sequence();
    for (GroundTruth truth : {GroundTruth::Continuous, GroundTruth::DiscontinuousAtLimit}) {
        const Verdict expected =
            truth == GroundTruth::Continuous ? Verdict::Pass : Verdict::Fail;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const GeneratedInstance inst = generate_instance(seed, truth, 2, 2);
            const SuiteReport suite = equivalence_suite(
                inst.kernel(), seq, FunctionFamily::discrete_default(inst.s1));
            // report order: SufA, WtvB, ClosedC, ContSetD, LscE, MarginalTv,
            // AssumptionKern, AssumptionH, AssumptionM, phi
            for (int i : {0, 1, 2, 3, 4, 5}) ok4 &= suite.reports[i].verdict == expected;
            const Verdict conj = all_of_verdicts(std::vector<Verdict>{
                suite.reports[5].verdict, suite.reports[7].verdict});
            ok5 &= suite.reports[0].verdict == expected;
            ok5 &= suite.reports[6].verdict == expected;
            ok5 &= conj == expected;
            ok5 &= suite.reports[9].verdict == expected;
            ok6 &= suite.reports[8].verdict == suite.reports[0].verdict;
            ok6 &= suite.reports[8].verdict == expected;
        }
    }
    report(4, ok4, "conditions (a)-(e) and marginal TV agree with ground truth, 200/200");
    report(5, ok5, "countable-base and marginal+conditional reformulations agree, 200/200");
    report(6, ok6, "determining-family verdict equals the uniform-set verdict, 200/200");
}

// 7: integrating a kernel against weakly convergent mixing measures preserves
// the verdict in both directions, 50 pairs
void criterion7() {
    bool ok = true;
    for (GroundTruth truth : {GroundTruth::Continuous, GroundTruth::DiscontinuousAtLimit}) {
        const Verdict expected =
            truth == GroundTruth::Continuous ? Verdict::Pass : Verdict::Fail;
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            const PreservationInstance inst = generate_preservation_instance(seed, truth);
            std::vector<Measure> mu_terms;
            std::vector<double> t_terms;
            for (std::size_t n = 1; n <= kDefaultSequenceLength; ++n) {
                const double x = 1.0 / double(n);
                mu_terms.emplace_back(inst.s3,
                                      std::vector<double>{(1.0 - x) * 0.6 + x * 0.25,
                                                          (1.0 - x) * 0.4 + x * 0.75});
                t_terms.push_back(x);
            }
            const PreservationReport rep = preservation_check(
                [&](std::size_t s3, double t) { return inst.xi(s3, t); }, inst.s3,
                mu_terms, Measure(inst.s3, {0.6, 0.4}), t_terms, 0.0,
                FunctionFamily::discrete_default(inst.s1));
            ok &= rep.agree && rep.xi.verdict == expected &&
                  rep.integrated.verdict == expected;
        }
    }
    report(7, ok, "verdict preserved under integration against mixing measures, 50/50");
}

// 8: original kernel, mixed kernel, and belief transition agree on 50
// parametric composed models; Bayes reconstruction and the belief-image
// identity hold exactly on each
void criterion8() {
    bool ok = true;
    for (GroundTruth truth : {GroundTruth::Continuous, GroundTruth::DiscontinuousAtLimit}) {
        const Verdict expected =
            truth == GroundTruth::Continuous ? Verdict::Pass : Verdict::Fail;
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            const Pomdp2Instance inst = generate_pomdp2_instance(seed, truth);
            MdpciSequence seq{{}, 0.0, {}, Measure(inst.w, {0.55, 0.45}), 0, 0};
            for (std::size_t n = 1; n <= kDefaultSequenceLength; ++n)
                seq.t_terms.push_back(1.0 / double(n));
            seq.z_terms = belief_line(seq.z_limit, Measure(inst.w, {0.15, 0.85}));
            const EquivalenceCheckReport rep = mdpci_equivalence_check(
                inst.model_at, seq, FunctionFamily::discrete_default(inst.w));
            ok &= rep.agree && rep.consensus == expected;

            for (double t : {0.0, 0.5}) {
                const MdpiiModel model = inst.model_at(t);
                for (double p : {0.3, 0.8}) {
                    const Measure z(inst.w, {p, 1.0 - p});
                    ok &= bayes_reconstruction_error(model, z, 0, 0) <= 1e-12;
                    ok &= q_matches_belief_image(model, z, 0, 0);
                }
            }
        }
    }
    report(8, ok, "P, R, q verdicts agree on 50 models; Bayes and belief-image exact");
}

// 9: on product-form families, the joint verdict equals the conjunction of
// the transition's weak continuity and the observation channel's TV
// continuity, both directions, 4 x 25 seeds
void criterion9() {
    bool ok = true;
    const RealSeq seq = harmonic_seq();
    for (int combo = 0; combo < 4; ++combo) {
        const bool p1_weak = combo & 1;
        const bool q1_tv = combo & 2;
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            const Pomdp1Family fam = make_pomdp1_family(seed, p1_weak, q1_tv);
            const Verdict joint = suf_gap_real_family(fam.p, seq).verdict;
            const Verdict expected =
                (p1_weak && q1_tv) ? Verdict::Pass : Verdict::Fail;
            ok &= joint == expected;
            ok &= classify_gaps(pomdp1_p1_weak_gaps(fam, seq), GapOptions{}) ==
                  (p1_weak ? Verdict::Pass : Verdict::Fail);
            ok &= classify_gaps(pomdp1_q1_tv_gaps(fam, seq), GapOptions{}) ==
                  (q1_tv ? Verdict::Pass : Verdict::Fail);
        }
    }
    report(9, ok, "joint verdict equals weak(P1) AND tv(Q1) on 100 toggled families");
}

// 10: two-state demo posterior after observing y1
void criterion10() {
    const ModelSpec spec = builtin_model_spec("twostate-demo");
    const FilterResult up = filter_update(spec.model, spec.prior, 0, 0, 0);
    const bool ok = !up.zero_evidence &&
                    std::abs(up.posterior[0] - 9.0 / 11.0) <= 1e-12 &&
                    std::abs(up.posterior[1] - 2.0 / 11.0) <= 1e-12;
    report(10, ok, "two-state posterior equals {9/11, 2/11} to 1e-12");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criteria456();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("%d/10 criteria passed in %lld ms\n", 10 - failures,
                static_cast<long long>(dt));
    return failures == 0 ? 0 : 1;
}
