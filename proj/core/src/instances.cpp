#include "beliefkit/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace beliefkit {

namespace {

// per-s2-coordinate integrals of f over s1 atoms
std::map<double, double> real_slice_integrals(const RealJoint& jm,
                                              const std::function<double(double)>& f) {
    std::map<double, double> out;
    for (const auto& a : jm) out[a.s2] += f(a.s1) * a.mass;
    return out;
}

std::vector<double> merge_diffs(const std::map<double, double>& a,
                                const std::map<double, double>& b) {
    std::map<double, double> d = a;
    for (const auto& [k, v] : b) d[k] -= v;
    std::vector<double> out;
    out.reserve(d.size());
    for (const auto& [k, v] : d) out.push_back(v);
    return out;
}

}  // namespace

std::vector<RealFn> real_test_family() {
    return {
        {"one", 1.0, [](double) { return 1.0; }},
        {"clip-abs", 1.0, [](double w) { return std::min(std::abs(w), 1.0); }},
        {"atan", 1.5707963267948966, [](double w) { return std::atan(w); }},
    };
}

RealSeq harmonic_seq(double scale, std::size_t len, double limit) {
    RealSeq s;
    s.terms.reserve(len);
    for (std::size_t n = 1; n <= len; ++n) s.terms.push_back(scale / double(n));
    s.limit = limit;
    return s;
}

GapReport suf_gap_real(const RealKernel& k, const RealSeq& seq, const RealFn& f,
                       const GapOptions& opt) {
    const auto base = real_slice_integrals(k.eval(seq.limit), f.f);
    std::vector<double> gaps;
    gaps.reserve(seq.terms.size());
    for (double t : seq.terms) {
        const auto cur = real_slice_integrals(k.eval(t), f.f);
        gaps.push_back(one_sided_gap(merge_diffs(cur, base), GapSide::TwoSided));
    }
    return make_report(ConditionId::SufA, f.name, std::move(gaps), opt);
}

GapReport suf_gap_real_family(const RealKernel& k, const RealSeq& seq,
                              const GapOptions& opt) {
    std::vector<Verdict> vs;
    std::vector<double> gaps;
    for (const RealFn& f : real_test_family()) {
        GapReport r = suf_gap_real(k, seq, f, opt);
        vs.push_back(r.verdict);
        if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
        for (std::size_t i = 0; i < gaps.size(); ++i) gaps[i] = std::max(gaps[i], r.gaps[i]);
    }
    GapReport out = make_report(ConditionId::SufA, "real test family", std::move(gaps), opt);
    out.verdict = all_of_verdicts(vs);
    return out;
}

double tv_distance_real(const RealJoint& a, const RealJoint& b) {
    std::map<std::pair<double, double>, double> d;
    for (const auto& x : a) d[{x.s1, x.s2}] += x.mass;
    for (const auto& x : b) d[{x.s1, x.s2}] -= x.mass;
    double pos = 0.0, neg = 0.0;
    for (const auto& [k, v] : d) {
        if (v > 0.0) pos += v;
        else neg -= v;
    }
    return std::max(pos, neg);
}

bool IntervalUnion::contains(double x) const {
    for (const auto& [lo, hi] : intervals)
        if (x >= lo && x < hi) return true;
    return false;
}

bool IntervalUnion::boundary_contains(double x) const {
    for (const auto& [lo, hi] : intervals)
        if (x == lo || x == hi) return true;
    return false;
}

std::string IntervalUnion::describe() const {
    std::ostringstream os;
    for (const auto& [lo, hi] : intervals) os << "[" << lo << "," << hi << ")";
    return os.str();
}

GapReport set_gap_real(const RealKernel& k, const RealSeq& seq, ConditionId cond,
                       const IntervalUnion& on_s1, const GapOptions& opt) {
    const RealJoint lim = k.eval(seq.limit);
    if (cond == ConditionId::ContSetD) {
        double boundary_mass = 0.0;
        for (const auto& a : lim)
            if (on_s1.boundary_contains(a.s1)) boundary_mass += a.mass;
        if (boundary_mass != 0.0)
            throw std::invalid_argument(
                "boundary-null certificate failed for witness " + on_s1.describe());
    }
    GapSide side;
    switch (cond) {
        case ConditionId::WtvB: side = GapSide::NegPart; break;
        case ConditionId::ClosedC: side = GapSide::PosPart; break;
        case ConditionId::ContSetD: side = GapSide::TwoSided; break;
        case ConditionId::MarginalTv: side = GapSide::TwoSided; break;
        default:
            throw std::invalid_argument("set_gap_real supports set-based conditions only");
    }
    auto indicator = [&](double s1) {
        return cond == ConditionId::MarginalTv ? 1.0 : (on_s1.contains(s1) ? 1.0 : 0.0);
    };
    const auto base = real_slice_integrals(lim, indicator);
    std::vector<double> gaps;
    for (double t : seq.terms) {
        const auto cur = real_slice_integrals(k.eval(t), indicator);
        gaps.push_back(one_sided_gap(merge_diffs(cur, base), side));
    }
    return make_report(cond, cond == ConditionId::MarginalTv ? "marginal" : on_s1.describe(),
                       std::move(gaps), opt);
}

Example1 example1() {
    auto pos = [](double w) { return std::max(w, 0.0); };
    auto neg = [](double w) { return std::min(w, 0.0); };
    Example1 e;
    e.p2 = {[pos](double w) { return RealJoint{{pos(w), 0.0, 1.0}}; }};
    e.q2 = {[neg](double w) { return RealJoint{{neg(w), 0.0, 1.0}}; }};
    e.p = {[pos](double w) { return RealJoint{{pos(w), 0.0, 1.0}}; }};
    return e;
}

RemarkModel remark_model() {
    return {{[](double w) { return RealJoint{{w, w, 1.0}}; }}};
}

std::vector<double> remark_qhat_weak_gaps(const Measure& z_to, const Measure& z_from,
                                          std::size_t len) {
    if (z_to.space() != z_from.space())
        throw std::invalid_argument("belief endpoints must share a space");
    const SpacePtr w_space = z_to.space();
    const FunctionFamily base = FunctionFamily::discrete_default(w_space);

    // q-hat maps z to the image of z under w -> delta_w; its weak gaps are
    // measured against distance-to-net functions on the belief space.
    std::vector<Measure> net;
    for (std::size_t i = 0; i < w_space->size(); ++i)
        net.push_back(Measure::dirac(w_space, i));
    const std::vector<BeliefFn> fns = belief_function_net(net, base);

    auto qhat_integral = [&](const Measure& z, const BeliefFn& f) {
        double s = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (z[i] != 0.0) s += f.eval(Measure::dirac(w_space, i)) * z[i];
        return s;
    };

    std::vector<double> gaps;
    gaps.reserve(len);
    for (std::size_t n = 1; n <= len; ++n) {
        const double x = 1.0 / double(n);
        std::vector<double> w(w_space->size());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = (1.0 - x) * z_to[i] + x * z_from[i];
        const Measure zn(w_space, std::move(w));
        double rho = 0.0, scale = 0.5;
        for (const auto& f : fns) {
            rho += scale * std::abs(qhat_integral(zn, f) - qhat_integral(z_to, f));
            scale *= 0.5;
        }
        gaps.push_back(rho);
    }
    return gaps;
}

double GeneratedInstance::g(double t) const {
    return truth == GroundTruth::Continuous ? t : (t > 0.0 ? 1.0 : 0.0);
}

JointMeasure GeneratedInstance::eval(double t) const {
    const double gt = g(t);
    std::vector<double> w(m0.weights().size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = (1.0 - gt) * m0.weights()[i] + gt * m1.weights()[i];
    return JointMeasure(s1, s2, std::move(w));
}

JointKernel<double> GeneratedInstance::kernel() const {
    return {s1, s2, [inst = *this](const double& t) { return inst.eval(t); }};
}

namespace {

JointMeasure random_joint(std::mt19937_64& rng, const SpacePtr& s1, const SpacePtr& s2) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(s1->size() * s2->size());
    double total = 0.0;
    // atoms bounded away from zero keep marginals and conditionals tame
    for (double& x : w) {
        x = 0.5 + u(rng);
        total += x;
    }
    for (double& x : w) x /= total;
    return JointMeasure(s1, s2, std::move(w));
}

// Replaces M1's conditionals with M0's, keeping M1's S2-marginal. The mixture
// (1-t) M0 + t M1 then has t-independent conditionals, so every diagnostic
// gap is exactly linear in t.
JointMeasure with_conditionals_of(const JointMeasure& shape, const Measure& target_marginal) {
    const Disintegration d = disintegrate(shape);
    JointMeasure out(shape.s1(), shape.s2());
    for (std::size_t j = 0; j < shape.s2()->size(); ++j)
        for (std::size_t i = 0; i < shape.s1()->size(); ++i)
            out.set(i, j, d.conditional[j][i] * target_marginal[j]);
    return out;
}

// Rescales M1's columns so its S2-marginal sits at TV >= 0.1 from M0's.
JointMeasure separate_marginals(const JointMeasure& m0, JointMeasure m1) {
    const Measure g0 = m0.marginal_s2();
    const Measure g1 = m1.marginal_s2();
    std::size_t jstar = 0;
    for (std::size_t j = 1; j < g0.size(); ++j)
        if (g0[j] > g0[jstar]) jstar = j;
    const double target = std::max(0.0, g0[jstar] - 0.12);
    const double rest_target = 1.0 - target;
    const double rest_current = 1.0 - g1[jstar];
    for (std::size_t j = 0; j < g1.size(); ++j) {
        const double scale = j == jstar ? (g1[jstar] > 0.0 ? target / g1[jstar] : 0.0)
                                        : rest_target / rest_current;
        for (std::size_t i = 0; i < m1.s1()->size(); ++i)
            m1.set(i, j, m1.at(i, j) * scale);
    }
    return m1;
}

SpacePtr indexed_space(const std::string& name, const std::string& prefix, std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    return make_space(name, std::move(ids));
}

}  // namespace

GeneratedInstance generate_instance(std::uint64_t seed, GroundTruth truth, std::size_t n1,
                                    std::size_t n2) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("instance sizes must be >= 1");
    if (truth == GroundTruth::DiscontinuousAtLimit && n2 < 2)
        throw std::invalid_argument(
            "a discontinuous instance needs |S2| >= 2 to separate marginals");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull +
                        (truth == GroundTruth::Continuous ? 1 : 2) + 101 * n1 + 10007 * n2);
    const SpacePtr s1 = indexed_space("S1", "x", n1);
    const SpacePtr s2 = indexed_space("S2", "y", n2);
    const JointMeasure m0 = random_joint(rng, s1, s2);
    JointMeasure m1 = random_joint(rng, s1, s2);
    if (truth == GroundTruth::Continuous) {
        m1 = with_conditionals_of(m0, m1.marginal_s2());
    } else {
        m1 = separate_marginals(m0, std::move(m1));
    }
    return GeneratedInstance{s1, s2, m0, std::move(m1), truth};
}

ParamSequence<double> instance_sequence(std::size_t len) {
    RealSeq s = harmonic_seq(1.0, len, 0.0);
    return {std::move(s.terms), s.limit};
}

double brute_force_gap(const JointMeasure& a, const JointMeasure& b,
                       const std::function<double(const Point&)>& f) {
    const std::size_t n2 = a.s2()->size();
    if (n2 > 10) throw std::invalid_argument("brute_force_gap enumeration budget is |S2| <= 10");
    if (a.s2() != b.s2()) throw std::invalid_argument("mismatched S2 spaces");
    const std::vector<double> ia = a.slice_integrals(f);
    const std::vector<double> ib = b.slice_integrals(f);
    double best = 0.0;
    for (unsigned long bits = 0; bits < (1ul << n2); ++bits) {
        double s = 0.0;
        for (std::size_t j = 0; j < n2; ++j)
            if (bits & (1ul << j)) s += ia[j] - ib[j];
        best = std::max(best, std::abs(s));
    }
    return best;
}

Pomdp1Family make_pomdp1_family(std::uint64_t seed, bool p1_weak, bool q1_tv) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + (p1_weak ? 4 : 0) + (q1_tv ? 8 : 0));
    std::uniform_real_distribution<double> u(0.0, 1.0);

    const double a0 = 0.15 + 0.7 * u(rng);
    const double shift = 0.3 + 0.15 * u(rng);
    const double a1 = a0 >= 0.5 ? a0 - shift : a0 + shift;

    Pomdp1Family fam;
    fam.p1_weakly_continuous = p1_weak;
    fam.q1_tv_continuous = q1_tv;
    fam.p1_atom = p1_weak ? std::function<double(double)>([](double t) { return t; })
                          : std::function<double(double)>(
                                [](double t) { return t > 0.0 ? 1.0 : 0.0; });
    auto h = q1_tv ? std::function<double(double)>([](double t) { return t; })
                   : std::function<double(double)>(
                         [](double t) { return t > 0.0 ? 1.0 : 0.0; });
    fam.q1_weights = [a0, a1, h](double t) {
        const double w0 = (1.0 - h(t)) * a0 + h(t) * a1;
        return std::pair<double, double>{w0, 1.0 - w0};
    };
    fam.p = {[atom = fam.p1_atom, q1 = fam.q1_weights](double t) {
        const auto [w0, w1] = q1(t);
        return RealJoint{{atom(t), 0.0, w0}, {atom(t), 1.0, w1}};
    }};
    return fam;
}

std::vector<double> pomdp1_p1_weak_gaps(const Pomdp1Family& fam, const RealSeq& seq) {
    const auto fns = real_test_family();
    std::vector<double> gaps;
    gaps.reserve(seq.terms.size());
    const double wl = fam.p1_atom(seq.limit);
    for (double t : seq.terms) {
        const double wn = fam.p1_atom(t);
        double rho = 0.0, scale = 0.5;
        for (const auto& f : fns) {
            rho += scale * std::abs(f.f(wn) - f.f(wl)) / std::max(f.bound, 1.0);
            scale *= 0.5;
        }
        gaps.push_back(rho);
    }
    return gaps;
}

std::vector<double> pomdp1_q1_tv_gaps(const Pomdp1Family& fam, const RealSeq& seq) {
    std::vector<double> gaps;
    gaps.reserve(seq.terms.size());
    const auto [l0, l1] = fam.q1_weights(seq.limit);
    for (double t : seq.terms) {
        const auto [w0, w1] = fam.q1_weights(t);
        const double pos = std::max(w0 - l0, 0.0) + std::max(w1 - l1, 0.0);
        const double neg = std::max(l0 - w0, 0.0) + std::max(l1 - w1, 0.0);
        gaps.push_back(std::max(pos, neg));
    }
    return gaps;
}

JointMeasure PreservationInstance::xi(std::size_t s3_index, double t) const {
    const double gt = truth == GroundTruth::Continuous ? t : (t > 0.0 ? 1.0 : 0.0);
    std::vector<double> w(m0[s3_index].weights().size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = (1.0 - gt) * m0[s3_index].weights()[i] + gt * m1[s3_index].weights()[i];
    return JointMeasure(s1, s2, std::move(w));
}

PreservationInstance generate_preservation_instance(std::uint64_t seed, GroundTruth truth) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull +
                        (truth == GroundTruth::Continuous ? 21 : 22));
    PreservationInstance inst;
    inst.s1 = indexed_space("S1", "x", 2);
    inst.s2 = indexed_space("S2", "y", 2);
    inst.s3 = indexed_space("S3", "m", 2);
    inst.truth = truth;
    for (std::size_t s = 0; s < inst.s3->size(); ++s) {
        const JointMeasure m0 = random_joint(rng, inst.s1, inst.s2);
        JointMeasure m1 = random_joint(rng, inst.s1, inst.s2);
        if (truth == GroundTruth::Continuous) {
            m1 = with_conditionals_of(m0, m1.marginal_s2());
        } else {
            // shift every slot's marginal in the same direction so mixing
            // measures cannot cancel the jump
            const Measure g0 = m0.marginal_s2();
            const Measure g1 = m1.marginal_s2();
            const double target = g0[0] - 0.12;  // g0[0] >= 1/6 by construction
            const double scale0 = target / g1[0];
            const double scale1 = (1.0 - target) / (1.0 - g1[0]);
            for (std::size_t i = 0; i < inst.s1->size(); ++i) {
                m1.set(i, 0, m1.at(i, 0) * scale0);
                m1.set(i, 1, m1.at(i, 1) * scale1);
            }
        }
        inst.m0.push_back(m0);
        inst.m1.push_back(std::move(m1));
    }
    return inst;
}

}  // namespace beliefkit
