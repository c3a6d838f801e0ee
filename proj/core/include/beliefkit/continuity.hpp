#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "beliefkit/kernel.hpp"
#include "beliefkit/measure.hpp"

namespace beliefkit {

// The continuity notions under test. SufA/WtvB/ClosedC/ContSetD/LscE are the
// equivalent conditions (a)-(e) for semi-uniform Feller continuity;
// MarginalTv is total-variation continuity of the S2-marginal; the three
// assumption checkers cover the countable-base, conditional-convergence, and
// determining-family criteria.
enum class ConditionId {
    SufA,
    WtvB,
    ClosedC,
    ContSetD,
    LscE,
    MarginalTv,
    AssumptionKern,
    AssumptionH,
    AssumptionM,
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(ConditionId c);
std::string to_string(Verdict v);
ConditionId condition_from_string(const std::string& s);

struct GapOptions {
    double eps = 1e-6;
    double fail_floor = 1e-3;
    std::size_t tail_start = 0;  // 1-based term index; 0 means ceil(3*len/4)
};

inline constexpr std::size_t kDefaultSequenceLength = 64;

/// Per-term gap values for one condition and witness, plus a verdict.
/// A verdict is a diagnostic along the declared sequence, never a proof over
/// all sequences.
struct GapReport {
    ConditionId condition;
    std::string witness;
    std::vector<double> gaps;
    Verdict verdict;
    double eps;
    double fail_floor;
    std::size_t tail_start;
    std::string note;
};

enum class GapSide { TwoSided, PosPart, NegPart };

/// TwoSided = signed_sup_gap; PosPart / NegPart are the one-sided sums used
/// by the closed-set and open-set / l.s.c. conditions.
double one_sided_gap(std::span<const double> diffs, GapSide side);

/// PASS when the tail sits below eps, or decreases with an extrapolated limit
/// below eps (tail values are fitted against 1/n to estimate the limit).
/// FAIL when the extrapolated limit reaches fail_floor. Everything between is
/// INCONCLUSIVE, never coerced.
Verdict classify_gaps(const std::vector<double>& gaps, const GapOptions& opt,
                      std::size_t* tail_start_out = nullptr);

GapReport make_report(ConditionId cond, std::string witness, std::vector<double> gaps,
                      const GapOptions& opt, std::string note = "");

/// Pass iff all pass; Fail if any fails; otherwise Inconclusive. This is the
/// verdict of a universally quantified condition over its witnesses, and also
/// the conjunction used by the marginal-TV + conditional-convergence pair.
Verdict all_of_verdicts(std::span<const Verdict> vs);

struct Witness {
    std::string name;
    std::optional<FamilyMember> f;       // SufA, LscE
    std::optional<std::vector<bool>> set;  // WtvB (open), ClosedC, ContSetD
};

Witness function_witness(FamilyMember f);
Witness set_witness(std::string name, std::vector<bool> mask);
Witness subset_witness(const SpacePtr& s1, unsigned long bits);

// ---------------------------------------------------------------------------
// Finite-kernel condition gaps. The kernel parameter type is opaque; only
// eval() is used.

template <class P>
GapReport condition_gap(const JointKernel<P>& psi, const ParamSequence<P>& seq,
                        ConditionId cond, const Witness& w, const GapOptions& opt = {}) {
    const JointMeasure lim = psi.eval(seq.limit);
    std::vector<double> gaps;
    gaps.reserve(seq.terms.size());
    std::string note;

    auto indicator = [](const std::vector<bool>& mask) {
        return [&mask](const JointMeasure& jm) { return jm.set_slices(mask); };
    };

    switch (cond) {
        case ConditionId::SufA:
        case ConditionId::LscE: {
            if (!w.f) throw std::invalid_argument("condition requires a function witness");
            const GapSide side =
                cond == ConditionId::SufA ? GapSide::TwoSided : GapSide::NegPart;
            const auto& f = w.f->eval;
            const std::vector<double> base = lim.slice_integrals(f);
            for (const auto& p : seq.terms) {
                std::vector<double> d = psi.eval(p).slice_integrals(f);
                for (std::size_t j = 0; j < d.size(); ++j) d[j] -= base[j];
                gaps.push_back(one_sided_gap(d, side));
            }
            if (cond == ConditionId::LscE)
                note = "witness family restricted to indicator step functions";
            break;
        }
        case ConditionId::WtvB:
        case ConditionId::ClosedC:
        case ConditionId::ContSetD: {
            if (!w.set) throw std::invalid_argument("condition requires a set witness");
            if (cond == ConditionId::ContSetD) {
                // Finite metric spaces are topologically discrete, so every
                // subset has empty boundary and the boundary-null certificate
                // Psi(dA, S2 | limit) = 0 holds for free.
                note = "continuity-set certificate: empty boundary (finite space)";
            }
            const GapSide side = cond == ConditionId::WtvB    ? GapSide::NegPart
                                 : cond == ConditionId::ClosedC ? GapSide::PosPart
                                                                : GapSide::TwoSided;
            const std::vector<double> base = indicator(*w.set)(lim);
            for (const auto& p : seq.terms) {
                std::vector<double> d = indicator(*w.set)(psi.eval(p));
                for (std::size_t j = 0; j < d.size(); ++j) d[j] -= base[j];
                gaps.push_back(one_sided_gap(d, side));
            }
            break;
        }
        case ConditionId::MarginalTv: {
            const Measure base = lim.marginal_s2();
            for (const auto& p : seq.terms)
                gaps.push_back(tv_distance(psi.eval(p).marginal_s2(), base));
            break;
        }
        default:
            throw std::invalid_argument("condition '" + to_string(cond) +
                                        "' has a dedicated checker");
    }
    return make_report(cond, w.name, std::move(gaps), opt, std::move(note));
}

/// Countable-base equicontinuity check. The base is {singletons} + {S1}, whose
/// finite intersections add only the empty set; the gap aggregates the worst
/// base set per term. Requires a discrete S1.
template <class P>
GapReport check_assumption_kern(const JointKernel<P>& psi, const ParamSequence<P>& seq,
                                const GapOptions& opt = {}) {
    if (psi.s1->metric() != Metric::Discrete)
        throw std::invalid_argument("assumption-kern check supports only discrete S1");
    const std::size_t n1 = psi.s1->size();
    const JointMeasure lim = psi.eval(seq.limit);

    std::vector<std::vector<bool>> base_sets;
    for (std::size_t i = 0; i < n1; ++i) {
        std::vector<bool> mask(n1, false);
        mask[i] = true;
        base_sets.push_back(std::move(mask));
    }
    base_sets.push_back(std::vector<bool>(n1, true));

    std::vector<std::vector<double>> base_slices;
    for (const auto& mask : base_sets) base_slices.push_back(lim.set_slices(mask));

    std::vector<double> gaps;
    for (const auto& p : seq.terms) {
        const JointMeasure jm = psi.eval(p);
        double worst = 0.0;
        for (std::size_t k = 0; k < base_sets.size(); ++k) {
            std::vector<double> d = jm.set_slices(base_sets[k]);
            for (std::size_t j = 0; j < d.size(); ++j) d[j] -= base_slices[k][j];
            worst = std::max(worst, one_sided_gap(d, GapSide::TwoSided));
        }
        gaps.push_back(worst);
    }
    return make_report(ConditionId::AssumptionKern, "base{singletons,S1}", std::move(gaps),
                       opt);
}

/// Conditional-kernel convergence check: for every s2 atom charged by the
/// limit marginal, the conditional beliefs must converge weakly along the
/// full sequence. On finite supports this implies the weaker
/// subsequence-almost-everywhere form of the condition; a FAIL here means only
/// that the full-sequence check failed.
template <class P>
GapReport check_assumption_h(const JointKernel<P>& psi, const ParamSequence<P>& seq,
                             const FunctionFamily& fam, const GapOptions& opt = {}) {
    const Disintegration dl = disintegrate(psi.eval(seq.limit));
    std::vector<double> gaps;
    for (const auto& p : seq.terms) {
        const Disintegration dn = disintegrate(psi.eval(p));
        double worst = 0.0;
        for (std::size_t j = 0; j < dl.conditional.size(); ++j) {
            if (dl.marginal[j] == 0.0) continue;
            worst = std::max(worst, weak_metric(dn.conditional[j], dl.conditional[j], fam));
        }
        gaps.push_back(worst);
    }
    GapReport r = make_report(ConditionId::AssumptionH, "conditional weak convergence",
                              std::move(gaps), opt);
    if (r.verdict == Verdict::Fail) r.note = "full-sequence check failed";
    return r;
}

/// Determining-family check: SufA must hold for every family member.
template <class P>
GapReport check_assumption_m(const JointKernel<P>& psi, const ParamSequence<P>& seq,
                             const FunctionFamily& fam, const GapOptions& opt = {}) {
    std::vector<Verdict> verdicts;
    std::vector<double> gaps;
    std::string worst_member;
    for (std::size_t m = 0; m < fam.size(); ++m) {
        GapReport r =
            condition_gap(psi, seq, ConditionId::SufA, function_witness(fam.member(m)), opt);
        verdicts.push_back(r.verdict);
        if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
        for (std::size_t i = 0; i < gaps.size(); ++i)
            gaps[i] = std::max(gaps[i], r.gaps[i]);
        if (r.verdict == Verdict::Fail && worst_member.empty())
            worst_member = fam.member(m).name;
    }
    GapReport out = make_report(ConditionId::AssumptionM, "determining family",
                                std::move(gaps), opt);
    out.verdict = all_of_verdicts(verdicts);
    if (!worst_member.empty()) out.note = "fails at member " + worst_member;
    return out;
}

// ---------------------------------------------------------------------------
// Belief-valued kernels (phi, q). An evaluation is a BeliefAtomDist; test
// functions act on the belief itself.

struct BeliefFn {
    std::string name;
    std::function<double(const Measure&)> eval;
};

/// {constant one} + {z -> rho(z, beta_i)} for a net of beliefs beta_i.
/// Distance-to-net functions are bounded, continuous in the weak topology,
/// and separate belief atoms at desk scale.
std::vector<BeliefFn> belief_function_net(const std::vector<Measure>& net,
                                          const FunctionFamily& base_fam);

/// SufA gap for a belief-valued kernel from precomputed evaluations; the
/// per-term gap aggregates the worst function in `fns`.
GapReport belief_suf_gap(const std::vector<BeliefAtomDist>& terms,
                         const BeliefAtomDist& limit, std::size_t n2,
                         const std::vector<BeliefFn>& fns, const GapOptions& opt = {});

/// SufA on the belief-image kernel phi of a finite kernel; the belief test
/// net is taken from the limit evaluation plus the uniform belief.
template <class P>
GapReport phi_suf_gap(const JointKernel<P>& psi, const ParamSequence<P>& seq,
                      const FunctionFamily& base_fam, const GapOptions& opt = {}) {
    const BeliefAtomDist lim = belief_kernel_phi(psi.eval(seq.limit));
    std::vector<BeliefAtomDist> terms;
    terms.reserve(seq.terms.size());
    for (const auto& p : seq.terms) terms.push_back(belief_kernel_phi(psi.eval(p)));

    std::vector<Measure> net;
    for (const auto& a : lim.atoms) net.push_back(a.belief);
    net.push_back(Measure::uniform(psi.s1));
    return belief_suf_gap(terms, lim, psi.s2->size(), belief_function_net(net, base_fam),
                          opt);
}

// ---------------------------------------------------------------------------
// Equivalence suite

struct SuiteReport {
    std::vector<GapReport> reports;  // aggregated per condition, witness order fixed
    bool agreement = false;          // all condition verdicts equal
    Verdict consensus = Verdict::Inconclusive;
};

/// Witness generation for a finite discrete kernel: open and closed sets are
/// all subsets of S1 (every set is clopen, so (b), (c), (d) quantify over the
/// same sets), the l.s.c. family is all indicator step functions, and SufA /
/// AssumptionM run over the determining family. Also checks SufA on the phi
/// kernel and the marginal-TV + conditional-convergence conjunction.
template <class P>
SuiteReport equivalence_suite(const JointKernel<P>& psi, const ParamSequence<P>& seq,
                              const FunctionFamily& fam, const GapOptions& opt = {}) {
    const std::size_t n1 = psi.s1->size();
    if (n1 > 16)
        throw std::invalid_argument("equivalence suite enumerates subsets; |S1| <= 16");

    SuiteReport out;
    auto aggregate_sets = [&](ConditionId cond) {
        std::vector<Verdict> vs;
        std::vector<double> gaps;
        for (unsigned long bits = 0; bits < (1ul << n1); ++bits) {
            Witness w = subset_witness(psi.s1, bits);
            GapReport r = condition_gap(psi, seq, cond, w, opt);
            vs.push_back(r.verdict);
            if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
            for (std::size_t i = 0; i < gaps.size(); ++i)
                gaps[i] = std::max(gaps[i], r.gaps[i]);
        }
        GapReport agg = make_report(cond, "all subsets", std::move(gaps), opt);
        agg.verdict = all_of_verdicts(vs);
        return agg;
    };

    // (a) over the determining family: same computation as AssumptionM.
    GapReport suf = check_assumption_m(psi, seq, fam, opt);
    suf.condition = ConditionId::SufA;
    suf.witness = "determining family";
    out.reports.push_back(suf);
    out.reports.push_back(aggregate_sets(ConditionId::WtvB));
    out.reports.push_back(aggregate_sets(ConditionId::ClosedC));
    out.reports.push_back(aggregate_sets(ConditionId::ContSetD));

    // (e): indicators of subsets as the generated l.s.c. step family.
    {
        std::vector<Verdict> vs;
        std::vector<double> gaps;
        for (unsigned long bits = 0; bits < (1ul << n1); ++bits) {
            Witness w = subset_witness(psi.s1, bits);
            FamilyMember f{"ind" + w.name, 1.0,
                           [mask = *w.set, sp = psi.s1](const Point& p) {
                               return mask[sp->index(p.id)] ? 1.0 : 0.0;
                           }};
            GapReport r = condition_gap(psi, seq, ConditionId::LscE, function_witness(f), opt);
            vs.push_back(r.verdict);
            if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
            for (std::size_t i = 0; i < gaps.size(); ++i)
                gaps[i] = std::max(gaps[i], r.gaps[i]);
        }
        GapReport agg = make_report(ConditionId::LscE, "indicator step functions",
                                    std::move(gaps), opt,
                                    "witness family restricted to indicator step functions");
        agg.verdict = all_of_verdicts(vs);
        out.reports.push_back(agg);
    }

    out.reports.push_back(
        condition_gap(psi, seq, ConditionId::MarginalTv, Witness{"marginal", {}, {}}, opt));
    out.reports.push_back(check_assumption_kern(psi, seq, opt));
    GapReport h = check_assumption_h(psi, seq, fam, opt);
    out.reports.push_back(h);
    GapReport m = check_assumption_m(psi, seq, fam, opt);
    out.reports.push_back(m);
    out.reports.push_back(phi_suf_gap(psi, seq, fam, opt));

    // Agreement compares the conditions that are equivalent characterizations;
    // AssumptionH enters only through its conjunction with marginal TV.
    const Verdict marg = out.reports[5].verdict;
    const Verdict conj = all_of_verdicts(std::array{marg, h.verdict});
    std::vector<Verdict> equiv = {out.reports[0].verdict, out.reports[1].verdict,
                                  out.reports[2].verdict, out.reports[3].verdict,
                                  out.reports[4].verdict, marg,
                                  out.reports[6].verdict, conj,
                                  m.verdict,              out.reports.back().verdict};
    out.agreement = std::all_of(equiv.begin(), equiv.end(),
                                [&](Verdict v) { return v == equiv.front(); });
    out.consensus = out.agreement ? equiv.front() : Verdict::Inconclusive;
    return out;
}

// ---------------------------------------------------------------------------
// Preservation under integration: the mixed kernel
// PsiHat(.|mu, t) = sum_s3 Xi(.|s3, t) mu({s3}) is semi-uniform Feller iff Xi
// is. Both sides are diagnosed and compared.

struct PreservationReport {
    GapReport xi;
    GapReport integrated;
    bool agree = false;
};

PreservationReport preservation_check(
    const std::function<JointMeasure(std::size_t, double)>& xi, const SpacePtr& s3_space,
    const std::vector<Measure>& mu_terms, const Measure& mu_limit,
    const std::vector<double>& t_terms, double t_limit, const FunctionFamily& fam,
    const GapOptions& opt = {});

}  // namespace beliefkit
