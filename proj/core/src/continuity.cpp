#include "beliefkit/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beliefkit {

std::string to_string(ConditionId c) {
    switch (c) {
        case ConditionId::SufA: return "SUF_A";
        case ConditionId::WtvB: return "WTV_B";
        case ConditionId::ClosedC: return "CLOSED_C";
        case ConditionId::ContSetD: return "CONTSET_D";
        case ConditionId::LscE: return "LSC_E";
        case ConditionId::MarginalTv: return "MARGINAL_TV";
        case ConditionId::AssumptionKern: return "ASSUMPTION_KERN";
        case ConditionId::AssumptionH: return "ASSUMPTION_H";
        case ConditionId::AssumptionM: return "ASSUMPTION_M";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

ConditionId condition_from_string(const std::string& s) {
    for (ConditionId c :
         {ConditionId::SufA, ConditionId::WtvB, ConditionId::ClosedC, ConditionId::ContSetD,
          ConditionId::LscE, ConditionId::MarginalTv, ConditionId::AssumptionKern,
          ConditionId::AssumptionH, ConditionId::AssumptionM}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown condition id '" + s + "'");
}

double one_sided_gap(std::span<const double> diffs, GapSide side) {
    double pos = 0.0, neg = 0.0;
    for (double d : diffs) {
        if (d > 0.0) pos += d;
        else neg -= d;
    }
    switch (side) {
        case GapSide::TwoSided: return std::max(pos, neg);
        case GapSide::PosPart: return pos;
        case GapSide::NegPart: return neg;
    }
    return 0.0;
}

namespace {

// Polynomial extrapolation to x = 0 (Neville).
double neville_at_zero(std::span<const double> x, std::span<const double> y) {
    std::vector<double> p(y.begin(), y.end());
    const std::size_t m = p.size();
    for (std::size_t k = 1; k < m; ++k) {
        for (std::size_t i = 0; i + k < m; ++i) {
            const double dx = x[i + k] - x[i];
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / dx;
        }
    }
    return p[0];
}

// Rational extrapolation to x = 0 (Bulirsch-Stoer T-algorithm). The gap
// curves of the finite diagnostics are low-degree rational functions of the
// sequence scale 1/n, which this reproduces exactly; falls back to the
// polynomial tableau when the rational recurrence degenerates.
double rational_at_zero(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = y.size();
    std::vector<double> cur(y.begin(), y.end());
    std::vector<double> prev(m, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
        std::vector<double> next(m - k, 0.0);
        for (std::size_t i = 0; i + k < m; ++i) {
            const double d = cur[i + 1] - cur[i];
            const double c2 = cur[i + 1] - prev[i + 1];
            double den;
            if (c2 == 0.0) {
                den = (x[i] / x[i + k]) - 1.0;
            } else {
                den = (x[i] / x[i + k]) * (1.0 - d / c2) - 1.0;
            }
            if (den == 0.0 || !std::isfinite(den)) return neville_at_zero(x, y);
            next[i] = cur[i + 1] + d / den;
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    const double v = cur[0];
    return std::isfinite(v) ? v : neville_at_zero(x, y);
}

// Estimates lim gap_n from up to 7 tail samples, treating the gap as a
// function of 1/n. Exact for constants, polynomials and low-degree rational
// curves in 1/n, which covers every diagnostic in this library.
double extrapolated_limit(const std::vector<double>& gaps, std::size_t first) {
    const std::size_t n = gaps.size();
    const std::size_t avail = n - first;
    if (avail < 2) return gaps.back();
    const std::size_t points = std::min<std::size_t>(avail, 7);
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < points; ++k) {
        // spread indices over [first, n-1], endpoints included
        const std::size_t i = first + (k * (avail - 1)) / (points - 1);
        if (!xs.empty() && 1.0 / double(i + 1) == xs.back()) continue;
        xs.push_back(1.0 / double(i + 1));
        ys.push_back(gaps[i]);
    }
    if (xs.size() < 2) return gaps.back();
    const double v = rational_at_zero(xs, ys);
    // sanity clamp: the limit of a nonnegative bounded gap curve
    double hi = 0.0;
    for (double g : gaps) hi = std::max(hi, g);
    return std::clamp(v, 0.0, hi);
}

}  // namespace

Verdict classify_gaps(const std::vector<double>& gaps, const GapOptions& opt,
                      std::size_t* tail_start_out) {
    if (gaps.empty()) return Verdict::Inconclusive;
    std::size_t start = opt.tail_start ? opt.tail_start : (3 * gaps.size() + 3) / 4;
    start = std::min(std::max<std::size_t>(start, 1), gaps.size());
    if (tail_start_out) *tail_start_out = start;
    const std::size_t first = start - 1;  // tail covers terms start..len (1-based)

    double tail_max = 0.0;
    for (std::size_t i = first; i < gaps.size(); ++i) tail_max = std::max(tail_max, gaps[i]);
    if (tail_max <= opt.eps) return Verdict::Pass;

    const double limit = extrapolated_limit(gaps, first);
    const bool not_growing = gaps.back() <= gaps[first] + 10.0 * opt.eps;
    if (limit <= opt.eps && not_growing) return Verdict::Pass;
    if (limit >= opt.fail_floor) return Verdict::Fail;
    return Verdict::Inconclusive;
}

GapReport make_report(ConditionId cond, std::string witness, std::vector<double> gaps,
                      const GapOptions& opt, std::string note) {
    GapReport r;
    r.condition = cond;
    r.witness = std::move(witness);
    r.gaps = std::move(gaps);
    r.eps = opt.eps;
    r.fail_floor = opt.fail_floor;
    r.verdict = classify_gaps(r.gaps, opt, &r.tail_start);
    r.note = std::move(note);
    return r;
}

Verdict all_of_verdicts(std::span<const Verdict> vs) {
    bool any_fail = false, any_inconclusive = false;
    for (Verdict v : vs) {
        any_fail |= v == Verdict::Fail;
        any_inconclusive |= v == Verdict::Inconclusive;
    }
    if (any_fail) return Verdict::Fail;
    if (any_inconclusive) return Verdict::Inconclusive;
    return Verdict::Pass;
}

Witness function_witness(FamilyMember f) {
    Witness w;
    w.name = f.name;
    w.f = std::move(f);
    return w;
}

Witness set_witness(std::string name, std::vector<bool> mask) {
    Witness w;
    w.name = std::move(name);
    w.set = std::move(mask);
    return w;
}

Witness subset_witness(const SpacePtr& s1, unsigned long bits) {
    std::vector<bool> mask(s1->size(), false);
    std::string name = "{";
    for (std::size_t i = 0; i < s1->size(); ++i) {
        if (bits & (1ul << i)) {
            mask[i] = true;
            if (name.size() > 1) name += ',';
            name += s1->point(i).id;
        }
    }
    name += '}';
    return set_witness(std::move(name), std::move(mask));
}

std::vector<BeliefFn> belief_function_net(const std::vector<Measure>& net,
                                          const FunctionFamily& base_fam) {
    std::vector<BeliefFn> fns;
    fns.push_back({"one", [](const Measure&) { return 1.0; }});
    for (std::size_t i = 0; i < net.size(); ++i) {
        fns.push_back({"rho[beta" + std::to_string(i) + "]",
                       [beta = net[i], &base_fam](const Measure& z) {
                           return weak_metric(z, beta, base_fam);
                       }});
    }
    return fns;
}

GapReport belief_suf_gap(const std::vector<BeliefAtomDist>& terms,
                         const BeliefAtomDist& limit, std::size_t n2,
                         const std::vector<BeliefFn>& fns, const GapOptions& opt) {
    auto slice_ints = [&](const BeliefAtomDist& d, const BeliefFn& f) {
        std::vector<double> out(n2, 0.0);
        for (const auto& a : d.atoms) out[a.s2] += f.eval(a.belief) * a.mass;
        return out;
    };

    std::vector<double> gaps(terms.size(), 0.0);
    for (const auto& f : fns) {
        const std::vector<double> base = slice_ints(limit, f);
        for (std::size_t n = 0; n < terms.size(); ++n) {
            std::vector<double> d = slice_ints(terms[n], f);
            for (std::size_t j = 0; j < n2; ++j) d[j] -= base[j];
            gaps[n] = std::max(gaps[n], one_sided_gap(d, GapSide::TwoSided));
        }
    }
    return make_report(ConditionId::SufA, "belief function net", std::move(gaps), opt);
}

PreservationReport preservation_check(
    const std::function<JointMeasure(std::size_t, double)>& xi, const SpacePtr& s3_space,
    const std::vector<Measure>& mu_terms, const Measure& mu_limit,
    const std::vector<double>& t_terms, double t_limit, const FunctionFamily& fam,
    const GapOptions& opt) {
    if (mu_terms.size() != t_terms.size())
        throw std::invalid_argument("mixing and parameter sequences differ in length");

    // Certify the declared weak convergence of the mixing sequence first.
    {
        const FunctionFamily s3_fam = FunctionFamily::discrete_default(s3_space);
        std::vector<double> gaps;
        for (const auto& mu : mu_terms) gaps.push_back(weak_metric(mu, mu_limit, s3_fam));
        if (classify_gaps(gaps, opt) == Verdict::Fail)
            throw std::invalid_argument("mixing sequence does not converge weakly");
    }

    PreservationReport out;

    // Xi side: SufA over the family, worst over the finite s3 slots.
    {
        std::vector<Verdict> vs;
        std::vector<double> gaps;
        for (std::size_t s3 = 0; s3 < s3_space->size(); ++s3) {
            JointKernel<double> k{xi(s3, t_limit).s1(), xi(s3, t_limit).s2(),
                                  [&, s3](const double& t) { return xi(s3, t); }};
            ParamSequence<double> seq{t_terms, t_limit};
            GapReport r = check_assumption_m(k, seq, fam, opt);
            vs.push_back(r.verdict);
            if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
            for (std::size_t i = 0; i < gaps.size(); ++i)
                gaps[i] = std::max(gaps[i], r.gaps[i]);
        }
        out.xi = make_report(ConditionId::SufA, "integrand kernel", std::move(gaps), opt);
        out.xi.verdict = all_of_verdicts(vs);
    }

    // Integrated side: SufA along the (mu, t) sequence.
    {
        auto eval_at = [&](std::size_t k) {
            const Measure& mu = k < mu_terms.size() ? mu_terms[k] : mu_limit;
            const double t = k < t_terms.size() ? t_terms[k] : t_limit;
            return integrate_kernel([&](std::size_t s3) { return xi(s3, t); }, mu);
        };
        JointKernel<std::size_t> k{eval_at(mu_terms.size()).s1(),
                                   eval_at(mu_terms.size()).s2(),
                                   [eval_at](const std::size_t& n) { return eval_at(n); }};
        std::vector<std::size_t> idx(mu_terms.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        ParamSequence<std::size_t> seq{std::move(idx), mu_terms.size()};
        out.integrated = check_assumption_m(k, seq, fam, opt);
        out.integrated.condition = ConditionId::SufA;
        out.integrated.witness = "integrated kernel";
    }

    out.agree = out.xi.verdict == out.integrated.verdict;
    return out;
}

}  // namespace beliefkit
