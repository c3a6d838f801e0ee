#include "beliefkit/filter.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace beliefkit {

std::string to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::General: return "general";
        case ModelVariant::Platzman: return "platzman";
        case ModelVariant::Pomdp1: return "pomdp1";
        case ModelVariant::Pomdp2: return "pomdp2";
    }
    return "?";
}

ModelVariant variant_from_string(const std::string& s) {
    for (ModelVariant v : {ModelVariant::General, ModelVariant::Platzman,
                           ModelVariant::Pomdp1, ModelVariant::Pomdp2}) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown model variant '" + s + "'");
}

void MdpiiModel::validate_rows() const {
    const std::size_t expect =
        variant_ == ModelVariant::General ? w_->size() * y_->size() * a_->size()
                                          : w_->size() * a_->size();
    if (p_rows_.size() != expect)
        throw std::invalid_argument("kernel table size does not match the spaces");
    for (const auto& row : p_rows_) {
        if (row.s1() != w_ || row.s2() != y_)
            throw std::invalid_argument("kernel row on mismatched spaces");
        if (std::abs(row.mass() - 1.0) > 1e-9)
            throw std::invalid_argument("kernel row mass differs from 1 beyond 1e-9");
    }
}

MdpiiModel MdpiiModel::general(SpacePtr w, SpacePtr y, SpacePtr a,
                               std::vector<JointMeasure> rows) {
    MdpiiModel m;
    m.w_ = std::move(w);
    m.y_ = std::move(y);
    m.a_ = std::move(a);
    m.variant_ = ModelVariant::General;
    m.p_rows_ = std::move(rows);
    m.validate_rows();
    return m;
}

MdpiiModel MdpiiModel::platzman(SpacePtr w, SpacePtr y, SpacePtr a,
                                std::vector<JointMeasure> rows) {
    MdpiiModel m;
    m.w_ = std::move(w);
    m.y_ = std::move(y);
    m.a_ = std::move(a);
    m.variant_ = ModelVariant::Platzman;
    m.p_rows_ = std::move(rows);
    m.validate_rows();
    return m;
}

MdpiiModel MdpiiModel::pomdp1(SpacePtr w, SpacePtr y, SpacePtr a,
                              std::vector<Measure> p1_rows, std::vector<Measure> q1_rows) {
    MdpiiModel m;
    m.w_ = std::move(w);
    m.y_ = std::move(y);
    m.a_ = std::move(a);
    m.variant_ = ModelVariant::Pomdp1;
    const std::size_t n = m.w_->size() * m.a_->size();
    if (p1_rows.size() != n || q1_rows.size() != n)
        throw std::invalid_argument("factor table size does not match the spaces");
    for (std::size_t i = 0; i < n; ++i)
        m.p_rows_.push_back(product_pomdp1_row(p1_rows[i], q1_rows[i]));
    m.f1_rows_ = std::move(p1_rows);
    m.f2_rows_ = std::move(q1_rows);
    m.validate_rows();
    return m;
}

MdpiiModel MdpiiModel::pomdp2(SpacePtr w, SpacePtr y, SpacePtr a,
                              std::vector<Measure> p2_rows, std::vector<Measure> q2_rows) {
    MdpiiModel m;
    m.w_ = std::move(w);
    m.y_ = std::move(y);
    m.a_ = std::move(a);
    m.variant_ = ModelVariant::Pomdp2;
    const std::size_t na = m.a_->size();
    if (p2_rows.size() != m.w_->size() * na || q2_rows.size() != m.w_->size() * na)
        throw std::invalid_argument("factor table size does not match the spaces");
    for (std::size_t w_i = 0; w_i < m.w_->size(); ++w_i) {
        for (std::size_t a_i = 0; a_i < na; ++a_i) {
            m.p_rows_.push_back(compose_pomdp2_row(
                p2_rows[w_i * na + a_i],
                [&](std::size_t w_next) -> const Measure& {
                    return q2_rows[w_next * na + a_i];
                }));
        }
    }
    m.f1_rows_ = std::move(p2_rows);
    m.f2_rows_ = std::move(q2_rows);
    m.validate_rows();
    return m;
}

const JointMeasure& MdpiiModel::p_row(std::size_t w, std::size_t y, std::size_t a) const {
    if (w >= w_->size() || y >= y_->size() || a >= a_->size())
        throw std::invalid_argument("kernel conditioning index out of range");
    if (variant_ == ModelVariant::General)
        return p_rows_[(w * y_->size() + y) * a_->size() + a];
    return p_rows_[w * a_->size() + a];
}

const Measure& MdpiiModel::p1_row(std::size_t w, std::size_t a) const {
    if (variant_ != ModelVariant::Pomdp1)
        throw std::domain_error("p1 rows exist only on the product variant");
    return f1_rows_[w * a_->size() + a];
}

const Measure& MdpiiModel::q1_row(std::size_t w, std::size_t a) const {
    if (variant_ != ModelVariant::Pomdp1)
        throw std::domain_error("q1 rows exist only on the product variant");
    return f2_rows_[w * a_->size() + a];
}

const Measure& MdpiiModel::p2_row(std::size_t w, std::size_t a) const {
    if (variant_ != ModelVariant::Pomdp2)
        throw std::domain_error("p2 rows exist only on the composed variant");
    return f1_rows_[w * a_->size() + a];
}

const Measure& MdpiiModel::q2_row(std::size_t w_next, std::size_t a) const {
    if (variant_ != ModelVariant::Pomdp2)
        throw std::domain_error("q2 rows exist only on the composed variant");
    return f2_rows_[w_next * a_->size() + a];
}

JointMeasure r_kernel(const MdpiiModel& model, const Measure& z, std::size_t y,
                      std::size_t a) {
    if (z.space() != model.w_space())
        throw std::invalid_argument("belief lives on a different space than the model");
    if (!z.is_probability(1e-9))
        throw std::invalid_argument("belief must be a probability measure");
    std::vector<double> acc(model.w_space()->size() * model.y_space()->size(), 0.0);
    for (std::size_t w = 0; w < z.size(); ++w) {
        if (z[w] == 0.0) continue;
        const auto& row = model.p_row(w, y, a).weights();
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += z[w] * row[t];
    }
    return JointMeasure(model.w_space(), model.y_space(), std::move(acc));
}

FilterResult filter_update(const MdpiiModel& model, const Measure& z, std::size_t y,
                           std::size_t a, std::size_t y_next) {
    const JointMeasure joint = r_kernel(model, z, y, a);
    const Measure predictive = joint.marginal_s2();
    if (predictive[y_next] == 0.0)
        return {Measure::uniform(model.w_space()), true};
    return {joint.slice_s1(y_next).normalized(), false};
}

BeliefAtomDist q_eval(const MdpiiModel& model, const Measure& z, std::size_t y,
                      std::size_t a) {
    return belief_kernel_phi(r_kernel(model, z, y, a));
}

BeliefAtomDist q_hat(const MdpiiModel& model, const Measure& z, std::size_t a) {
    if (model.variant() == ModelVariant::General)
        throw std::domain_error(
            "observation-marginalized transition requires an observation-free kernel");
    const BeliefAtomDist q = q_eval(model, z, 0, a);
    std::map<std::string, BeliefAtomDist::Atom> merged;
    for (const auto& atom : q.atoms) {
        auto [it, fresh] = merged.try_emplace(atom.key, atom);
        if (!fresh) it->second.mass += atom.mass;
    }
    BeliefAtomDist out;
    for (auto& [key, atom] : merged) {
        atom.s2 = 0;  // the observation coordinate is marginalized out
        out.atoms.push_back(std::move(atom));
    }
    return out;
}

BeliefTrajectory run_filter(const MdpiiModel& model, const Measure& z0, std::size_t y0,
                            const std::vector<std::size_t>& actions,
                            const std::vector<std::size_t>& observations) {
    if (actions.size() != observations.size())
        throw std::invalid_argument("action and observation lists differ in length");
    BeliefTrajectory traj{{z0, y0}, {}};
    Measure z = z0;
    std::size_t y = y0;
    for (std::size_t k = 0; k < actions.size(); ++k) {
        FilterResult r = filter_update(model, z, y, actions[k], observations[k]);
        traj.steps.push_back({actions[k], observations[k], r.posterior, r.zero_evidence});
        z = r.posterior;
        y = observations[k];
    }
    return traj;
}

double bayes_reconstruction_error(const MdpiiModel& model, const Measure& z, std::size_t y,
                                  std::size_t a) {
    const JointMeasure joint = r_kernel(model, z, y, a);
    const Disintegration d = disintegrate(joint);
    const Measure w_marginal = joint.marginal_s1();
    double err = 0.0;
    for (std::size_t w = 0; w < w_marginal.size(); ++w) {
        double recon = 0.0;
        for (std::size_t j = 0; j < d.marginal.size(); ++j) {
            if (d.marginal[j] == 0.0) continue;
            recon += d.marginal[j] * d.conditional[j][w];
        }
        err = std::max(err, std::abs(recon - w_marginal[w]));
    }
    return err;
}

bool q_matches_belief_image(const MdpiiModel& model, const Measure& z, std::size_t y,
                            std::size_t a) {
    // explicit Bayes construction: one atom per observation with evidence
    const JointMeasure joint = r_kernel(model, z, y, a);
    const Measure predictive = joint.marginal_s2();
    std::vector<BeliefAtomDist::Atom> bayes;
    for (std::size_t j = 0; j < predictive.size(); ++j) {
        if (predictive[j] == 0.0) continue;
        const Measure posterior = filter_update(model, z, y, a, j).posterior;
        bayes.push_back({posterior, posterior.canonical_key(), j, predictive[j]});
    }
    const BeliefAtomDist phi = belief_kernel_phi(joint);
    if (phi.atoms.size() != bayes.size()) return false;
    for (std::size_t k = 0; k < bayes.size(); ++k) {
        if (phi.atoms[k].key != bayes[k].key || phi.atoms[k].s2 != bayes[k].s2 ||
            phi.atoms[k].mass != bayes[k].mass)
            return false;
    }
    return true;
}

std::vector<Measure> belief_line(const Measure& z_to, const Measure& z_from,
                                 std::size_t len) {
    if (z_to.space() != z_from.space())
        throw std::invalid_argument("belief endpoints must share a space");
    std::vector<Measure> out;
    out.reserve(len);
    for (std::size_t n = 1; n <= len; ++n) {
        const double x = 1.0 / double(n);
        std::vector<double> w(z_to.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = (1.0 - x) * z_to[i] + x * z_from[i];
        out.emplace_back(z_to.space(), std::move(w));
    }
    return out;
}

EquivalenceCheckReport mdpci_equivalence_check(
    const std::function<MdpiiModel(double)>& model_at, const MdpciSequence& seq,
    const FunctionFamily& w_family, const GapOptions& opt) {
    if (seq.t_terms.size() != seq.z_terms.size())
        throw std::invalid_argument("parameter and belief sequences differ in length");
    const MdpiiModel lim_model = model_at(seq.t_limit);
    const SpacePtr w_space = lim_model.w_space();
    const SpacePtr y_space = lim_model.y_space();

    EquivalenceCheckReport out;

    // Original kernel along Dirac beliefs: only the model parameter moves.
    {
        const ParamSequence<double> tseq{seq.t_terms, seq.t_limit};
        std::vector<Verdict> vs;
        std::vector<double> gaps;
        for (std::size_t w = 0; w < w_space->size(); ++w) {
            JointKernel<double> k{w_space, y_space, [&, w](const double& t) {
                                      return model_at(t).p_row(w, seq.y, seq.a);
                                  }};
            GapReport r = check_assumption_m(k, tseq, w_family, opt);
            vs.push_back(r.verdict);
            if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
            for (std::size_t i = 0; i < gaps.size(); ++i)
                gaps[i] = std::max(gaps[i], r.gaps[i]);
        }
        out.p = make_report(ConditionId::SufA, "P over Dirac beliefs", std::move(gaps), opt);
        out.p.verdict = all_of_verdicts(vs);
    }

    // Mixed kernel along the joint (belief, parameter) sequence.
    auto r_at = [&](std::size_t n) {
        const Measure& z = n < seq.z_terms.size() ? seq.z_terms[n] : seq.z_limit;
        const double t = n < seq.t_terms.size() ? seq.t_terms[n] : seq.t_limit;
        return r_kernel(model_at(t), z, seq.y, seq.a);
    };
    {
        JointKernel<std::size_t> k{w_space, y_space,
                                   [r_at](const std::size_t& n) { return r_at(n); }};
        std::vector<std::size_t> idx(seq.t_terms.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        ParamSequence<std::size_t> iseq{std::move(idx), seq.t_terms.size()};
        out.r = check_assumption_m(k, iseq, w_family, opt);
        out.r.condition = ConditionId::SufA;
        out.r.witness = "R along belief mixtures";
    }

    // Belief transition: image of the same evaluations under phi.
    {
        const BeliefAtomDist lim = belief_kernel_phi(r_at(seq.t_terms.size()));
        std::vector<BeliefAtomDist> terms;
        for (std::size_t n = 0; n < seq.t_terms.size(); ++n)
            terms.push_back(belief_kernel_phi(r_at(n)));
        std::vector<Measure> net;
        for (const auto& atom : lim.atoms) net.push_back(atom.belief);
        net.push_back(Measure::uniform(w_space));
        out.q = belief_suf_gap(terms, lim, y_space->size(),
                               belief_function_net(net, w_family), opt);
        out.q.witness = "q belief transition";
    }

    out.agree = out.p.verdict == out.r.verdict && out.r.verdict == out.q.verdict;
    out.consensus = out.agree ? out.p.verdict : Verdict::Inconclusive;
    return out;
}

Pomdp2Instance generate_pomdp2_instance(std::uint64_t seed, GroundTruth truth) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull +
                        (truth == GroundTruth::Continuous ? 31 : 32));
    std::uniform_real_distribution<double> u(0.0, 1.0);

    Pomdp2Instance inst;
    inst.truth = truth;
    inst.w = make_space("W", {"w0", "w1"});
    inst.y = make_space("Y", {"y0", "y1"});
    inst.a = make_space("A", {"a0"});

    std::vector<Measure> p2;
    for (int w = 0; w < 2; ++w) {
        const double m0 = 0.2 + 0.6 * u(rng);
        p2.emplace_back(inst.w, std::vector<double>{m0, 1.0 - m0});
    }
    // base observation rows, kept away from the simplex boundary so the 0.12
    // shift stays feasible
    std::vector<double> nu0;
    for (int w = 0; w < 2; ++w) nu0.push_back(0.3 + 0.4 * u(rng));

    const bool jump = truth == GroundTruth::DiscontinuousAtLimit;
    inst.model_at = [w_sp = inst.w, y_sp = inst.y, a_sp = inst.a, p2, nu0,
                     jump](double t) {
        std::vector<Measure> q2;
        for (int w = 0; w < 2; ++w) {
            const double shift = (jump && t > 0.0) ? 0.12 : 0.0;
            const double m = nu0[std::size_t(w)] - shift;
            q2.emplace_back(y_sp, std::vector<double>{m, 1.0 - m});
        }
        return MdpiiModel::pomdp2(w_sp, y_sp, a_sp, p2, q2);
    };
    return inst;
}

}  // namespace beliefkit
