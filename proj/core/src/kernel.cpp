#include "beliefkit/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace beliefkit {

Disintegration disintegrate(const JointMeasure& psi) {
    const std::size_t n2 = psi.s2()->size();
    Disintegration d{psi.marginal_s2(), {}, std::vector<bool>(n2, false)};
    d.conditional.reserve(n2);
    for (std::size_t j = 0; j < n2; ++j) {
        const double mj = d.marginal[j];
        if (mj > 0.0) {
            d.conditional.push_back(psi.slice_s1(j).normalized());
        } else {
            d.conditional.push_back(Measure::uniform(psi.s1()));
            d.null_atom[j] = true;
        }
    }
    return d;
}

JointMeasure reconstruct(const Disintegration& d, const SpacePtr& s1, const SpacePtr& s2) {
    JointMeasure out(s1, s2);
    for (std::size_t j = 0; j < s2->size(); ++j) {
        const double mj = d.marginal[j];
        if (mj == 0.0) continue;
        for (std::size_t i = 0; i < s1->size(); ++i)
            out.set(i, j, d.conditional[j][i] * mj);
    }
    return out;
}

double BeliefAtomDist::mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    return m;
}

Measure BeliefAtomDist::marginal_s2(const SpacePtr& s2_space) const {
    Measure m(s2_space);
    for (const auto& a : atoms) m.set(a.s2, m[a.s2] + a.mass);
    return m;
}

BeliefAtomDist belief_kernel_phi(const JointMeasure& psi) {
    const Disintegration d = disintegrate(psi);
    BeliefAtomDist out;
    for (std::size_t j = 0; j < psi.s2()->size(); ++j) {
        if (d.marginal[j] == 0.0) continue;  // null atoms carry no phi mass
        out.atoms.push_back({d.conditional[j], d.conditional[j].canonical_key(), j,
                             d.marginal[j]});
    }
    // Atoms are produced in s2 order with one belief per s2 atom, so they are
    // already merged and sorted by (s2, key).
    return out;
}

JointMeasure integrate_kernel(const std::function<JointMeasure(std::size_t)>& xi_at_s3,
                              const Measure& mu) {
    if (!mu.is_probability(1e-9))
        throw std::invalid_argument("integrate_kernel requires a probability mixing measure");
    JointMeasure out = xi_at_s3(0);
    std::vector<double> acc(out.weights().size(), 0.0);
    const SpacePtr s1 = out.s1(), s2 = out.s2();
    for (std::size_t k = 0; k < mu.size(); ++k) {
        if (mu[k] == 0.0) continue;
        const JointMeasure xk = xi_at_s3(k);
        if (xk.s1() != s1 || xk.s2() != s2)
            throw std::invalid_argument("integrate_kernel slices on mismatched spaces");
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += mu[k] * xk.weights()[t];
    }
    return JointMeasure(s1, s2, std::move(acc));
}

JointMeasure product_pomdp1_row(const Measure& p1_row, const Measure& q1_row) {
    return product(p1_row, q1_row);
}

JointMeasure compose_pomdp2_row(const Measure& p2_row,
                                const std::function<const Measure&(std::size_t)>& q2_of_wnext) {
    const SpacePtr w_space = p2_row.space();
    JointMeasure out(w_space, q2_of_wnext(0).space());
    for (std::size_t i = 0; i < w_space->size(); ++i) {
        if (p2_row[i] == 0.0) continue;
        const Measure& q2 = q2_of_wnext(i);
        for (std::size_t j = 0; j < q2.size(); ++j)
            out.set(i, j, p2_row[i] * q2[j]);
    }
    return out;
}

}  // namespace beliefkit
