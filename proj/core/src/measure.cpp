#include "beliefkit/measure.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace beliefkit {

Space::Space(std::string name, std::vector<Point> points, Metric metric)
    : name_(std::move(name)), points_(std::move(points)), metric_(metric) {
    if (points_.empty())
        throw std::invalid_argument("space '" + name_ + "' must be nonempty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!index_.emplace(points_[i].id, i).second)
            throw std::invalid_argument("duplicate point id '" + points_[i].id +
                                        "' in space '" + name_ + "'");
    }
    if (metric_ == Metric::Euclidean) {
        const std::size_t dim = points_[0].coord.size();
        for (const auto& p : points_) {
            if (p.coord.size() != dim)
                throw std::invalid_argument("point '" + p.id +
                                            "' has mismatched coord dimension");
        }
    }
}

std::size_t Space::index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw std::invalid_argument("point '" + id + "' not in space '" + name_ + "'");
    return it->second;
}

double Space::distance(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (metric_ == Metric::Discrete) return 1.0;
    double s = 0.0;
    for (std::size_t k = 0; k < points_[i].coord.size(); ++k) {
        const double d = points_[i].coord[k] - points_[j].coord[k];
        s += d * d;
    }
    return std::sqrt(s);
}

SpacePtr make_space(std::string name, std::vector<std::string> ids) {
    std::vector<Point> pts;
    pts.reserve(ids.size());
    for (auto& id : ids) pts.push_back(Point{std::move(id), {}});
    return std::make_shared<Space>(std::move(name), std::move(pts), Metric::Discrete);
}

SpacePtr make_space(std::string name, std::vector<Point> points, Metric metric) {
    return std::make_shared<Space>(std::move(name), std::move(points), metric);
}

Measure::Measure(SpacePtr space)
    : space_(std::move(space)), weights_(space_->size(), 0.0) {}

Measure::Measure(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (weights_.size() != space_->size())
        throw std::invalid_argument("weight vector size does not match space");
    for (double w : weights_)
        if (w < 0.0) throw std::invalid_argument("negative weight in measure");
    if (mass() > 1.0 + kMassTol)
        throw std::invalid_argument("measure mass exceeds 1");
}

Measure Measure::dirac(const SpacePtr& space, const std::string& id) {
    return dirac(space, space->index(id));
}

Measure Measure::dirac(const SpacePtr& space, std::size_t index) {
    if (index >= space->size())
        throw std::invalid_argument("dirac atom index out of range");
    Measure m(space);
    m.weights_[index] = 1.0;
    return m;
}

Measure Measure::uniform(const SpacePtr& space) {
    Measure m(space);
    std::fill(m.weights_.begin(), m.weights_.end(), 1.0 / double(space->size()));
    return m;
}

double Measure::at(const std::string& id) const { return weights_[space_->index(id)]; }

void Measure::set(std::size_t i, double w) {
    if (w < 0.0) throw std::invalid_argument("negative weight in measure");
    weights_[i] = w;
}

double Measure::mass() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool Measure::is_probability(double tol) const { return std::abs(mass() - 1.0) <= tol; }

Measure Measure::normalized() const {
    const double m = mass();
    if (m <= 0.0) throw std::domain_error("cannot normalize a zero measure");
    std::vector<double> w(weights_);
    for (double& x : w) x /= m;
    return Measure(space_, std::move(w));
}

std::string Measure::canonical_key(int decimals) const {
    std::string key;
    char buf[64];
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.*f", decimals, weights_[i]);
        if (i) key += ';';
        key += space_->point(i).id;
        key += '=';
        key += buf;
    }
    return key;
}

double tv_distance(const Measure& mu, const Measure& nu) {
    if (mu.space() != nu.space())
        throw std::invalid_argument("tv_distance requires measures on the same space");
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double d = mu[i] - nu[i];
        if (d > 0.0) pos += d;
        else neg -= d;
    }
    return std::max(pos, neg);
}

double signed_sup_gap(std::span<const double> diffs) {
    double pos = 0.0, neg = 0.0;
    for (double d : diffs) {
        if (d > 0.0) pos += d;
        else neg -= d;
    }
    return std::max(pos, neg);
}

Measure pushforward(const Measure& mu, const std::function<std::size_t(std::size_t)>& map,
                    const SpacePtr& target) {
    std::vector<double> w(target->size(), 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] == 0.0) continue;
        const std::size_t j = map(i);
        if (j >= target->size())
            throw std::invalid_argument("pushforward image outside target space");
        w[j] += mu[i];
    }
    return Measure(target, std::move(w));
}

Measure pushforward(const Measure& mu,
                    const std::unordered_map<std::string, std::string>& map,
                    const SpacePtr& target) {
    return pushforward(
        mu,
        [&](std::size_t i) {
            const auto& id = mu.space()->point(i).id;
            auto it = map.find(id);
            if (it == map.end())
                throw std::invalid_argument("pushforward map undefined at '" + id + "'");
            return target->index(it->second);
        },
        target);
}

FunctionFamily::FunctionFamily(SpacePtr space, std::vector<FamilyMember> members)
    : space_(std::move(space)), members_(std::move(members)) {
    if (members_.empty())
        throw std::invalid_argument("function family must be nonempty");
    for (std::size_t i = 0; i < space_->size(); ++i) {
        if (std::abs(members_[0].eval(space_->point(i)) - 1.0) > kMassTol)
            throw std::invalid_argument("family member 0 must be the constant one");
    }
}

FunctionFamily FunctionFamily::discrete_default(const SpacePtr& space) {
    std::vector<FamilyMember> members;
    members.push_back({"one", 1.0, [](const Point&) { return 1.0; }});
    for (std::size_t i = 0; i < space->size(); ++i) {
        const std::string id = space->point(i).id;
        members.push_back({"ind[" + id + "]", 1.0,
                           [id](const Point& p) { return p.id == id ? 1.0 : 0.0; }});
    }
    return FunctionFamily(space, std::move(members));
}

double FunctionFamily::integrate(std::size_t m, const Measure& mu) const {
    const auto& f = members_[m].eval;
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] != 0.0) s += f(mu.space()->point(i)) * mu[i];
    return s;
}

double weak_metric(const Measure& mu, const Measure& nu, const FunctionFamily& fam) {
    if (fam.size() == 0) throw std::invalid_argument("empty function family");
    double rho = 0.0;
    double scale = 0.5;  // 2^{-m}, m = 1, 2, ...
    for (std::size_t m = 0; m < fam.size(); ++m, scale *= 0.5) {
        const double norm = std::max(fam.member(m).bound, 1.0);
        rho += scale * std::abs(fam.integrate(m, mu) - fam.integrate(m, nu)) / norm;
    }
    return rho;
}

JointMeasure::JointMeasure(SpacePtr s1, SpacePtr s2)
    : s1_(std::move(s1)), s2_(std::move(s2)), w_(s1_->size() * s2_->size(), 0.0) {}

JointMeasure::JointMeasure(SpacePtr s1, SpacePtr s2, std::vector<double> weights)
    : s1_(std::move(s1)), s2_(std::move(s2)), w_(std::move(weights)) {
    if (w_.size() != s1_->size() * s2_->size())
        throw std::invalid_argument("joint weight vector size mismatch");
    for (double w : w_)
        if (w < 0.0) throw std::invalid_argument("negative weight in joint measure");
}

double JointMeasure::mass() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

Measure JointMeasure::marginal_s1() const {
    std::vector<double> m(s1_->size(), 0.0);
    const std::size_t n2 = s2_->size();
    for (std::size_t i = 0; i < s1_->size(); ++i)
        for (std::size_t j = 0; j < n2; ++j) m[i] += w_[i * n2 + j];
    return Measure(s1_, std::move(m));
}

Measure JointMeasure::marginal_s2() const {
    std::vector<double> m(s2_->size(), 0.0);
    const std::size_t n2 = s2_->size();
    for (std::size_t i = 0; i < s1_->size(); ++i)
        for (std::size_t j = 0; j < n2; ++j) m[j] += w_[i * n2 + j];
    return Measure(s2_, std::move(m));
}

Measure JointMeasure::slice_s1(std::size_t j) const {
    std::vector<double> m(s1_->size(), 0.0);
    const std::size_t n2 = s2_->size();
    for (std::size_t i = 0; i < s1_->size(); ++i) m[i] = w_[i * n2 + j];
    return Measure(s1_, std::move(m));
}

std::vector<double> JointMeasure::slice_integrals(
    const std::function<double(const Point&)>& f) const {
    std::vector<double> out(s2_->size(), 0.0);
    const std::size_t n2 = s2_->size();
    for (std::size_t i = 0; i < s1_->size(); ++i) {
        const double fi = f(s1_->point(i));
        for (std::size_t j = 0; j < n2; ++j) out[j] += fi * w_[i * n2 + j];
    }
    return out;
}

std::vector<double> JointMeasure::set_slices(const std::vector<bool>& s1_subset) const {
    if (s1_subset.size() != s1_->size())
        throw std::invalid_argument("subset mask size mismatch");
    std::vector<double> out(s2_->size(), 0.0);
    const std::size_t n2 = s2_->size();
    for (std::size_t i = 0; i < s1_->size(); ++i) {
        if (!s1_subset[i]) continue;
        for (std::size_t j = 0; j < n2; ++j) out[j] += w_[i * n2 + j];
    }
    return out;
}

JointMeasure product(const Measure& mu, const Measure& nu) {
    JointMeasure out(mu.space(), nu.space());
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j) out.set(i, j, mu[i] * nu[j]);
    return out;
}

std::string format_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    return buf;
}

}  // namespace beliefkit
