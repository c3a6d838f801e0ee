#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace beliefkit {

// Tolerance for "total mass sums to one". Set suprema are computed exactly;
// only normalization accumulates float error.
inline constexpr double kMassTol = 1e-12;

// Number of decimals used when canonicalizing belief atoms.
inline constexpr int kBeliefKeyDecimals = 12;

struct Point {
    std::string id;
    std::vector<double> coord;  // empty unless the space has a metric embedding
};

enum class Metric { Discrete, Euclidean };

/// A finite labeled metric space. Point ids are unique; with the Euclidean
/// metric all points must carry coords of equal dimension.
class Space {
  public:
    Space(std::string name, std::vector<Point> points, Metric metric = Metric::Discrete);

    const std::string& name() const { return name_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    Metric metric() const { return metric_; }

    bool contains(const std::string& id) const { return index_.count(id) > 0; }
    std::size_t index(const std::string& id) const;  // throws std::invalid_argument
    double distance(std::size_t i, std::size_t j) const;

  private:
    std::string name_;
    std::vector<Point> points_;
    Metric metric_;
    std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(std::string name, std::vector<std::string> ids);
SpacePtr make_space(std::string name, std::vector<Point> points, Metric metric);

/// Finite-support (sub-)probability measure on a Space. Marginal slices of a
/// joint kernel are sub-probabilities, so mass <= 1 is allowed everywhere;
/// is_probability() is checked only where a probability measure is required.
class Measure {
  public:
    explicit Measure(SpacePtr space);
    Measure(SpacePtr space, std::vector<double> weights);

    static Measure dirac(const SpacePtr& space, const std::string& id);
    static Measure dirac(const SpacePtr& space, std::size_t index);
    static Measure uniform(const SpacePtr& space);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    double at(const std::string& id) const;
    void set(std::size_t i, double w);
    const std::vector<double>& weights() const { return weights_; }

    double mass() const;
    bool is_probability(double tol = kMassTol) const;
    Measure normalized() const;  // throws on zero mass

    /// Sorted (point id, weight) tuple rounded to `decimals` places; two
    /// measures are the same belief atom iff the keys match.
    std::string canonical_key(int decimals = kBeliefKeyDecimals) const;

  private:
    SpacePtr space_;
    std::vector<double> weights_;
};

/// Total variation distance sup_C |mu(C) - nu(C)|, computed exactly as the
/// larger of the positive-part and negative-part sums of atom differences.
double tv_distance(const Measure& mu, const Measure& nu);

/// max(sum of positive diffs, |sum of negative diffs|); equals
/// sup_B |sum_{p in B} diffs(p)| over all subsets B.
double signed_sup_gap(std::span<const double> diffs);

/// Image measure under an index map into `target`. Mass preserved exactly.
Measure pushforward(const Measure& mu, const std::function<std::size_t(std::size_t)>& map,
                    const SpacePtr& target);
Measure pushforward(const Measure& mu,
                    const std::unordered_map<std::string, std::string>& map,
                    const SpacePtr& target);

struct FamilyMember {
    std::string name;
    double bound;  // |f| <= bound on the space
    std::function<double(const Point&)> eval;
};

/// Countable family of bounded test functions determining weak convergence.
/// Member 0 must be the constant-one function.
class FunctionFamily {
  public:
    FunctionFamily(SpacePtr space, std::vector<FamilyMember> members);

    /// {constant one} followed by the indicator of each singleton. Singletons
    /// are clopen on a finite discrete space, so this family determines weak
    /// convergence there.
    static FunctionFamily discrete_default(const SpacePtr& space);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return members_.size(); }
    const FamilyMember& member(std::size_t m) const { return members_[m]; }

    double integrate(std::size_t m, const Measure& mu) const;

  private:
    SpacePtr space_;
    std::vector<FamilyMember> members_;
};

/// rho(mu, nu) = sum_m 2^{-m} |int f_m dmu - int f_m dnu|, m starting at 1,
/// with each member scaled to uniform boundedness by max(bound, 1).
double weak_metric(const Measure& mu, const Measure& nu, const FunctionFamily& fam);

/// Measure on a product of two finite spaces, stored row-major (s1-major).
class JointMeasure {
  public:
    JointMeasure(SpacePtr s1, SpacePtr s2);
    JointMeasure(SpacePtr s1, SpacePtr s2, std::vector<double> weights);

    const SpacePtr& s1() const { return s1_; }
    const SpacePtr& s2() const { return s2_; }
    double at(std::size_t i1, std::size_t i2) const { return w_[i1 * s2_->size() + i2]; }
    void set(std::size_t i1, std::size_t i2, double v) { w_[i1 * s2_->size() + i2] = v; }
    const std::vector<double>& weights() const { return w_; }

    double mass() const;
    Measure marginal_s1() const;
    Measure marginal_s2() const;

    /// Sub-probability slice Psi(. x {s2_j}) on S1.
    Measure slice_s1(std::size_t j) const;

    /// Per-s2-atom integrals int f(s1) Psi(ds1, {s2_j}).
    std::vector<double> slice_integrals(const std::function<double(const Point&)>& f) const;

    /// Per-s2-atom masses Psi(A x {s2_j}) for a subset A of S1.
    std::vector<double> set_slices(const std::vector<bool>& s1_subset) const;

  private:
    SpacePtr s1_, s2_;
    std::vector<double> w_;
};

/// Product measure mu (x) nu.
JointMeasure product(const Measure& mu, const Measure& nu);

/// Fixed-point decimal with 17 significant digits; round-trips exactly.
std::string format_weight(double w);

}  // namespace beliefkit
