#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "beliefkit/continuity.hpp"
#include "beliefkit/kernel.hpp"
#include "beliefkit/measure.hpp"

namespace beliefkit {

// ---------------------------------------------------------------------------
// Closed-form kernels with real-valued atoms. These carry the built-in
// example models whose spaces are the real line: every evaluation is a finite list
// of weighted atoms at computed real coordinates, and every diagnostic
// reduces to finitely many atom-membership evaluations.

struct RealAtom {
    double s1;
    double s2;
    double mass;
};
using RealJoint = std::vector<RealAtom>;

struct RealKernel {
    std::function<RealJoint(double)> eval;
};

struct RealFn {
    std::string name;
    double bound;
    std::function<double(double)> f;
};

/// {1, min(|w|,1), atan(w)} — bounded continuous test functions on the line.
std::vector<RealFn> real_test_family();

struct RealSeq {
    std::vector<double> terms;
    double limit;
};

/// terms scale/1, scale/2, ..., scale/len -> limit (default 0).
RealSeq harmonic_seq(double scale = 1.0, std::size_t len = kDefaultSequenceLength,
                     double limit = 0.0);

GapReport suf_gap_real(const RealKernel& k, const RealSeq& seq, const RealFn& f,
                       const GapOptions& opt = {});

/// Worst SufA gap over real_test_family().
GapReport suf_gap_real_family(const RealKernel& k, const RealSeq& seq,
                              const GapOptions& opt = {});

/// Exact TV distance between two finite real-atom joints (atoms matched by
/// coordinates).
double tv_distance_real(const RealJoint& a, const RealJoint& b);

/// Finite union of half-open intervals [lo, hi); the witness sets for the
/// set-based conditions on real-line instances. Boundaries are the declared
/// endpoints.
struct IntervalUnion {
    std::vector<std::pair<double, double>> intervals;
    bool contains(double x) const;
    bool boundary_contains(double x) const;
    std::string describe() const;
};

/// Set-based condition gaps (WtvB / ClosedC / ContSetD / MarginalTv) for a
/// real-atom kernel; ContSetD checks the boundary-null certificate against
/// the limit evaluation and throws if it fails.
GapReport set_gap_real(const RealKernel& k, const RealSeq& seq, ConditionId cond,
                       const IntervalUnion& on_s1, const GapOptions& opt = {});

// ---------------------------------------------------------------------------
// Built-in example models.

/// The weakly-but-not-TV-continuous pair: hidden transition delta_{w+},
/// observation delta_{w-}, and the composed joint delta_{(w+, 0)}, which is
/// semi-uniform Feller although neither factor is TV-continuous.
struct Example1 {
    RealKernel p2;  // atoms (w+, 0, 1)
    RealKernel q2;  // atoms (w-, 0, 1)
    RealKernel p;   // atoms (w+, 0, 1): the composed joint on W x Y
};
Example1 example1();

/// Identity-transition model with the state fully revealed by the
/// observation: P(.|w,a) = delta_{(w,w)}. Not semi-uniform Feller, yet its
/// belief-MDP kernel q-hat is weakly continuous.
struct RemarkModel {
    RealKernel p;
};
RemarkModel remark_model();

/// Weak-convergence gaps of q-hat for the remark model along the straight
/// line z_n = (1 - 1/n) z_to + (1/n) z_from; z_to and z_from live on a shared
/// finite space of real atoms.
std::vector<double> remark_qhat_weak_gaps(const Measure& z_to, const Measure& z_from,
                                          std::size_t len = kDefaultSequenceLength);

// ---------------------------------------------------------------------------
// Ground-truth instance generation.

enum class GroundTruth { Continuous, DiscontinuousAtLimit };

/// Mixture-form kernel Psi(.|t) = (1 - g(t)) M0 + g(t) M1 on a finite product
/// space, with t in [0,1]. Continuous instances use g(t) = t and share
/// conditionals between M0 and M1, so every diagnostic gap is exactly linear
/// in t; discontinuous instances use g(t) = 1{t>0} with the S2-marginals of
/// M0 and M1 separated by TV >= 0.1, so every gap is constant and above the
/// fail floor.
struct GeneratedInstance {
    SpacePtr s1, s2;
    JointMeasure m0, m1;
    GroundTruth truth;

    double g(double t) const;
    JointMeasure eval(double t) const;
    JointKernel<double> kernel() const;
};

GeneratedInstance generate_instance(std::uint64_t seed, GroundTruth truth, std::size_t n1,
                                    std::size_t n2);

/// The harmonic parameter sequence t_n = 1/n -> 0 used with generated
/// instances.
ParamSequence<double> instance_sequence(std::size_t len = kDefaultSequenceLength);

/// Exhaustive max over all 2^{|S2|} subsets B of
/// |int f dPsi_a(., B) - int f dPsi_b(., B)|; the oracle for signed_sup_gap.
/// Refuses |S2| > 10.
double brute_force_gap(const JointMeasure& a, const JointMeasure& b,
                       const std::function<double(const Point&)>& f);

// ---------------------------------------------------------------------------
// Toggled product-form families: P1(.|t) = delta at a moving real atom
// (weakly continuous iff the atom path is continuous) and Q1(.|t) a mixture
// on two fixed observation atoms (TV-continuous iff the mixing weight is).

struct Pomdp1Family {
    bool p1_weakly_continuous;
    bool q1_tv_continuous;
    RealKernel p;                           // product joint on W x Y
    std::function<double(double)> p1_atom;  // hidden-state atom path
    std::function<std::pair<double, double>(double)> q1_weights;  // masses at y=0,1
};
Pomdp1Family make_pomdp1_family(std::uint64_t seed, bool p1_weak, bool q1_tv);

/// Weak-continuity gaps of the P1 factor along seq (via the real test family)
/// and TV gaps of the Q1 factor.
std::vector<double> pomdp1_p1_weak_gaps(const Pomdp1Family& fam, const RealSeq& seq);
std::vector<double> pomdp1_q1_tv_gaps(const Pomdp1Family& fam, const RealSeq& seq);

// ---------------------------------------------------------------------------
// Preservation-test instances: a kernel on S1 x S2 given S3 x [0,1] of the
// same mixture form per s3 slot, discontinuities aligned across slots so no
// mixing measure can cancel them.

struct PreservationInstance {
    SpacePtr s1, s2, s3;
    std::vector<JointMeasure> m0, m1;  // per s3 slot
    GroundTruth truth;

    JointMeasure xi(std::size_t s3_index, double t) const;
};
PreservationInstance generate_preservation_instance(std::uint64_t seed, GroundTruth truth);

}  // namespace beliefkit
