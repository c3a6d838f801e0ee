#pragma once

#include <functional>
#include <vector>

#include "beliefkit/measure.hpp"

namespace beliefkit {

/// Stochastic kernel on S1 x S2 whose conditioning parameter has type P.
/// Evaluation must be pure: the same parameter always yields the same joint
/// measure, and every evaluation is a probability measure.
template <class P>
struct JointKernel {
    SpacePtr s1, s2;
    std::function<JointMeasure(const P&)> eval;
};

/// A declared convergent parameter sequence: the stimulus for all
/// continuity diagnostics.
template <class P>
struct ParamSequence {
    std::vector<P> terms;
    P limit;
};

/// Factorization of one joint evaluation into the S2-marginal and the
/// conditional kernel on S1 given each S2 atom. Atoms with zero marginal
/// mass get the uniform conditional; any choice is valid there, and uniform
/// is deterministic and reproducible.
struct Disintegration {
    Measure marginal;                  // on S2
    std::vector<Measure> conditional;  // per S2 atom, probability on S1
    std::vector<bool> null_atom;       // true where the marginal mass is zero
};

Disintegration disintegrate(const JointMeasure& psi);

/// Re-assembles the joint measure from a disintegration; inverse of
/// disintegrate up to float round-off.
JointMeasure reconstruct(const Disintegration& d, const SpacePtr& s1, const SpacePtr& s2);

/// One evaluation of the belief-valued kernel phi on P(S1) x S2: the image of
/// the S2-marginal under s2 -> (conditional belief at s2, s2). Distinct s2
/// atoms mapping to equal beliefs merge by canonical key within the same s2
/// atom only.
struct BeliefAtomDist {
    struct Atom {
        Measure belief;   // probability on S1
        std::string key;  // canonical key of the belief
        std::size_t s2;
        double mass;
    };
    std::vector<Atom> atoms;  // sorted by (s2, key)

    double mass() const;
    /// Marginal on S2 (equals the joint kernel's S2-marginal).
    Measure marginal_s2(const SpacePtr& s2_space) const;
};

BeliefAtomDist belief_kernel_phi(const JointMeasure& psi);

/// Integrates a kernel slice family against a mixing measure:
/// PsiHat(A x B | mu) = sum_{s3} Xi(A x B | s3) mu({s3}). Linear in mu.
JointMeasure integrate_kernel(const std::function<JointMeasure(std::size_t)>& xi_at_s3,
                              const Measure& mu);

/// Product-form joint row P(.|w,a) = P1(.|w,a) (x) Q1(.|w,a).
JointMeasure product_pomdp1_row(const Measure& p1_row, const Measure& q1_row);

/// Composed joint row P({w'} x {y} | w,a) = P2({w'}|w,a) Q2({y}|a,w').
/// q2_of_wnext(i) is the observation row conditioned on the new hidden state.
JointMeasure compose_pomdp2_row(const Measure& p2_row,
                                const std::function<const Measure&(std::size_t)>& q2_of_wnext);

}  // namespace beliefkit
