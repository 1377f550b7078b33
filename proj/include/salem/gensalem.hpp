#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "salem/numrep.hpp"
#include "salem/permspec.hpp"

namespace salem {

// The triple (P, R, (n_k)) defining one generalized Salem function
//   G(s) = gamma_{i_{n_1}} + sum_{k>=2} gamma_{i_{n_k}} prod_{t<k} r_{i_{n_t}},
// where s = Delta^P_{i_1 i_2 ...}.
class GenSalemSpec {
public:
    GenSalemSpec(ProbabilityVector p, CoefficientVector r, IndexSequence perm = IndexSequence::identity());

    unsigned radix() const noexcept { return p_.radix(); }
    const ProbabilityVector& P() const noexcept { return p_; }
    const CoefficientVector& R() const noexcept { return r_; }
    const IndexSequence& perm() const noexcept { return perm_; }
    ProbabilitySchedule schedule() const { return ProbabilitySchedule::constant(p_); }

private:
    ProbabilityVector p_;
    CoefficientVector r_;
    IndexSequence perm_;
};

inline constexpr std::size_t kRealArgumentDepth = 64;

// Classical Salem function: the P-representation value of d.
EvalResult salem_S(const DigitString& d, const ProbabilityVector& p, double tol);

// G by direct summation of the permuted series.
EvalResult eval_G_series(const DigitString& d, const GenSalemSpec& spec, double tol);
// Real-argument convenience path: encodes s at depth 64 first.
EvalResult eval_G_series(double s, const GenSalemSpec& spec, double tol);

enum class FeqTail {
    Bound,   // remainder left out and bounded by |prod r| * sup|G|
    Series,  // remainder closed by the series evaluator on the shifted string
};

// G by unrolling the functional-equation system `depth` times: each step
// reads the leading digit of the current string through the adjusted index
// and removes it with a generalized shift.
EvalResult eval_G_feq(const DigitString& d, const GenSalemSpec& spec, std::size_t depth,
                      FeqTail tail = FeqTail::Bound);

// |LHS - RHS| of the k-th equation of the system, both sides evaluated by the
// series on the shifted digit strings.
double feq_residual(const DigitString& d, const GenSalemSpec& spec, std::size_t k, double tol = 1e-12);

// Product of r over the base digits: the increment of G on the set of
// arguments whose digits at positions n_1..n_t equal `base`.
double increment(const GenSalemSpec& spec, std::span<const Digit> base);
// Infimum and supremum digit strings of that set (zeros / q-1 elsewhere).
std::pair<DigitString, DigitString> constrained_extremes(const GenSalemSpec& spec, std::span<const Digit> base);

// Closed-form Lebesgue integral of G over [0, 1].
double integral(const GenSalemSpec& spec);
// Cylinder-exact Riemann sum: every cylinder is split until its length is at
// most `cell_length`, and G is sampled at its left endpoint.
double integral_quadrature(const GenSalemSpec& spec, double cell_length = 1e-6);

struct Continuity {
    enum class Kind { Continuous, Jump };
    Kind kind = Kind::Continuous;
    double left = 0.0;
    double right = 0.0;
    // The permutation condition for continuity at a rational point of rank m;
    // true at irrational points.
    bool predicate = true;
    std::size_t rank = 0;
};

inline constexpr double kTwinAgreement = 1e-9;

Continuity classify_continuity(const DigitString& point, const GenSalemSpec& spec);
Continuity classify_continuity(double point, const GenSalemSpec& spec);
// The permutation condition for a rational point whose finite form has length m.
bool continuity_predicate(const IndexSequence& perm, std::size_t m);

enum class DiscontinuitySet { Empty, Finite, Countable };
DiscontinuitySet classify_discontinuity_set(const GenSalemSpec& spec);

enum class Monotonicity {
    StrictlyIncreasing,
    NonDecreasing,
    ConstantAE,
    NoMonotonicityIntervals,
    HasSomeMonotonicityInterval,
};
// Throws UnclassifiedError for parameter mixes outside the known cases.
Monotonicity classify_monotonicity(const GenSalemSpec& spec);

std::string_view to_string(DiscontinuitySet v);
std::string_view to_string(Monotonicity v);

// Ratios increment/length of the rank-m cylinders containing d, m = 1..max_rank.
std::vector<double> derivative_diagnostic(const DigitString& d, const GenSalemSpec& spec, std::size_t max_rank);

}  // namespace salem
