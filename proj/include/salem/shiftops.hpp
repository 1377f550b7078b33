#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "salem/numrep.hpp"

namespace salem {

// Generalized shift sigma_m on the digit side: removes the digit at position
// m (m = 1 is the ordinary shift). Tail policy is preserved.
DigitString shift_digits(const DigitString& d, std::size_t m);

// sigma_m on the value side,
//   (s - (1 - p_{i_m,m}) v_{m-1} - beta_{i_m,m} prod_{k<m} p_{i_k,k}) / p_{i_m,m},
// where v_{m-1} decodes the first m-1 digits of d. The result is the decode of
// shift_digits(d, m) under sched.without_position(m).
// Throws InconsistencyError if s is farther than 10 * tol from decode(d).
EvalResult sigma_m_value(double s, const DigitString& d, std::size_t m, const ProbabilitySchedule& sched,
                         double tol);

// Inverse of sigma^m: the number whose first digits are `prefix` and whose
// m-fold shift (decoded under P_{m+1}, P_{m+2}, ...) is `shifted_value`.
double reconstruct(std::span<const Digit> prefix, double shifted_value, const ProbabilitySchedule& sched);

// Sequential form of a simultaneous deletion: applying sigma at adjusted[0],
// then adjusted[1], ... erases the digits originally at `targets`.
struct DeletionPlan {
    std::vector<std::size_t> targets;
    std::vector<std::size_t> rho;
    std::vector<std::size_t> adjusted;
};

DeletionPlan plan_deletions(std::span<const std::size_t> targets);
// Quadratic reference implementation; must agree with plan_deletions.
DeletionPlan plan_deletions_by_scan(std::span<const std::size_t> targets);

DigitString apply_deletions(const DigitString& d, const DeletionPlan& plan);

// sigma_{n2}(sigma_{n1}(d)).
DigitString compose_two(const DigitString& d, std::size_t n1, std::size_t n2);

}  // namespace salem
