#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "salem/types.hpp"

namespace salem {

inline constexpr double kWeightSumTolerance = 1e-12;

// Weights p_0..p_{q-1} of one expansion position and their cumulative sums
// beta_j = p_0 + ... + p_{j-1}.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> weights);
    static ProbabilityVector uniform(unsigned q);

    unsigned radix() const noexcept { return static_cast<unsigned>(p_.size()); }
    double p(Digit j) const { return p_.at(j); }
    double beta(Digit j) const { return beta_.at(j); }
    std::span<const double> weights() const noexcept { return p_; }
    std::span<const double> cumulative() const noexcept { return beta_; }
    double max_weight() const noexcept { return max_; }

    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
    std::vector<double> p_;
    std::vector<double> beta_;
    double max_ = 0.0;
};

// Coefficients r_0..r_{q-1} with |r_j| < 1 and cumulative sums gamma_j.
// Negative entries are allowed; `distributional()` is true when R is itself a
// probability vector.
class CoefficientVector {
public:
    explicit CoefficientVector(std::vector<double> coefficients);

    unsigned radix() const noexcept { return static_cast<unsigned>(r_.size()); }
    double r(Digit j) const { return r_.at(j); }
    double gamma(Digit j) const { return gamma_.at(j); }
    std::span<const double> coefficients() const noexcept { return r_; }
    std::span<const double> cumulative() const noexcept { return gamma_; }
    bool distributional() const noexcept { return distributional_; }
    double max_abs() const noexcept { return max_abs_; }

    // Supremum of |value| over all digit strings of the R-series.
    double tail_sup() const noexcept { return tail_sup_; }
    // Value of the R-series on the all-(q-1) digit string.
    double max_digit_value() const noexcept { return max_digit_value_; }

    friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

private:
    std::vector<double> r_;
    std::vector<double> gamma_;
    bool distributional_ = false;
    double max_abs_ = 0.0;
    double tail_sup_ = 0.0;
    double max_digit_value_ = 0.0;
};

// Position-dependent weights (P_k), k >= 1: a constant vector or a periodic
// list. Deleting positions yields a view over the same list.
class ProbabilitySchedule {
public:
    enum class Kind { Constant, PeriodicList };

    static ProbabilitySchedule constant(ProbabilityVector p);
    static ProbabilitySchedule periodic(std::vector<ProbabilityVector> list);

    Kind kind() const noexcept { return kind_; }
    unsigned radix() const noexcept { return list_->front().radix(); }
    std::size_t period() const noexcept { return list_->size(); }
    const ProbabilityVector& at(std::size_t k) const;
    double max_weight() const noexcept { return max_; }

    // The schedule (P_1, ..., P_{m-1}, P_{m+1}, ...).
    ProbabilitySchedule without_position(std::size_t m) const;

private:
    ProbabilitySchedule(Kind kind, std::vector<ProbabilityVector> list);
    std::size_t original_position(std::size_t k) const;

    Kind kind_;
    std::shared_ptr<const std::vector<ProbabilityVector>> list_;
    std::vector<std::size_t> deleted_;
    double max_ = 0.0;
};

// Infinite digit sequence i_1 i_2 ... over 0..q-1: a finite prefix followed by
// one of a closed set of tail policies.
class DigitString {
public:
    struct Zeros {
        friend bool operator==(const Zeros&, const Zeros&) = default;
    };
    struct MaxDigits {
        friend bool operator==(const MaxDigits&, const MaxDigits&) = default;
    };
    struct Periodic {
        std::vector<Digit> pattern;
        friend bool operator==(const Periodic&, const Periodic&) = default;
    };
    // Pseudo-random digits keyed by (seed, offset + index into the tail).
    struct Seeded {
        std::uint64_t seed = 0;
        std::uint64_t offset = 0;
        friend bool operator==(const Seeded&, const Seeded&) = default;
    };
    using Tail = std::variant<Zeros, MaxDigits, Periodic, Seeded>;

    // Periodic tails whose pattern is constant 0 or q-1 are normalized to
    // Zeros / MaxDigits.
    DigitString(unsigned radix, std::vector<Digit> prefix, Tail tail = Zeros{});

    unsigned radix() const noexcept { return radix_; }
    const std::vector<Digit>& prefix() const noexcept { return prefix_; }
    const Tail& tail() const noexcept { return tail_; }

    bool has_zeros_tail() const noexcept { return std::holds_alternative<Zeros>(tail_); }
    bool has_max_tail() const noexcept { return std::holds_alternative<MaxDigits>(tail_); }

    // 1-based digit access, total for k >= 1.
    Digit digit_at(std::size_t k) const;
    std::vector<Digit> materialize(std::size_t n) const;

    // True when every digit is 0 (resp. q-1).
    bool all_zero() const;
    bool all_max() const;

    friend bool operator==(const DigitString&, const DigitString&) = default;

private:
    unsigned radix_;
    std::vector<Digit> prefix_;
    Tail tail_;
};

bool digit_equal(const DigitString& a, const DigitString& b, std::size_t depth);

// Closed interval of all numbers whose expansion starts with `base`.
class Cylinder {
public:
    Cylinder(unsigned radix, std::vector<Digit> base);

    unsigned radix() const noexcept { return radix_; }
    std::size_t rank() const noexcept { return base_.size(); }
    const std::vector<Digit>& base() const noexcept { return base_; }

private:
    unsigned radix_;
    std::vector<Digit> base_;
};

struct Rationality {
    bool rational = false;
    // Twin forms ...i_m 000... and ...[i_m - 1][q-1][q-1]...; only one exists
    // at the endpoints 0 and 1.
    std::optional<DigitString> zeros_form;
    std::optional<DigitString> max_form;
    // Position m of the last digit of the finite (zeros-tail) form; 0 at the
    // endpoints.
    std::size_t rank = 0;
};

EvalResult decode(const DigitString& d, const ProbabilitySchedule& sched, double tol);
DigitString encode(double x, const ProbabilitySchedule& sched, std::size_t depth);
Rationality classify_rationality(const DigitString& d);
std::pair<double, double> cylinder_bounds(const Cylinder& c, const ProbabilitySchedule& sched);
double cylinder_length(const Cylinder& c, const ProbabilitySchedule& sched);

}  // namespace salem
