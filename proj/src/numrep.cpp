#include "salem/numrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "salem/counter_rng.hpp"

namespace salem {

namespace {

// Cap on digits consumed by truncated tails; reached only for tolerances far
// below double resolution.
constexpr std::size_t kMaxTailDigits = 1u << 16;

std::vector<double> prefix_sums(const std::vector<double>& w) {
    std::vector<double> c(w.size(), 0.0);
    for (std::size_t j = 1; j < w.size(); ++j) {
        c[j] = c[j - 1] + w[j - 1];
    }
    return c;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> weights) : p_(std::move(weights)) {
    if (p_.size() < 2) {
        throw DomainError("probability vector needs radix q >= 2");
    }
    for (std::size_t j = 0; j < p_.size(); ++j) {
        if (!std::isfinite(p_[j]) || p_[j] <= 0.0) {
            throw DomainError("probability weight p_" + std::to_string(j) + " must be positive");
        }
    }
    const double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw DomainError("probability weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
    beta_ = prefix_sums(p_);
    max_ = *std::max_element(p_.begin(), p_.end());
}

ProbabilityVector ProbabilityVector::uniform(unsigned q) {
    if (q < 2) {
        throw DomainError("probability vector needs radix q >= 2");
    }
    return ProbabilityVector(std::vector<double>(q, 1.0 / q));
}

CoefficientVector::CoefficientVector(std::vector<double> coefficients) : r_(std::move(coefficients)) {
    if (r_.size() < 2) {
        throw DomainError("coefficient vector needs radix q >= 2");
    }
    for (std::size_t j = 0; j < r_.size(); ++j) {
        if (!std::isfinite(r_[j]) || std::abs(r_[j]) >= 1.0) {
            throw DomainError("coefficient r_" + std::to_string(j) + " must satisfy |r| < 1");
        }
    }
    gamma_ = prefix_sums(r_);
    const double sum = std::accumulate(r_.begin(), r_.end(), 0.0);
    distributional_ = std::all_of(r_.begin(), r_.end(), [](double r) { return r > 0.0; }) &&
                      std::abs(sum - 1.0) <= kWeightSumTolerance;
    for (double r : r_) {
        max_abs_ = std::max(max_abs_, std::abs(r));
    }
    double gamma_max = 0.0;
    for (double g : gamma_) {
        gamma_max = std::max(gamma_max, std::abs(g));
    }
    const Digit top = radix() - 1;
    if (distributional_) {
        // gamma_{q-1} + r_{q-1} = 1, so the all-(q-1) series sums to exactly 1.
        tail_sup_ = 1.0;
        max_digit_value_ = 1.0;
    } else {
        tail_sup_ = gamma_max / (1.0 - max_abs_);
        max_digit_value_ = gamma_[top] / (1.0 - r_[top]);
    }
}

ProbabilitySchedule::ProbabilitySchedule(Kind kind, std::vector<ProbabilityVector> list)
    : kind_(kind), list_(std::make_shared<const std::vector<ProbabilityVector>>(std::move(list))) {
    for (const auto& pv : *list_) {
        if (pv.radix() != list_->front().radix()) {
            throw DomainError("all schedule vectors must share one radix");
        }
        max_ = std::max(max_, pv.max_weight());
    }
}

ProbabilitySchedule ProbabilitySchedule::constant(ProbabilityVector p) {
    return ProbabilitySchedule(Kind::Constant, {std::move(p)});
}

ProbabilitySchedule ProbabilitySchedule::periodic(std::vector<ProbabilityVector> list) {
    if (list.empty()) {
        throw DomainError("periodic schedule needs at least one vector");
    }
    return ProbabilitySchedule(Kind::PeriodicList, std::move(list));
}

std::size_t ProbabilitySchedule::original_position(std::size_t k) const {
    std::size_t o = k;
    for (std::size_t removed : deleted_) {
        if (removed <= o) {
            ++o;
        } else {
            break;
        }
    }
    return o;
}

const ProbabilityVector& ProbabilitySchedule::at(std::size_t k) const {
    if (k == 0) {
        throw DomainError("schedule positions start at 1");
    }
    if (list_->size() == 1) {
        return list_->front();
    }
    return (*list_)[(original_position(k) - 1) % list_->size()];
}

ProbabilitySchedule ProbabilitySchedule::without_position(std::size_t m) const {
    if (m == 0) {
        throw DomainError("schedule positions start at 1");
    }
    ProbabilitySchedule out = *this;
    const std::size_t o = original_position(m);
    out.deleted_.insert(std::upper_bound(out.deleted_.begin(), out.deleted_.end(), o), o);
    return out;
}

DigitString::DigitString(unsigned radix, std::vector<Digit> prefix, Tail tail)
    : radix_(radix), prefix_(std::move(prefix)), tail_(std::move(tail)) {
    if (radix_ < 2) {
        throw DomainError("digit strings need radix q >= 2");
    }
    auto check = [this](Digit d) {
        if (d >= radix_) {
            throw DomainError("digit " + std::to_string(d) + " outside 0.." + std::to_string(radix_ - 1));
        }
    };
    std::for_each(prefix_.begin(), prefix_.end(), check);
    if (auto* per = std::get_if<Periodic>(&tail_)) {
        if (per->pattern.empty()) {
            throw DomainError("periodic tail needs a nonempty pattern");
        }
        std::for_each(per->pattern.begin(), per->pattern.end(), check);
        const auto& pat = per->pattern;
        if (std::all_of(pat.begin(), pat.end(), [](Digit d) { return d == 0; })) {
            tail_ = Zeros{};
        } else if (std::all_of(pat.begin(), pat.end(), [this](Digit d) { return d == radix_ - 1; })) {
            tail_ = MaxDigits{};
        }
    }
}

Digit DigitString::digit_at(std::size_t k) const {
    if (k == 0) {
        throw DomainError("digit positions start at 1");
    }
    if (k <= prefix_.size()) {
        return prefix_[k - 1];
    }
    const std::size_t t = k - prefix_.size() - 1;
    return std::visit(
        [&](const auto& tail) -> Digit {
            using T = std::decay_t<decltype(tail)>;
            if constexpr (std::is_same_v<T, Zeros>) {
                return 0;
            } else if constexpr (std::is_same_v<T, MaxDigits>) {
                return radix_ - 1;
            } else if constexpr (std::is_same_v<T, Periodic>) {
                return tail.pattern[t % tail.pattern.size()];
            } else {
                return counter_below(tail.seed, tail.offset + t, radix_);
            }
        },
        tail_);
}

std::vector<Digit> DigitString::materialize(std::size_t n) const {
    std::vector<Digit> out(n);
    for (std::size_t k = 1; k <= n; ++k) {
        out[k - 1] = digit_at(k);
    }
    return out;
}

bool DigitString::all_zero() const {
    return has_zeros_tail() && std::all_of(prefix_.begin(), prefix_.end(), [](Digit d) { return d == 0; });
}

bool DigitString::all_max() const {
    return has_max_tail() &&
           std::all_of(prefix_.begin(), prefix_.end(), [this](Digit d) { return d == radix_ - 1; });
}

bool digit_equal(const DigitString& a, const DigitString& b, std::size_t depth) {
    for (std::size_t k = 1; k <= depth; ++k) {
        if (a.digit_at(k) != b.digit_at(k)) {
            return false;
        }
    }
    return true;
}

Cylinder::Cylinder(unsigned radix, std::vector<Digit> base) : radix_(radix), base_(std::move(base)) {
    if (base_.empty()) {
        throw DomainError("cylinder rank must be at least 1");
    }
    for (Digit d : base_) {
        if (d >= radix_) {
            throw DomainError("cylinder digit outside alphabet");
        }
    }
}

EvalResult decode(const DigitString& d, const ProbabilitySchedule& sched, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("decode tolerance must be positive");
    }
    if (d.radix() != sched.radix()) {
        throw DomainError("digit string and schedule radix differ");
    }
    double value = 0.0;
    double weight = 1.0;
    std::size_t k = 1;
    for (Digit digit : d.prefix()) {
        const auto& pv = sched.at(k++);
        value += weight * pv.beta(digit);
        weight *= pv.p(digit);
    }
    if (d.has_zeros_tail()) {
        return {value, 0.0};
    }
    if (d.has_max_tail()) {
        // The all-(q-1) tail decodes to exactly 1 under any schedule.
        return {std::min(value + weight, 1.0), 0.0};
    }
    const std::size_t stop = k + kMaxTailDigits;
    while (weight > tol && k < stop) {
        const Digit digit = d.digit_at(k);
        const auto& pv = sched.at(k++);
        value += weight * pv.beta(digit);
        weight *= pv.p(digit);
    }
    return {std::min(value, 1.0), weight};
}

DigitString encode(double x, const ProbabilitySchedule& sched, std::size_t depth) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("encode argument must lie in [0, 1]");
    }
    const unsigned q = sched.radix();
    if (x == 1.0) {
        return DigitString(q, std::vector<Digit>(depth, q - 1), DigitString::MaxDigits{});
    }
    std::vector<Digit> digits;
    digits.reserve(depth);
    double y = x;
    for (std::size_t k = 1; k <= depth; ++k) {
        const auto& pv = sched.at(k);
        const auto beta = pv.cumulative();
        const auto it = std::upper_bound(beta.begin(), beta.end(), y);
        const auto j = static_cast<Digit>(std::distance(beta.begin(), it) - 1);
        digits.push_back(j);
        y = (y - pv.beta(j)) / pv.p(j);
        // Rounding can push the residual just outside [0, 1).
        y = std::clamp(y, 0.0, std::nextafter(1.0, 0.0));
    }
    return DigitString(q, std::move(digits), DigitString::Zeros{});
}

Rationality classify_rationality(const DigitString& d) {
    Rationality out;
    const unsigned q = d.radix();
    const auto& prefix = d.prefix();
    if (d.has_zeros_tail()) {
        out.rational = true;
        const auto last = std::find_if(prefix.rbegin(), prefix.rend(), [](Digit x) { return x != 0; });
        const auto m = static_cast<std::size_t>(std::distance(last, prefix.rend()));
        out.rank = m;
        out.zeros_form = DigitString(q, {prefix.begin(), prefix.begin() + m}, DigitString::Zeros{});
        if (m > 0) {
            std::vector<Digit> twin(prefix.begin(), prefix.begin() + m);
            twin.back() -= 1;
            out.max_form = DigitString(q, std::move(twin), DigitString::MaxDigits{});
        }
        return out;
    }
    if (d.has_max_tail()) {
        out.rational = true;
        const auto last = std::find_if(prefix.rbegin(), prefix.rend(), [q](Digit x) { return x != q - 1; });
        const auto m = static_cast<std::size_t>(std::distance(last, prefix.rend()));
        out.rank = m;
        out.max_form = DigitString(q, {prefix.begin(), prefix.begin() + m}, DigitString::MaxDigits{});
        if (m > 0) {
            std::vector<Digit> twin(prefix.begin(), prefix.begin() + m);
            twin.back() += 1;
            out.zeros_form = DigitString(q, std::move(twin), DigitString::Zeros{});
        }
        return out;
    }
    return out;
}

std::pair<double, double> cylinder_bounds(const Cylinder& c, const ProbabilitySchedule& sched) {
    const DigitString lo(c.radix(), c.base(), DigitString::Zeros{});
    const DigitString hi(c.radix(), c.base(), DigitString::MaxDigits{});
    return {decode(lo, sched, 1e-300).value, decode(hi, sched, 1e-300).value};
}

double cylinder_length(const Cylinder& c, const ProbabilitySchedule& sched) {
    if (c.radix() != sched.radix()) {
        throw DomainError("cylinder and schedule radix differ");
    }
    double len = 1.0;
    for (std::size_t k = 0; k < c.rank(); ++k) {
        len *= sched.at(k + 1).p(c.base()[k]);
    }
    return len;
}

}  // namespace salem
