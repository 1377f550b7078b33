#include "salem/shiftops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salem/fenwick.hpp"

namespace salem {

DigitString shift_digits(const DigitString& d, std::size_t m) {
    if (m == 0) {
        throw DomainError("shift position must be at least 1");
    }
    const unsigned q = d.radix();
    const std::size_t len = d.prefix().size();
    if (m <= len) {
        auto prefix = d.prefix();
        prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(m - 1));
        return DigitString(q, std::move(prefix), d.tail());
    }
    if (d.has_zeros_tail() || d.has_max_tail()) {
        return d;
    }
    // Deleting inside a periodic or seeded tail: materialize up to m-1 and
    // re-phase the tail so that new position j >= m reads old position j+1.
    auto prefix = d.materialize(m - 1);
    const std::size_t skip = m - len;
    if (const auto* per = std::get_if<DigitString::Periodic>(&d.tail())) {
        const auto& pat = per->pattern;
        std::vector<Digit> rotated(pat.size());
        for (std::size_t t = 0; t < pat.size(); ++t) {
            rotated[t] = pat[(t + skip) % pat.size()];
        }
        return DigitString(q, std::move(prefix), DigitString::Periodic{std::move(rotated)});
    }
    const auto& seeded = std::get<DigitString::Seeded>(d.tail());
    return DigitString(q, std::move(prefix), DigitString::Seeded{seeded.seed, seeded.offset + skip});
}

EvalResult sigma_m_value(double s, const DigitString& d, std::size_t m, const ProbabilitySchedule& sched,
                         double tol) {
    if (m == 0) {
        throw DomainError("shift position must be at least 1");
    }
    const EvalResult exact = decode(d, sched, tol);
    const double gap = std::abs(exact.value - s);
    if (gap > 10.0 * tol + exact.bound) {
        throw InconsistencyError("value " + std::to_string(s) + " does not match its digit string");
    }
    double v = 0.0;
    double weight = 1.0;
    for (std::size_t k = 1; k < m; ++k) {
        const auto& pv = sched.at(k);
        const Digit digit = d.digit_at(k);
        v += weight * pv.beta(digit);
        weight *= pv.p(digit);
    }
    const auto& pm = sched.at(m);
    const Digit im = d.digit_at(m);
    const double pim = pm.p(im);
    const double value = (s - (1.0 - pim) * v - pm.beta(im) * weight) / pim;
    return {value, (gap + exact.bound) / pim};
}

double reconstruct(std::span<const Digit> prefix, double shifted_value, const ProbabilitySchedule& sched) {
    double value = 0.0;
    double weight = 1.0;
    std::size_t k = 1;
    for (Digit digit : prefix) {
        const auto& pv = sched.at(k++);
        value += weight * pv.beta(digit);
        weight *= pv.p(digit);
    }
    return value + shifted_value * weight;
}

namespace {

void check_targets(std::span<const std::size_t> targets, std::vector<std::size_t>& sorted) {
    sorted.assign(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.front() == 0) {
        throw DomainError("deletion targets are positive positions");
    }
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        throw DuplicateTargetError("deletion target " + std::to_string(*dup) + " repeated");
    }
}

}  // namespace

DeletionPlan plan_deletions(std::span<const std::size_t> targets) {
    std::vector<std::size_t> sorted;
    check_targets(targets, sorted);
    DeletionPlan plan{{targets.begin(), targets.end()}, {}, {}};
    plan.rho.reserve(targets.size());
    plan.adjusted.reserve(targets.size());
    FenwickCounter seen(sorted.size());
    for (std::size_t n : targets) {
        const auto rank = static_cast<std::size_t>(
            std::distance(sorted.begin(), std::lower_bound(sorted.begin(), sorted.end(), n)));
        const std::size_t rho = seen.count_less(rank);
        seen.insert(rank);
        plan.rho.push_back(rho);
        plan.adjusted.push_back(n - rho);
    }
    return plan;
}

DeletionPlan plan_deletions_by_scan(std::span<const std::size_t> targets) {
    std::vector<std::size_t> sorted;
    check_targets(targets, sorted);
    DeletionPlan plan{{targets.begin(), targets.end()}, {}, {}};
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto rho = static_cast<std::size_t>(
            std::count_if(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(i),
                          [&](std::size_t n) { return n < targets[i]; }));
        plan.rho.push_back(rho);
        plan.adjusted.push_back(targets[i] - rho);
    }
    return plan;
}

DigitString apply_deletions(const DigitString& d, const DeletionPlan& plan) {
    DigitString out = d;
    for (std::size_t m : plan.adjusted) {
        out = shift_digits(out, m);
    }
    return out;
}

DigitString compose_two(const DigitString& d, std::size_t n1, std::size_t n2) {
    return shift_digits(shift_digits(d, n1), n2);
}

}  // namespace salem
