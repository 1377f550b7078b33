#include "salem/gensalem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salem/parallel.hpp"
#include "salem/shiftops.hpp"

namespace salem {

namespace {

constexpr std::size_t kMaxSeriesTerms = 1u << 16;
constexpr double kClosureTolerance = 1e-15;

// Reads the argument digits in the order n_1, n_2, ...
struct PermutedOrder {
    const IndexSequence& perm;

    std::size_t index_at(std::size_t k) const { return perm.n_at(k); }
    // Smallest K such that every k > K reads a position beyond `len`.
    std::size_t horizon(std::size_t len) const { return len == 0 ? 0 : perm.k0_for_m(len); }
};

// The order in which the remaining digits are read once the digits at
// n_1..n_j have been deleted: k -> n_{j+k} minus the deleted positions below it.
class ResidualOrder {
public:
    ResidualOrder(const IndexSequence& perm, std::size_t removed) : perm_(perm), removed_(removed) {
        deleted_.reserve(removed);
        for (std::size_t t = 1; t <= removed; ++t) {
            deleted_.push_back(perm.n_at(t));
        }
        std::sort(deleted_.begin(), deleted_.end());
    }

    std::size_t index_at(std::size_t k) const {
        const std::size_t n = perm_.n_at(removed_ + k);
        return n - below(n);
    }

    std::size_t horizon(std::size_t len) const {
        std::size_t best = 0;
        std::size_t original = 0;
        auto it = deleted_.begin();
        for (std::size_t p = 1; p <= len; ++p) {
            ++original;
            while (it != deleted_.end() && *it == original) {
                ++original;
                ++it;
            }
            best = std::max(best, perm_.preimage(original) - removed_);
        }
        return best;
    }

private:
    std::size_t below(std::size_t n) const {
        return static_cast<std::size_t>(std::lower_bound(deleted_.begin(), deleted_.end(), n) - deleted_.begin());
    }

    const IndexSequence& perm_;
    std::size_t removed_;
    std::vector<std::size_t> deleted_;
};

template <class Order>
EvalResult series(const DigitString& d, const CoefficientVector& R, const Order& order, double tol) {
    double value = 0.0;
    double weight = 1.0;
    auto step = [&](std::size_t k) {
        const Digit c = d.digit_at(order.index_at(k));
        value += weight * R.gamma(c);
        weight *= R.r(c);
    };
    if (d.has_zeros_tail() || d.has_max_tail()) {
        const std::size_t horizon = order.horizon(d.prefix().size());
        for (std::size_t k = 1; k <= horizon; ++k) {
            step(k);
        }
        if (d.has_max_tail()) {
            value += weight * R.max_digit_value();
        }
        return {value, 0.0};
    }
    for (std::size_t k = 1; std::abs(weight) * R.tail_sup() > tol && k <= kMaxSeriesTerms; ++k) {
        step(k);
    }
    return {value, std::abs(weight) * R.tail_sup()};
}

void require_tolerance(double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("evaluation tolerance must be positive");
    }
}

void require_radix(const DigitString& d, const GenSalemSpec& spec) {
    if (d.radix() != spec.radix()) {
        throw DomainError("argument radix differs from the function radix");
    }
}

std::vector<std::size_t> leading_indices(const IndexSequence& perm, std::size_t count) {
    std::vector<std::size_t> out(count);
    for (std::size_t k = 1; k <= count; ++k) {
        out[k - 1] = perm.n_at(k);
    }
    return out;
}

}  // namespace

GenSalemSpec::GenSalemSpec(ProbabilityVector p, CoefficientVector r, IndexSequence perm)
    : p_(std::move(p)), r_(std::move(r)), perm_(std::move(perm)) {
    if (p_.radix() != r_.radix()) {
        throw DomainError("P and R must have the same radix");
    }
}

EvalResult salem_S(const DigitString& d, const ProbabilityVector& p, double tol) {
    return decode(d, ProbabilitySchedule::constant(p), tol);
}

EvalResult eval_G_series(const DigitString& d, const GenSalemSpec& spec, double tol) {
    require_tolerance(tol);
    require_radix(d, spec);
    return series(d, spec.R(), PermutedOrder{spec.perm()}, tol);
}

EvalResult eval_G_series(double s, const GenSalemSpec& spec, double tol) {
    return eval_G_series(encode(s, spec.schedule(), kRealArgumentDepth), spec, tol);
}

EvalResult eval_G_feq(const DigitString& d, const GenSalemSpec& spec, std::size_t depth, FeqTail tail) {
    if (depth == 0) {
        throw DomainError("functional-equation depth must be at least 1");
    }
    require_radix(d, spec);
    const auto& R = spec.R();
    const auto targets = leading_indices(spec.perm(), depth);
    const DeletionPlan plan = plan_deletions(targets);

    DigitString current = d;
    double value = 0.0;
    double weight = 1.0;
    for (std::size_t m : plan.adjusted) {
        if (current.all_zero()) {
            return {value, 0.0};
        }
        if (current.all_max()) {
            return {value + weight * R.max_digit_value(), 0.0};
        }
        const Digit c = current.digit_at(m);
        value += weight * R.gamma(c);
        weight *= R.r(c);
        current = shift_digits(current, m);
    }
    if (current.all_zero()) {
        return {value, 0.0};
    }
    if (current.all_max()) {
        return {value + weight * R.max_digit_value(), 0.0};
    }
    if (tail == FeqTail::Series) {
        const EvalResult rest = series(current, R, ResidualOrder(spec.perm(), depth), kClosureTolerance);
        return {value + weight * rest.value, std::abs(weight) * rest.bound};
    }
    return {value, std::abs(weight) * R.tail_sup()};
}

double feq_residual(const DigitString& d, const GenSalemSpec& spec, std::size_t k, double tol) {
    if (k == 0) {
        throw DomainError("equation index must be at least 1");
    }
    require_tolerance(tol);
    require_radix(d, spec);
    const auto& R = spec.R();
    const auto targets = leading_indices(spec.perm(), k);
    const DeletionPlan plan = plan_deletions(targets);

    DigitString before = d;
    for (std::size_t t = 0; t + 1 < k; ++t) {
        before = shift_digits(before, plan.adjusted[t]);
    }
    const DigitString after = shift_digits(before, plan.adjusted[k - 1]);

    const double lhs = series(before, R, ResidualOrder(spec.perm(), k - 1), tol).value;
    const Digit c = d.digit_at(targets[k - 1]);
    const double rhs = R.gamma(c) + R.r(c) * series(after, R, ResidualOrder(spec.perm(), k), tol).value;
    return std::abs(lhs - rhs);
}

double increment(const GenSalemSpec& spec, std::span<const Digit> base) {
    if (base.empty()) {
        throw DomainError("increment needs at least one constrained digit");
    }
    double product = 1.0;
    for (Digit c : base) {
        if (c >= spec.radix()) {
            throw DomainError("constrained digit outside alphabet");
        }
        product *= spec.R().r(c);
    }
    return product;
}

std::pair<DigitString, DigitString> constrained_extremes(const GenSalemSpec& spec, std::span<const Digit> base) {
    const unsigned q = spec.radix();
    const auto positions = leading_indices(spec.perm(), base.size());
    const std::size_t len = positions.empty() ? 0 : *std::max_element(positions.begin(), positions.end());
    std::vector<Digit> lo(len, 0);
    std::vector<Digit> hi(len, q - 1);
    for (std::size_t j = 0; j < base.size(); ++j) {
        if (base[j] >= q) {
            throw DomainError("constrained digit outside alphabet");
        }
        lo[positions[j] - 1] = base[j];
        hi[positions[j] - 1] = base[j];
    }
    return {DigitString(q, std::move(lo), DigitString::Zeros{}),
            DigitString(q, std::move(hi), DigitString::MaxDigits{})};
}

double integral(const GenSalemSpec& spec) {
    const auto& P = spec.P();
    const auto& R = spec.R();
    double a = 0.0;
    double b = 0.0;
    for (Digit j = 0; j < spec.radix(); ++j) {
        a += R.gamma(j) * P.p(j);
        b += P.p(j) * R.r(j);
    }
    return a / (1.0 - b);
}

namespace {

struct CylinderNode {
    std::vector<Digit> base;
    double length = 1.0;
};

class CylinderSum {
public:
    CylinderSum(const GenSalemSpec& spec, double cell) : spec_(spec), cell_(cell) {}

    double run(const CylinderNode& root) const {
        std::vector<double> leaves;
        std::vector<Digit> base = root.base;
        walk(base, root.length, leaves);
        return pairwise_sum(leaves);
    }

    bool is_leaf(double length) const { return length <= cell_; }

private:
    void walk(std::vector<Digit>& base, double length, std::vector<double>& leaves) const {
        if (is_leaf(length)) {
            const DigitString left(spec_.radix(), base, DigitString::Zeros{});
            leaves.push_back(length * series(left, spec_.R(), PermutedOrder{spec_.perm()}, 1.0).value);
            return;
        }
        base.push_back(0);
        for (Digit c = 0; c < spec_.radix(); ++c) {
            base.back() = c;
            walk(base, length * spec_.P().p(c), leaves);
        }
        base.pop_back();
    }

    const GenSalemSpec& spec_;
    double cell_;
};

}  // namespace

double integral_quadrature(const GenSalemSpec& spec, double cell_length) {
    if (!(cell_length > 0.0 && cell_length < 1.0)) {
        throw DomainError("cell length must lie in (0, 1)");
    }
    const CylinderSum summer(spec, cell_length);
    // Fixed split into independent subtrees; the split depends only on the
    // spec, so the summation order is the same for any worker count.
    constexpr std::size_t kMinTasks = 256;
    std::vector<CylinderNode> frontier{CylinderNode{}};
    while (frontier.size() < kMinTasks) {
        std::vector<CylinderNode> next;
        bool split = false;
        for (auto& node : frontier) {
            if (summer.is_leaf(node.length)) {
                next.push_back(std::move(node));
                continue;
            }
            split = true;
            for (Digit c = 0; c < spec.radix(); ++c) {
                CylinderNode child{node.base, node.length * spec.P().p(c)};
                child.base.push_back(c);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
        if (!split) {
            break;
        }
    }
    std::vector<double> partial(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t i) { partial[i] = summer.run(frontier[i]); });
    return pairwise_sum(partial);
}

bool continuity_predicate(const IndexSequence& perm, std::size_t m) {
    if (m == 0) {
        return true;
    }
    const std::size_t k0 = perm.k0_for_m(m);
    if (perm.n_at(k0) != m) {
        return false;
    }
    for (std::size_t t = 1; t < k0; ++t) {
        if (perm.n_at(t) > m - 1) {
            return false;
        }
    }
    return true;
}

Continuity classify_continuity(const DigitString& point, const GenSalemSpec& spec) {
    require_radix(point, spec);
    const Rationality rat = classify_rationality(point);
    Continuity out;
    if (!rat.rational || !rat.zeros_form || !rat.max_form) {
        const double g = eval_G_series(point, spec, 1e-12).value;
        out.left = g;
        out.right = g;
        return out;
    }
    out.rank = rat.rank;
    out.predicate = continuity_predicate(spec.perm(), rat.rank);
    out.right = eval_G_series(*rat.zeros_form, spec, 1e-12).value;
    out.left = eval_G_series(*rat.max_form, spec, 1e-12).value;
    // The twin limits decide; the permutation condition is reported alongside.
    out.kind = std::abs(out.left - out.right) <= kTwinAgreement ? Continuity::Kind::Continuous
                                                                  : Continuity::Kind::Jump;
    return out;
}

Continuity classify_continuity(double point, const GenSalemSpec& spec) {
    DigitString d = encode(point, spec.schedule(), kRealArgumentDepth);
    const Rationality rat = classify_rationality(d);
    if (rat.rational && rat.rank >= kRealArgumentDepth) {
        // The expansion did not terminate within the encoding depth: treat the
        // point as irrational.
        const double g = eval_G_series(d, spec, 1e-12).value;
        Continuity out;
        out.left = g;
        out.right = g;
        return out;
    }
    return classify_continuity(d, spec);
}

DiscontinuitySet classify_discontinuity_set(const GenSalemSpec& spec) {
    switch (spec.perm().deviation_class()) {
        case DeviationClass::IdentityEverywhere:
            return DiscontinuitySet::Empty;
        case DeviationClass::FiniteDeviation:
            return DiscontinuitySet::Finite;
        case DeviationClass::InfiniteDeviation:
            return DiscontinuitySet::Countable;
    }
    return DiscontinuitySet::Empty;
}

Monotonicity classify_monotonicity(const GenSalemSpec& spec) {
    const auto r = spec.R().coefficients();
    const auto negative = std::count_if(r.begin(), r.end(), [](double x) { return x < 0.0; });
    const auto zero = std::count_if(r.begin(), r.end(), [](double x) { return x == 0.0; });
    const DeviationClass dev = spec.perm().deviation_class();
    if (zero > 0) {
        return Monotonicity::ConstantAE;
    }
    if (negative == 0) {
        switch (dev) {
            case DeviationClass::IdentityEverywhere:
                return Monotonicity::StrictlyIncreasing;
            case DeviationClass::FiniteDeviation:
                return Monotonicity::HasSomeMonotonicityInterval;
            case DeviationClass::InfiniteDeviation:
                return Monotonicity::NoMonotonicityIntervals;
        }
    }
    if (negative == 1 && dev != DeviationClass::InfiniteDeviation) {
        return Monotonicity::NoMonotonicityIntervals;
    }
    throw UnclassifiedError("monotonicity is not classified for " + std::to_string(negative) +
                            " negative coefficient(s) with index sequence " + spec.perm().describe());
}

std::string_view to_string(DiscontinuitySet v) {
    switch (v) {
        case DiscontinuitySet::Empty:
            return "empty";
        case DiscontinuitySet::Finite:
            return "finite";
        case DiscontinuitySet::Countable:
            return "countable";
    }
    return "empty";
}

std::string_view to_string(Monotonicity v) {
    switch (v) {
        case Monotonicity::StrictlyIncreasing:
            return "strictly increasing";
        case Monotonicity::NonDecreasing:
            return "non-decreasing";
        case Monotonicity::ConstantAE:
            return "constant almost everywhere";
        case Monotonicity::NoMonotonicityIntervals:
            return "no monotonicity intervals";
        case Monotonicity::HasSomeMonotonicityInterval:
            return "has some monotonicity interval";
    }
    return "";
}

std::vector<double> derivative_diagnostic(const DigitString& d, const GenSalemSpec& spec, std::size_t max_rank) {
    if (max_rank == 0) {
        throw DomainError("max_rank must be at least 1");
    }
    if (spec.perm().kind() != IndexKind::Identity) {
        throw UnsupportedPermutationError("derivative diagnostic supports the identity index sequence only");
    }
    require_radix(d, spec);
    std::vector<double> ratios;
    ratios.reserve(max_rank);
    double ratio = 1.0;
    for (std::size_t m = 1; m <= max_rank; ++m) {
        const Digit c = d.digit_at(m);
        ratio *= spec.R().r(c) / spec.P().p(c);
        ratios.push_back(ratio);
    }
    return ratios;
}

}  // namespace salem
