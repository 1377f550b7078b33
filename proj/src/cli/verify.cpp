#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "salem/rvdist.hpp"
#include "salem/shiftops.hpp"

namespace salem::cli {

namespace {

using Status = CheckOutcome::Status;

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckOutcome max_error_check(std::string name, double worst, double limit) {
    return {std::move(name), worst <= limit ? Status::Pass : Status::Fail, "max " + sci(worst) + " <= " + sci(limit)};
}

DigitString random_string(std::mt19937_64& rng, unsigned q, std::size_t max_prefix) {
    std::uniform_int_distribution<std::size_t> len(0, max_prefix);
    std::uniform_int_distribution<Digit> digit(0, q - 1);
    std::vector<Digit> prefix(len(rng));
    for (auto& d : prefix) {
        d = digit(rng);
    }
    return DigitString(q, std::move(prefix), DigitString::Seeded{rng(), 0});
}

DigitString random_rational(std::mt19937_64& rng, unsigned q, std::size_t max_rank) {
    std::uniform_int_distribution<std::size_t> len(1, max_rank);
    std::uniform_int_distribution<Digit> digit(0, q - 1);
    std::uniform_int_distribution<Digit> nonzero(1, q - 1);
    std::vector<Digit> prefix(len(rng));
    for (auto& d : prefix) {
        d = digit(rng);
    }
    prefix.back() = nonzero(rng);
    return DigitString(q, std::move(prefix), DigitString::Zeros{});
}

CheckOutcome check_round_trip(const RunConfig& cfg) {
    const auto sched = cfg.effective_schedule();
    std::mt19937_64 rng(cfg.seed ^ 0x1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = unit(rng);
        const DigitString d = encode(x, sched, 64);
        double width = 1.0;
        for (std::size_t k = 1; k <= 64; ++k) {
            width *= sched.at(k).p(d.digit_at(k));
        }
        const double err = std::abs(decode(d, sched, 1e-15).value - x);
        // Slack for the rounding of the 64-term sum.
        worst = std::max(worst, err - width - 8 * std::numeric_limits<double>::epsilon());
    }
    return {"numrep.round_trip", worst <= 0.0 ? Status::Pass : Status::Fail, "excess " + sci(std::max(worst, 0.0))};
}

CheckOutcome check_twins(const RunConfig& cfg) {
    const auto sched = cfg.effective_schedule();
    std::mt19937_64 rng(cfg.seed ^ 0x2);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const auto rat = classify_rationality(random_rational(rng, sched.radix(), 12));
        worst = std::max(worst, std::abs(decode(*rat.zeros_form, sched, 1e-15).value -
                                         decode(*rat.max_form, sched, 1e-15).value));
    }
    return max_error_check("numrep.twins", worst, 1e-12);
}

CheckOutcome check_partition(const RunConfig& cfg) {
    const auto sched = cfg.effective_schedule();
    const unsigned q = sched.radix();
    std::size_t rank = 1;
    std::size_t count = q;
    while (count * q <= 4096 && rank < 6) {
        count *= q;
        ++rank;
    }
    double total = 0.0;
    double prev_hi = 0.0;
    double worst_gap = 0.0;
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<Digit> base(rank);
        std::size_t v = idx;
        for (std::size_t k = rank; k-- > 0;) {
            base[k] = static_cast<Digit>(v % q);
            v /= q;
        }
        const Cylinder c(q, std::move(base));
        const auto [lo, hi] = cylinder_bounds(c, sched);
        total += hi - lo;
        worst_gap = std::max(worst_gap, std::abs(lo - prev_hi));
        prev_hi = hi;
    }
    const double err = std::max({std::abs(total - 1.0), worst_gap, std::abs(prev_hi - 1.0)});
    return max_error_check("numrep.partition(rank " + std::to_string(rank) + ")", err, 1e-9);
}

CheckOutcome check_deletion_oracle(const RunConfig& cfg) {
    const unsigned q = cfg.spec.radix();
    std::mt19937_64 rng(cfg.seed ^ 0x3);
    std::uniform_int_distribution<std::size_t> pos(1, 12);
    std::uniform_int_distribution<std::size_t> size(1, 6);
    std::size_t mismatches = 0;
    for (int i = 0; i < 2000; ++i) {
        const DigitString d = random_string(rng, q, 10);
        std::vector<std::size_t> targets;
        const std::size_t want = size(rng);
        while (targets.size() < want) {
            const std::size_t t = pos(rng);
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
                targets.push_back(t);
            }
        }
        const auto plan = plan_deletions(targets);
        const DigitString shifted = apply_deletions(d, plan);
        std::vector<Digit> direct = d.materialize(40);
        std::vector<std::size_t> sorted = targets;
        std::sort(sorted.rbegin(), sorted.rend());
        for (std::size_t t : sorted) {
            direct.erase(direct.begin() + static_cast<std::ptrdiff_t>(t - 1));
        }
        if (shifted.materialize(direct.size()) != direct) {
            ++mismatches;
        }
    }
    return {"shiftops.deletion_oracle", mismatches == 0 ? Status::Pass : Status::Fail,
            std::to_string(mismatches) + " mismatches"};
}

CheckOutcome check_value_commutation(const RunConfig& cfg) {
    const auto sched = cfg.effective_schedule();
    std::mt19937_64 rng(cfg.seed ^ 0x4);
    std::uniform_int_distribution<std::size_t> pos(1, 10);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const DigitString d = random_string(rng, sched.radix(), 12);
        const std::size_t m = pos(rng);
        const double s = decode(d, sched, 1e-15).value;
        const double by_value = sigma_m_value(s, d, m, sched, 1e-15).value;
        const double by_digits = decode(shift_digits(d, m), sched.without_position(m), 1e-15).value;
        worst = std::max(worst, std::abs(by_value - by_digits));
    }
    return max_error_check("shiftops.value_commutation", worst, 1e-9);
}

CheckOutcome check_evaluator_agreement(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed ^ 0x5);
    double worst = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const DigitString d = random_string(rng, cfg.spec.radix(), 16);
        const EvalResult a = eval_G_series(d, cfg.spec, 1e-13);
        const EvalResult b = eval_G_feq(d, cfg.spec, 80);
        worst = std::max(worst, std::abs(a.value - b.value) - (a.bound + b.bound) - 1e-12);
    }
    return {"gensalem.evaluator_agreement", worst <= 0.0 ? Status::Pass : Status::Fail,
            "excess over bounds " + sci(std::max(worst, 0.0))};
}

CheckOutcome check_feq_residual(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed ^ 0x6);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DigitString d = random_string(rng, cfg.spec.radix(), 16);
        for (std::size_t k = 1; k <= 10; ++k) {
            worst = std::max(worst, feq_residual(d, cfg.spec, k, 1e-12));
        }
    }
    return max_error_check("gensalem.feq_residual", worst, 1e-9);
}

CheckOutcome check_identity_reduction(const RunConfig& cfg) {
    const auto& P = cfg.spec.P();
    const GenSalemSpec same(P, CoefficientVector({P.weights().begin(), P.weights().end()}));
    std::mt19937_64 rng(cfg.seed ^ 0x7);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DigitString d = random_string(rng, P.radix(), 8);
        worst = std::max(worst, std::abs(eval_G_series(d, same, 1e-13).value - salem_S(d, P, 1e-13).value));
    }
    return max_error_check("gensalem.identity_reduction", worst, 1e-9);
}

CheckOutcome check_integral(const RunConfig& cfg) {
    const double closed = integral(cfg.spec);
    const double numeric = integral_quadrature(cfg.spec);
    return max_error_check("gensalem.integral(closed=" + format_real(closed) + ")", std::abs(closed - numeric), 1e-5);
}

CheckOutcome check_increment(const RunConfig& cfg) {
    if (!cfg.spec.R().distributional()) {
        return {"gensalem.increment", Status::Skip, "R not distributional"};
    }
    const unsigned q = cfg.spec.radix();
    std::mt19937_64 rng(cfg.seed ^ 0x8);
    std::uniform_int_distribution<std::size_t> len(1, 6);
    std::uniform_int_distribution<Digit> digit(0, q - 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        std::vector<Digit> base(len(rng));
        for (auto& c : base) {
            c = digit(rng);
        }
        const auto [lo, hi] = constrained_extremes(cfg.spec, base);
        const double measured = eval_G_series(hi, cfg.spec, 1e-13).value - eval_G_series(lo, cfg.spec, 1e-13).value;
        worst = std::max(worst, std::abs(measured - increment(cfg.spec, base)));
    }
    return max_error_check("gensalem.increment", worst, 1e-9);
}

CheckOutcome check_twin_limits(const RunConfig& cfg) {
    if (!cfg.spec.R().distributional()) {
        return {"gensalem.twin_limits", Status::Skip, "R not distributional"};
    }
    std::mt19937_64 rng(cfg.seed ^ 0x9);
    std::size_t disagreements = 0;
    for (int i = 0; i < 200; ++i) {
        const DigitString point = random_rational(rng, cfg.spec.radix(), 8);
        const Continuity c = classify_continuity(point, cfg.spec);
        const bool continuous = c.kind == Continuity::Kind::Continuous;
        if (continuous != c.predicate) {
            ++disagreements;
        }
    }
    return {"gensalem.twin_limits", disagreements == 0 ? Status::Pass : Status::Fail,
            std::to_string(disagreements) + " predicate/limit disagreements"};
}

CheckOutcome check_range(const RunConfig& cfg) {
    if (!cfg.spec.R().distributional()) {
        return {"gensalem.range", Status::Skip, "R not distributional"};
    }
    std::mt19937_64 rng(cfg.seed ^ 0xa);
    std::size_t outside = 0;
    for (int i = 0; i < 1000; ++i) {
        const EvalResult g = eval_G_series(random_string(rng, cfg.spec.radix(), 8), cfg.spec, 1e-13);
        if (g.value < -g.bound || g.value > 1.0 + g.bound) {
            ++outside;
        }
    }
    return {"gensalem.range", outside == 0 ? Status::Pass : Status::Fail, std::to_string(outside) + " outside [0,1]"};
}

CheckOutcome check_distribution(const RunConfig& cfg) {
    if (!cfg.spec.R().distributional()) {
        return {"rvdist.ks", Status::Skip, "R not distributional"};
    }
    if (cfg.spec.perm().kind() != IndexKind::Identity) {
        return {"rvdist.ks", Status::Skip, "non-identity index sequence"};
    }
    const auto samples = sample_eta(cfg.spec, 100000, cfg.seed);
    const SampleReport report = ks_compare(samples, cfg.spec, 1001, 0.01);
    return {"rvdist.ks", report.pass ? Status::Pass : Status::Fail, "ks " + sci(report.ks_statistic) + " <= 1.000e-02"};
}

}  // namespace

std::vector<CheckOutcome> run_verify_suite(const RunConfig& cfg) {
    return {
        check_round_trip(cfg),      check_twins(cfg),           check_partition(cfg),
        check_deletion_oracle(cfg), check_value_commutation(cfg), check_evaluator_agreement(cfg),
        check_feq_residual(cfg),    check_identity_reduction(cfg), check_integral(cfg),
        check_increment(cfg),       check_twin_limits(cfg),     check_range(cfg),
        check_distribution(cfg),
    };
}

}  // namespace salem::cli
