#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "salem/shiftops.hpp"

using namespace salem;

namespace {

ProbabilitySchedule constant(std::vector<double> p) { return ProbabilitySchedule::constant(ProbabilityVector(std::move(p))); }

DigitString zeros(unsigned q, std::vector<Digit> prefix) { return DigitString(q, std::move(prefix), DigitString::Zeros{}); }

// Every subset of 1..n of size at most k, in every application order.
void for_each_target_sequence(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> current;
    std::vector<bool> used(n + 1, false);
    std::function<void()> rec = [&] {
        f(current);
        if (current.size() == k) {
            return;
        }
        for (std::size_t t = 1; t <= n; ++t) {
            if (!used[t]) {
                used[t] = true;
                current.push_back(t);
                rec();
                current.pop_back();
                used[t] = false;
            }
        }
    };
    rec();
}

}  // namespace

TEST_CASE("shift_digits examples") {
    CHECK(shift_digits(zeros(2, {1, 1}), 1).materialize(4) == std::vector<Digit>{1, 0, 0, 0});
    CHECK(shift_digits(zeros(5, {0, 1, 2, 3, 4}), 2).materialize(5) == std::vector<Digit>{0, 2, 3, 4, 0});
    const DigitString d = zeros(2, {1, 0, 1});
    CHECK(digit_equal(shift_digits(d, 9), d, 40));
    const DigitString top(2, {0}, DigitString::MaxDigits{});
    CHECK(digit_equal(shift_digits(top, 5), top, 40));
    CHECK_THROWS_AS(shift_digits(d, 0), DomainError);
}

TEST_CASE("shift_digits inside periodic and seeded tails") {
    std::mt19937_64 rng(21);
    const std::vector<DigitString> strings{
        DigitString(3, {2}, DigitString::Periodic{{0, 1, 2, 2}}),
        DigitString(2, {}, DigitString::Periodic{{1, 0, 0}}),
        DigitString(2, {1, 1}, DigitString::Seeded{77, 0}),
        DigitString(4, {}, DigitString::Seeded{5, 3}),
    };
    for (const auto& d : strings) {
        for (std::size_t m = 1; m <= 12; ++m) {
            const auto expect = oracle::erase_positions(d.materialize(60), {m});
            const auto got = shift_digits(d, m).materialize(59);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("sigma_m_value examples") {
    const auto skew = constant({0.3, 0.7});
    const DigitString d = zeros(2, {1, 1});
    CHECK(sigma_m_value(0.51, d, 1, skew, 1e-12).value == doctest::Approx(0.3).epsilon(1e-14));
    // Deleting the second digit of (1,1,0,...) leaves (1,0,...), whose value is 0.3.
    CHECK(sigma_m_value(0.51, d, 2, skew, 1e-12).value == doctest::Approx(0.3).epsilon(1e-14));
    for (std::size_t m = 1; m <= 5; ++m) {
        CHECK(sigma_m_value(0.0, zeros(2, {}), m, skew, 1e-12).value == 0.0);
    }
    CHECK_THROWS_AS(sigma_m_value(0.6, d, 1, skew, 1e-12), InconsistencyError);
    CHECK_THROWS_AS(sigma_m_value(0.51, d, 0, skew, 1e-12), DomainError);
}

TEST_CASE("reconstruct examples") {
    const auto skew = constant({0.3, 0.7});
    const std::vector<Digit> one{1};
    CHECK(reconstruct(one, 0.3, skew) == doctest::Approx(0.51).epsilon(1e-15));
    const std::vector<Digit> eleven{1, 1};
    CHECK(reconstruct(eleven, 0.0, skew) == doctest::Approx(0.51).epsilon(1e-15));
    const std::vector<Digit> none(4, 0);
    CHECK(reconstruct(none, 0.8, skew) == doctest::Approx(0.8 * std::pow(0.3, 4)).epsilon(1e-14));
}

TEST_CASE("property: reconstruct inverts the m-fold shift") {
    std::mt19937_64 rng(22);
    const auto sched = ProbabilitySchedule::periodic({ProbabilityVector({0.2, 0.3, 0.5}), ProbabilityVector({0.6, 0.1, 0.3})});
    for (int i = 0; i < 2000; ++i) {
        const DigitString d = zeros(3, oracle::random_digits(rng, 3, 20));
        const std::size_t m = 1 + rng() % 8;
        const auto prefix = d.materialize(m);
        ProbabilitySchedule shifted = sched;
        for (std::size_t t = 0; t < m; ++t) {
            shifted = shifted.without_position(1);
        }
        DigitString s = d;
        for (std::size_t t = 0; t < m; ++t) {
            s = shift_digits(s, 1);
        }
        const double y = decode(s, shifted, 1e-15).value;
        CHECK(std::abs(reconstruct(prefix, y, sched) - decode(d, sched, 1e-15).value) <= 1e-12);
    }
}

TEST_CASE("plan_deletions examples and errors") {
    const std::vector<std::size_t> a{3, 1};
    const auto pa = plan_deletions(a);
    CHECK(pa.adjusted == std::vector<std::size_t>{3, 1});
    CHECK(pa.rho == std::vector<std::size_t>{0, 0});

    const std::vector<std::size_t> b{2, 5, 3};
    const auto pb = plan_deletions(b);
    CHECK(pb.adjusted == std::vector<std::size_t>{2, 4, 2});
    CHECK(pb.rho == std::vector<std::size_t>{0, 1, 1});
    CHECK(apply_deletions(zeros(8, {0, 1, 2, 3, 4, 5, 6, 7}), pb).materialize(5) == std::vector<Digit>{0, 3, 5, 6, 7});

    const std::vector<std::size_t> c{1};
    CHECK(plan_deletions(c).adjusted == std::vector<std::size_t>{1});

    const std::vector<std::size_t> dup{4, 2, 4};
    CHECK_THROWS_AS(plan_deletions(dup), DuplicateTargetError);
    CHECK_THROWS_AS(plan_deletions_by_scan(dup), DuplicateTargetError);
    const std::vector<std::size_t> zero{0};
    CHECK_THROWS_AS(plan_deletions(zero), DomainError);
}

TEST_CASE("compose_two examples") {
    const DigitString d = zeros(8, {1, 2, 3, 4, 5, 6, 7});  // a..g
    CHECK(compose_two(d, 2, 2).materialize(4) == std::vector<Digit>{1, 4, 5, 6});
    CHECK(compose_two(d, 3, 1).materialize(4) == std::vector<Digit>{2, 4, 5, 6});
    CHECK(compose_two(d, 1, 3).materialize(4) == std::vector<Digit>{2, 3, 5, 6});
}

TEST_CASE("property: composition table for n1, n2 <= 6") {
    std::vector<Digit> symbols(12);
    for (Digit t = 0; t < 12; ++t) {
        symbols[t] = t + 1;
    }
    const DigitString d = zeros(13, symbols);
    for (std::size_t n1 = 1; n1 <= 6; ++n1) {
        for (std::size_t n2 = 1; n2 <= 6; ++n2) {
            const std::size_t second = n2 < n1 ? n2 : n2 + 1;
            CHECK(compose_two(d, n1, n2).materialize(10) == oracle::erase_positions(symbols, {n1, second}));
        }
    }
}

TEST_CASE("property: deletion oracle, exhaustive over q = 2 prefixes of length 8") {
    std::size_t mismatches = 0;
    std::size_t cases = 0;
    for_each_target_sequence(6, 4, [&](const std::vector<std::size_t>& targets) {
        if (targets.empty()) {
            return;
        }
        const auto plan = plan_deletions(targets);
        const auto scan = plan_deletions_by_scan(targets);
        if (plan.adjusted != scan.adjusted || plan.rho != scan.rho) {
            ++mismatches;
        }
        for (unsigned bits = 0; bits < 256; ++bits) {
            std::vector<Digit> digits(8);
            for (std::size_t t = 0; t < 8; ++t) {
                digits[t] = (bits >> t) & 1U;
            }
            const auto got = apply_deletions(zeros(2, digits), plan).materialize(8 - targets.size());
            if (got != oracle::erase_positions(digits, targets)) {
                ++mismatches;
            }
            ++cases;
        }
    });
    CHECK(cases > 0);
    CHECK(mismatches == 0);
}

TEST_CASE("property: Fenwick plan equals the quadratic scan on random long plans") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::size_t> pool(200);
        for (std::size_t t = 0; t < pool.size(); ++t) {
            pool[t] = t + 1;
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(1 + rng() % 120);
        const auto a = plan_deletions(pool);
        const auto b = plan_deletions_by_scan(pool);
        CHECK(a.adjusted == b.adjusted);
        CHECK(a.rho == b.rho);
        for (std::size_t t = 0; t < pool.size(); ++t) {
            CHECK(a.adjusted[t] >= 1);
            CHECK(a.adjusted[t] <= pool[t]);
        }
    }
}

TEST_CASE("property: value side commutes with digit deletion") {
    std::mt19937_64 rng(24);
    const std::vector<ProbabilitySchedule> schedules{
        constant({0.3, 0.7}), constant({0.2, 0.3, 0.5}),
        ProbabilitySchedule::periodic({ProbabilityVector({0.3, 0.7}), ProbabilityVector({0.6, 0.4}), ProbabilityVector({0.5, 0.5})})};
    for (int i = 0; i < 10000; ++i) {
        const auto& sched = schedules[i % schedules.size()];
        const unsigned q = sched.radix();
        const DigitString d = (i % 2) ? zeros(q, oracle::random_digits(rng, q, 1 + rng() % 30))
                                      : DigitString(q, oracle::random_digits(rng, q, rng() % 5), DigitString::Seeded{rng(), 0});
        const std::size_t m = 1 + rng() % 12;
        const double s = decode(d, sched, 1e-15).value;
        const EvalResult shifted = sigma_m_value(s, d, m, sched, 1e-15);
        const EvalResult expect = decode(shift_digits(d, m), sched.without_position(m), 1e-15);
        CHECK(std::abs(shifted.value - expect.value) <= 1e-9);
    }
}

TEST_CASE("property: sigma_m is linear with slope 1/p inside rank-m cylinders") {
    std::mt19937_64 rng(25);
    const auto sched = constant({0.3, 0.7});
    for (std::size_t m = 1; m <= 3; ++m) {
        for (int i = 0; i < 200; ++i) {
            const auto base = oracle::random_digits(rng, 2, m);
            const auto [lo, hi] = cylinder_bounds(Cylinder(2, base), sched);
            const double width = hi - lo;
            const double s = lo + width * (0.25 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng));
            const double h = width * 1e-3;
            const DigitString ds = encode(s, sched, 64);
            const DigitString dh = encode(s + h, sched, 64);
            REQUIRE(ds.materialize(m) == base);
            REQUIRE(dh.materialize(m) == base);
            const double slope =
                (sigma_m_value(s + h, dh, m, sched, 1e-12).value - sigma_m_value(s, ds, m, sched, 1e-12).value) / h;
            const double expect = 1.0 / sched.at(m).p(base[m - 1]);
            CHECK(std::abs(slope - expect) <= 1e-6 * expect);
        }
    }
}

TEST_CASE("property: sigma_m jumps at endpoints of rank-m cylinders") {
    const auto sched = constant({0.3, 0.7});
    for (std::size_t m = 1; m <= 3; ++m) {
        for (unsigned bits = 0; bits < (1U << m); ++bits) {
            std::vector<Digit> digits(m);
            for (std::size_t t = 0; t < m; ++t) {
                digits[t] = (bits >> t) & 1U;
            }
            if (digits.back() == 0) {
                continue;  // rank below m
            }
            const auto twins = classify_rationality(zeros(2, digits));
            REQUIRE(twins.max_form);
            const double s = decode(*twins.zeros_form, sched, 1e-15).value;
            const double right = sigma_m_value(s, *twins.zeros_form, m, sched, 1e-12).value;
            const double left = sigma_m_value(s, *twins.max_form, m, sched, 1e-12).value;
            CHECK(std::abs(left - right) > 1e-3);
        }
    }
}

TEST_CASE("property: iterated shift deletes the leading digits") {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 500; ++i) {
        const unsigned q = 2 + rng() % 4;
        const DigitString d(q, oracle::random_digits(rng, q, rng() % 10), DigitString::Periodic{oracle::random_digits(rng, q, 1 + rng() % 4)});
        const std::size_t m = 1 + rng() % 15;
        DigitString s = d;
        for (std::size_t t = 0; t < m; ++t) {
            s = shift_digits(s, 1);
        }
        std::vector<std::size_t> leading(m);
        for (std::size_t t = 0; t < m; ++t) {
            leading[t] = t + 1;
        }
        CHECK(s.materialize(30) == oracle::erase_positions(d.materialize(30 + m), leading));
    }
}
