#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <numeric>

#include "oracles.hpp"
#include "salem/rvdist.hpp"

using namespace salem;

namespace {

GenSalemSpec make(std::vector<double> p, std::vector<double> r, IndexSequence perm = IndexSequence::identity()) {
    return GenSalemSpec(ProbabilityVector(std::move(p)), CoefficientVector(std::move(r)), std::move(perm));
}

double mean(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size(); }

}  // namespace

TEST_CASE("uniform case has uniform samples") {
    const auto spec = make({0.5, 0.5}, {0.5, 0.5});
    const auto xs = sample_eta(spec, 100000, 7);
    CHECK(std::abs(mean(xs) - 0.5) <= 0.005);
    for (double x : xs) {
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 1.0);
    }
}

TEST_CASE("sampling is deterministic per seed") {
    const auto spec = make({0.5, 0.5}, {0.3, 0.7});
    const auto a = sample_eta(spec, 1, 99);
    const auto b = sample_eta(spec, 1, 99);
    REQUIRE(a.size() == 1);
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double)) == 0);
    const auto c = sample_eta(spec, 1000, 99);
    const auto d = sample_eta(spec, 1000, 99);
    CHECK(std::memcmp(c.data(), d.data(), c.size() * sizeof(double)) == 0);
    CHECK(c[0] == a[0]);
    CHECK(sample_eta(spec, 1000, 100) != c);
}

TEST_CASE("sampling errors") {
    CHECK_THROWS_AS(sample_eta(make({0.5, 0.5}, {-0.3, 0.7}), 10, 1), NonDistributionalError);
    CHECK_THROWS_AS(sample_eta(make({0.5, 0.5}, {0.0, 0.7}), 10, 1), NonDistributionalError);
    CHECK_THROWS_AS(sample_eta(make({0.5, 0.5}, {0.3, 0.7}), 0, 1), DomainError);
}

TEST_CASE("model CDF bounds and monotonicity") {
    const auto spec = make({0.5, 0.5}, {0.3, 0.7});
    CHECK(model_cdf(-0.5, spec) == 0.0);
    CHECK(model_cdf(1.0, spec) == 1.0);
    CHECK(model_cdf(3.0, spec) == 1.0);
    CHECK(model_cdf(0.5, spec) == doctest::Approx(0.3));
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double v = model_cdf(i / 1000.0, spec);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("KS self-consistency") {
    const auto spec = make({0.5, 0.5}, {0.3, 0.7});
    const auto xs = sample_eta(spec, 100000, 20240611);
    const SampleReport rep = ks_compare(xs, spec);
    CHECK(rep.n == 100000);
    CHECK(rep.threshold == 0.01);
    CHECK(rep.ks_statistic <= 1.95 / std::sqrt(1e5));
    CHECK(rep.pass);
    const auto ternary = make({0.2, 0.3, 0.5}, {0.5, 0.1, 0.4});
    CHECK(ks_compare(sample_eta(ternary, 100000, 5), ternary).pass);
}

TEST_CASE("permuted placement of i.i.d. digits leaves the law unchanged") {
    const auto ident = make({0.5, 0.5}, {0.3, 0.7});
    for (const auto& perm : {IndexSequence::finite({2, 1}), IndexSequence::block(2, {2, 1})}) {
        const auto spec = make({0.5, 0.5}, {0.3, 0.7}, perm);
        const auto xs = sample_eta(spec, 100000, 20240611);
        CHECK(ks_compare(xs, ident).pass);
        // The permuted G is not monotone, so it is not this law's CDF.
        CHECK_FALSE(ks_compare(xs, spec).pass);
    }
}

TEST_CASE("KS detects mismatched models") {
    const auto uniform = make({0.5, 0.5}, {0.5, 0.5});
    const std::vector<double> zeros(500, 0.0);
    const SampleReport degenerate = ks_compare(zeros, uniform);
    CHECK(degenerate.ks_statistic >= 0.99);
    CHECK_FALSE(degenerate.pass);

    const auto drawn = sample_eta(make({0.5, 0.5}, {0.3, 0.7}), 10000, 3);
    const SampleReport mismatch = ks_compare(drawn, make({0.5, 0.5}, {0.7, 0.3}), 1001, 0.05);
    CHECK_FALSE(mismatch.pass);
    CHECK(mismatch.ks_statistic > 0.05);
    CHECK_THROWS_AS(ks_compare(std::vector<double>{}, uniform), DomainError);
}

TEST_CASE("digit frequency at the first permuted position") {
    const std::vector<double> r{0.2, 0.5, 0.3};
    for (const auto& perm : {IndexSequence::identity(), IndexSequence::finite({3, 1, 2})}) {
        const auto spec = make({0.25, 0.35, 0.4}, r, perm);
        const std::size_t n = 100000;
        const auto xs = sample_eta(spec, n, 11);
        const std::size_t pos = perm.n_at(1);
        std::vector<std::size_t> counts(3, 0);
        for (double x : xs) {
            // Re-encoding recovers the digit placed at position n_1.
            counts[encode(x, spec.schedule(), 64).digit_at(pos)]++;
        }
        for (unsigned j = 0; j < 3; ++j) {
            const double freq = static_cast<double>(counts[j]) / n;
            CHECK(std::abs(freq - r[j]) <= 3 * std::sqrt(r[j] * (1 - r[j]) / n));
        }
    }
}
