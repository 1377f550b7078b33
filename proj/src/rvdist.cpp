#include "salem/rvdist.hpp"

#include <algorithm>
#include <cmath>

#include "salem/counter_rng.hpp"
#include "salem/parallel.hpp"

namespace salem {

namespace {

Digit draw_digit(const CoefficientVector& R, std::uint64_t stream, std::uint64_t k) {
    const double u = counter_uniform(stream, k);
    const auto gamma = R.cumulative();
    const auto it = std::upper_bound(gamma.begin(), gamma.end(), u);
    return static_cast<Digit>(std::distance(gamma.begin(), it) - 1);
}

}  // namespace

std::vector<double> sample_eta(const GenSalemSpec& spec, std::size_t n, std::uint64_t seed) {
    if (!spec.R().distributional()) {
        throw NonDistributionalError("sampling needs R with positive entries summing to 1");
    }
    if (n == 0) {
        throw DomainError("sample count must be at least 1");
    }
    const auto sched = spec.schedule();
    const auto& perm = spec.perm();
    std::vector<std::size_t> draw_index(kSampleDepth);
    for (std::size_t pos = 1; pos <= kSampleDepth; ++pos) {
        draw_index[pos - 1] = perm.preimage(pos);
    }
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) {
        const std::uint64_t stream = counter_hash(seed, i);
        std::vector<Digit> digits(kSampleDepth);
        for (std::size_t pos = 0; pos < kSampleDepth; ++pos) {
            digits[pos] = draw_digit(spec.R(), stream, draw_index[pos]);
        }
        out[i] = decode(DigitString(spec.radix(), std::move(digits)), sched, 1.0).value;
    });
    return out;
}

double model_cdf(double s, const GenSalemSpec& spec) {
    if (s < 0.0) {
        return 0.0;
    }
    if (s >= 1.0) {
        return 1.0;
    }
    return eval_G_series(s, spec, 1e-12).value;
}

SampleReport ks_compare(std::span<const double> samples, const GenSalemSpec& spec, std::size_t grid_size,
                        double threshold) {
    if (samples.empty()) {
        throw DomainError("ks_compare needs at least one sample");
    }
    if (grid_size < 2) {
        throw DomainError("ks grid needs at least two points");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> gaps(grid_size);
    parallel_for(grid_size, [&](std::size_t i) {
        const double s = static_cast<double>(i) / static_cast<double>(grid_size - 1);
        const auto below = std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
        const double empirical = static_cast<double>(below) / static_cast<double>(sorted.size());
        gaps[i] = std::abs(empirical - model_cdf(s, spec));
    });
    SampleReport report;
    report.n = samples.size();
    report.ks_statistic = *std::max_element(gaps.begin(), gaps.end());
    report.threshold = threshold;
    report.pass = report.ks_statistic <= threshold;
    return report;
}

}  // namespace salem
