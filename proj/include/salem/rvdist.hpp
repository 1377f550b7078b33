#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "salem/gensalem.hpp"

namespace salem {

inline constexpr std::size_t kSampleDepth = 64;

struct SampleReport {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double ks_statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

// Draws n values of eta = Delta^P of random digits: the k-th draw takes value
// j with probability r_j and is placed at position n_k. Digits beyond
// position 64 are zero. Requires a distributional R.
std::vector<double> sample_eta(const GenSalemSpec& spec, std::size_t n, std::uint64_t seed);

// Model distribution function: 0 below 0, 1 from 1 on, G in between.
double model_cdf(double s, const GenSalemSpec& spec);

// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and the
// model CDF, taken over `grid_size` equispaced points of [0, 1].
SampleReport ks_compare(std::span<const double> samples, const GenSalemSpec& spec, std::size_t grid_size = 1001,
                        double threshold = 0.01);

}  // namespace salem
