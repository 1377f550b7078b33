#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace salem {

enum class IndexKind { Identity, FinitePermutation, BlockPermutation };
enum class DeviationClass { IdentityEverywhere, FiniteDeviation, InfiniteDeviation };

// A bijection k -> n_k of the positive integers from one of three computable
// families. Degenerate tables normalize to Identity.
class IndexSequence {
public:
    static IndexSequence identity();
    // Permutation of 1..N; identity beyond N.
    static IndexSequence finite(std::vector<std::size_t> table);
    // Permutation of 1..B applied inside every consecutive block of B positions.
    static IndexSequence block(std::size_t length, std::vector<std::size_t> map);

    IndexKind kind() const noexcept { return kind_; }
    std::span<const std::size_t> table() const noexcept { return table_; }
    std::size_t block_length() const noexcept { return table_.size(); }

    std::size_t n_at(std::size_t k) const;
    std::size_t preimage(std::size_t n) const;
    // max over n in 1..m of preimage(n).
    std::size_t k0_for_m(std::size_t m) const;
    DeviationClass deviation_class() const noexcept;

    std::string describe() const;

private:
    IndexSequence(IndexKind kind, std::vector<std::size_t> table);

    IndexKind kind_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
};

}  // namespace salem
