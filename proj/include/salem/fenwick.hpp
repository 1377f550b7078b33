#pragma once

#include <cstddef>
#include <vector>

namespace salem {

// Binary indexed tree over ranks 0..n-1 counting inserted ranks.
class FenwickCounter {
public:
    explicit FenwickCounter(std::size_t n) : tree_(n + 1, 0) {}

    void insert(std::size_t rank) {
        for (std::size_t i = rank + 1; i < tree_.size(); i += i & (~i + 1)) {
            ++tree_[i];
        }
    }

    // Number of inserted ranks strictly below `rank`.
    std::size_t count_less(std::size_t rank) const {
        std::size_t total = 0;
        for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) {
            total += tree_[i];
        }
        return total;
    }

private:
    std::vector<std::size_t> tree_;
};

}  // namespace salem
