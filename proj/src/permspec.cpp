#include "salem/permspec.hpp"

#include <algorithm>

#include "salem/types.hpp"

namespace salem {

namespace {

void require_permutation(const std::vector<std::size_t>& table) {
    if (table.empty()) {
        throw DomainError("permutation table must be nonempty");
    }
    std::vector<bool> seen(table.size() + 1, false);
    for (std::size_t n : table) {
        if (n == 0 || n > table.size() || seen[n]) {
            throw DomainError("table is not a permutation of 1.." + std::to_string(table.size()));
        }
        seen[n] = true;
    }
}

bool is_identity(const std::vector<std::size_t>& table) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] != i + 1) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& table) {
    std::vector<std::size_t> inv(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        inv[table[i] - 1] = i + 1;
    }
    return inv;
}

void require_position(std::size_t k) {
    if (k == 0) {
        throw DomainError("index sequence positions start at 1");
    }
}

}  // namespace

IndexSequence::IndexSequence(IndexKind kind, std::vector<std::size_t> table)
    : kind_(kind), table_(std::move(table)), inverse_(invert(table_)) {}

IndexSequence IndexSequence::identity() { return IndexSequence(IndexKind::Identity, {}); }

IndexSequence IndexSequence::finite(std::vector<std::size_t> table) {
    require_permutation(table);
    while (!table.empty() && table.back() == table.size()) {
        table.pop_back();
    }
    if (table.empty()) {
        return identity();
    }
    return IndexSequence(IndexKind::FinitePermutation, std::move(table));
}

IndexSequence IndexSequence::block(std::size_t length, std::vector<std::size_t> map) {
    if (length == 0 || map.size() != length) {
        throw DomainError("block map must list exactly B entries");
    }
    require_permutation(map);
    if (is_identity(map)) {
        return identity();
    }
    return IndexSequence(IndexKind::BlockPermutation, std::move(map));
}

std::size_t IndexSequence::n_at(std::size_t k) const {
    require_position(k);
    switch (kind_) {
        case IndexKind::Identity:
            return k;
        case IndexKind::FinitePermutation:
            return k <= table_.size() ? table_[k - 1] : k;
        case IndexKind::BlockPermutation: {
            const std::size_t b = table_.size();
            return (k - 1) / b * b + table_[(k - 1) % b];
        }
    }
    return k;
}

std::size_t IndexSequence::preimage(std::size_t n) const {
    require_position(n);
    switch (kind_) {
        case IndexKind::Identity:
            return n;
        case IndexKind::FinitePermutation:
            return n <= inverse_.size() ? inverse_[n - 1] : n;
        case IndexKind::BlockPermutation: {
            const std::size_t b = inverse_.size();
            return (n - 1) / b * b + inverse_[(n - 1) % b];
        }
    }
    return n;
}

std::size_t IndexSequence::k0_for_m(std::size_t m) const {
    require_position(m);
    switch (kind_) {
        case IndexKind::Identity:
            return m;
        case IndexKind::FinitePermutation: {
            if (m >= table_.size()) {
                return m;
            }
            std::size_t best = 0;
            for (std::size_t n = 1; n <= m; ++n) {
                best = std::max(best, inverse_[n - 1]);
            }
            return best;
        }
        case IndexKind::BlockPermutation: {
            // Whole blocks before the one holding m map onto themselves.
            const std::size_t b = table_.size();
            const std::size_t start = (m - 1) / b * b;
            std::size_t best = start;
            for (std::size_t n = start + 1; n <= m; ++n) {
                best = std::max(best, preimage(n));
            }
            return best;
        }
    }
    return m;
}

DeviationClass IndexSequence::deviation_class() const noexcept {
    switch (kind_) {
        case IndexKind::Identity:
            return DeviationClass::IdentityEverywhere;
        case IndexKind::FinitePermutation:
            return DeviationClass::FiniteDeviation;
        case IndexKind::BlockPermutation:
            return DeviationClass::InfiniteDeviation;
    }
    return DeviationClass::IdentityEverywhere;
}

std::string IndexSequence::describe() const {
    auto list = [this] {
        std::string s;
        for (std::size_t i = 0; i < table_.size(); ++i) {
            s += (i ? "," : "") + std::to_string(table_[i]);
        }
        return s;
    };
    switch (kind_) {
        case IndexKind::Identity:
            return "identity";
        case IndexKind::FinitePermutation:
            return "finite(" + list() + ")";
        case IndexKind::BlockPermutation:
            return "block(" + std::to_string(table_.size()) + ";" + list() + ")";
    }
    return "identity";
}

}  // namespace salem
