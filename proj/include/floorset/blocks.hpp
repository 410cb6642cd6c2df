#pragma once
// The floor function set S(x) = { [x/n] : 1 <= n <= x } and its block
// decomposition: n -> [x/n] is constant on O(sqrt x) maximal intervals
// (n_lo, n_hi], one per distinct value. Everything here runs in O(sqrt x)
// time and O(1) memory unless it materializes the set explicitly.

#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace floorset {

// One maximal run: [x/n] == value exactly for n in (n_lo, n_hi].
struct FloorValueBlock {
    uint64_t value;
    uint64_t n_lo;
    uint64_t n_hi;

    uint64_t length() const { return n_hi - n_lo; }
    friend bool operator==(const FloorValueBlock&, const FloorValueBlock&) = default;
};

// Iterates the blocks of S(x) in increasing value order. The intervals
// (n_lo, n_hi] tile [1, x] exactly.
class BlockRange {
public:
    class iterator {
    public:
        using value_type = FloorValueBlock;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        iterator() = default;
        iterator(uint64_t x, uint64_t n_hi) : x_(x), n_hi_(n_hi) { load(); }

        const FloorValueBlock& operator*() const { return block_; }
        const FloorValueBlock* operator->() const { return &block_; }

        iterator& operator++() {
            n_hi_ = block_.n_lo;
            load();
            return *this;
        }
        iterator operator++(int) {
            iterator copy = *this;
            ++*this;
            return copy;
        }

        friend bool operator==(const iterator& a, const iterator& b) {
            return a.n_hi_ == b.n_hi_;
        }

    private:
        void load() {
            if (n_hi_ == 0) return;
            uint64_t q = x_ / n_hi_;
            block_ = FloorValueBlock{q, x_ / (q + 1), n_hi_};
        }

        uint64_t x_ = 0;
        uint64_t n_hi_ = 0;
        FloorValueBlock block_{};
    };

    explicit BlockRange(uint64_t x) : x_(x) {}
    iterator begin() const { return iterator(x_, x_); }
    iterator end() const { return iterator(x_, 0); }

private:
    uint64_t x_;
};

inline BlockRange blocks(uint64_t x) {
    if (x < 1) throw std::domain_error("blocks: x must be >= 1");
    return BlockRange(x);
}

// m in S(x), decided in O(1): the block of m is nonempty iff
// [x/m] - [x/(m+1)] > 0. False for m > x and m == 0.
inline bool contains(uint64_t x, uint64_t m) {
    if (m == 0 || m > x) return false;
    return x / m - x / (m + 1) > 0;
}

// |S(x)| = number of blocks.
inline uint64_t cardinality(uint64_t x) {
    if (x < 1) throw std::domain_error("cardinality: x must be >= 1");
    uint64_t count = 0;
    uint64_t n = x;
    while (n > 0) {
        uint64_t q = x / n;
        ++count;
        n = x / (q + 1);
    }
    return count;
}

// #{m in S(x) : m = a (mod q)}, residue a in [1, q], a == q meaning 0 mod q.
inline uint64_t count_in_progression(uint64_t x, uint64_t q, uint64_t a) {
    if (x < 1) throw std::domain_error("count_in_progression: x must be >= 1");
    if (q < 1 || a < 1 || a > q)
        throw std::domain_error("count_in_progression: residue a must satisfy 1 <= a <= q");
    uint64_t r = a % q;
    uint64_t count = 0;
    uint64_t n = x;
    while (n > 0) {
        uint64_t v = x / n;
        if (v % q == r) ++count;
        n = x / (v + 1);
    }
    return count;
}

// Materialized view of S(x): ascending distinct values. O(sqrt x) memory.
struct FloorSetSummary {
    uint64_t x;
    std::vector<uint64_t> values;
    uint64_t cardinality;
};

inline FloorSetSummary summarize(uint64_t x) {
    FloorSetSummary s{x, {}, 0};
    for (const auto& b : blocks(x)) s.values.push_back(b.value);
    s.cardinality = s.values.size();
    return s;
}

} // namespace floorset
