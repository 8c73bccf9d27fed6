#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace kbmf {

// Fixed-length bit vector packed into 64-bit words.  Rows of binary matrices
// and the a/b sides of rank-1 patterns live in this type.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    BitVec& operator|=(const BitVec& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }

    bool intersects(const BitVec& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::size_t hash() const {
        std::size_t h = std::hash<std::size_t>{}(size_);
        for (auto w : words_) h = h * 1099511628211ULL + static_cast<std::size_t>(w);
        return h;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace kbmf
