#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace moser {

// Dynamic bitset over vertex indices. Stored words are normalized (no
// trailing zero words), so equality and hashing are representation-free.
class VertexSet {
public:
    VertexSet() = default;

    static VertexSet single(uint32_t i) {
        VertexSet s;
        s.set(i);
        return s;
    }

    static VertexSet full(uint32_t n) {
        VertexSet s;
        for (uint32_t i = 0; i < n; ++i) s.set(i);
        return s;
    }

    bool test(uint32_t i) const {
        uint32_t w = i >> 6;
        return w < w_.size() && (w_[w] >> (i & 63)) & 1;
    }

    void set(uint32_t i) {
        uint32_t w = i >> 6;
        if (w >= w_.size()) w_.resize(w + 1, 0);
        w_[w] |= uint64_t(1) << (i & 63);
    }

    void reset(uint32_t i) {
        uint32_t w = i >> 6;
        if (w < w_.size()) {
            w_[w] &= ~(uint64_t(1) << (i & 63));
            normalize();
        }
    }

    uint32_t count() const {
        uint32_t n = 0;
        for (uint64_t w : w_) n += uint32_t(__builtin_popcountll(w));
        return n;
    }

    bool empty() const { return w_.empty(); }

    bool subset_of(const VertexSet& o) const {
        if (w_.size() > o.w_.size()) return false;
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& o) const {
        size_t n = std::min(w_.size(), o.w_.size());
        for (size_t i = 0; i < n; ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    friend VertexSet operator&(const VertexSet& x, const VertexSet& y) {
        VertexSet r;
        r.w_.resize(std::min(x.w_.size(), y.w_.size()));
        for (size_t i = 0; i < r.w_.size(); ++i) r.w_[i] = x.w_[i] & y.w_[i];
        r.normalize();
        return r;
    }

    friend VertexSet operator|(const VertexSet& x, const VertexSet& y) {
        VertexSet r;
        r.w_.resize(std::max(x.w_.size(), y.w_.size()), 0);
        for (size_t i = 0; i < x.w_.size(); ++i) r.w_[i] = x.w_[i];
        for (size_t i = 0; i < y.w_.size(); ++i) r.w_[i] |= y.w_[i];
        return r;
    }

    VertexSet and_not(const VertexSet& o) const {
        VertexSet r = *this;
        size_t n = std::min(w_.size(), o.w_.size());
        for (size_t i = 0; i < n; ++i) r.w_[i] &= ~o.w_[i];
        r.normalize();
        return r;
    }

    // Lowest set index; undefined on the empty set.
    uint32_t lowest() const {
        for (size_t i = 0;; ++i)
            if (w_[i]) return uint32_t(i * 64 + __builtin_ctzll(w_[i]));
    }

    template <typename F>
    void for_each(F f) const {
        for (size_t i = 0; i < w_.size(); ++i)
            for (uint64_t w = w_[i]; w; w &= w - 1)
                f(uint32_t(i * 64 + __builtin_ctzll(w)));
    }

    std::vector<uint32_t> indices() const {
        std::vector<uint32_t> v;
        v.reserve(count());
        for_each([&](uint32_t i) { v.push_back(i); });
        return v;
    }

    bool operator==(const VertexSet& o) const = default;

    // Numeric order on the underlying integer; a total order fit for std::map.
    bool operator<(const VertexSet& o) const {
        if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
        for (size_t i = w_.size(); i-- > 0;)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }

    size_t hash() const {
        size_t h = 0xcbf29ce484222325ull;
        for (uint64_t w : w_) h = (h ^ w) * 0x100000001b3ull;
        return h;
    }

    const std::vector<uint64_t>& words() const { return w_; }

    // Word 0 of the set; sufficient for graphs with at most 64 vertices.
    uint64_t word0() const { return w_.empty() ? 0 : w_[0]; }

private:
    void normalize() {
        while (!w_.empty() && w_.back() == 0) w_.pop_back();
    }

    std::vector<uint64_t> w_;
};

struct VertexSetHash {
    size_t operator()(const VertexSet& s) const { return s.hash(); }
};

// Order by cardinality, then lexicographically on the sorted index
// sequences. For equal-size sets the sequence comparison is decided by the
// lowest index in the symmetric difference: the set containing it is smaller.
inline bool size_lex_less(const VertexSet& x, const VertexSet& y) {
    uint32_t cx = x.count(), cy = y.count();
    if (cx != cy) return cx < cy;
    const auto& wx = x.words();
    const auto& wy = y.words();
    size_t n = std::min(wx.size(), wy.size());
    for (size_t i = 0; i < n; ++i) {
        uint64_t diff = wx[i] ^ wy[i];
        if (diff) return (wx[i] >> __builtin_ctzll(diff)) & 1;
    }
    // Same popcount and a shared prefix of words: any remaining words are
    // zero on one side, which forces equality.
    return false;
}

}  // namespace moser
