#pragma once

#include <cstdint>
#include <cstddef>
#include <bit>
#include <vector>
#include <string>
#include <cassert>
#include <functional>

namespace iipg {

// Fixed-size bit set over dense vertex ids. Sets up to 128 bits live inline,
// which covers every solver-scale graph; larger sets spill to the heap.
class Bitset {
public:
    Bitset() : nbits_(0), nwords_(0) { inline_[0] = inline_[1] = 0; }

    explicit Bitset(int nbits) : nbits_(nbits), nwords_((nbits + 63) / 64) {
        if (nwords_ > kInlineWords) heap_.assign(nwords_, 0);
        inline_[0] = inline_[1] = 0;
    }

    int size_bits() const { return nbits_; }

    bool test(int i) const {
        assert(i >= 0 && i < nbits_);
        return (words()[i >> 6] >> (i & 63)) & 1;
    }
    void set(int i) {
        assert(i >= 0 && i < nbits_);
        words()[i >> 6] |= uint64_t(1) << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < nbits_);
        words()[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    void clear() {
        for (int w = 0; w < nwords_; ++w) words()[w] = 0;
    }

    bool any() const {
        for (int w = 0; w < nwords_; ++w)
            if (words()[w]) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int c = 0;
        for (int w = 0; w < nwords_; ++w) c += std::popcount(words()[w]);
        return c;
    }

    // index of lowest set bit, -1 if empty
    int first() const {
        for (int w = 0; w < nwords_; ++w)
            if (words()[w]) return w * 64 + std::countr_zero(words()[w]);
        return -1;
    }

    // next set bit at index > i, -1 if none
    int next(int i) const {
        ++i;
        if (i >= nbits_) return -1;
        int w = i >> 6;
        uint64_t cur = words()[w] & (~uint64_t(0) << (i & 63));
        while (true) {
            if (cur) return w * 64 + std::countr_zero(cur);
            if (++w >= nwords_) return -1;
            cur = words()[w];
        }
    }

    Bitset& operator|=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (int w = 0; w < nwords_; ++w) words()[w] |= o.words()[w];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (int w = 0; w < nwords_; ++w) words()[w] &= o.words()[w];
        return *this;
    }
    Bitset& operator-=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (int w = 0; w < nwords_; ++w) words()[w] &= ~o.words()[w];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    bool intersects(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (int w = 0; w < nwords_; ++w)
            if (words()[w] & o.words()[w]) return true;
        return false;
    }
    bool subset_of(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (int w = 0; w < nwords_; ++w)
            if (words()[w] & ~o.words()[w]) return false;
        return true;
    }

    bool operator==(const Bitset& o) const {
        if (nbits_ != o.nbits_) return false;
        for (int w = 0; w < nwords_; ++w)
            if (words()[w] != o.words()[w]) return false;
        return true;
    }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    bool operator<(const Bitset& o) const {  // arbitrary total order for sorting
        if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
        for (int w = nwords_ - 1; w >= 0; --w)
            if (words()[w] != o.words()[w]) return words()[w] < o.words()[w];
        return false;
    }

    size_t hash() const {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ uint64_t(nbits_);
        for (int w = 0; w < nwords_; ++w) {
            h ^= words()[w] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return size_t(h);
    }

    template <class F>
    void for_each(F&& f) const {
        for (int i = first(); i >= 0; i = next(i)) f(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    static Bitset of(int nbits, std::initializer_list<int> ids) {
        Bitset b(nbits);
        for (int i : ids) b.set(i);
        return b;
    }
    static Bitset of(int nbits, const std::vector<int>& ids) {
        Bitset b(nbits);
        for (int i : ids) b.set(i);
        return b;
    }

    std::string str() const {
        std::string s = "{";
        bool fst = true;
        for_each([&](int i) {
            if (!fst) s += ",";
            s += std::to_string(i);
            fst = false;
        });
        return s + "}";
    }

private:
    static constexpr int kInlineWords = 2;
    uint64_t* words() { return nwords_ > kInlineWords ? heap_.data() : inline_; }
    const uint64_t* words() const { return nwords_ > kInlineWords ? heap_.data() : inline_; }

    int nbits_;
    int nwords_;
    uint64_t inline_[kInlineWords];
    std::vector<uint64_t> heap_;
};

struct BitsetHash {
    size_t operator()(const Bitset& b) const { return b.hash(); }
};

inline size_t hash_combine(size_t a, size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

}  // namespace iipg
