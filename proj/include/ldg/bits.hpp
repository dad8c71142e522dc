#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ldg {

// Fixed-width bitset sized at construction; all operands share a width.
class Bits {
public:
    Bits() : n_(0) {}
    explicit Bits(size_t n, bool value = false)
        : n_(n), w_((n + 63) / 64, value ? ~uint64_t{0} : 0) {
        trim();
    }

    size_t size() const { return n_; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v = true) {
        if (v)
            w_[i >> 6] |= uint64_t{1} << (i & 63);
        else
            w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bits& operator|=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& subtract(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    Bits complement() const {
        Bits r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool contains(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }

    bool operator==(const Bits&) const = default;

private:
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (~uint64_t{0}) >> (64 - n_ % 64);
    }

    size_t n_;
    std::vector<uint64_t> w_;
};

inline Bits operator|(Bits a, const Bits& b) { return a |= b; }
inline Bits operator&(Bits a, const Bits& b) { return a &= b; }

}  // namespace ldg
