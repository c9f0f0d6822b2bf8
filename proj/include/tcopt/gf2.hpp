// gf2.hpp
// Dense bit-packed vectors and matrices over GF(2).

#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcopt {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Bit vector of fixed length n <= 128 (the build-wide qubit cap), stored
// inline; bit i = qubit/variable i (LSB of word 0 is bit 0).
class BitVec {
public:
    static constexpr std::size_t max_bits = 128;

    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n) {
        if (n > max_bits) throw std::length_error("BitVec: more than 128 bits");
    }

    static BitVec unit(std::size_t n, std::size_t i) {
        BitVec v(n);
        v.set(i, true);
        return v;
    }

    // '0'/'1' string, character position = bit index.
    static BitVec from_string(std::string_view s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') v.set(i, true);
            else if (s[i] != '0') throw std::invalid_argument("BitVec: bad bit character");
        }
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1;
    }
    void set(std::size_t i, bool b) {
        assert(i < n_);
        std::uint64_t m = 1ull << (i & 63);
        if (b) w_[i >> 6] |= m;
        else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] ^= 1ull << (i & 63);
    }

    BitVec& operator^=(const BitVec& o) {
        assert(n_ == o.n_);
        w_[0] ^= o.w_[0];
        w_[1] ^= o.w_[1];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        assert(n_ == o.n_);
        w_[0] &= o.w_[0];
        w_[1] &= o.w_[1];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    bool any() const { return (w_[0] | w_[1]) != 0; }
    bool none() const { return !any(); }

    std::size_t popcount() const {
        return static_cast<std::size_t>(__builtin_popcountll(w_[0]) +
                                        __builtin_popcountll(w_[1]));
    }

    std::size_t and_popcount(const BitVec& o) const {
        assert(n_ == o.n_);
        return static_cast<std::size_t>(__builtin_popcountll(w_[0] & o.w_[0]) +
                                        __builtin_popcountll(w_[1] & o.w_[1]));
    }

    // <this, o> over GF(2)
    bool dot(const BitVec& o) const { return and_popcount(o) & 1; }

    bool operator==(const BitVec& o) const {
        return n_ == o.n_ && w_[0] == o.w_[0] && w_[1] == o.w_[1];
    }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Integer-value order (bit 0 least significant).
    bool operator<(const BitVec& o) const {
        assert(n_ == o.n_);
        if (w_[1] != o.w_[1]) return w_[1] < o.w_[1];
        return w_[0] < o.w_[0];
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t k = 0; k < 2; ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                s.push_back(k * 64 + static_cast<std::size_t>(__builtin_ctzll(w)));
                w &= w - 1;
            }
        }
        return s;
    }

    std::uint64_t hash() const {
        return splitmix64(splitmix64(n_ ^ w_[0]) ^ w_[1]);
    }

    std::uint64_t low_word() const { return w_[0]; }

private:
    std::size_t n_ = 0;
    std::array<std::uint64_t, 2> w_{0, 0};
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return static_cast<std::size_t>(v.hash()); }
};

// Row-major bit matrix; row(i) is a BitVec over the columns.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.r_[i].set(i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BitVec& row(std::size_t i) { return r_[i]; }
    const BitVec& row(std::size_t i) const { return r_[i]; }

    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool b) { r_[i].set(j, b); }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_;
    }

    // (M v)_i = <row i, v>
    BitVec mul(const BitVec& v) const {
        assert(v.size() == cols_);
        BitVec out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (r_[i].dot(v)) out.set(i, true);
        return out;
    }

    BitMatrix mul(const BitMatrix& o) const {
        assert(cols_ == o.rows_);
        BitMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            auto supp = r_[i].support();
            for (auto k : supp) out.r_[i] ^= o.r_[k];
        }
        return out;
    }

    BitMatrix transpose() const {
        BitMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j : r_[i].support()) out.r_[j].set(i, true);
        return out;
    }

    std::size_t rank() const {
        std::vector<BitVec> rows = r_;
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols_ && rk < rows.size(); ++col) {
            std::size_t piv = rk;
            while (piv < rows.size() && !rows[piv].get(col)) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rk], rows[piv]);
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (r != rk && rows[r].get(col)) rows[r] ^= rows[rk];
            ++rk;
        }
        return rk;
    }

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    std::optional<BitMatrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        std::vector<BitVec> a = r_;
        BitMatrix inv = identity(rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t piv = col;
            while (piv < rows_ && !a[piv].get(col)) ++piv;
            if (piv == rows_) return std::nullopt;
            std::swap(a[col], a[piv]);
            std::swap(inv.r_[col], inv.r_[piv]);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r != col && a[r].get(col)) {
                    a[r] ^= a[col];
                    inv.r_[r] ^= inv.r_[col];
                }
            }
        }
        return inv;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

// Uniform invertible matrix by rejection; deterministic for a given seed.
inline BitMatrix random_invertible(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    for (;;) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (gen() & 1) m.set(i, j, true);
        if (m.is_invertible()) return m;
    }
}

inline std::size_t gf2_rank(const std::vector<BitVec>& vs) {
    if (vs.empty()) return 0;
    BitMatrix m(vs.size(), vs[0].size());
    for (std::size_t i = 0; i < vs.size(); ++i) m.row(i) = vs[i];
    return m.rank();
}

}  // namespace tcopt
