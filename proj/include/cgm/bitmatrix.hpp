#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cgm {

/// Square boolean matrix packed into 64-bit row blocks.
///
/// Rows are contiguous, so row-level OR/AND operations vectorize well; this
/// is the workhorse behind reachability closures and the metric kernels.
class BitMatrix {
public:
    BitMatrix() = default;

    explicit BitMatrix(int n)
        : n_(n), words_(n > 0 ? (n + 63) / 64 : 0), bits_(static_cast<std::size_t>(n_) * words_, 0) {
        if (n < 0) throw std::invalid_argument("BitMatrix: negative size");
    }

    int size() const { return n_; }
    int words_per_row() const { return words_; }

    bool get(int i, int j) const {
        check(i, j);
        return (bits_[idx(i, j)] >> (j & 63)) & 1u;
    }

    void set(int i, int j, bool value = true) {
        check(i, j);
        if (value)
            bits_[idx(i, j)] |= (std::uint64_t{1} << (j & 63));
        else
            bits_[idx(i, j)] &= ~(std::uint64_t{1} << (j & 63));
    }

    std::span<std::uint64_t> row(int i) {
        return {bits_.data() + static_cast<std::size_t>(i) * words_, static_cast<std::size_t>(words_)};
    }

    std::span<const std::uint64_t> row(int i) const {
        return {bits_.data() + static_cast<std::size_t>(i) * words_, static_cast<std::size_t>(words_)};
    }

    void zero_row(int i) {
        auto r = row(i);
        for (auto& w : r) w = 0;
    }

    void zero_column(int j) {
        const int w = j >> 6;
        const std::uint64_t mask = ~(std::uint64_t{1} << (j & 63));
        for (int i = 0; i < n_; ++i) bits_[static_cast<std::size_t>(i) * words_ + w] &= mask;
    }

    void set_diagonal() {
        for (int i = 0; i < n_; ++i) set(i, i, true);
    }

    BitMatrix transposed() const {
        BitMatrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (get(i, j)) t.set(j, i);
        return t;
    }

    /// Number of set bits over the whole matrix.
    long popcount() const {
        long total = 0;
        for (std::uint64_t w : bits_) total += std::popcount(w);
        return total;
    }

    /// Entrywise L1 distance (= Hamming distance on the bit patterns).
    long l1_distance(const BitMatrix& other) const {
        if (other.n_ != n_) throw std::invalid_argument("BitMatrix: size mismatch");
        long total = 0;
        for (std::size_t k = 0; k < bits_.size(); ++k) total += std::popcount(bits_[k] ^ other.bits_[k]);
        return total;
    }

    /// Boolean matrix product: out[i][j] = OR_k (this[i][k] AND other[k][j]).
    BitMatrix bool_product(const BitMatrix& other) const {
        if (other.n_ != n_) throw std::invalid_argument("BitMatrix: size mismatch");
        BitMatrix out(n_);
        for (int i = 0; i < n_; ++i) {
            auto src = row(i);
            auto dst = out.row(i);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t block = src[w];
                while (block) {
                    const int k = w * 64 + std::countr_zero(block);
                    block &= block - 1;
                    auto kr = other.row(k);
                    for (int v = 0; v < words_; ++v) dst[v] |= kr[v];
                }
            }
        }
        return out;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * words_ + (j >> 6);
    }

    void check(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("BitMatrix: index out of range");
    }

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Reflexive-transitive closure: the 0/1 pattern of (M + I)^(n-1).
///
/// Computed by repeated boolean squaring; (M + I)^m is monotone in m and
/// stabilizes at m = n-1, so squaring past that point leaves it unchanged.
inline BitMatrix transitive_closure(BitMatrix m) {
    const int n = m.size();
    m.set_diagonal();
    long hops = 1;
    while (hops < n - 1) {
        m = m.bool_product(m);
        hops *= 2;
    }
    return m;
}

}  // namespace cgm
