#pragma once

// Cyclic resultants F_{2^k} in collapsed coordinates: F_{2^k}(X) = G_k(X^{2^k}).
//
// One doubling step runs a Graeffe step per variable. Splitting
// G = E(X_j^2) + X_j O(X_j^2) gives G(X) G(X with X_j -> -X_j) = E^2 - X_j^2 O^2,
// so each variable costs two squarings instead of a product over 2^n sign
// patterns. Squarings go through one Kronecker-packed big-integer product.

#include "amoeba/kronecker.hpp"
#include "amoeba/laurent.hpp"

#include <cmath>
#include <future>

namespace amoeba {

struct DoublingLimits {
    std::size_t max_terms = 10'000'000;
    std::size_t max_bits = 1'000'000;
    /// Run the two squarings of a Graeffe step concurrently when > 1.
    unsigned threads = 1;
};

namespace detail {

/// Splits a dense box along `axis` into even-index and odd-index parts.
inline std::pair<DenseBox, DenseBox> split_parity(const DenseBox& box, std::size_t axis) {
    const std::size_t e = box.extents[axis];
    auto ext_even = box.extents, ext_odd = box.extents;
    ext_even[axis] = (e + 1) / 2;
    ext_odd[axis] = e / 2;
    DenseBox even(ext_even), odd(ext_odd);
    const auto st = box.strides();
    const auto st_even = even.strides();
    const auto st_odd = odd.strides();
    const std::size_t outer = box.data.size() / (e * st[axis]);
    const std::size_t inner = st[axis];
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < e; ++i)
            for (std::size_t r = 0; r < inner; ++r) {
                const BigInt& c = box.data[o * e * inner + i * inner + r];
                if (i % 2 == 0)
                    even.data[o * ext_even[axis] * inner + (i / 2) * st_even[axis] + r] = c;
                else
                    odd.data[o * ext_odd[axis] * inner + (i / 2) * st_odd[axis] + r] = c;
            }
    return {std::move(even), std::move(odd)};
}

/// Graeffe step along `axis`: returns E^2 - Y O^2 with Y the squared axis variable.
inline DenseBox graeffe_axis(const DenseBox& box, std::size_t axis, unsigned threads) {
    auto [even, odd] = split_parity(box, axis);
    const bool has_odd = odd.extents[axis] > 0 && odd.nonzeros() > 0;
    DenseBox e2, o2;
    if (has_odd && threads > 1) {
        auto fut = std::async(std::launch::async, [&odd] { return kronecker_multiply(odd, odd); });
        e2 = kronecker_multiply(even, even);
        o2 = fut.get();
    } else {
        e2 = kronecker_multiply(even, even);
        if (has_odd) o2 = kronecker_multiply(odd, odd);
    }
    if (!has_odd) return e2;

    auto ext = e2.extents;
    ext[axis] = box.extents[axis];
    DenseBox out(ext);
    const auto st = out.strides();
    const std::size_t inner = st[axis];
    const std::size_t outer = out.data.size() / (ext[axis] * inner);
    const std::size_t le = e2.extents[axis], lo = o2.extents[axis];
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t r = 0; r < inner; ++r) {
            for (std::size_t i = 0; i < le; ++i) out.data[o * ext[axis] * inner + i * inner + r] = e2.data[o * le * inner + i * inner + r];
            for (std::size_t i = 0; i < lo; ++i) out.data[o * ext[axis] * inner + (i + 1) * inner + r] -= o2.data[o * lo * inner + i * inner + r];
        }
    return out;
}

}  // namespace detail

/// Predicted size of the next doubling of G: (cells, coefficient bits).
inline std::pair<double, std::size_t> predict_doubling_size(const LaurentPoly& g) {
    const std::size_t n = g.nvars();
    double cells = 1;
    std::size_t bits = g.max_coeff_bits();
    double terms = static_cast<double>(std::max<std::size_t>(g.size(), 1));
    std::vector<double> ext(n);
    for (std::size_t j = 0; j < n; ++j) ext[j] = static_cast<double>(g.max_exponent(j) - g.min_exponent(j) + 1);
    for (std::size_t j = 0; j < n; ++j) {
        // Squaring doubles the bit size and adds the log of the number of products.
        bits = 2 * bits + static_cast<std::size_t>(std::ceil(std::log2(terms + 1))) + 1;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) ext[i] = 2 * ext[i] - 1;
        terms = 1;
        for (auto x : ext) terms *= x;
    }
    for (auto x : ext) cells *= x;
    return {cells, bits};
}

/// H with H(X_1^2, ..., X_n^2) = prod over eps in {±1}^n of G(eps_1 X_1, ..., eps_n X_n).
inline LaurentPoly double_once(const LaurentPoly& g, const DoublingLimits& limits = {}, int current_k = 0) {
    const std::size_t n = g.nvars();
    if (g.is_zero()) return g;
    const auto [cells, bits] = predict_doubling_size(g);
    if (cells > static_cast<double>(limits.max_terms))
        throw ResourceError("doubling would exceed the term cap", current_k);
    if (bits > limits.max_bits) throw ResourceError("doubling would exceed the coefficient-bit cap", current_k);

    auto [box, offset] = g.to_dense();
    // G = X^m G0; the Graeffe step on axis j maps X^{2m} to (-1)^{m_j} Y_j^{m_j} and doubles the
    // other offsets. The next step squares away any earlier sign, so only the last one survives.
    bool negate = false;
    for (std::size_t j = 0; j < n; ++j) {
        box = detail::graeffe_axis(box, j, limits.threads);
        negate = offset[j] % 2 != 0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) offset[i] *= 2;
    }
    if (negate)
        for (auto& c : box.data) c = -c;
    return LaurentPoly::from_dense(box, offset);
}

/// The iterates G_0 = F, G_{k+1} = double_once(G_k).
class DoublingSequence {
public:
    explicit DoublingSequence(LaurentPoly base, DoublingLimits limits = {})
        : base_(std::move(base)), current_(base_), limits_(limits) {}

    const LaurentPoly& base() const noexcept { return base_; }
    const LaurentPoly& current() const noexcept { return current_; }
    int k() const noexcept { return k_; }
    std::size_t coeff_bits() const { return current_.max_coeff_bits(); }

    const LaurentPoly& step() {
        current_ = double_once(current_, limits_, k_);
        ++k_;
        return current_;
    }

private:
    LaurentPoly base_;
    LaurentPoly current_;
    DoublingLimits limits_;
    int k_ = 0;
};

/// G_k after k doublings of F.
inline DoublingSequence cyclic_resultant(const LaurentPoly& f, int k, const DoublingLimits& limits = {}) {
    if (k < 0) throw AmoebaError("cyclic_resultant: k must be nonnegative");
    DoublingSequence seq(f, limits);
    for (int i = 0; i < k; ++i) seq.step();
    return seq;
}

}  // namespace amoeba
