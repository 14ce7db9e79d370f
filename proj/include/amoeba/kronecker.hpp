#pragma once

// Dense multivariate integer multiplication by Kronecker substitution.
//
// Both operands are row-major n-dimensional coefficient boxes. They are
// packed into single big integers with one slot of `b` bits per result
// cell, multiplied with one GMP call, and unpacked with balanced digits.
// The slot width is chosen so that every result coefficient c satisfies
// |c| < 2^(b-1), which makes the balanced digit expansion unique.

#include "amoeba/numeric.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstring>
#include <vector>

namespace amoeba {

static_assert(GMP_NUMB_BITS == 64, "limb packing assumes 64-bit limbs without nails");

/// A dense box of integer coefficients, last axis fastest.
struct DenseBox {
    std::vector<std::size_t> extents;
    std::vector<BigInt> data;

    DenseBox() = default;
    explicit DenseBox(std::vector<std::size_t> ext) : extents(std::move(ext)) {
        data.resize(cell_count(extents));
    }

    static std::size_t cell_count(const std::vector<std::size_t>& ext) {
        std::size_t c = 1;
        for (auto e : ext) c *= e;
        return c;
    }
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(extents.size(), 1);
        for (std::size_t j = extents.size(); j-- > 1;) s[j - 1] = s[j] * extents[j];
        return s;
    }
    std::size_t nonzeros() const {
        return static_cast<std::size_t>(std::count_if(data.begin(), data.end(),
                                                      [](const BigInt& c) { return sgn(c) != 0; }));
    }
    std::size_t max_bits() const {
        std::size_t b = 0;
        for (const auto& c : data) b = std::max(b, bit_length(c));
        return b;
    }
};

namespace detail {

inline void or_bits(std::vector<mp_limb_t>& buf, std::size_t bit_offset, const BigInt& value) {
    const mpz_srcptr z = value.get_mpz_t();
    const std::size_t n = mpz_size(z);
    const mp_limb_t* limbs = mpz_limbs_read(z);
    const std::size_t word = bit_offset / 64;
    const unsigned shift = static_cast<unsigned>(bit_offset % 64);
    for (std::size_t i = 0; i < n; ++i) {
        buf[word + i] |= limbs[i] << shift;
        if (shift != 0) buf[word + i + 1] |= limbs[i] >> (64 - shift);
    }
}

inline BigInt from_limbs(const std::vector<mp_limb_t>& buf) {
    BigInt r;
    std::size_t n = buf.size();
    while (n > 0 && buf[n - 1] == 0) --n;
    if (n == 0) return r;
    mp_limb_t* dst = mpz_limbs_write(r.get_mpz_t(), static_cast<mp_size_t>(n));
    std::memcpy(dst, buf.data(), n * sizeof(mp_limb_t));
    mpz_limbs_finish(r.get_mpz_t(), static_cast<mp_size_t>(n));
    return r;
}

/// Reads bits [offset, offset + width) of the magnitude given by `limbs`.
inline void read_bits(const mp_limb_t* limbs, std::size_t nlimbs, std::size_t offset, std::size_t width,
                      std::vector<mp_limb_t>& scratch, BigInt& out) {
    const std::size_t word = offset / 64;
    const unsigned shift = static_cast<unsigned>(offset % 64);
    const std::size_t need = (width + shift + 63) / 64;
    scratch.assign(need + 1, 0);
    for (std::size_t i = 0; i < need && word + i < nlimbs; ++i) scratch[i] = limbs[word + i];
    if (shift != 0) mpn_rshift(scratch.data(), scratch.data(), static_cast<mp_size_t>(need), shift);
    const std::size_t full = width / 64;
    const unsigned rem = static_cast<unsigned>(width % 64);
    if (full < scratch.size()) {
        if (rem == 0)
            std::fill(scratch.begin() + static_cast<std::ptrdiff_t>(full), scratch.end(), 0);
        else {
            scratch[full] &= (mp_limb_t(1) << rem) - 1;
            std::fill(scratch.begin() + static_cast<std::ptrdiff_t>(full) + 1, scratch.end(), 0);
        }
    }
    out = from_limbs(scratch);
}

inline BigInt pack(const DenseBox& box, const std::vector<std::size_t>& result_strides, std::size_t slot_bits,
                   std::size_t total_slots) {
    const std::size_t nwords = (total_slots * slot_bits) / 64 + 2;
    std::vector<mp_limb_t> pos(nwords, 0), neg(nwords, 0);
    const std::size_t nd = box.extents.size();
    std::vector<std::size_t> idx(nd, 0);
    for (std::size_t lin = 0; lin < box.data.size(); ++lin) {
        const BigInt& c = box.data[lin];
        if (sgn(c) != 0) {
            std::size_t slot = 0;
            for (std::size_t j = 0; j < nd; ++j) slot += idx[j] * result_strides[j];
            or_bits(sgn(c) > 0 ? pos : neg, slot * slot_bits, c);
        }
        for (std::size_t j = nd; j-- > 0;) {
            if (++idx[j] < box.extents[j]) break;
            idx[j] = 0;
        }
    }
    return from_limbs(pos) - from_limbs(neg);
}

}  // namespace detail

/// Exact product of two dense boxes of equal dimension.
inline DenseBox kronecker_multiply(const DenseBox& a, const DenseBox& b) {
    if (a.extents.size() != b.extents.size()) throw ArityError("kronecker_multiply: dimension mismatch");
    std::vector<std::size_t> ext(a.extents.size());
    for (std::size_t j = 0; j < ext.size(); ++j) {
        if (a.extents[j] == 0 || b.extents[j] == 0) return DenseBox(std::vector<std::size_t>(ext.size(), 0));
        ext[j] = a.extents[j] + b.extents[j] - 1;
    }
    DenseBox out(ext);
    const std::size_t na = a.nonzeros();
    const std::size_t nb = b.nonzeros();
    if (na == 0 || nb == 0) return out;
    const BigInt count = static_cast<unsigned long>(std::min(na, nb));
    const std::size_t slot_bits = a.max_bits() + b.max_bits() + bit_length(count) + 2;
    const auto strides = out.strides();
    const std::size_t slots = out.data.size();

    const BigInt pa = detail::pack(a, strides, slot_bits, slots);
    BigInt prod;
    if (&a == &b) {
        mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());
    } else {
        const BigInt pb = detail::pack(b, strides, slot_bits, slots);
        mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
    }

    const int sign = sgn(prod);
    const mpz_srcptr z = prod.get_mpz_t();
    const mp_limb_t* limbs = mpz_limbs_read(z);
    const std::size_t nlimbs = mpz_size(z);
    std::vector<mp_limb_t> scratch;
    BigInt digit;
    BigInt half;
    mpz_setbit(half.get_mpz_t(), slot_bits - 1);
    BigInt full;
    mpz_setbit(full.get_mpz_t(), slot_bits);
    bool carry = false;
    for (std::size_t s = 0; s < slots; ++s) {
        detail::read_bits(limbs, nlimbs, s * slot_bits, slot_bits, scratch, digit);
        if (carry) digit += 1;
        if (digit >= half) {
            digit -= full;
            carry = true;
        } else {
            carry = false;
        }
        out.data[s] = sign < 0 ? BigInt(-digit) : digit;
    }
    return out;
}

}  // namespace amoeba
