#pragma once

#include <vector>

#include "qflocal/util.hpp"

namespace qf::bits {

inline std::vector<u64> make(u64 nbits) { return std::vector<u64>((nbits + 63) / 64, 0); }

inline void set(std::vector<u64>& w, u64 b) { w[b >> 6] |= u64(1) << (b & 63); }
inline bool test(const std::vector<u64>& w, u64 b) { return (w[b >> 6] >> (b & 63)) & 1; }

inline u64 count(const std::vector<u64>& w) {
    u64 c = 0;
    for (u64 x : w) c += static_cast<u64>(__builtin_popcountll(x));
    return c;
}

// Clears any junk bits at positions >= nbits in the final word.
inline void mask_tail(std::vector<u64>& w, u64 nbits) {
    if (nbits & 63) w.back() &= (u64(1) << (nbits & 63)) - 1;
}

// 64 source bits starting at bit b, zero-padded past the array.
inline u64 fetch64(const std::vector<u64>& src, u64 b) {
    u64 j = b >> 6, r = b & 63;
    u64 w = src[j] >> r;
    if (r && j + 1 < src.size()) w |= src[j + 1] << (64 - r);
    return w;
}

// OR `len` bits of src starting at src_off into dst starting at dst_off.
// Both ranges must lie inside their arrays.
inline void or_bitrange(std::vector<u64>& dst, u64 dst_off,
                        const std::vector<u64>& src, u64 src_off, u64 len) {
    for (u64 pos = 0; pos < len; pos += 64) {
        u64 k = std::min<u64>(64, len - pos);
        u64 w = fetch64(src, src_off + pos);
        if (k < 64) w &= (u64(1) << k) - 1;
        u64 b = dst_off + pos, j = b >> 6, r = b & 63;
        dst[j] |= w << r;
        if (r && j + 1 < dst.size()) dst[j + 1] |= w >> (64 - r);
    }
}

// dst |= (src << shift), truncated to nbits; dst and src both nbits wide.
inline void or_shifted_trunc(std::vector<u64>& dst, const std::vector<u64>& src,
                             u64 shift, u64 nbits) {
    if (shift >= nbits) return;
    or_bitrange(dst, shift, src, 0, nbits - shift);
    mask_tail(dst, nbits);
}

// dst |= rotate(src, shift) on m-bit cyclic sets.
inline void or_rotated(std::vector<u64>& dst, const std::vector<u64>& src, u64 shift, u64 m) {
    shift %= m;
    if (shift == 0) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
        return;
    }
    or_bitrange(dst, shift, src, 0, m - shift);
    or_bitrange(dst, 0, src, m - shift, shift);
    mask_tail(dst, m);
}

}  // namespace qf::bits
