#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <gmpxx.h>

namespace qf {

using Int = long;  // 64-bit on every platform this project targets
using BigInt = mpz_class;
using Rat = mpq_class;
using i128 = __int128;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Floor of sqrt, exact. Newton with a final correction step so the result
// never depends on floating-point rounding.
inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 x = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (x > 0 && x > n / x) --x;
    while ((x + 1) <= n / (x + 1)) ++x;
    return x;
}

inline u128 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u128 x = isqrt_u64(static_cast<u64>(n >> 64));
    x = (x << 32) + (1u << 16);
    // Newton iterations converge from above once x >= sqrt(n).
    if (n < (u128(1) << 64)) x = isqrt_u64(static_cast<u64>(n));
    for (int i = 0; i < 80; ++i) {
        u128 y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    while (x > 0 && x > n / x) --x;
    while (x + 1 <= n / (x + 1)) ++x;
    return x;
}

inline i128 iabs128(i128 a) { return a < 0 ? -a : a; }

// Floor/ceil division for b > 0.
inline i128 floordiv(i128 a, i128 b) {
    i128 q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}
inline i128 ceildiv(i128 a, i128 b) { return -floordiv(-a, b); }

inline BigInt pow_big(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline u64 pow_u64(u64 base, unsigned e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

inline bool fits_int(const BigInt& a) { return a.fits_slong_p(); }

inline BigInt i128_to_big(i128 v) {
    bool neg = v < 0;
    u128 a = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    BigInt hi(static_cast<unsigned long>(a >> 64));
    BigInt out = (hi << 64) + static_cast<unsigned long>(a & ~0ULL);
    return neg ? BigInt(-out) : out;
}

inline Int to_int(const BigInt& a) {
    if (!a.fits_slong_p()) throw std::overflow_error("integer out of native range");
    return a.get_si();
}

// Deterministic RNG used by every seeded generator in the project.
// mt19937_64 output is fixed by the standard; sampling below() avoids
// std::uniform_int_distribution, which is not portable across libraries.
class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}

    u64 next() { return eng_(); }

    Int below(Int n) {  // uniform in [0, n)
        if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
        u64 un = static_cast<u64>(n);
        u64 lim = UINT64_MAX - UINT64_MAX % un;
        for (;;) {
            u64 r = eng_();
            if (r < lim) return static_cast<Int>(r % un);
        }
    }

    Int range(Int lo, Int hi) { return lo + below(hi - lo + 1); }  // inclusive
    bool coin() { return (eng_() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

// Runs fn(i) for i in [0, n). With jobs <= 1 this is a plain loop; with more
// jobs a shared counter fans the indices out. Callers own any result slots,
// so output is independent of scheduling.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    int k = std::min<std::size_t>(jobs, n);
    for (int t = 0; t < k; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace qf
