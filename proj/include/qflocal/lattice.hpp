#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qflocal/arith.hpp"
#include "qflocal/errors.hpp"
#include "qflocal/util.hpp"

namespace qf {

inline constexpr int kMaxRank = 12;

// Positive definite integral lattice given by a Gram matrix.  Immutable
// after construction; dL, scale and norm are computed eagerly.
class GramLattice {
public:
    static GramLattice from_rows(const std::vector<std::vector<Int>>& rows,
                                 std::string name = {});

    int rank() const { return n_; }
    Int gram(int i, int j) const { return g_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<Int>& entries() const { return g_; }
    const BigInt& det() const { return det_; }
    Int scale() const { return scale_; }
    Int norm() const { return norm_; }
    const std::string& name() const { return name_; }
    GramLattice named(std::string name) const;

    bool is_diagonal() const;
    std::vector<std::vector<Int>> rows() const;

    friend bool operator==(const GramLattice& a, const GramLattice& b) {
        return a.n_ == b.n_ && a.g_ == b.g_;
    }

private:
    GramLattice() = default;
    int n_ = 0;
    std::vector<Int> g_;  // row-major
    std::string name_;
    BigInt det_;
    Int scale_ = 0, norm_ = 0;
};

GramLattice make_lattice(const std::vector<std::vector<Int>>& rows, std::string name = {});
GramLattice ortho_sum(const GramLattice& a, const GramLattice& b);
GramLattice rescale(const GramLattice& L, Int c);
// Rows of T are coordinates of the new basis in the old one; Gram = T G T^t.
GramLattice sublattice(const GramLattice& L, const std::vector<std::vector<Int>>& T);
GramLattice diag_lattice(const std::vector<Int>& d, std::string name = {});

// Exact determinant of an integer matrix (fraction-free elimination).
BigInt int_det(const std::vector<std::vector<Int>>& rows);

// The set of represented integers in [1, B], plus optional vector counts
// (one count per +-pair).
struct RepSet {
    Int bound = 0;
    std::vector<u64> bits;  // bound+1 bits; bit 0 always clear
    std::optional<std::vector<u64>> counts;

    bool contains(Int v) const {
        return v >= 1 && v <= bound && (bits[static_cast<u64>(v) >> 6] >> (v & 63)) & 1;
    }
    void set(Int v) { bits[static_cast<u64>(v) >> 6] |= u64(1) << (v & 63); }
    std::vector<Int> to_list() const;
    bool same_values(const RepSet& o) const { return bound == o.bound && bits == o.bits; }
};

RepSet enumerate_values(const GramLattice& L, Int B, bool want_counts = false);

// All x with Q(x) = value, one per +-pair (topmost nonzero coordinate
// positive), in enumeration order.
std::vector<std::vector<Int>> vectors_with_value(const GramLattice& L, Int value);

// Hyperplane normals of (Z/q)^n: nonzero vectors with last nonzero entry 1,
// in ascending lexicographic order.  One per index-q sublattice.
std::vector<std::vector<Int>> hyperplane_normals(int n, Int q);
GramLattice index_q_sublattice(const GramLattice& L, Int q, const std::vector<Int>& normal);
std::vector<GramLattice> index_p_sublattices(const GramLattice& L, Int q);

// --- exact enumeration kernel -------------------------------------------
//
// Recursive completion of squares with integer Schur-complement bounds:
// at each level the admissible coordinate range is the exact set of integers
// whose best real completion still satisfies Q <= B, so no lattice vector
// with Q(x) <= B is ever missed.  All bound arithmetic is integral (the
// rational Cholesky data is cleared of denominators by the head
// determinants); the visitor sees each +-pair of vectors exactly once.

namespace detail {

struct EnumSetup {
    int n;
    Int B;
    std::vector<Int> G;
    std::vector<i128> det;                 // det[i] = det of leading i x i, det[0] = 1
    std::vector<std::vector<i128>> adjg;   // adjg[i] = adj(head_i) * g_i, length i
    std::vector<std::vector<i128>> adj;    // adj[i] = adjugate of head_i (i x i)
};

EnumSetup make_enum_setup(const GramLattice& L, Int B);

template <class V>
class Enumerator {
public:
    Enumerator(const EnumSetup& su, V& vis) : su_(su), vis_(vis) {}

    void run() {
        lam_.fill(0);
        x_.fill(0);
        if (su_.n == 0) return;
        rec(su_.n - 1, 0, true);
    }

private:
    const EnumSetup& su_;
    V& vis_;
    std::array<Int, kMaxRank> x_{};
    std::array<Int, kMaxRank> lam_{};

    // Integer range of x_i admitting a real completion with Q <= B:
    // alpha x^2 + beta x + gamma <= 0 with alpha = det[i+1] > 0.
    bool level_range(int i, i128 s_tail, Int& lo, Int& hi) const {
        const int np = su_.n;
        i128 alpha = su_.det[i + 1];
        i128 beta = 2 * (su_.det[i] * static_cast<i128>(lam_[i]) - dot_adjg(i));
        i128 gamma = su_.det[i] * (s_tail - static_cast<i128>(su_.B)) - lam_adj_lam(i);
        (void)np;
        i128 disc = beta * beta - 4 * alpha * gamma;
        if (disc < 0) return false;
        i128 s = static_cast<i128>(isqrt_u128(static_cast<u128>(disc)));
        auto f = [&](i128 t) { return alpha * t * t + beta * t + gamma; };
        i128 l = ceildiv(-beta - s - 2, 2 * alpha);
        i128 h = floordiv(-beta + s + 2, 2 * alpha);
        while (l <= h && f(l) > 0) ++l;
        while (h >= l && f(h) > 0) --h;
        if (l > h) return false;
        lo = static_cast<Int>(l);
        hi = static_cast<Int>(h);
        return true;
    }

    i128 dot_adjg(int i) const {  // g_i^T adj(head_i) lambda_head
        i128 acc = 0;
        const auto& w = su_.adjg[i];
        for (int j = 0; j < i; ++j) acc += w[j] * static_cast<i128>(lam_[j]);
        return acc;
    }

    i128 lam_adj_lam(int i) const {
        i128 acc = 0;
        const auto& A = su_.adj[i];
        for (int j = 0; j < i; ++j) {
            i128 row = 0;
            for (int k = 0; k < i; ++k) row += A[static_cast<std::size_t>(j) * i + k] * static_cast<i128>(lam_[k]);
            acc += static_cast<i128>(lam_[j]) * row;
        }
        return acc;
    }

    void rec(int i, i128 s_tail, bool upper_zero) {
        Int lo, hi;
        if (!level_range(i, s_tail, lo, hi)) return;
        if (upper_zero && lo < 0) lo = 0;
        if (lo > hi) return;
        const int n = su_.n;
        const Int* G = su_.G.data();
        if (i == 0) {
            const Int g00 = G[0];
            const Int l0 = lam_[0];
            Int v = static_cast<Int>(static_cast<i128>(g00) * lo * lo + 2 * static_cast<i128>(l0) * lo + s_tail);
            Int step = g00 * (2 * lo + 1) + 2 * l0;
            for (Int xv = lo; xv <= hi; ++xv) {
                if (v != 0) {
                    x_[0] = xv;
                    vis_(v, x_.data());
                }
                v += step;
                step += 2 * g00;
            }
            return;
        }
        std::array<Int, kMaxRank> save;
        for (int j = 0; j < i; ++j) save[j] = lam_[j];
        const Int gii = G[static_cast<std::size_t>(i) * n + i];
        const Int li = lam_[i];
        for (Int xv = lo; xv <= hi; ++xv) {
            x_[i] = xv;
            for (int j = 0; j < i; ++j) lam_[j] = save[j] + G[static_cast<std::size_t>(j) * n + i] * xv;
            i128 s2 = s_tail + static_cast<i128>(gii) * xv * xv + 2 * static_cast<i128>(li) * xv;
            rec(i - 1, s2, upper_zero && xv == 0);
        }
        for (int j = 0; j < i; ++j) lam_[j] = save[j];
    }
};

}  // namespace detail

// Visits every +-pair (value, coords) with 1 <= value <= B exactly once.
template <class V>
void enumerate_vectors(const GramLattice& L, Int B, V&& vis) {
    if (B < 0) throw input_error("enumeration bound must be nonnegative");
    if (B == 0 || L.rank() == 0) return;
    detail::EnumSetup su = detail::make_enum_setup(L, B);
    detail::Enumerator<std::remove_reference_t<V>> e(su, vis);
    e.run();
}

}  // namespace qf
