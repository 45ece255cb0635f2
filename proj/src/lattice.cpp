#include "qflocal/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "qflocal/bitset.hpp"

namespace qf {

namespace {

BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]);
}

std::vector<std::vector<BigInt>> to_big(const std::vector<Int>& g, int n, int size) {
    std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) a[i][j] = g[static_cast<std::size_t>(i) * n + j];
    return a;
}

// Adjugate via cofactors; n is tiny so this is plenty fast.
std::vector<std::vector<BigInt>> adjugate(const std::vector<std::vector<BigInt>>& a) {
    int n = static_cast<int>(a.size());
    std::vector<std::vector<BigInt>> adj(n, std::vector<BigInt>(n));
    if (n == 0) return adj;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<BigInt>> minor;
            minor.reserve(n - 1);
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<BigInt> row;
                row.reserve(n - 1);
                for (int c = 0; c < n; ++c)
                    if (c != j) row.push_back(a[r][c]);
                minor.push_back(std::move(row));
            }
            BigInt d = bareiss_det(std::move(minor));
            adj[j][i] = ((i + j) % 2 == 0) ? d : BigInt(-d);
        }
    return adj;
}

i128 to_i128_checked(const BigInt& v) {
    static const BigInt lim = pow_big(BigInt(2), 124);
    if (v >= lim || v <= -lim)
        throw unsupported_error("lattice entries/bound too large for the enumeration kernel");
    bool neg = v < 0;
    BigInt a = neg ? BigInt(-v) : v;
    BigInt hi = a >> 64;
    BigInt lo = a - (hi << 64);
    u128 r = (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
    i128 out = static_cast<i128>(r);
    return neg ? -out : out;
}

}  // namespace

BigInt int_det(const std::vector<std::vector<Int>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw input_error("matrix must be square");
        for (int j = 0; j < n; ++j) a[i][j] = rows[i][j];
    }
    return bareiss_det(std::move(a));
}

GramLattice GramLattice::from_rows(const std::vector<std::vector<Int>>& rows, std::string name) {
    GramLattice L;
    L.n_ = static_cast<int>(rows.size());
    L.name_ = std::move(name);
    if (L.n_ == 0) throw input_error("empty Gram matrix");
    if (L.n_ > kMaxRank) throw unsupported_error("rank beyond supported maximum");
    L.g_.assign(static_cast<std::size_t>(L.n_) * L.n_, 0);
    for (int i = 0; i < L.n_; ++i) {
        if (static_cast<int>(rows[i].size()) != L.n_) throw input_error("Gram matrix must be square");
        for (int j = 0; j < L.n_; ++j) L.g_[static_cast<std::size_t>(i) * L.n_ + j] = rows[i][j];
    }
    for (int i = 0; i < L.n_; ++i)
        for (int j = i + 1; j < L.n_; ++j)
            if (L.gram(i, j) != L.gram(j, i)) throw input_error("Gram matrix must be symmetric");
    for (int k = 1; k <= L.n_; ++k) {
        BigInt mk = bareiss_det(to_big(L.g_, L.n_, k));
        if (mk <= 0)
            throw definiteness_error("Gram matrix is not positive definite (leading minor <= 0)");
        if (k == L.n_) L.det_ = mk;
    }
    Int s = 0;
    for (Int v : L.g_) s = std::gcd(s, v);
    L.scale_ = s;
    Int nn = 2 * s;
    for (int i = 0; i < L.n_; ++i) nn = std::gcd(nn, L.gram(i, i));
    L.norm_ = nn;
    return L;
}

GramLattice GramLattice::named(std::string name) const {
    GramLattice c = *this;
    c.name_ = std::move(name);
    return c;
}

bool GramLattice::is_diagonal() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && gram(i, j) != 0) return false;
    return true;
}

std::vector<std::vector<Int>> GramLattice::rows() const {
    std::vector<std::vector<Int>> r(n_, std::vector<Int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i][j] = gram(i, j);
    return r;
}

GramLattice make_lattice(const std::vector<std::vector<Int>>& rows, std::string name) {
    return GramLattice::from_rows(rows, std::move(name));
}

GramLattice diag_lattice(const std::vector<Int>& d, std::string name) {
    int n = static_cast<int>(d.size());
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = d[i];
    return GramLattice::from_rows(rows, std::move(name));
}

GramLattice ortho_sum(const GramLattice& a, const GramLattice& b) {
    int n = a.rank() + b.rank();
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(n, 0));
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) rows[i][j] = a.gram(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) rows[a.rank() + i][a.rank() + j] = b.gram(i, j);
    return GramLattice::from_rows(rows);
}

GramLattice rescale(const GramLattice& L, Int c) {
    if (c <= 0) throw input_error("rescale factor must be positive");
    auto rows = L.rows();
    for (auto& r : rows)
        for (Int& v : r) v *= c;
    return GramLattice::from_rows(rows, L.name());
}

GramLattice sublattice(const GramLattice& L, const std::vector<std::vector<Int>>& T) {
    int n = L.rank();
    if (static_cast<int>(T.size()) != n) throw input_error("basis-change matrix must be n x n");
    if (int_det(T) == 0) throw degenerate_error("sublattice basis-change matrix is singular");
    // Gram' = T G T^t, rows of T in lattice coordinates.
    std::vector<std::vector<i128>> tg(n, std::vector<i128>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (T[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) tg[i][j] += static_cast<i128>(T[i][k]) * L.gram(k, j);
        }
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            i128 acc = 0;
            for (int k = 0; k < n; ++k) acc += tg[i][k] * T[j][k];
            if (iabs128(acc) > i128(INT64_MAX)) throw unsupported_error("sublattice Gram overflows");
            rows[i][j] = static_cast<Int>(acc);
        }
    return GramLattice::from_rows(rows);
}

// --- enumeration ----------------------------------------------------------

namespace detail {

EnumSetup make_enum_setup(const GramLattice& L, Int B) {
    const int n = L.rank();
    EnumSetup su;
    su.n = n;
    su.B = B;
    su.G = L.entries();

    std::vector<std::vector<BigInt>> full = to_big(su.G, n, n);
    std::vector<std::vector<BigInt>> fulladj = adjugate(full);
    const BigInt& det = L.det();

    // Dual coordinate bounds |x_i| <= R_i, exact.
    std::vector<BigInt> R(n);
    BigInt lamB = 0, sB = 0;
    for (int i = 0; i < n; ++i) {
        BigInt t = (BigInt(B) * fulladj[i][i]) / det;
        BigInt r = sqrt(t);
        while ((r + 1) * (r + 1) * det <= BigInt(B) * fulladj[i][i]) ++r;
        while (r > 0 && r * r * det > BigInt(B) * fulladj[i][i]) --r;
        R[i] = r + 2;
    }
    for (int j = 0; j < n; ++j) {
        BigInt lj = 0;
        for (int k = 0; k < n; ++k) lj += abs(BigInt(L.gram(j, k))) * R[k];
        if (lj > lamB) lamB = lj;
        for (int k = 0; k < n; ++k) sB += abs(BigInt(L.gram(j, k))) * R[j] * R[k];
    }
    if (lamB >= pow_big(BigInt(2), 61))
        throw unsupported_error("lattice/bound too large for the enumeration kernel");

    su.det.resize(n + 1);
    su.adj.resize(n);
    su.adjg.resize(n);
    BigInt worst = 0;
    for (int h = 0; h <= n; ++h) {
        BigInt dh = bareiss_det(to_big(su.G, n, h));
        su.det[h] = to_i128_checked(dh);
        if (h == n) break;
        auto adjh = adjugate(to_big(su.G, n, h));
        su.adj[h].assign(static_cast<std::size_t>(h) * h, 0);
        su.adjg[h].assign(h, 0);
        BigInt adjmax = 0;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                su.adj[h][static_cast<std::size_t>(i) * h + j] = to_i128_checked(adjh[i][j]);
                adjmax = std::max(adjmax, BigInt(abs(adjh[i][j])));
            }
        for (int i = 0; i < h; ++i) {
            BigInt acc = 0;
            for (int j = 0; j < h; ++j) acc += adjh[i][j] * L.gram(j, h);
            su.adjg[h][i] = to_i128_checked(acc);
        }
        // Magnitude guard for the level-h quadratic: everything the kernel
        // multiplies stays below 2^124.
        BigInt beta = 4 * BigInt(n) * (adjmax + dh + 1) * (lamB + 1);
        BigInt gamma = (dh + 1) * (sB + B + 1) + BigInt(n) * n * (adjmax + 1) * (lamB + 1) * (lamB + 1);
        BigInt disc = beta * beta + 4 * (dh + 1) * (gamma + 1);
        worst = std::max(worst, disc);
        BigInt xmax = R[h] + 2;
        BigInt fmax = (dh + 1) * xmax * xmax + beta * xmax + gamma;
        worst = std::max(worst, fmax);
    }
    to_i128_checked(worst);
    return su;
}

}  // namespace detail

std::vector<Int> RepSet::to_list() const {
    std::vector<Int> out;
    for (Int v = 1; v <= bound; ++v)
        if (contains(v)) out.push_back(v);
    return out;
}

namespace {

// Value set of a diagonal form by iterated shifted OR; exact, and much
// faster than vector enumeration when ranks and bounds are large.
std::vector<u64> diagonal_value_bits(const std::vector<Int>& diag, Int B) {
    u64 nbits = static_cast<u64>(B) + 1;
    std::vector<u64> cur = bits::make(nbits);
    bits::set(cur, 0);
    for (Int d : diag) {
        std::vector<u64> next = cur;  // x_i = 0 term
        for (Int k = 1; static_cast<i128>(d) * k * k <= B; ++k)
            bits::or_shifted_trunc(next, cur, static_cast<u64>(d) * k * k, nbits);
        cur = std::move(next);
    }
    cur[0] &= ~u64(1);
    return cur;
}

struct ValueVis {
    RepSet* rs;
    void operator()(Int v, const Int*) { rs->set(v); }
};

struct CountVis {
    RepSet* rs;
    std::vector<u64>* counts;
    void operator()(Int v, const Int*) {
        rs->set(v);
        (*counts)[static_cast<std::size_t>(v)] += 1;
    }
};

}  // namespace

RepSet enumerate_values(const GramLattice& L, Int B, bool want_counts) {
    if (B < 0) throw input_error("enumeration bound must be nonnegative");
    RepSet rs;
    rs.bound = B;
    rs.bits = bits::make(static_cast<u64>(B) + 1);
    if (B == 0) return rs;
    if (!want_counts && L.is_diagonal()) {
        std::vector<Int> d(L.rank());
        for (int i = 0; i < L.rank(); ++i) d[i] = L.gram(i, i);
        rs.bits = diagonal_value_bits(d, B);
        return rs;
    }
    if (want_counts) {
        std::vector<u64> counts(static_cast<std::size_t>(B) + 1, 0);
        CountVis vis{&rs, &counts};
        enumerate_vectors(L, B, vis);
        rs.counts = std::move(counts);
    } else {
        ValueVis vis{&rs};
        enumerate_vectors(L, B, vis);
    }
    return rs;
}

std::vector<std::vector<Int>> vectors_with_value(const GramLattice& L, Int value) {
    if (value < 1) throw input_error("target value must be positive");
    std::vector<std::vector<Int>> out;
    const int n = L.rank();
    enumerate_vectors(L, value, [&](Int v, const Int* x) {
        if (v == value) out.emplace_back(x, x + n);
    });
    return out;
}

std::vector<std::vector<Int>> hyperplane_normals(int n, Int q) {
    require_prime(q);
    std::vector<std::vector<Int>> out;
    std::vector<Int> a(n, 0);
    for (;;) {
        int i = n - 1;
        while (i >= 0 && a[i] == q - 1) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
        int last = n - 1;
        while (last >= 0 && a[last] == 0) --last;
        if (last >= 0 && a[last] == 1) out.push_back(a);
    }
    return out;
}

GramLattice index_q_sublattice(const GramLattice& L, Int q, const std::vector<Int>& normal) {
    const int n = L.rank();
    int i0 = n - 1;
    while (i0 >= 0 && normal[i0] == 0) --i0;
    if (i0 < 0 || normal[i0] != 1) throw input_error("normal must have last nonzero entry 1");
    std::vector<std::vector<Int>> T(n, std::vector<Int>(n, 0));
    for (int j = 0; j < n; ++j) {
        if (j == i0) {
            T[j][i0] = q;
        } else {
            T[j][j] = 1;
            T[j][i0] = (q - normal[j] % q) % q;
        }
    }
    return sublattice(L, T);
}

std::vector<GramLattice> index_p_sublattices(const GramLattice& L, Int q) {
    std::vector<GramLattice> out;
    for (const auto& a : hyperplane_normals(L.rank(), q)) out.push_back(index_q_sublattice(L, q, a));
    return out;
}

}  // namespace qf
