#include "qflocal/invariants.hpp"

#include <algorithm>
#include <set>

namespace qf {

namespace {

int eta_search_cap(const GramLattice& L, Int p) {
    int v = vp(BigInt(BigInt(4) * L.det()), p);
    return (v + 6 + 1) / 2;  // ceil((vp(4 dL) + 6) / 2)
}

EtaValue eta_with_engine(const GramLattice& L, const LocalEngine& eng, const SquareClass& s,
                         bool rank3_anisotropic) {
    const Int p = eng.prime();
    if (rank3_anisotropic && is_square(Rat(-s.value() * L.det()), p)) {
        // Excluded class s1 of an anisotropic ternary: s1 p^{2u} is never
        // represented, nu_{p,s1} = infinity.
        return EtaValue{true, s};
    }
    int cap = eta_search_cap(L, p);
    for (int u = 0; u <= cap; ++u) {
        SquareClass c{p, s.val + 2 * u, s.unit};
        if (eng.represents(c)) return EtaValue{false, c};
    }
    throw internal_error("eta search exceeded its cap without the anisotropic justification");
}

bool valid_sc_element(const SquareClass& s, Int p) {
    auto scs = sc_set(p);
    return std::find(scs.begin(), scs.end(), s) != scs.end();
}

}  // namespace

const EtaValue& LocalProfile::eta_for(const SquareClass& s) const {
    for (const auto& [cls, ev] : table)
        if (cls == s) return ev;
    throw input_error("class is not an SC_p representative");
}

EtaValue eta(const GramLattice& L, Int p, const SquareClass& s) {
    require_prime(p);
    if (L.rank() < 3) throw unsupported_error("eta needs rank >= 3");
    if (s.p != p || !valid_sc_element(s, p)) throw input_error("s must belong to SC_p");
    LocalEngine eng(jordan_decompose(L, p));
    bool rank3_aniso = L.rank() == 3 && !is_isotropic(L, p);
    return eta_with_engine(L, eng, s, rank3_aniso);
}

LocalProfile nu_profile(const GramLattice& L, Int p) {
    require_prime(p);
    if (L.rank() < 3) throw unsupported_error("nu profile needs rank >= 3");
    LocalEngine eng(jordan_decompose(L, p));
    LocalProfile pr;
    pr.p = p;
    pr.ternary_isotropic = L.rank() != 3 || is_isotropic(L, p);
    const bool rank3_aniso = L.rank() == 3 && !pr.ternary_isotropic;

    int inf_count = 0;
    for (const SquareClass& s : sc_set(p)) {
        EtaValue ev = eta_with_engine(L, eng, s, rank3_aniso);
        if (ev.infinite) ++inf_count;
        pr.table.emplace_back(s, ev);
    }
    if (inf_count != (rank3_aniso ? 1 : 0))
        throw internal_error("anisotropic ternary must exclude exactly one class");

    if (rank3_aniso) {
        pr.nu_infinite = true;
        pr.nu = -1;
        for (const auto& [s, ev] : pr.table)
            if (ev.infinite) pr.s0 = s;
        int best = -1;
        for (const auto& [s, ev] : pr.table)
            if (!ev.infinite) best = std::max(best, ev.cls.val);
        pr.nu_prime = best;
    } else {
        int best = -1, attained = 0;
        for (const auto& [s, ev] : pr.table) best = std::max(best, ev.cls.val);
        for (const auto& [s, ev] : pr.table)
            if (ev.cls.val == best) {
                if (attained == 0) pr.s0 = s;
                ++attained;
            }
        pr.nu = best;
        // Tie-break: s0 is "any" maximizer, so a twice-attained maximum
        // forces nu' = nu.
        if (attained >= 2) {
            pr.nu_prime = best;
        } else {
            int second = -1;
            for (const auto& [s, ev] : pr.table)
                if (!(s == pr.s0)) second = std::max(second, ev.cls.val);
            pr.nu_prime = second;
        }
    }

    pr.type_a = false;
    if (p == 2 && L.rank() >= 4 && L.scale() % 2 != 0) pr.type_a = is_type_a(L);
    return pr;
}

bool is_type_a(const GramLattice& L) {
    if (L.rank() < 4) throw unsupported_error("type A needs rank >= 4");
    if (L.scale() % 2 == 0) throw input_error("type A assumes a lattice primitive at 2");
    JordanSplitting J = jordan_decompose(L, 2);
    int acc = 0;
    std::size_t k = 0;
    while (k < J.levels.size() && acc < 3) acc += J.levels[k++].rank();
    if (acc != 3 || k >= J.levels.size()) return false;
    std::vector<Rat> front = J.space_diagonal(static_cast<int>(k));
    if (is_isotropic_diag(front, 2)) return false;
    int scale_prev = J.levels[k - 1].exp;
    int norm_next = J.levels[k].norm_ord();
    return norm_next >= scale_prev + 3;
}

HSet h_set(const GramLattice& L) {
    if (L.rank() < 4) throw unsupported_error("h_set needs rank >= 4");
    HSet hs;
    hs.primes = prime_factors(BigInt(2) * L.det());
    std::vector<std::vector<SquareClass>> per_prime;
    for (Int p : hs.primes) {
        LocalProfile pr = nu_profile(L, p);
        std::vector<SquareClass> etas;
        for (const auto& [s, ev] : pr.table) {
            if (ev.infinite) throw internal_error("infinite eta at rank >= 4");
            etas.push_back(ev.cls);
        }
        per_prime.push_back(std::move(etas));
    }
    std::set<std::vector<SquareClass>> tuples;
    std::vector<SquareClass> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == per_prime.size()) {
            tuples.insert(cur);
            return;
        }
        for (const SquareClass& c : per_prime[i]) {
            cur.push_back(c);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    hs.tuples.assign(tuples.begin(), tuples.end());
    return hs;
}

bool s_eta_contains(const std::vector<Int>& primes, const std::vector<SquareClass>& eta,
                    const BigInt& n) {
    if (n <= 0) throw input_error("S_eta membership is asked for positive integers");
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (!(square_class(n, primes[i]) == eta[i])) return false;
    return true;
}

EscalationData escalation_data(const GramLattice& L) {
    if (L.rank() < 4) throw unsupported_error("escalation data needs rank >= 4");
    EscalationData out;
    HSet hs = h_set(L);
    out.primes = hs.primes;
    for (Int p : out.primes) out.profiles.emplace(p, nu_profile(L, p));

    for (Int p : out.primes) {
        const LocalProfile& pr = out.profiles.at(p);
        if (pr.nu_prime + 3 < pr.nu) {
            out.e_set.push_back(p);
            out.xi.emplace(p, SquareClass{p, pr.s0.val + 2, pr.s0.unit});
        }
    }

    std::set<std::vector<SquareClass>> images;
    for (const auto& eta_tuple : hs.tuples) {
        EtaRecord rec;
        rec.eta = eta_tuple;
        rec.eta_prime = eta_tuple;
        for (std::size_t i = 0; i < out.primes.size(); ++i) {
            Int p = out.primes[i];
            if (!out.xi.count(p)) continue;
            const LocalProfile& pr = out.profiles.at(p);
            if (eta_tuple[i].val != pr.nu) continue;
            const SquareClass& xi = out.xi.at(p);
            // nu is attained by a single class here, so eta_p = p^{2 kappa} xi_p
            // holds exactly: same unit class and an even valuation gap.
            if (!(eta_tuple[i].unit == xi.unit) || (eta_tuple[i].val - xi.val) % 2 != 0)
                throw theorem_violation("eta at a gap prime is not a p^{2k} multiple of xi");
            int kap = (eta_tuple[i].val - xi.val) / 2;
            int nu = pr.nu, nup = pr.nu_prime;
            if (!(2 <= nup + 1 && nup + 1 <= nu - 3 && nu - 3 <= 2 * kap && 2 * kap <= nu - 2))
                throw theorem_violation("escalation inequality chain failed");
            rec.e_eta.push_back(p);
            rec.kappa[p] = kap;
            rec.m *= pow_big(BigInt(p), kap);
            rec.eta_prime[i] = xi;
        }
        if (!images.insert(rec.eta_prime).second)
            throw theorem_violation("eta -> eta' is not injective");
        out.records.push_back(std::move(rec));
    }
    return out;
}

GramLattice rescaled_sublattice(const GramLattice& L, Int m,
                                const std::vector<std::vector<Int>>& xs) {
    if (m <= 0) throw input_error("rescale modulus must be positive");
    if (xs.empty()) throw input_error("rescaled_sublattice needs at least one vector");
    const int n = L.rank();
    const BigInt m2 = BigInt(m) * m;
    auto pairing = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        i128 acc = 0;
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            i128 row = 0;
            for (int j = 0; j < n; ++j) row += static_cast<i128>(L.gram(i, j)) * y[j];
            acc += static_cast<i128>(x[i]) * row;
        }
        return acc;
    };
    const std::size_t k = xs.size();
    std::vector<std::vector<BigInt>> b(k, std::vector<BigInt>(k));
    for (std::size_t i = 0; i < k; ++i) {
        if (static_cast<int>(xs[i].size()) != n) throw input_error("vector dimension mismatch");
        for (std::size_t j = i; j < k; ++j) {
            i128 v = pairing(xs[i], xs[j]);
            BigInt bv = i128_to_big(v);
            if (i == j && bv % m2 != 0)
                throw input_error("Q(x) is not divisible by m^2");
            if (i != j && bv % m2 != 0)
                throw theorem_violation("pairing B(x, x') is not divisible by m^2");
            b[i][j] = b[j][i] = bv / m2;
        }
    }
    // Reduce to a basis of the span: a subset is independent iff its Gram
    // determinant is positive (the span sits in a definite space).
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> cand = keep;
        cand.push_back(i);
        std::vector<std::vector<BigInt>> sub(cand.size(), std::vector<BigInt>(cand.size()));
        for (std::size_t a = 0; a < cand.size(); ++a)
            for (std::size_t c = 0; c < cand.size(); ++c) sub[a][c] = b[cand[a]][cand[c]];
        std::vector<std::vector<Int>> rows(cand.size(), std::vector<Int>(cand.size()));
        bool ok = true;
        for (std::size_t a = 0; a < cand.size() && ok; ++a)
            for (std::size_t c = 0; c < cand.size() && ok; ++c) {
                if (!sub[a][c].fits_slong_p()) throw unsupported_error("rescaled Gram overflows");
                rows[a][c] = sub[a][c].get_si();
            }
        if (int_det(rows) > 0) keep = cand;
    }
    if (keep.empty()) throw input_error("all vectors are zero");
    std::vector<std::vector<Int>> rows(keep.size(), std::vector<Int>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t c = 0; c < keep.size(); ++c) rows[a][c] = to_int(b[keep[a]][keep[c]]);
    return GramLattice::from_rows(rows);
}

}  // namespace qf
