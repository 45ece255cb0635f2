#include "qflocal/regular.hpp"

#include <algorithm>

namespace qf {

long long ScanReport::param(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return v;
    throw input_error("missing scan parameter: " + key);
}

ScanReport regularity_scan(const GramLattice& L, Int B) {
    if (B < 1) throw input_error("scan bound must be >= 1");
    ScanReport rep;
    rep.kind = "regular";
    rep.name = L.name();
    rep.params = {{"bound", B}};
    GenusTester genus(L);
    RepSet values = enumerate_values(L, B);
    for (Int n = 1; n <= B; ++n) {
        if (!values.contains(n) && genus.represents(BigInt(n))) {
            rep.verdict = "witness";
            rep.witness_ints.push_back(BigInt(n));
            return rep;
        }
    }
    rep.verdict = "pass";
    return rep;
}

ClassValueSets class_value_sets(const GramLattice& L, Int q, Int B) {
    require_prime(q);
    if (B < 1) throw input_error("scan bound must be >= 1");
    const int n = L.rank();
    ClassValueSets cs;
    cs.q = q;
    cs.n = n;
    cs.bound = B;
    cs.nclasses = pow_u64(static_cast<u64>(q), n);
    if (cs.nclasses > (u64(1) << 22)) throw unsupported_error("too many congruence classes");
    const u64 nbits = static_cast<u64>(B) + 1;
    cs.sets.assign(cs.nclasses, std::vector<u64>());

    if (L.is_diagonal()) {
        // Per coordinate and residue digit, the attainable d x^2 <= B.
        std::vector<std::vector<std::vector<Int>>> lists(n);
        for (int i = 0; i < n; ++i) {
            lists[i].resize(q);
            Int d = L.gram(i, i);
            for (Int digit = 0; digit < q; ++digit) {
                std::vector<Int> vals;
                for (Int x = digit;; x += q) {  // x >= 0 branch
                    i128 v = static_cast<i128>(d) * x * x;
                    if (v > B) break;
                    vals.push_back(static_cast<Int>(v));
                }
                for (Int x = digit - q;; x -= q) {  // x < 0 branch
                    i128 v = static_cast<i128>(d) * x * x;
                    if (v > B) break;
                    vals.push_back(static_cast<Int>(v));
                }
                std::sort(vals.begin(), vals.end());
                vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
                lists[i][digit] = std::move(vals);
            }
        }
        // Depth-first over digits so class prefixes share their partial sums.
        std::vector<u64> start = bits::make(nbits);
        bits::set(start, 0);
        auto rec = [&](auto&& self, int i, u64 cbase, const std::vector<u64>& cur) -> void {
            if (i == n) {
                cs.sets[cbase] = cur;
                cs.sets[cbase][0] &= ~u64(1);
                return;
            }
            u64 stride = pow_u64(static_cast<u64>(q), i);
            for (Int digit = 0; digit < q; ++digit) {
                std::vector<u64> next = bits::make(nbits);
                for (Int v : lists[i][digit]) bits::or_shifted_trunc(next, cur, static_cast<u64>(v), nbits);
                self(self, i + 1, cbase + static_cast<u64>(digit) * stride, next);
            }
        };
        rec(rec, 0, 0, start);
        return cs;
    }

    for (auto& s : cs.sets) s = bits::make(nbits);
    std::vector<u64> stride(n);
    for (int i = 0; i < n; ++i) stride[i] = pow_u64(static_cast<u64>(q), i);
    enumerate_vectors(L, B, [&](Int v, const Int* x) {
        u64 c = 0;
        for (int i = 0; i < n; ++i) c += static_cast<u64>(((x[i] % q) + q) % q) * stride[i];
        bits::set(cs.sets[c], static_cast<u64>(v));
    });
    return cs;
}

std::vector<u64> ClassValueSets::union_all() const {
    std::vector<u64> u = bits::make(static_cast<u64>(bound) + 1);
    for (const auto& s : sets)
        for (std::size_t w = 0; w < u.size(); ++w) u[w] |= s[w];
    return u;
}

std::vector<u64> ClassValueSets::union_hyperplane(const std::vector<Int>& normal) const {
    std::vector<u64> u = bits::make(static_cast<u64>(bound) + 1);
    int i0 = n - 1;
    while (i0 >= 0 && normal[i0] == 0) --i0;
    if (i0 < 0) throw input_error("zero normal");
    // Free digits at positions != i0; the pivot digit is determined.
    std::vector<int> free_pos;
    for (int i = 0; i < n; ++i)
        if (i != i0) free_pos.push_back(i);
    std::vector<Int> digit(n, 0);
    u64 nfree = pow_u64(static_cast<u64>(q), static_cast<int>(free_pos.size()));
    std::vector<u64> stride(n);
    for (int i = 0; i < n; ++i) stride[i] = pow_u64(static_cast<u64>(q), i);
    for (u64 idx = 0; idx < nfree; ++idx) {
        u64 t = idx;
        Int dot = 0;
        u64 c = 0;
        for (int fp : free_pos) {
            Int d = static_cast<Int>(t % static_cast<u64>(q));
            t /= static_cast<u64>(q);
            dot += normal[fp] * d;
            c += static_cast<u64>(d) * stride[fp];
        }
        Int piv = ((q - dot % q) + q) % q;  // normal[i0] == 1
        c += static_cast<u64>(piv) * stride[i0];
        const auto& s = sets[c];
        for (std::size_t w = 0; w < u.size(); ++w) u[w] |= s[w];
    }
    return u;
}

ScanReport newness_scan(const GramLattice& L, Int B, Int pmax) {
    if (B < 1) throw input_error("scan bound must be >= 1");
    if (pmax < 2) throw input_error("pmax must be at least 2");
    ScanReport rep;
    rep.kind = "new";
    rep.name = L.name();
    rep.params = {{"bound", B}, {"pmax", pmax}};
    for (Int q = 2; q <= pmax; ++q) {
        if (!is_prime(q)) continue;
        ClassValueSets cs = class_value_sets(L, q, B);
        std::vector<u64> full = cs.union_all();
        for (const auto& normal : hyperplane_normals(L.rank(), q)) {
            if (cs.union_hyperplane(normal) == full) {
                rep.verdict = "not-new";
                rep.witness_gram = index_q_sublattice(L, q, normal).rows();
                rep.witness_ints.push_back(BigInt(q));
                return rep;
            }
        }
    }
    rep.verdict = "candidate-new";
    return rep;
}

ScanReport q_structure_check(const GramLattice& L, Int B) {
    if (B < 1) throw input_error("scan bound must be >= 1");
    ScanReport rep;
    rep.kind = "structure";
    rep.name = L.name();
    rep.params = {{"bound", B}};

    HSet hs = h_set(L);
    GenusTester genus(L);

    // Path 1: n = u^2 v with v in some S_eta.
    std::vector<char> in_any(static_cast<std::size_t>(B) + 1, 0);
    for (Int v = 1; v <= B; ++v) {
        std::vector<SquareClass> cls;
        cls.reserve(hs.primes.size());
        for (Int p : hs.primes) cls.push_back(square_class(BigInt(v), p));
        for (const auto& tup : hs.tuples) {
            if (std::equal(cls.begin(), cls.end(), tup.begin(), tup.end(),
                           [](const SquareClass& a, const SquareClass& b) { return a == b; })) {
                in_any[static_cast<std::size_t>(v)] = 1;
                break;
            }
        }
    }
    std::vector<u64> rhs = bits::make(static_cast<u64>(B) + 1);
    for (Int n = 1; n <= B; ++n)
        for (Int u = 1; u * u <= n; ++u) {
            if (n % (u * u) != 0) continue;
            if (in_any[static_cast<std::size_t>(n / (u * u))]) {
                bits::set(rhs, static_cast<u64>(n));
                break;
            }
        }

    // Path 2: direct local decision at every ramified prime.
    std::vector<u64> gen = bits::make(static_cast<u64>(B) + 1);
    for (Int n = 1; n <= B; ++n)
        if (genus.represents(BigInt(n))) bits::set(gen, static_cast<u64>(n));

    if (rhs != gen)
        throw theorem_violation("S_eta structure set differs from the genus-represented set");

    RepSet values = enumerate_values(L, B);
    for (Int n = 1; n <= B; ++n)
        if (values.contains(n) && !bits::test(gen, static_cast<u64>(n)))
            throw theorem_violation("represented value is not genus-represented");

    std::vector<BigInt> gap;
    for (Int n = 1; n <= B && gap.size() < 50; ++n)
        if (bits::test(gen, static_cast<u64>(n)) && !values.contains(n)) gap.emplace_back(n);
    if (gap.empty()) {
        rep.verdict = "pass";
    } else {
        rep.verdict = "witness";
        rep.witness_ints = std::move(gap);
    }
    return rep;
}

}  // namespace qf
