#include "qflocal/regular.hpp"

#include <algorithm>

namespace qf {

std::vector<std::vector<Int>> random_unimodular(Rng& rng, int n, Int max_abs) {
    for (;;) {
        std::vector<std::vector<Int>> t(n, std::vector<Int>(n, 0));
        for (int i = 0; i < n; ++i) t[i][i] = 1;
        int ops = 2 * n + static_cast<int>(rng.below(2 * n));
        bool ok = true;
        for (int s = 0; s < ops && ok; ++s) {
            int i = static_cast<int>(rng.below(n));
            int j = static_cast<int>(rng.below(n));
            if (i == j) continue;
            Int c = rng.coin() ? 1 : -1;
            for (int k = 0; k < n; ++k) {
                t[i][k] += c * t[j][k];
                if (std::abs(t[i][k]) > max_abs) ok = false;
            }
            if (!ok) break;
        }
        if (!ok) continue;
        if (rng.coin())
            for (int k = 0; k < n; ++k) t[0][k] = -t[0][k];
        return t;
    }
}

std::vector<std::vector<Int>> random_nonsingular(Rng& rng, int n, Int max_abs) {
    for (;;) {
        std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
        for (auto& row : t)
            for (Int& v : row) v = rng.range(-max_abs, max_abs);
        if (int_det(t) != 0) return t;
    }
}

GramLattice random_unimodular_congruence(Rng& rng, const GramLattice& L, Int max_abs) {
    return sublattice(L, random_unimodular(rng, L.rank(), max_abs)).named(L.name());
}

GramLattice random_pos_def(Rng& rng, int n, Int max_entry) {
    for (;;) {
        std::vector<Int> d(n);
        for (Int& v : d) v = rng.range(1, max_entry);
        GramLattice D = diag_lattice(d);
        GramLattice L = random_unimodular_congruence(rng, D, 3);
        bool small = true;
        for (Int v : L.entries())
            if (std::abs(v) > 64 * max_entry) small = false;
        if (small) return L;
    }
}

GramLattice random_padic_diag(Rng& rng, Int p, const std::vector<int>& exps, Int unit_bound) {
    std::vector<Int> d(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        Int u;
        do u = rng.range(1, unit_bound);
        while (u % p == 0);
        Int pe = 1;
        for (int e = 0; e < exps[i]; ++e) pe *= p;
        d[i] = u * pe;
    }
    return diag_lattice(d);
}

GramLattice random_aniso_ternary(Rng& rng, Int p, int max_exp) {
    for (int tries = 0; tries < 4096; ++tries) {
        std::vector<int> exps = {0, static_cast<int>(rng.below(max_exp + 1)),
                                 static_cast<int>(rng.below(max_exp + 1))};
        std::sort(exps.begin(), exps.end());
        GramLattice L = random_padic_diag(rng, p, exps, 3 * p);
        if (!is_isotropic(L, p)) return L;
    }
    throw internal_error("failed to sample an anisotropic ternary");
}

GramLattice random_dyadic_lattice(Rng& rng, int rank) {
    // Mixes unit entries, scaled A blocks and occasional wide scale gaps;
    // always primitive at 2.
    for (;;) {
        std::vector<GramLattice> pieces;
        int r = 0;
        bool first = true;
        while (r < rank) {
            int emax = 1 + static_cast<int>(rng.below(8));
            int e = first ? 0 : static_cast<int>(rng.below(emax));
            if (rank - r >= 2 && rng.below(4) == 0) {
                Int s = 1;
                for (int k = 0; k < e; ++k) s *= 2;
                pieces.push_back(make_lattice({{2 * s, s}, {s, 2 * s}}));
                r += 2;
            } else {
                Int u = 2 * rng.below(8) + 1;
                Int s = 1;
                for (int k = 0; k < e; ++k) s *= 2;
                pieces.push_back(diag_lattice({u * s}));
                r += 1;
            }
            first = false;
        }
        GramLattice L = pieces[0];
        for (std::size_t i = 1; i < pieces.size(); ++i) L = ortho_sum(L, pieces[i]);
        if (L.scale() % 2 != 0) return rng.coin() ? random_unimodular_congruence(rng, L, 3) : L;
    }
}

}  // namespace qf
