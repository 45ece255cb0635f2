#include "qflocal/jordan.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace qf {

std::string JordanBlock::str() const {
    switch (kind) {
        case Kind::block_a: return "A";
        case Kind::block_h: return "H";
        default: return "u" + std::to_string(unit_rep);
    }
}

std::vector<Rat> JordanSplitting::space_diagonal(int level_count) const {
    std::vector<Rat> out;
    int lim = level_count < 0 ? static_cast<int>(levels.size()) : level_count;
    for (int li = 0; li < lim; ++li) {
        const auto& lv = levels[li];
        Rat scale = Rat(pow_big(BigInt(p), lv.exp));
        for (const auto& b : lv.blocks) {
            switch (b.kind) {
                case JordanBlock::Kind::unit:
                    out.push_back(scale * b.unit_rep);
                    break;
                case JordanBlock::Kind::block_a:
                    out.push_back(scale * 2);
                    out.push_back(scale * Rat(3, 2));
                    break;
                case JordanBlock::Kind::block_h:
                    out.push_back(scale * 2);
                    out.push_back(scale * Rat(-1, 2));
                    break;
            }
        }
    }
    return out;
}

namespace {

constexpr int kInfVal = std::numeric_limits<int>::max();

int val_or_inf(const Rat& a, Int p) { return a == 0 ? kInfVal : vp(a, p); }

struct Eliminator {
    Int p;
    int n;
    std::vector<std::vector<Rat>> m;
    std::vector<bool> done;

    // x_i += c * x_j as a symmetric congruence.
    void add_row(int i, int j, const Rat& c) {
        for (int k = 0; k < n; ++k) m[i][k] += c * m[j][k];
        for (int k = 0; k < n; ++k) m[k][i] += c * m[k][j];
    }

    Int canonical_unit(const Rat& u) const {
        if (p == 2) return unit_rep_mod(u, 8);
        return legendre(BigInt(u.get_num() * u.get_den()), p) == 1 ? 1 : delta_p(p);
    }
};

}  // namespace

JordanSplitting jordan_decompose(const GramLattice& L, Int p) {
    require_prime(p);
    const int n = L.rank();
    Eliminator el{p, n, {}, std::vector<bool>(n, false)};
    el.m.assign(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) el.m[i][j] = L.gram(i, j);

    std::vector<JordanBlock> blocks;
    int remaining = n;
    while (remaining > 0) {
        int best_diag = -1, best_i = -1, best_j = -1, vmin = kInfVal;
        for (int i = 0; i < n; ++i) {
            if (el.done[i]) continue;
            for (int j = i; j < n; ++j) {
                if (el.done[j]) continue;
                int v = val_or_inf(el.m[i][j], p);
                if (v < vmin) {
                    vmin = v;
                    best_i = i;
                    best_j = j;
                    best_diag = -1;
                }
                if (i == j && v == vmin && best_diag < 0) best_diag = i;
            }
        }
        if (vmin == kInfVal) throw internal_error("degenerate matrix in jordan_decompose");

        if (best_diag < 0 && p != 2) {
            // Odd p: vp(2) = 0, so x_i += x_j moves the minimum onto the diagonal.
            el.add_row(best_i, best_j, Rat(1));
            best_diag = best_i;
        }

        if (best_diag >= 0) {
            int i = best_diag;
            const Rat piv = el.m[i][i];
            for (int k = 0; k < n; ++k) {
                if (el.done[k] || k == i || el.m[k][i] == 0) continue;
                el.add_row(k, i, Rat(-el.m[k][i] / piv));
            }
            int e = vp(piv, p);
            Rat u = piv / Rat(pow_big(BigInt(p), e));
            blocks.push_back(JordanBlock{JordanBlock::Kind::unit, e, el.canonical_unit(u)});
            el.done[i] = true;
            --remaining;
        } else {
            // p = 2, minimum attained only off-diagonal: split an even
            // binary block on (i, j).
            int i = best_i, j = best_j;
            const Rat a = el.m[i][i], b = el.m[i][j], d = el.m[j][j];
            const Rat det = a * d - b * b;
            for (int k = 0; k < n; ++k) {
                if (el.done[k] || k == i || k == j) continue;
                const Rat r1 = el.m[k][i], r2 = el.m[k][j];
                if (r1 == 0 && r2 == 0) continue;
                Rat c1 = -(r1 * d - r2 * b) / det;
                Rat c2 = -(r2 * a - r1 * b) / det;
                if (c1 != 0) el.add_row(k, i, c1);
                if (c2 != 0) el.add_row(k, j, c2);
            }
            int e = vmin;
            Rat unit_det = det / Rat(pow_big(BigInt(4), e));
            Int rep = unit_rep_mod(Rat(-unit_det), 8);
            JordanBlock blk;
            blk.exp = e;
            if (rep == 1)
                blk.kind = JordanBlock::Kind::block_h;
            else if (rep == 5)
                blk.kind = JordanBlock::Kind::block_a;
            else
                throw internal_error("even binary block with -det not 1 or 5 mod 8");
            blocks.push_back(blk);
            el.done[i] = el.done[j] = true;
            remaining -= 2;
        }
    }

    std::map<int, JordanLevel> by_exp;
    for (const auto& b : blocks) {
        auto& lv = by_exp[b.exp];
        lv.exp = b.exp;
        lv.blocks.push_back(b);
    }
    JordanSplitting J;
    J.p = p;
    for (auto& [e, lv] : by_exp) J.levels.push_back(std::move(lv));
    if (J.rank() != n) throw internal_error("jordan splitting rank mismatch");
    if (J.vp_det() != vp(L.det(), p)) throw internal_error("jordan splitting determinant mismatch");
    return J;
}

DiagonalSpace rational_diagonalize(const GramLattice& L) {
    const int n = L.rank();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = L.gram(i, j);
    std::vector<std::vector<Rat>> basis(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) basis[i][i] = 1;

    // x_j += c * x_i, applied to the congruence matrix and the witness.
    auto add_row = [&](int j, int i, const Rat& c) {
        for (int k = 0; k < n; ++k) m[j][k] += c * m[i][k];
        for (int k = 0; k < n; ++k) m[k][j] += c * m[k][i];
        for (int k = 0; k < n; ++k) basis[k][j] += c * basis[k][i];
    };

    for (int i = 0; i < n; ++i) {
        if (m[i][i] == 0) throw internal_error("zero diagonal pivot on a definite form");
        for (int j = i + 1; j < n; ++j)
            if (m[i][j] != 0) add_row(j, i, Rat(-m[i][j] / m[i][i]));
    }
    DiagonalSpace out;
    out.diag.reserve(n);
    for (int i = 0; i < n; ++i) out.diag.push_back(m[i][i]);
    out.basis = std::move(basis);
    return out;
}

int hasse_diag(const std::vector<Rat>& d, Int p) {
    int h = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) h *= hilbert(d[i], d[j], p);
    return h;
}

int hasse(const GramLattice& L, Int p) { return hasse_diag(rational_diagonalize(L).diag, p); }

bool is_isotropic_diag(const std::vector<Rat>& d, Int p) {
    require_prime(p);
    const std::size_t n = d.size();
    if (n == 0) throw input_error("isotropy of a rank-0 space");
    for (const Rat& a : d)
        if (a == 0) throw zero_input_error();
    if (n >= 5) return true;
    Rat dd(1);
    for (const Rat& a : d) dd *= a;
    switch (n) {
        case 1: return false;
        case 2: return is_square(Rat(-dd), p);
        case 3: return hasse_diag(d, p) == hilbert(Rat(-1), Rat(-dd), p);
        default: {
            bool aniso = is_square(dd, p) && hasse_diag(d, p) == -hilbert(Rat(-1), Rat(-1), p);
            return !aniso;
        }
    }
}

bool is_isotropic(const GramLattice& L, Int p) {
    return is_isotropic_diag(rational_diagonalize(L).diag, p);
}

}  // namespace qf
