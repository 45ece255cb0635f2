#pragma once

#include <string>
#include <vector>

#include "qflocal/arith.hpp"
#include "qflocal/lattice.hpp"

namespace qf {

// Jordan splitting of L_p, computed by exact symmetric elimination over the
// rationals with p-free denominators.  For odd p every block is a scaled
// unit ⟨p^e u⟩; at p = 2 even binary blocks appear and are classified as
// 2^e*A or 2^e*H by -det mod 8 (H -> 1, A -> 5).  No canonical 2-adic symbol
// is attempted; lattices are compared through their value sets, never
// through splitting syntax.

struct JordanBlock {
    enum class Kind { unit, block_a, block_h };
    Kind kind = Kind::unit;
    int exp = 0;
    Int unit_rep = 1;  // canonical unit class rep, unit blocks only

    int rank() const { return kind == Kind::unit ? 1 : 2; }
    std::string str() const;
};

struct JordanLevel {
    int exp = 0;
    std::vector<JordanBlock> blocks;

    int rank() const {
        int r = 0;
        for (const auto& b : blocks) r += b.rank();
        return r;
    }
    bool has_unit_block() const {
        for (const auto& b : blocks)
            if (b.kind == JordanBlock::Kind::unit) return true;
        return false;
    }
    // ord_p of the level's norm ideal: exp for a level with a unit block,
    // exp+1 for a purely even (A/H) level.
    int norm_ord() const { return has_unit_block() ? exp : exp + 1; }
};

struct JordanSplitting {
    Int p = 2;
    std::vector<JordanLevel> levels;

    int rank() const {
        int r = 0;
        for (const auto& l : levels) r += l.rank();
        return r;
    }
    int vp_det() const {
        int v = 0;
        for (const auto& l : levels) v += l.exp * l.rank();
        return v;
    }
    // Rational diagonal entries of the underlying quadratic space, level by
    // level (A ~ <2^{e+1}, 3*2^{e+1}>, H ~ <2^{e+1}, -2^{e-1}>).
    std::vector<Rat> space_diagonal(int level_count = -1) const;
};

JordanSplitting jordan_decompose(const GramLattice& L, Int p);

// Rational congruence diagonalization with an exact basis-change witness:
// basis columns y_i satisfy Q(y_i) = diag[i] and B(y_i, y_j) = 0.
struct DiagonalSpace {
    std::vector<Rat> diag;
    std::vector<std::vector<Rat>> basis;  // column i = coordinates of y_i
};

DiagonalSpace rational_diagonalize(const GramLattice& L);

int hasse(const GramLattice& L, Int p);
int hasse_diag(const std::vector<Rat>& d, Int p);

// Isotropy of the Q_p-space spanned by L (or by a diagonal form).
bool is_isotropic(const GramLattice& L, Int p);
bool is_isotropic_diag(const std::vector<Rat>& d, Int p);

}  // namespace qf
