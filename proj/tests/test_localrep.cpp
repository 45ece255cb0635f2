#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qflocal/localrep.hpp"
#include "qflocal/regular.hpp"

using namespace qf;

namespace {

JordanBlock unit_block(int exp, Int rep) { return JordanBlock{JordanBlock::Kind::unit, exp, rep}; }

JordanSplitting h_splitting(int exp) {
    JordanSplitting J;
    J.p = 2;
    J.levels.push_back(JordanLevel{exp, {JordanBlock{JordanBlock::Kind::block_h, exp, 1}}});
    return J;
}

}  // namespace

TEST_CASE("block residues: H, A and unit closed forms vs exhaustive pairs") {
    // H at W=4: exactly the even residues
    ResidueSet h = block_value_residues(JordanBlock{JordanBlock::Kind::block_h, 0, 1}, 2, 4);
    std::vector<u64> want_h = {0, 2, 4, 6, 8, 10, 12, 14};
    CHECK(h.to_list() == want_h);

    // A at W=4 vs brute pairs of 2(x^2+xy+y^2) mod 16
    ResidueSet a = block_value_residues(JordanBlock{JordanBlock::Kind::block_a, 0, 1}, 2, 4);
    std::vector<u64> brute = bits::make(16);
    for (Int x = 0; x < 16; ++x)
        for (Int y = 0; y < 16; ++y)
            bits::set(brute, static_cast<u64>((2 * (x * x + x * y + y * y)) % 16));
    CHECK(a.words == brute);

    // scaled H and A against brute pairs
    for (int e : {1, 2})
        for (int W : {4, 6}) {
            u64 m = oracle::pow_u64_checked(2, W);
            Int s = 1 << e;
            ResidueSet hh = block_value_residues(JordanBlock{JordanBlock::Kind::block_h, e, 1}, 2, W);
            ResidueSet aa = block_value_residues(JordanBlock{JordanBlock::Kind::block_a, e, 1}, 2, W);
            std::vector<u64> bh = bits::make(m), ba = bits::make(m);
            for (Int x = 0; x < static_cast<Int>(m); ++x)
                for (Int y = 0; y < static_cast<Int>(m); ++y) {
                    bits::set(bh, static_cast<u64>((static_cast<i128>(s) * 2 * x * y) % m));
                    bits::set(ba,
                              static_cast<u64>((static_cast<i128>(s) * 2 * (x * x + x * y + y * y)) % m));
                }
            CHECK(hh.words == bh);
            CHECK(aa.words == ba);
        }

    // <3> at p=2, W=3
    ResidueSet u3 = block_value_residues(unit_block(0, 3), 2, 3);
    CHECK(u3.to_list() == std::vector<u64>{0, 3, 4});
}

TEST_CASE("value_residues: convolution equals brute images") {
    // diag(1,1,1) mod 8: everything except 7
    JordanSplitting J;
    J.p = 2;
    J.levels.push_back(JordanLevel{0, {unit_block(0, 1), unit_block(0, 1), unit_block(0, 1)}});
    ResidueSet s = value_residues(J, 3);
    CHECK(s.to_list() == std::vector<u64>{0, 1, 2, 3, 4, 5, 6});

    JordanSplitting J4 = J;
    J4.levels[0].blocks.push_back(unit_block(0, 1));
    CHECK(value_residues(J4, 3).count() == 8);

    // unary <1> at p=3, W=2: squares mod 9 with 0
    JordanSplitting U;
    U.p = 3;
    U.levels.push_back(JordanLevel{0, {unit_block(0, 1)}});
    CHECK(value_residues(U, 2).to_list() == std::vector<u64>{0, 1, 4, 7});
}

TEST_CASE("sumset consistency across orthogonal pieces") {
    Rng rng(301);
    for (int i = 0; i < 30; ++i) {
        GramLattice a = random_pos_def(rng, 1 + static_cast<int>(rng.below(2)), 10);
        GramLattice b = random_pos_def(rng, 1 + static_cast<int>(rng.below(2)), 10);
        for (Int p : {2L, 3L}) {
            int W = p == 2 ? 5 : 3;
            ResidueSet ra = value_residues(jordan_decompose(a, p), W);
            ResidueSet rb = value_residues(jordan_decompose(b, p), W);
            ResidueSet rs = value_residues(jordan_decompose(ortho_sum(a, b), p), W);
            CHECK(residue_sumset(ra, rb).words == rs.words);
        }
    }
}

TEST_CASE("represents_local: pinned examples") {
    CHECK_FALSE(represents_local(diag_lattice({1, 1, 1}), 2, 7));
    CHECK(represents_local(diag_lattice({1, 1, 7}), 2, 3));
    CHECK_FALSE(represents_local(diag_lattice({1, 3, 18, 27}), 3, 6));
    CHECK(represents_local(diag_lattice({1, 3, 18, 27}), 3, 54));
    CHECK(represents_local(diag_lattice({1, 1, 1}), 2, 6));
    CHECK_THROWS_AS(represents_local(diag_lattice({1, 1}), 2, 0), zero_input_error);
}

TEST_CASE("represents_local equals direct residue search") {
    Rng rng(302);
    int done = 0;
    while (done < 120) {
        int rank = 1 + static_cast<int>(rng.below(3));
        GramLattice L = random_pos_def(rng, rank, 10);
        if (vp(L.det(), 2) > 4 || vp(L.det(), 3) > 4 || vp(L.det(), 5) > 4) continue;
        ++done;
        for (Int p : {2L, 3L, 5L}) {
            LocalEngine eng(jordan_decompose(L, p));
            int sigma = p == 2 ? 3 : 1;
            oracle::ResidueSearcher searcher(L, p, 4 + sigma);
            for (int v = 0; v <= 4; ++v)
                for (Int u : unit_reps(p)) {
                    SquareClass c{p, v, UnitClass{p, u}};
                    CHECK(eng.represents(c) == searcher.solvable(c.value()));
                }
        }
    }
}

TEST_CASE("scaling and monotonicity of local representation") {
    Rng rng(303);
    for (int i = 0; i < 50; ++i) {
        GramLattice L = random_pos_def(rng, 2 + static_cast<int>(rng.below(2)), 8);
        for (Int p : {2L, 3L}) {
            LocalEngine eng(jordan_decompose(L, p));
            LocalEngine eng2(jordan_decompose(rescale(L, p * p), p));
            for (Int a : {1L, 2L, 3L, 5L, 7L, 11L}) {
                CHECK(eng2.represents(BigInt(a * p * p)) == eng.represents(BigInt(a)));
                if (eng.represents(BigInt(a))) CHECK(eng.represents(BigInt(a * p * p)));
            }
        }
    }
}

TEST_CASE("local_classes: pinned examples and closure") {
    ClassSet cs = local_classes(diag_lattice({1, 1, 1}), 2, 2);
    // all classes of val <= 2 except (0,7) and (2,7)
    CHECK(cs.classes.size() == 10);
    CHECK_FALSE(cs.contains(SquareClass{2, 0, UnitClass{2, 7}}));
    CHECK_FALSE(cs.contains(SquareClass{2, 2, UnitClass{2, 7}}));
    CHECK(cs.contains(SquareClass{2, 1, UnitClass{2, 7}}));

    // H as a splitting: everything of valuation in {1, 2}
    LocalEngine h(h_splitting(0));
    ClassSet ch = local_classes(h, 2);
    CHECK(ch.classes.size() == 8);
    for (const auto& c : ch.classes) CHECK(c.val >= 1);

    // diag(1,2) at p=5: x^2 + 2y^2 classes by direct search
    GramLattice L = diag_lattice({1, 2});
    ClassSet c5 = local_classes(L, 5, 1);
    oracle::ResidueSearcher searcher(L, 5, 2);
    for (int v = 0; v <= 1; ++v)
        for (Int u : unit_reps(5))
            CHECK(c5.contains(SquareClass{5, v, UnitClass{5, u}}) ==
                  searcher.solvable(BigInt(u * (v == 1 ? 5 : 1))));

    // upward closure within the truncation
    Rng rng(304);
    for (int i = 0; i < 20; ++i) {
        GramLattice R = random_pos_def(rng, 3, 8);
        for (Int p : {2L, 3L}) {
            ClassSet cc = local_classes(R, p, 4);
            for (const auto& c : cc.classes)
                if (c.val + 2 <= 4) CHECK(cc.contains(SquareClass{p, c.val + 2, c.unit}));
        }
    }
}

TEST_CASE("sublattice class sets are contained in the lattice's") {
    Rng rng(305);
    int done = 0;
    while (done < 60) {
        GramLattice L = random_pos_def(rng, 3, 6);
        auto T = random_nonsingular(rng, 3, 2);
        BigInt dt = abs(int_det(T));
        if (dt < 1 || dt > 4) continue;
        ++done;
        GramLattice M = sublattice(L, T);
        for (Int p : {2L, 3L}) {
            ClassSet cl = local_classes(L, p, 3), cm = local_classes(M, p, 3);
            for (const auto& c : cm.classes) CHECK(cl.contains(c));
        }
    }
}

TEST_CASE("genus_represents") {
    CHECK(genus_represents(diag_lattice({1, 1, 7}), 3));
    CHECK_FALSE(genus_represents(diag_lattice({1, 1, 1}), 7));
    for (Int n = 1; n <= 1000; ++n) CHECK(genus_represents(diag_lattice({1, 1, 1, 1}), n));
    CHECK_THROWS_AS(genus_represents(diag_lattice({1, 1}), 3), unsupported_error);

    GenusTester g(diag_lattice({1, 1, 1, 8}));
    CHECK(g.ramified() == std::vector<Int>{2});
    GenusTester g2(diag_lattice({1, 3, 18, 27}));
    CHECK(g2.ramified() == std::vector<Int>{2, 3});
}

TEST_CASE("prime_factors") {
    CHECK(prime_factors(BigInt(720)) == std::vector<Int>{2, 3, 5});
    CHECK(prime_factors(BigInt(1)).empty());
    CHECK(prime_factors(BigInt(97)) == std::vector<Int>{97});
}
