#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qflocal/invariants.hpp"
#include "qflocal/regular.hpp"

using namespace qf;

namespace {

SquareClass sc(Int p, Int rep_times_p_pow) {
    return square_class(rep_times_p_pow, p);
}

}  // namespace

TEST_CASE("eta: pinned dyadic examples") {
    GramLattice L8 = diag_lattice({1, 1, 1, 8});
    EtaValue e = eta(L8, 2, sc(2, 7));
    REQUIRE_FALSE(e.infinite);
    CHECK(e.cls.value() == 28);

    GramLattice L4096 = diag_lattice({1, 1, 1, 4096});
    e = eta(L4096, 2, sc(2, 7));
    REQUIRE_FALSE(e.infinite);
    CHECK(e.cls.value() == 7168);  // 2^10 * 7
    // 7 * 4^4 = 1792 must fail, oracle-checked
    CHECK_FALSE(oracle::diagonal_represents({1, 1, 1, 4096}, 2, BigInt(1792)));
    CHECK(oracle::diagonal_represents({1, 1, 1, 4096}, 2, BigInt(7168)));

    // anisotropic ternary: excluded class of diag(1,1,1) at 2 is s = 7
    e = eta(diag_lattice({1, 1, 1}), 2, sc(2, 7));
    CHECK(e.infinite);
    e = eta(diag_lattice({1, 1, 1}), 2, sc(2, 3));
    REQUIRE_FALSE(e.infinite);
    CHECK(e.cls.value() == 3);

    CHECK_THROWS_AS(eta(diag_lattice({1, 1}), 2, sc(2, 1)), unsupported_error);
    CHECK_THROWS_AS(eta(L8, 2, SquareClass{2, 2, UnitClass{2, 1}}), input_error);
}

TEST_CASE("nu_profile: pinned examples") {
    LocalProfile p8 = nu_profile(diag_lattice({1, 1, 1, 8}), 2);
    CHECK_FALSE(p8.nu_infinite);
    CHECK(p8.nu == 2);
    CHECK(p8.nu_prime == 1);
    CHECK(p8.s0.unit.rep == 7);
    CHECK(p8.type_a);

    LocalProfile p32 = nu_profile(diag_lattice({1, 1, 1, 32}), 2);
    CHECK(p32.nu == 4);
    CHECK(p32.nu_prime == 1);

    LocalProfile o3 = nu_profile(diag_lattice({1, 3, 18, 27}), 3);
    CHECK(o3.nu == 3);
    CHECK(o3.nu_prime == 2);
    CHECK(o3.s0.value() == 6);

    LocalProfile o3b = nu_profile(diag_lattice({1, 2, 9, 27}), 3);
    CHECK(o3b.nu == 1);
    CHECK(o3b.nu_prime == 1);

    // anisotropic ternary: nu infinite, nu' finite
    LocalProfile t = nu_profile(diag_lattice({1, 1, 1}), 2);
    CHECK(t.nu_infinite);
    CHECK(t.nu_prime >= 1);
    CHECK_FALSE(t.ternary_isotropic);

    // the 4^k family
    for (int k = 4; k <= 6; ++k) {
        Int f = 1;
        for (int i = 0; i < k; ++i) f *= 4;
        LocalProfile pk = nu_profile(diag_lattice({1, 1, 1, f}), 2);
        CHECK(pk.nu == 2 * k - 2);
        CHECK(pk.nu_prime == 1);
    }
}

TEST_CASE("nu equals its min-r characterization") {
    Rng rng(401);
    int done = 0;
    while (done < 40) {
        GramLattice L = random_pos_def(rng, 4, 10);
        if (vp(L.det(), 2) > 5 || vp(L.det(), 3) > 4 || vp(L.det(), 5) > 3) continue;
        ++done;
        for (Int p : {2L, 3L, 5L}) {
            LocalProfile pr = nu_profile(L, p);
            LocalEngine eng(jordan_decompose(L, p));
            auto count_at = [&](int r) {
                int c = 0;
                for (const SquareClass& s : sc_set(p)) {
                    BigInt a = s.value() * pow_big(BigInt(p), r - 1);
                    if (eng.represents(a)) ++c;
                }
                return c;
            };
            int full = static_cast<int>(sc_set(p).size());
            int r_nu = 1;
            while (count_at(r_nu) < full) ++r_nu;
            int r_nup = 1;
            while (count_at(r_nup) < full - 1) ++r_nup;
            CHECK(pr.nu == r_nu);
            CHECK(pr.nu_prime == r_nup);
        }
    }
}

TEST_CASE("nu = 1 iff every class of valuation <= 1 is represented") {
    Rng rng(402);
    for (int i = 0; i < 40; ++i) {
        GramLattice L = random_pos_def(rng, 3 + static_cast<int>(rng.below(2)), 8);
        for (Int p : {2L, 3L}) {
            LocalProfile pr = nu_profile(L, p);
            ClassSet cs = local_classes(L, p, 1);
            bool all = cs.classes.size() == sc_set(p).size();
            CHECK((!pr.nu_infinite && pr.nu == 1) == all);
        }
    }
}

TEST_CASE("type A: pinned examples") {
    CHECK(is_type_a(diag_lattice({1, 1, 1, 4096})));
    CHECK(is_type_a(diag_lattice({1, 1, 1, 32})));
    CHECK_FALSE(is_type_a(diag_lattice({1, 1, 1, 4})));
    CHECK_FALSE(is_type_a(diag_lattice({1, 1, 2, 2})));
    CHECK_FALSE(is_type_a(diag_lattice({1, 1, 1, 1})));
    CHECK_THROWS_AS(is_type_a(diag_lattice({1, 1, 1})), unsupported_error);
    CHECK_THROWS_AS(is_type_a(diag_lattice({2, 2, 2, 2})), input_error);
}

TEST_CASE("type A is stable under basis change") {
    Rng rng(403);
    std::vector<GramLattice> pool = {diag_lattice({1, 1, 1, 256}), diag_lattice({1, 1, 1, 4}),
                                     diag_lattice({1, 1, 3, 64}), diag_lattice({1, 1, 2, 32})};
    for (const auto& L : pool) {
        bool base = is_type_a(L);
        for (int t = 0; t < 25; ++t) CHECK(is_type_a(random_unimodular_congruence(rng, L)) == base);
    }
}

TEST_CASE("h_set and s_eta membership") {
    GramLattice L8 = diag_lattice({1, 1, 1, 8});
    HSet hs = h_set(L8);
    CHECK(hs.primes == std::vector<Int>{2});
    CHECK(hs.tuples.size() == 8);
    std::set<Int> etas;
    for (const auto& t : hs.tuples) etas.insert(to_int(t[0].value()));
    CHECK(etas == std::set<Int>{1, 3, 5, 28, 2, 6, 10, 14});

    std::vector<SquareClass> tup28 = {sc(2, 28)};
    CHECK(s_eta_contains(hs.primes, tup28, BigInt(60)));   // 60 = 4*15, 15 = 7 mod 8
    CHECK_FALSE(s_eta_contains(hs.primes, tup28, BigInt(44)));
    CHECK_FALSE(s_eta_contains(hs.primes, tup28, BigInt(28 * 4)));  // val 4, not 2

    CHECK_THROWS_AS(h_set(diag_lattice({1, 1, 1})), unsupported_error);
}

TEST_CASE("escalation data: pinned examples") {
    EscalationData e = escalation_data(diag_lattice({1, 1, 1, 4096}));
    CHECK(e.primes == std::vector<Int>{2});
    CHECK(e.e_set == std::vector<Int>{2});
    REQUIRE(e.xi.count(2) == 1);
    CHECK(e.xi.at(2).value() == 28);
    bool saw_gap_record = false;
    for (const auto& rec : e.records) {
        if (to_int(rec.eta[0].value()) == 7168) {
            saw_gap_record = true;
            CHECK(rec.e_eta == std::vector<Int>{2});
            CHECK(rec.kappa.at(2) == 4);
            CHECK(rec.m == 16);
            CHECK(rec.eta_prime[0].value() == 28);
        } else {
            CHECK(rec.e_eta.empty());
            CHECK(rec.m == 1);
            CHECK(rec.eta_prime == rec.eta);
        }
    }
    CHECK(saw_gap_record);

    EscalationData e8 = escalation_data(diag_lattice({1, 1, 1, 8}));
    CHECK(e8.e_set.empty());
    for (const auto& rec : e8.records) {
        CHECK(rec.m == 1);
        CHECK(rec.eta_prime == rec.eta);
    }

    EscalationData e1 = escalation_data(diag_lattice({1, 1, 1, 1}));
    CHECK(e1.e_set.empty());
}

TEST_CASE("eta -> eta' injective on seeded lattices") {
    Rng rng(404);
    int done = 0;
    while (done < 25) {
        GramLattice L = random_pos_def(rng, 4, 9);
        if (vp(L.det(), 2) > 5 || vp(L.det(), 3) > 4 || vp(L.det(), 5) > 3 || vp(L.det(), 7) > 2)
            continue;
        ++done;
        EscalationData e = escalation_data(L);  // throws theorem_violation on failure
        std::set<std::vector<std::string>> images;
        for (const auto& rec : e.records) {
            std::vector<std::string> key;
            for (const auto& c : rec.eta_prime) key.push_back(c.str());
            CHECK(images.insert(key).second);
        }
    }
}

TEST_CASE("rescaled_sublattice") {
    GramLattice L = diag_lattice({1, 1, 1, 4096});
    std::vector<std::vector<Int>> xs = {{16, 0, 0, 0}, {16, 16, 0, 0}, {16, 16, 16, 0}};
    GramLattice R = rescaled_sublattice(L, 16, xs);
    CHECK(R == make_lattice({{1, 1, 1}, {1, 2, 2}, {1, 2, 3}}));

    // single vector with Q = m^2 gives <1>
    GramLattice one = rescaled_sublattice(diag_lattice({1, 1}), 2, {{2, 0}});
    CHECK(one == diag_lattice({1}));

    // dependent spans reduce to a basis
    GramLattice dep = rescaled_sublattice(diag_lattice({1, 1}), 1, {{1, 0}, {2, 0}, {0, 1}});
    CHECK(dep.rank() == 2);

    CHECK_THROWS_AS(rescaled_sublattice(L, 16, {{1, 0, 0, 0}}), input_error);
    CHECK_THROWS_AS(rescaled_sublattice(L, 16, {}), input_error);
}

TEST_CASE("lemma 2.2 shaped bounds on profiles") {
    // nu <= e+1 for L1 perp <p^e eps> with L1's top Jordan scale at most e
    Rng rng(405);
    for (int i = 0; i < 30; ++i) {
        Int p = std::vector<Int>{2, 3, 5}[rng.below(3)];
        int emax = p == 2 ? 5 : 3;
        int e = static_cast<int>(rng.below(emax + 1));
        std::vector<int> exps = {0, static_cast<int>(rng.below(e + 1)),
                                 static_cast<int>(rng.below(e + 1))};
        std::sort(exps.begin(), exps.end());
        GramLattice L1 = random_padic_diag(rng, p, exps, 3 * p);
        GramLattice L = ortho_sum(L1, random_padic_diag(rng, p, {e}, 3 * p));
        LocalProfile pr = nu_profile(L, p);
        REQUIRE_FALSE(pr.nu_infinite);
        CHECK(pr.nu <= e + 1);
        if (!is_isotropic(L1, p)) CHECK(pr.nu >= e - (p == 2 ? 2 : 0));
    }
}
