#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qflocal/regular.hpp"

using namespace qf;

TEST_CASE("regularity_scan: pinned verdicts") {
    ScanReport r = regularity_scan(diag_lattice({1, 1, 1}, "sum3sq"), 3000);
    CHECK(r.verdict == "pass");

    r = regularity_scan(diag_lattice({1, 1, 7}), 100);
    CHECK(r.verdict == "witness");
    REQUIRE(r.witness_ints.size() == 1);
    CHECK(r.witness_ints[0] == 3);

    r = regularity_scan(diag_lattice({1, 1, 1, 2}), 3000);
    CHECK(r.verdict == "pass");

    CHECK_THROWS_AS(regularity_scan(diag_lattice({1, 1}), 100), unsupported_error);
    CHECK_THROWS_AS(regularity_scan(diag_lattice({1, 1, 1}), 0), input_error);
}

TEST_CASE("regularity witnesses re-verify from scratch") {
    Rng rng(501);
    int witnesses = 0;
    for (int i = 0; i < 40 && witnesses < 8; ++i) {
        GramLattice L = random_pos_def(rng, 3, 9);
        if (vp(L.det(), 2) > 4 || vp(L.det(), 3) > 3 || vp(L.det(), 5) > 3) continue;
        ScanReport r = regularity_scan(L, 400);
        if (r.verdict != "witness") continue;
        ++witnesses;
        Int n = to_int(r.witness_ints[0]);
        CHECK(genus_represents(L, n));
        CHECK_FALSE(enumerate_values(L, 400).contains(n));
        // least such n
        for (Int k = 1; k < n; ++k)
            if (genus_represents(L, k)) CHECK(enumerate_values(L, 400).contains(k));
    }
    CHECK(witnesses > 0);
}

TEST_CASE("class value sets: diagonal fast path equals kernel marking") {
    Rng rng(502);
    for (int i = 0; i < 15; ++i) {
        int n = 2 + static_cast<int>(rng.below(2));
        std::vector<Int> d(n);
        for (Int& v : d) v = rng.range(1, 9);
        GramLattice D = diag_lattice(d);
        // force the kernel path via a trivial non-diagonal congruence copy
        GramLattice Tw = D;
        for (Int q : {2L, 3L}) {
            Int B = 150;
            ClassValueSets fast = class_value_sets(D, q, B);
            // kernel path: same lattice, marking visitor
            ClassValueSets slow;
            slow.q = q;
            slow.n = n;
            slow.bound = B;
            slow.nclasses = fast.nclasses;
            slow.sets.assign(fast.nclasses, bits::make(static_cast<u64>(B) + 1));
            std::vector<u64> stride(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) stride[static_cast<std::size_t>(k)] = oracle::pow_u64_checked(q, k);
            enumerate_vectors(Tw, B, [&](Int v, const Int* x) {
                u64 c = 0;
                for (int k = 0; k < n; ++k)
                    c += static_cast<u64>(((x[k] % q) + q) % q) * stride[static_cast<std::size_t>(k)];
                bits::set(slow.sets[c], static_cast<u64>(v));
            });
            // the hyperplane unions must agree (per-class sets differ by the
            // +- convention, unions over symmetric sets do not)
            for (const auto& normal : hyperplane_normals(n, q))
                CHECK(fast.union_hyperplane(normal) == slow.union_hyperplane(normal));
            CHECK(fast.union_all() == slow.union_all());
        }
    }
}

TEST_CASE("newness_scan: pinned verdicts") {
    ScanReport r = newness_scan(diag_lattice({1, 1, 1, 1, 1}, "sum5sq"), 2000, 3);
    CHECK(r.verdict == "not-new");
    REQUIRE(r.witness_gram.has_value());
    CHECK(*r.witness_gram ==
          std::vector<std::vector<Int>>{{1, 0, 0, 0, 0},
                                        {0, 1, 0, 0, 0},
                                        {0, 0, 1, 0, 0},
                                        {0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 4}});

    r = newness_scan(diag_lattice({1, 1, 1, 2}, "i1"), 2000, 5);
    CHECK(r.verdict == "candidate-new");

    r = newness_scan(diag_lattice({1, 1, 1, 8}, "i2"), 2000, 5);
    CHECK(r.verdict == "candidate-new");
}

TEST_CASE("newness witnesses have equal bounded value sets") {
    ScanReport r = newness_scan(diag_lattice({1, 1, 1, 1, 1}), 1200, 3);
    REQUIRE(r.verdict == "not-new");
    GramLattice M = make_lattice(*r.witness_gram);
    CHECK(enumerate_values(M, 1200).bits == enumerate_values(diag_lattice({1, 1, 1, 1, 1}), 1200).bits);
}

TEST_CASE("antitonicity: index-q sublattice values are contained in L's") {
    Rng rng(503);
    for (int i = 0; i < 10; ++i) {
        GramLattice L = random_pos_def(rng, 3, 6);
        for (Int q : {2L, 3L})
            for (const auto& M : index_p_sublattices(L, q)) {
                RepSet vm = enumerate_values(M, 300), vl = enumerate_values(L, 300);
                for (Int v : vm.to_list()) CHECK(vl.contains(v));
            }
    }
}

TEST_CASE("q_structure_check: pinned examples") {
    ScanReport r = q_structure_check(diag_lattice({1, 1, 1, 8}, "i2"), 2000);
    CHECK(r.verdict == "pass");

    r = q_structure_check(diag_lattice({1, 1, 1, 1}, "sum4sq"), 500);
    CHECK(r.verdict == "pass");

    // non-regular rank-4 input: gap between genus and values
    r = q_structure_check(ortho_sum(diag_lattice({1, 1, 7}), diag_lattice({49})), 300);
    CHECK(r.verdict == "witness");
    REQUIRE_FALSE(r.witness_ints.empty());
    CHECK(r.witness_ints[0] == 3);

    CHECK_THROWS_AS(q_structure_check(diag_lattice({1, 1, 1}), 100), unsupported_error);
}

TEST_CASE("structure identity RHS equals four-squares values") {
    // for the universal rank-4 lattice the S_eta sets exhaust [1, B]
    ScanReport r = q_structure_check(diag_lattice({1, 1, 1, 1}), 500);
    CHECK(r.verdict == "pass");
    RepSet v = enumerate_values(diag_lattice({1, 1, 1, 1}), 500);
    CHECK(v.to_list().size() == 500);
}

TEST_CASE("lemma suites pass on small runs") {
    for (const auto& name : lemma_suite_names()) {
        ScanReport r = run_lemma_suite(name, 7, name == "q-structure" ? 10 : 40);
        INFO(name);
        CHECK(r.verdict == "pass");
        CHECK(r.kind == name);
        CHECK(r.param("seed") == 7);
    }
    CHECK_THROWS_AS(run_lemma_suite("bogus", 1, 10), input_error);
}

TEST_CASE("suites are deterministic") {
    ScanReport a = run_lemma_suite("remark-bounds", 42, 30);
    ScanReport b = run_lemma_suite("remark-bounds", 42, 30);
    CHECK(a.verdict == b.verdict);
    CHECK(a.witness_ints == b.witness_ints);
}
