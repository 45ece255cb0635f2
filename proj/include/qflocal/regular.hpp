#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qflocal/invariants.hpp"

namespace qf {

// Bounded desk-scale verdicts.  "pass" and "candidate-new" are honest
// bounded statements (regular up to B; no equal-value prime-index sublattice
// with q <= pmax up to B), never claims about the unbounded predicates.
struct ScanReport {
    std::string kind;  // "regular" | "new" | "structure" | suite name
    std::string name;
    std::vector<std::pair<std::string, long long>> params;
    std::string verdict;  // "pass" | "witness" | "not-new" | "candidate-new"
    std::vector<BigInt> witness_ints;
    std::optional<std::vector<std::vector<Int>>> witness_gram;

    long long param(const std::string& key) const;
};

// Least n <= B that is represented by every completion but not by L.
ScanReport regularity_scan(const GramLattice& L, Int B);

// Tests every index-q sublattice (q prime <= pmax) for value-set equality
// up to B.  Sound for detecting "not new": a proper sublattice with equal
// values lies in some prime-index one and value sets are antitone.
ScanReport newness_scan(const GramLattice& L, Int B, Int pmax);

// Checks that {u^2 v : v in some S_eta} cut to [1,B] equals the
// genus-represented set (two independent code paths), and reports the gap
// to the actually represented values.
ScanReport q_structure_check(const GramLattice& L, Int B);

const std::vector<std::string>& lemma_suite_names();
ScanReport run_lemma_suite(const std::string& suite, u64 seed, Int cases);
std::vector<ScanReport> lemma_suites(u64 seed, Int cases);

// Value sets of L split by congruence class mod q; sets[c] holds the values
// of vectors x with x == c (digitwise mod q, c = sum digit_i q^i).
struct ClassValueSets {
    Int q = 2;
    int n = 1;
    Int bound = 0;
    u64 nclasses = 2;
    std::vector<std::vector<u64>> sets;

    std::vector<u64> union_all() const;
    std::vector<u64> union_hyperplane(const std::vector<Int>& normal) const;
};

ClassValueSets class_value_sets(const GramLattice& L, Int q, Int B);

// --- seeded generators shared by the lemma suites and the test suites ----

GramLattice random_unimodular_congruence(Rng& rng, const GramLattice& L, Int max_abs = 3);
std::vector<std::vector<Int>> random_unimodular(Rng& rng, int n, Int max_abs = 3);
std::vector<std::vector<Int>> random_nonsingular(Rng& rng, int n, Int max_abs = 2);
GramLattice random_pos_def(Rng& rng, int n, Int max_entry);
// Diagonal p-adic shape u_i p^{e_i} with unit u_i coprime to p.
GramLattice random_padic_diag(Rng& rng, Int p, const std::vector<int>& exps, Int unit_bound);
// Positive definite ternary whose Q_p-space is anisotropic.
GramLattice random_aniso_ternary(Rng& rng, Int p, int max_exp);
GramLattice random_dyadic_lattice(Rng& rng, int rank);

}  // namespace qf
