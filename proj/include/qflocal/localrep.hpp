#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "qflocal/bitset.hpp"
#include "qflocal/jordan.hpp"

namespace qf {

// Exact decision of a ∈ Q(L_p) through residue value-set convolution.
//
// The linchpin is the stability exponent sigma_p (1 for odd p, 3 for p = 2):
// 1 + p^sigma Z_p consists of unit squares, so for v = vp(a) membership of
// a mod p^{v+sigma} in the value set mod p^{v+sigma} is equivalent to exact
// p-adic representation.  Worst-case cost is O(k p^{2W}); callers keep
// W <= vp(dL) + 6, which covers the whole desk-scale corpus.

inline int sigma_p(Int p) { return p == 2 ? 3 : 1; }

// Dense set of residues mod p^W.
struct ResidueSet {
    Int p = 2;
    int W = 1;
    u64 m = 2;  // p^W
    std::vector<u64> words;

    static ResidueSet empty(Int p, int W);
    void set(u64 r) { bits::set(words, r % m); }
    bool test(u64 r) const { return bits::test(words, r % m); }
    u64 count() const { return bits::count(words); }
    std::vector<u64> to_list() const;
};

// Exact image of Q on one Jordan block, reduced mod p^W (zero included).
ResidueSet block_value_residues(const JordanBlock& b, Int p, int W);

// Iterated sumset of the block images: the exact image of Q(L_p) mod p^W.
ResidueSet value_residues(const JordanSplitting& J, int W);

ResidueSet residue_sumset(const ResidueSet& a, const ResidueSet& b);

// Caches value_residues per W for one splitting; cheap to copy around by
// reference.  Thread-safe via an internal guard.
class LocalEngine {
public:
    explicit LocalEngine(JordanSplitting J)
        : J_(std::move(J)), mu_(std::make_unique<std::mutex>()) {}

    const JordanSplitting& splitting() const { return J_; }
    Int prime() const { return J_.p; }
    const ResidueSet& residues(int W) const;

    bool represents(const BigInt& a) const;
    bool represents(const SquareClass& c) const;

private:
    JordanSplitting J_;
    mutable std::map<int, ResidueSet> cache_;
    mutable std::unique_ptr<std::mutex> mu_;
};

bool represents_local(const GramLattice& L, Int p, const BigInt& a);
bool represents_local(const GramLattice& L, Int p, const SquareClass& c);
inline bool represents_local(const GramLattice& L, Int p, Int a) {
    return represents_local(L, p, BigInt(a));
}

// Truncated local value set as square classes with val <= cap.
struct ClassSet {
    Int p = 2;
    int cap = 0;
    std::set<SquareClass> classes;

    bool contains(const SquareClass& c) const { return classes.count(c) != 0; }
};

ClassSet local_classes(const GramLattice& L, Int p, int cap);
ClassSet local_classes(const LocalEngine& eng, int cap);

// Prime factors of n, ascending, without multiplicity.
std::vector<Int> prime_factors(const BigInt& n);

// Decides "n is represented by every completion of L": for p outside the
// ramified set {p : p | 2 dL} the localization is unimodular of rank >= 3,
// hence universal, so only ramified primes are checked.
class GenusTester {
public:
    explicit GenusTester(const GramLattice& L);

    const std::vector<Int>& ramified() const { return primes_; }
    bool represents(const BigInt& n) const;
    const LocalEngine& engine(Int p) const;

private:
    std::vector<Int> primes_;
    std::vector<LocalEngine> engines_;
};

bool genus_represents(const GramLattice& L, const BigInt& n);
inline bool genus_represents(const GramLattice& L, Int n) {
    return genus_represents(L, BigInt(n));
}

}  // namespace qf
