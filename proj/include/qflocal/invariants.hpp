#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qflocal/localrep.hpp"

namespace qf {

// Minimal represented member of the tower s p^{2u}, or "infinite" for the
// excluded class of an anisotropic ternary.
struct EtaValue {
    bool infinite = false;
    SquareClass cls;  // valid iff !infinite

    int nu() const { return infinite ? -1 : cls.val; }
    friend bool operator==(const EtaValue&, const EtaValue&) = default;
};

struct LocalProfile {
    Int p = 2;
    std::vector<std::pair<SquareClass, EtaValue>> table;  // sc_set order
    bool nu_infinite = false;
    int nu = 0;        // valid iff !nu_infinite
    int nu_prime = 0;  // always finite
    SquareClass s0;    // a class attaining nu (the infinite one if any)
    bool type_a = false;           // p = 2, rank >= 4, primitive at 2
    bool ternary_isotropic = true; // meaningful for rank-3 inputs

    const EtaValue& eta_for(const SquareClass& s) const;
    // nu as a comparable value with infinity above every integer.
    long long nu_key() const { return nu_infinite ? (1LL << 40) : nu; }
};

EtaValue eta(const GramLattice& L, Int p, const SquareClass& s);
LocalProfile nu_profile(const GramLattice& L, Int p);

// Dyadic type A: the splitting opens with an anisotropic ternary front and
// the next component sits at norm order >= (front scale order) + 3.
bool is_type_a(const GramLattice& L);

// All eta tuples over the ramified primes P = {p : p | 2 dL}.
struct HSet {
    std::vector<Int> primes;
    std::vector<std::vector<SquareClass>> tuples;  // sorted, deduplicated
};

HSet h_set(const GramLattice& L);

// n ∈ S_eta: at every listed prime, n lies in the square class of eta_p.
bool s_eta_contains(const std::vector<Int>& primes,
                    const std::vector<SquareClass>& eta, const BigInt& n);

struct EtaRecord {
    std::vector<SquareClass> eta;
    std::vector<Int> e_eta;        // primes of E with nu_{p,h} = nu_p
    std::map<Int, int> kappa;      // p -> kappa with eta_p = p^{2 kappa} xi_p
    BigInt m = 1;                  // prod p^{kappa_p}
    std::vector<SquareClass> eta_prime;
};

struct EscalationData {
    std::vector<Int> primes;
    std::map<Int, LocalProfile> profiles;
    std::vector<Int> e_set;        // primes with nu' + 3 < nu
    std::map<Int, SquareClass> xi; // p -> p^2 * (class attaining nu)
    std::vector<EtaRecord> records;
};

// The escalation/rescaling data of the rank-bound construction; asserts the
// inequality chain and the injectivity of eta -> eta' as theorem checks.
EscalationData escalation_data(const GramLattice& L);

// Gram matrix of span{x_l / m} after verifying all B(x_l, x_l') ≡ 0 mod m^2;
// dependent spans are reduced to a basis.
GramLattice rescaled_sublattice(const GramLattice& L, Int m,
                                const std::vector<std::vector<Int>>& xs);

}  // namespace qf
