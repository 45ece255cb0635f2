#pragma once

#include <string>
#include <vector>

#include "qflocal/errors.hpp"
#include "qflocal/util.hpp"

namespace qf {

// Exact p-adic scalar arithmetic: valuations, unit square classes, Legendre
// and Hilbert symbols, and the fixed square-class representatives SC_p.
// Everything is computed over exact rationals; no working precision is
// chosen anywhere.

bool is_prime(Int p);
void require_prime(Int p);

// p-adic order.  Rejects a = 0 with zero_input_error.
int vp(const BigInt& a, Int p);
int vp(const Rat& a, Int p);
inline int vp(Int a, Int p) { return vp(BigInt(a), p); }
// gmp expression templates evaluate before dispatch
template <class U>
int vp(const __gmp_expr<mpz_t, U>& e, Int p) { return vp(BigInt(e), p); }
template <class U>
int vp(const __gmp_expr<mpq_t, U>& e, Int p) { return vp(Rat(e), p); }

// Legendre symbol (a/p) for odd p, a coprime to p.
int legendre(const BigInt& a, Int p);
inline int legendre(Int a, Int p) { return legendre(BigInt(a), p); }

// Smallest positive quadratic non-residue mod p (our canonical Delta_p).
Int delta_p(Int p);

// Canonical unit representatives: {1,3,5,7} at p = 2, {1, Delta_p} otherwise.
std::vector<Int> unit_reps(Int p);

// Residue of a rational unit mod m (m = p or 8); denominator must be
// invertible mod m, which holds whenever vp(a) = 0 and m is a p-power.
Int unit_rep_mod(const Rat& u, Int m);

struct UnitClass {
    Int p = 2;
    Int rep = 1;  // 1 or Delta_p for odd p; 1,3,5,7 for p = 2

    friend bool operator==(const UnitClass&, const UnitClass&) = default;
    auto operator<=>(const UnitClass&) const = default;
};

// Orbit of a nonzero p-adic number under multiplication by unit squares,
// keyed by (valuation, canonical unit representative).
struct SquareClass {
    Int p = 2;
    int val = 0;
    UnitClass unit{2, 1};

    BigInt value() const { return BigInt(unit.rep) * pow_big(BigInt(p), val); }
    std::string str() const;

    friend bool operator==(const SquareClass&, const SquareClass&) = default;
    auto operator<=>(const SquareClass&) const = default;
};

// Canonical square class of a nonzero rational; square_class(a t^2) ==
// square_class(a) for every p-adic unit-or-p-power t.
SquareClass square_class(const Rat& a, Int p);
inline SquareClass square_class(const BigInt& a, Int p) { return square_class(Rat(a), p); }
inline SquareClass square_class(Int a, Int p) { return square_class(Rat(a), p); }
template <class U>
SquareClass square_class(const __gmp_expr<mpz_t, U>& e, Int p) {
    return square_class(BigInt(e), p);
}

// a in (Q_p^.)^2; with in_units set, a must additionally be a unit square.
bool is_square(const Rat& a, Int p, bool in_units = false);
inline bool is_square(Int a, Int p, bool in_units = false) { return is_square(Rat(a), p, in_units); }

// Hilbert symbol (a,b)_p via the classical residue formulas.
int hilbert(const Rat& a, const Rat& b, Int p);
inline int hilbert(Int a, Int b, Int p) { return hilbert(Rat(a), Rat(b), p); }

// The fixed representatives SC_p: valuation 0 and 1, every unit class once.
std::vector<SquareClass> sc_set(Int p);

}  // namespace qf
