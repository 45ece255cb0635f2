#include "qflocal/arith.hpp"

namespace qf {

bool is_prime(Int p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (Int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void require_prime(Int p) {
    if (!is_prime(p)) throw not_prime_error(p);
}

int vp(const BigInt& a, Int p) {
    require_prime(p);
    if (a == 0) throw zero_input_error();
    BigInt rem, prime(p);
    return static_cast<int>(mpz_remove(rem.get_mpz_t(), a.get_mpz_t(), prime.get_mpz_t()));
}

int vp(const Rat& a, Int p) {
    require_prime(p);
    if (a == 0) throw zero_input_error();
    BigInt rem, prime(p);
    int vn = static_cast<int>(
        mpz_remove(rem.get_mpz_t(), a.get_num().get_mpz_t(), prime.get_mpz_t()));
    int vd = static_cast<int>(
        mpz_remove(rem.get_mpz_t(), a.get_den().get_mpz_t(), prime.get_mpz_t()));
    return vn - vd;
}

int legendre(const BigInt& a, Int p) {
    require_prime(p);
    if (p == 2) throw input_error("legendre symbol needs an odd prime");
    if (a % p == 0) throw input_error("legendre symbol needs a coprime to p");
    BigInt prime(p);
    return mpz_legendre(a.get_mpz_t(), prime.get_mpz_t());
}

Int delta_p(Int p) {
    require_prime(p);
    if (p == 2) throw input_error("Delta_p is defined for odd p only");
    for (Int k = 2; k < p; ++k)
        if (legendre(k, p) == -1) return k;
    throw internal_error("no quadratic non-residue found");
}

std::vector<Int> unit_reps(Int p) {
    if (p == 2) return {1, 3, 5, 7};
    return {1, delta_p(p)};
}

Int unit_rep_mod(const Rat& u, Int m) {
    BigInt mm(m);
    BigInt num = u.get_num() % mm;
    if (num < 0) num += mm;
    BigInt den = u.get_den() % mm;
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0)
        throw internal_error("denominator not invertible in unit_rep_mod");
    return to_int((num * inv) % mm);
}

namespace {

// Splits a = p^val * u with u a p-adic unit (exact rational).
std::pair<int, Rat> split_val(const Rat& a, Int p) {
    int v = vp(a, p);
    Rat u = a;
    if (v > 0)
        u /= Rat(pow_big(BigInt(p), v));
    else if (v < 0)
        u *= Rat(pow_big(BigInt(p), -v));
    return {v, u};
}

int legendre_unit(const Rat& u, Int p) {
    // For a rational p-adic unit, num*den differs from u by a square.
    return legendre(BigInt(u.get_num() * u.get_den()), p);
}

int eps2(Int r8) { return (r8 == 3 || r8 == 7) ? 1 : 0; }   // (u-1)/2 mod 2
int omega2(Int r8) { return (r8 == 3 || r8 == 5) ? 1 : 0; } // (u^2-1)/8 mod 2

}  // namespace

SquareClass square_class(const Rat& a, Int p) {
    require_prime(p);
    if (a == 0) throw zero_input_error();
    auto [v, u] = split_val(a, p);
    Int rep;
    if (p == 2) {
        rep = unit_rep_mod(u, 8);
    } else {
        rep = legendre_unit(u, p) == 1 ? 1 : delta_p(p);
    }
    return SquareClass{p, v, UnitClass{p, rep}};
}

bool is_square(const Rat& a, Int p, bool in_units) {
    SquareClass c = square_class(a, p);
    if (in_units && c.val != 0) return false;
    return c.val % 2 == 0 && c.unit.rep == 1;
}

int hilbert(const Rat& a, const Rat& b, Int p) {
    require_prime(p);
    if (a == 0 || b == 0) throw zero_input_error();
    auto [alpha, u] = split_val(a, p);
    auto [beta, v] = split_val(b, p);
    if (p == 2) {
        Int ru = unit_rep_mod(u, 8), rv = unit_rep_mod(v, 8);
        int e = eps2(ru) * eps2(rv) + alpha * omega2(rv) + beta * omega2(ru);
        return e % 2 == 0 ? 1 : -1;
    }
    int lu = legendre_unit(u, p), lv = legendre_unit(v, p);
    int sign = 1;
    if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta & 1) sign *= lu;
    if (alpha & 1) sign *= lv;
    return sign;
}

std::vector<SquareClass> sc_set(Int p) {
    require_prime(p);
    std::vector<SquareClass> out;
    for (int v = 0; v <= 1; ++v)
        for (Int r : unit_reps(p)) out.push_back(SquareClass{p, v, UnitClass{p, r}});
    return out;
}

std::string SquareClass::str() const {
    return value().get_str();
}

}  // namespace qf
