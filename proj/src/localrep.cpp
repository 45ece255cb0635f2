#include "qflocal/localrep.hpp"

#include <algorithm>

namespace qf {

namespace {

constexpr u64 kMaxResidueBits = u64(1) << 25;

u64 pow_mod_size(Int p, int W) {
    u64 m = 1;
    for (int i = 0; i < W; ++i) {
        if (m > kMaxResidueBits / static_cast<u64>(p))
            throw internal_error("residue modulus p^W beyond supported range");
        m *= static_cast<u64>(p);
    }
    return m;
}

}  // namespace

ResidueSet ResidueSet::empty(Int p, int W) {
    if (W < 1) throw input_error("residue exponent W must be >= 1");
    ResidueSet s;
    s.p = p;
    s.W = W;
    s.m = pow_mod_size(p, W);
    s.words = bits::make(s.m);
    return s;
}

std::vector<u64> ResidueSet::to_list() const {
    std::vector<u64> out;
    for (u64 r = 0; r < m; ++r)
        if (test(r)) out.push_back(r);
    return out;
}

ResidueSet block_value_residues(const JordanBlock& b, Int p, int W) {
    require_prime(p);
    ResidueSet s = ResidueSet::empty(p, W);
    const u64 m = s.m;
    switch (b.kind) {
        case JordanBlock::Kind::unit: {
            // { u p^e c^2 mod p^W }
            u64 scale_unit = static_cast<u64>(b.unit_rep) % m;
            u64 pe = 1;
            for (int i = 0; i < b.exp && pe < m; ++i) pe *= static_cast<u64>(p);
            u64 coef = static_cast<u64>((static_cast<u128>(scale_unit) * (pe % m)) % m);
            for (u64 c = 0; c < m; ++c) {
                u64 c2 = static_cast<u64>((static_cast<u128>(c) * c) % m);
                s.set(static_cast<u64>((static_cast<u128>(coef) * c2) % m));
            }
            break;
        }
        case JordanBlock::Kind::block_h: {
            // Q(2^e H) = 2^{e+1} Z_2
            s.set(0);
            u64 step = 1;
            for (int i = 0; i < b.exp + 1 && step < m; ++i) step *= 2;
            if (step < m)
                for (u64 r = 0; r < m; r += step) s.set(r);
            break;
        }
        case JordanBlock::Kind::block_a: {
            // Q(2^e A) = {0} ∪ {2-order e+1+2k, any odd unit part}
            s.set(0);
            for (int k = 0;; ++k) {
                int ord = b.exp + 1 + 2 * k;
                if (ord >= s.W) break;
                u64 po = u64(1) << ord;
                for (u64 u = 1; u * po < m; u += 2) s.set(u * po);
            }
            break;
        }
    }
    return s;
}

ResidueSet residue_sumset(const ResidueSet& a, const ResidueSet& b) {
    if (a.p != b.p || a.W != b.W) throw internal_error("sumset of mismatched residue sets");
    const ResidueSet& small = a.count() <= b.count() ? a : b;
    const ResidueSet& large = a.count() <= b.count() ? b : a;
    ResidueSet out = ResidueSet::empty(a.p, a.W);
    for (u64 r = 0; r < small.m; ++r)
        if (small.test(r)) bits::or_rotated(out.words, large.words, r, out.m);
    return out;
}

ResidueSet value_residues(const JordanSplitting& J, int W) {
    if (J.levels.empty()) throw input_error("value_residues of an empty splitting");
    ResidueSet acc;
    bool first = true;
    for (const auto& lv : J.levels)
        for (const auto& b : lv.blocks) {
            ResidueSet bs = block_value_residues(b, J.p, W);
            acc = first ? std::move(bs) : residue_sumset(acc, bs);
            first = false;
        }
    return acc;
}

const ResidueSet& LocalEngine::residues(int W) const {
    std::lock_guard<std::mutex> lk(*mu_);
    auto it = cache_.find(W);
    if (it == cache_.end()) it = cache_.emplace(W, value_residues(J_, W)).first;
    return it->second;
}

bool LocalEngine::represents(const BigInt& a) const {
    if (a == 0) throw zero_input_error();
    int v = vp(a, J_.p);
    if (v < 0) return false;  // not a p-adic integer
    int W = v + sigma_p(J_.p);
    const ResidueSet& rs = residues(W);
    BigInt r = a % BigInt(static_cast<unsigned long>(rs.m));
    if (r < 0) r += static_cast<unsigned long>(rs.m);
    return rs.test(r.get_ui());
}

bool LocalEngine::represents(const SquareClass& c) const {
    if (c.val < 0) return false;
    return represents(c.value());
}

bool represents_local(const GramLattice& L, Int p, const BigInt& a) {
    LocalEngine eng(jordan_decompose(L, p));
    return eng.represents(a);
}

bool represents_local(const GramLattice& L, Int p, const SquareClass& c) {
    LocalEngine eng(jordan_decompose(L, p));
    return eng.represents(c);
}

ClassSet local_classes(const LocalEngine& eng, int cap) {
    if (cap < 0) throw input_error("class-set cap must be >= 0");
    ClassSet cs;
    cs.p = eng.prime();
    cs.cap = cap;
    for (int v = 0; v <= cap; ++v)
        for (Int u : unit_reps(eng.prime())) {
            SquareClass c{eng.prime(), v, UnitClass{eng.prime(), u}};
            if (eng.represents(c)) cs.classes.insert(c);
        }
    return cs;
}

ClassSet local_classes(const GramLattice& L, Int p, int cap) {
    LocalEngine eng(jordan_decompose(L, p));
    return local_classes(eng, cap);
}

std::vector<Int> prime_factors(const BigInt& n) {
    BigInt a = abs(n);
    if (a <= 1) return {};
    std::vector<Int> out;
    for (Int d = 2; BigInt(d) * d <= a && d < (Int(1) << 21); d == 2 ? d = 3 : d += 2) {
        if (a % d == 0) {
            out.push_back(d);
            while (a % d == 0) a /= d;
        }
    }
    if (a > 1) {
        if (mpz_probab_prime_p(a.get_mpz_t(), 40) == 0)
            throw unsupported_error("discriminant has a large composite factor");
        if (!a.fits_slong_p()) throw unsupported_error("ramified prime out of native range");
        out.push_back(a.get_si());
    }
    std::sort(out.begin(), out.end());
    return out;
}

GenusTester::GenusTester(const GramLattice& L) {
    if (L.rank() < 3)
        throw unsupported_error("genus decision supports rank >= 3 only");
    primes_ = prime_factors(BigInt(2) * L.det());
    engines_.reserve(primes_.size());
    for (Int p : primes_) engines_.emplace_back(jordan_decompose(L, p));
}

const LocalEngine& GenusTester::engine(Int p) const {
    for (std::size_t i = 0; i < primes_.size(); ++i)
        if (primes_[i] == p) return engines_[i];
    throw input_error("prime is not ramified for this lattice");
}

bool GenusTester::represents(const BigInt& n) const {
    if (n <= 0) throw input_error("genus membership is asked for positive integers");
    for (const auto& eng : engines_)
        if (!eng.represents(n)) return false;
    return true;
}

bool genus_represents(const GramLattice& L, const BigInt& n) {
    return GenusTester(L).represents(n);
}

}  // namespace qf
