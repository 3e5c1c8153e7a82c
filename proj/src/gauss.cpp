#include "qscan/gauss.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>

#include "qscan/residue.hpp"

namespace qscan {

namespace {

void require_odd_prime(std::uint64_t n, const char* what) {
    if (n < 3 || !is_prime(n))
        throw std::domain_error(std::string(what) + " must be an odd prime");
}

} // namespace

ResidueCharacter::ResidueCharacter(std::uint64_t p, std::uint64_t q) : p_(p), q_(q) {
    require_odd_prime(p, "ResidueCharacter: p");
    require_odd_prime(q, "ResidueCharacter: q");
    if (q % p != 1)
        throw std::domain_error("ResidueCharacter: q = 1 mod p required");
    if (q > std::numeric_limits<std::uint32_t>::max())
        throw std::domain_error("ResidueCharacter: q too large for table");
    u_ = smallest_primitive_root(q);
    const std::uint64_t c = (q - 1) / p;
    w_ = mod_pow(u_, c, q);

    // dlog table on the order-p subgroup <w>.
    std::vector<std::uint32_t> sub(q, 0);
    std::uint64_t wp = 1;
    for (std::uint64_t d = 0; d < p; ++d) {
        sub[wp] = static_cast<std::uint32_t>(d);
        wp = wp * w_ % q;
    }
    if (wp != 1)
        throw std::logic_error("ResidueCharacter: w does not have order p");

    exp_.assign(q, 0);
    for (std::uint64_t x = 1; x < q; ++x) {
        const std::uint64_t d = sub[mod_pow(x, c, q)];
        exp_[x] = static_cast<std::uint32_t>((p - d) % p);
    }
}

std::uint64_t ResidueCharacter::chi_exp(std::uint64_t x) const {
    x %= q_;
    if (x == 0)
        throw std::domain_error("ResidueCharacter::chi_exp: x = 0 mod q");
    return exp_[x];
}

GaussSumRecord gauss_sum(const ResidueCharacter& chr) {
    const std::uint64_t p = chr.p(), q = chr.q();
    std::vector<mpz_class> s(p * q);
    for (std::uint64_t x = 1; x < q; ++x)
        s[chr.chi_exp(x) * q + x] += 1;
    GaussSumRecord rec;
    rec.p = p;
    rec.q = q;
    rec.f = 1;
    rec.g = BicyclotomicInt::from_staging(p, q, std::move(s));
    if (rec.g.is_zero())
        throw std::logic_error("gauss_sum: sum vanished");

    // tau: zeta_q -> zeta_q^u multiplies g by a unique power of zeta_p.
    const BicyclotomicInt tau_g = rec.g.galois_q(chr.u());
    bool found = false;
    for (std::uint64_t r = 0; r < p; ++r) {
        if (tau_g == rec.g.mul_zeta_p(r)) {
            if (found)
                throw std::logic_error("gauss_sum: twist exponent not unique");
            rec.rho = r;
            found = true;
        }
    }
    if (!found)
        throw std::logic_error("gauss_sum: no twist exponent");
    if (rec.rho == 0)
        throw std::logic_error("gauss_sum: twist exponent is zero");
    return rec;
}

StructureDiagnostics structure_check(const GaussSumRecord& rec, const ResidueCharacter& chr) {
    const std::uint64_t p = rec.p, q = rec.q;
    StructureDiagnostics d;
    d.rho = rec.rho;

    // Zero-constant-term form: every punctured coefficient is the
    // character value it came from.
    d.g0_zero = true;
    for (std::uint64_t j = 1; j < q; ++j) {
        if (rec.g.punctured_zq_coeff(j) != CyclotomicInt::zeta_power(p, chr.chi_exp(j))) {
            d.g0_zero = false;
            break;
        }
    }
    if (!d.g0_zero)
        throw std::logic_error("structure_check: punctured coefficients disagree with character");

    const CyclotomicInt d1 = rec.g.punctured_zq_coeff(1);
    const auto unit = as_root_of_unity(d1);
    d.g1_is_unit = unit.has_value();
    if (!d.g1_is_unit)
        throw std::logic_error("structure_check: leading coefficient is not a unit root");
    d.g1_is_one = (d1 == CyclotomicInt(p, 1));

    // Geometric pattern along the inverse-power orbit of u.
    const std::uint64_t uinv = mod_inverse(chr.u(), q);
    d.pattern_ok = true;
    std::uint64_t e = 1;   // u^{-k} mod q
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        const CyclotomicInt expect = d1 * CyclotomicInt::zeta_power(p, k * rec.rho % p);
        if (rec.g.punctured_zq_coeff(e) != expect) {
            d.pattern_ok = false;
            break;
        }
        e = e * uinv % q;
    }
    if (!d.pattern_ok)
        throw std::logic_error("structure_check: geometric coefficient pattern broken");

    // Whole-element reconstruction from the pattern alone.
    std::vector<mpz_class> s(p * q);
    e = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        s[(k * rec.rho % p) * q + e] += 1;
        e = e * uinv % q;
    }
    d.reconstruction_ok = (BicyclotomicInt::from_staging(p, q, std::move(s)) == rec.g);
    if (!d.reconstruction_ok)
        throw std::logic_error("structure_check: reconstruction from pattern disagrees");

    d.minus_v_mod_p = p - smallest_primitive_root(p) % p;
    d.rho_matches_minus_v = (rec.rho == d.minus_v_mod_p);
    return d;
}

PowerResult gauss_power(const GaussSumRecord& rec) {
    const std::uint64_t p = rec.p;
    BicyclotomicInt acc(rec.p, rec.q, 1);
    BicyclotomicInt base = rec.g;
    std::uint64_t e = p;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    if (!acc.is_zeta_q_free())
        throw std::logic_error("gauss_power: zeta_q dependence survives in g^p");

    PowerResult r;
    r.G = acc.project_to_p();
    const CyclotomicInt one(p, 1);
    r.vpi_G_minus_1 = (r.G - one).pi_adic_valuation();
    r.vpi_G_plus_1 = (r.G + one).pi_adic_valuation();
    r.congruent_plus_one_mod_pi_p = (r.vpi_G_minus_1 >= p);
    r.congruent_minus_one_mod_pi_p = (r.vpi_G_plus_1 >= p);
    return r;
}

mpz_class teichmuller_lift(std::uint64_t p, std::uint64_t q, std::uint64_t w_t,
                           unsigned precision) {
    if (precision == 0)
        throw std::domain_error("teichmuller_lift: precision must be >= 1");
    w_t %= q;
    if (w_t <= 1 || mod_pow(w_t, p, q) != 1)
        throw std::domain_error("teichmuller_lift: w_t must have order p mod q");
    mpz_class x(static_cast<unsigned long>(w_t));
    if (precision == 1)
        return x;

    mpz_class M;
    mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(q), precision);
    const mpz_class pz(static_cast<unsigned long>(p));
    mpz_class fx, dfx, inv;
    for (int iter = 0; iter < 64; ++iter) {
        mpz_powm_ui(fx.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), M.get_mpz_t());
        fx -= 1;
        if (fx < 0) fx += M;
        if (fx == 0)
            return x;
        mpz_powm_ui(dfx.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p - 1), M.get_mpz_t());
        dfx = dfx * pz % M;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), M.get_mpz_t()) == 0)
            throw std::logic_error("teichmuller_lift: derivative not invertible");
        x = (x - fx * inv) % M;
        if (x < 0) x += M;
    }
    throw std::logic_error("teichmuller_lift: Newton iteration did not settle");
}

QadicEmbedding build_embedding(std::uint64_t p, std::uint64_t q, std::uint64_t w,
                               unsigned precision) {
    QadicEmbedding emb;
    emb.p = p;
    emb.q = q;
    emb.precision = precision;
    mpz_ui_pow_ui(emb.modulus.get_mpz_t(), static_cast<unsigned long>(q), precision);
    const mpz_class what = teichmuller_lift(p, q, w, precision);
    emb.roots.resize(p - 1);
    for (std::uint64_t t = 1; t < p; ++t) {
        mpz_class r;
        mpz_powm_ui(r.get_mpz_t(), what.get_mpz_t(), static_cast<unsigned long>(t),
                    emb.modulus.get_mpz_t());
        emb.roots[t - 1] = std::move(r);
    }
    return emb;
}

unsigned valuation_at_split_prime(const CyclotomicInt& a, const QadicEmbedding& emb,
                                  std::uint64_t t) {
    if (a.is_zero())
        throw std::domain_error("valuation_at_split_prime: zero element");
    if (t < 1 || t >= emb.p)
        throw std::domain_error("valuation_at_split_prime: t outside 1..p-1");
    const mpz_class& root = emb.roots[t - 1];
    mpz_class acc = a.coeff(a.size() - 1);
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        acc = acc * root + a.coeff(i);
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), emb.modulus.get_mpz_t());
    }
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), emb.modulus.get_mpz_t());
    if (acc == 0)
        throw precision_exhausted("valuation_at_split_prime: image vanishes mod q^precision");
    const mpz_class qz(static_cast<unsigned long>(emb.q));
    mpz_class tmp;
    return static_cast<unsigned>(mpz_remove(tmp.get_mpz_t(), acc.get_mpz_t(), qz.get_mpz_t()));
}

StickelbergerReport stickelberger_check(const CyclotomicInt& G, const ResidueCharacter& chr,
                                        PrecisionPolicy policy) {
    const std::uint64_t p = chr.p();
    unsigned precision = policy.initial ? policy.initial : static_cast<unsigned>(p + 2);
    const unsigned cap = policy.cap ? policy.cap : static_cast<unsigned>(8 * p);

    StickelbergerReport rep;
    for (;;) {
        const QadicEmbedding emb = build_embedding(p, chr.q(), chr.w(), precision);
        try {
            rep.valuations.clear();
            for (std::uint64_t t = 1; t < p; ++t)
                rep.valuations.push_back(valuation_at_split_prime(G, emb, t));
            rep.precision_used = precision;
            break;
        } catch (const precision_exhausted&) {
            if (precision >= cap)
                throw;
            precision = std::min(precision * 2, cap);
        }
    }

    std::vector<unsigned> sorted = rep.valuations;
    std::sort(sorted.begin(), sorted.end());
    rep.multiset_ok = true;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i + 1) { rep.multiset_ok = false; break; }
    if (!rep.multiset_ok)
        throw std::logic_error("stickelberger_check: valuation multiset is not 1..p-1");

    const unsigned long long sum =
        std::accumulate(rep.valuations.begin(), rep.valuations.end(), 0ull);
    rep.sum_ok = (sum == static_cast<unsigned long long>(p) * (p - 1) / 2);
    if (!rep.sum_ok)
        throw std::logic_error("stickelberger_check: valuation sum mismatch");

    rep.labels_ok = true;
    for (std::uint64_t t = 1; t < p; ++t)
        if (rep.valuations[t - 1] != t) { rep.labels_ok = false; break; }
    if (!rep.labels_ok)
        throw std::logic_error("stickelberger_check: labeled valuations disagree");
    return rep;
}

std::optional<std::pair<int, std::uint64_t>> as_root_of_unity(const CyclotomicInt& x) {
    const std::uint64_t p = x.p();
    if (p == 0)
        return std::nullopt;
    for (std::uint64_t e = 0; e < p; ++e) {
        const CyclotomicInt z = CyclotomicInt::zeta_power(p, e);
        if (x == z) return std::make_pair(1, e);
        if (x == -z) return std::make_pair(-1, e);
    }
    return std::nullopt;
}

namespace {

// F_{q^f} as F_q[Y] mod the lowest-lexicographic monic irreducible of
// degree f.  Elements are little-endian coefficient vectors of length f.
struct FiniteField {
    std::uint64_t q = 0;
    std::uint64_t f = 0;
    std::vector<std::uint64_t> mod_tail;   // m(Y) = Y^f + sum mod_tail[i] Y^i

    using Elem = std::vector<std::uint64_t>;

    Elem zero() const { return Elem(f, 0); }

    Elem one() const {
        Elem e(f, 0);
        e[0] = 1;
        return e;
    }

    bool is_one(const Elem& a) const {
        if (a[0] != 1) return false;
        for (std::uint64_t i = 1; i < f; ++i)
            if (a[i] != 0) return false;
        return true;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<std::uint64_t> buf(2 * f - 1, 0);
        for (std::uint64_t i = 0; i < f; ++i) {
            if (a[i] == 0) continue;
            for (std::uint64_t j = 0; j < f; ++j)
                buf[i + j] = (buf[i + j] + a[i] * b[j]) % q;
        }
        for (std::uint64_t i = 2 * f - 2; i >= f; --i) {
            const std::uint64_t c = buf[i];
            if (c == 0) continue;
            buf[i] = 0;
            for (std::uint64_t j = 0; j < f; ++j)
                buf[i - f + j] = (buf[i - f + j] + c * (q - mod_tail[j])) % q;
        }
        buf.resize(f);
        return buf;
    }

    Elem pow(Elem base, mpz_class e) const {
        Elem acc = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t()))
                acc = mul(acc, base);
            e >>= 1;
            if (e > 0)
                base = mul(base, base);
        }
        return acc;
    }
};

// Dense polynomial arithmetic over F_q for the irreducibility search
// (little-endian, no trailing zeros except the zero polynomial).
std::vector<std::uint64_t> poly_mod(std::vector<std::uint64_t> a,
                                    const std::vector<std::uint64_t>& d,
                                    std::uint64_t q) {
    // d monic.
    while (a.size() >= d.size()) {
        const std::uint64_t c = a.back();
        if (c != 0) {
            const std::size_t off = a.size() - d.size();
            for (std::size_t i = 0; i < d.size(); ++i)
                a[off + i] = (a[off + i] + c * (q - d[i] % q)) % q;
        }
        a.pop_back();
    }
    return a;
}

bool poly_is_zero(const std::vector<std::uint64_t>& a) {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

// Monic polynomial of degree deg whose non-leading coefficients are the
// base-q digits of k (constant term = least significant digit), so
// ascending k enumerates them in lexicographic order from the top
// coefficient down.
std::vector<std::uint64_t> monic_from_index(std::uint64_t k, std::uint64_t deg,
                                            std::uint64_t q) {
    std::vector<std::uint64_t> c(deg + 1, 0);
    c[deg] = 1;
    for (std::uint64_t i = 0; i < deg; ++i) {
        c[i] = k % q;
        k /= q;
    }
    return c;
}

std::vector<std::uint64_t> lowest_monic_irreducible(std::uint64_t q, std::uint64_t f) {
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(f));
    if (!count.fits_ulong_p())
        throw std::domain_error("finite field too large");
    const std::uint64_t total = count.get_ui();
    for (std::uint64_t k = 0; k < total; ++k) {
        auto cand = monic_from_index(k, f, q);
        bool reducible = false;
        for (std::uint64_t deg = 1; !reducible && 2 * deg <= f; ++deg) {
            std::uint64_t nd = 1;
            for (std::uint64_t i = 0; i < deg; ++i) nd *= q;
            for (std::uint64_t kd = 0; kd < nd; ++kd) {
                if (poly_is_zero(poly_mod(cand, monic_from_index(kd, deg, q), q))) {
                    reducible = true;
                    break;
                }
            }
        }
        if (!reducible)
            return cand;
    }
    throw std::logic_error("no irreducible polynomial found");
}

} // namespace

GaussSumRecord gauss_sum_general(std::uint64_t p, std::uint64_t q) {
    require_odd_prime(p, "gauss_sum_general: p");
    require_odd_prime(q, "gauss_sum_general: q");
    if (q % p == 1)
        throw std::domain_error("gauss_sum_general: q = 1 mod p is the split case");
    if (q == p)
        throw std::domain_error("gauss_sum_general: q must differ from p");

    std::uint64_t f = 1, qi = q % p;
    while (qi != 1) {
        qi = qi * (q % p) % p;
        ++f;
    }

    FiniteField F;
    F.q = q;
    F.f = f;
    {
        auto m = lowest_monic_irreducible(q, f);
        F.mod_tail.assign(m.begin(), m.end() - 1);
    }

    mpz_class M;   // q^f - 1
    mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(f));
    M -= 1;
    if (!M.fits_ulong_p())
        throw std::domain_error("gauss_sum_general: field too large to enumerate");
    const std::uint64_t m = M.get_ui();
    if (m % p != 0)
        throw std::logic_error("gauss_sum_general: p does not divide q^f - 1");

    // Generator of the multiplicative group, odometer order.
    const auto factors = distinct_prime_factors(m);
    FiniteField::Elem gen;
    for (std::uint64_t k = 1; k <= m; ++k) {
        FiniteField::Elem cand(f, 0);
        std::uint64_t kk = k;
        for (std::uint64_t i = 0; i < f; ++i) {
            cand[i] = kk % q;
            kk /= q;
        }
        bool ok = true;
        for (auto ell : factors) {
            if (F.is_one(F.pow(cand, mpz_class(static_cast<unsigned long>(m / ell))))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = std::move(cand);
            break;
        }
    }
    if (gen.empty())
        throw std::logic_error("gauss_sum_general: no generator found");

    // Trace is F_q-linear: precompute Tr(Y^i).
    std::vector<std::uint64_t> tr_basis(f, 0);
    for (std::uint64_t i = 0; i < f; ++i) {
        FiniteField::Elem yi(f, 0);
        if (i == 0) yi[0] = 1; else yi[i] = 1;
        FiniteField::Elem frob = yi, acc = yi;
        for (std::uint64_t j = 1; j < f; ++j) {
            frob = F.pow(frob, mpz_class(static_cast<unsigned long>(q)));
            for (std::uint64_t t = 0; t < f; ++t)
                acc[t] = (acc[t] + frob[t]) % q;
        }
        for (std::uint64_t t = 1; t < f; ++t)
            if (acc[t] != 0)
                throw std::logic_error("gauss_sum_general: trace not rational");
        tr_basis[i] = acc[0];
    }

    std::vector<mpz_class> s(p * q);
    FiniteField::Elem x = F.one();
    for (std::uint64_t e = 0; e < m; ++e) {
        std::uint64_t tr = 0;
        for (std::uint64_t i = 0; i < f; ++i)
            tr = (tr + tr_basis[i] * x[i]) % q;
        s[((p - e % p) % p) * q + tr] += 1;
        x = F.mul(x, gen);
    }
    if (!F.is_one(x))
        throw std::logic_error("gauss_sum_general: generator order mismatch");

    GaussSumRecord rec;
    rec.p = p;
    rec.q = q;
    rec.f = f;
    rec.rho = 0;
    rec.g = BicyclotomicInt::from_staging(p, q, std::move(s));
    if (!rec.g.is_zeta_q_free())
        throw std::logic_error("gauss_sum_general: zeta_q dependence survives");
    if (rec.g.galois_q(smallest_primitive_root(q)) != rec.g)
        throw std::logic_error("gauss_sum_general: sum not fixed by tau");
    return rec;
}

} // namespace qscan
