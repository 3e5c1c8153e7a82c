#include "qscan/cyclotomic.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace qscan {

namespace {

void require_same(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.p() != b.p() || a.p() == 0)
        throw std::logic_error("CyclotomicInt: mixed or empty rings");
}

void require_same(const BicyclotomicInt& a, const BicyclotomicInt& b) {
    if (a.p() != b.p() || a.q() != b.q() || a.p() == 0)
        throw std::logic_error("BicyclotomicInt: mixed or empty rings");
}

} // namespace

CyclotomicInt::CyclotomicInt(std::uint64_t p) : p_(p), c_(p - 1) {
    if (p < 3)
        throw std::domain_error("CyclotomicInt: p must be >= 3");
}

CyclotomicInt::CyclotomicInt(std::uint64_t p, mpz_class constant) : CyclotomicInt(p) {
    c_[0] = std::move(constant);
}

CyclotomicInt CyclotomicInt::zeta_power(std::uint64_t p, std::uint64_t e) {
    CyclotomicInt z(p);
    e %= p;
    if (e == p - 1) {
        for (auto& c : z.c_) c = -1;
    } else {
        z.c_[e] = 1;
    }
    return z;
}

CyclotomicInt CyclotomicInt::from_staging(std::uint64_t p, std::vector<mpz_class> s) {
    if (s.size() != p)
        throw std::logic_error("CyclotomicInt::from_staging: bad staging size");
    CyclotomicInt r(p);
    const mpz_class& top = s[p - 1];
    for (std::size_t i = 0; i + 1 < p; ++i)
        r.c_[i] = s[i] - top;
    return r;
}

const mpz_class& CyclotomicInt::coeff(std::size_t i) const { return c_.at(i); }

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    require_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
    require_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    require_same(a, b);
    const std::uint64_t p = a.p_;
    std::vector<mpz_class> s(p);
    for (std::size_t i = 0; i + 1 < p; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j + 1 < p; ++j) {
            if (b.c_[j] == 0) continue;
            std::size_t e = i + j;
            if (e >= p) e -= p;
            mpz_addmul(s[e].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    return CyclotomicInt::from_staging(p, std::move(s));
}

CyclotomicInt operator-(CyclotomicInt a) {
    for (auto& c : a.c_) c = -c;
    return a;
}

CyclotomicInt CyclotomicInt::galois(std::uint64_t t) const {
    t %= p_;
    if (t == 0)
        throw std::domain_error("CyclotomicInt::galois: t = 0 mod p");
    std::vector<mpz_class> s(p_);
    for (std::size_t i = 0; i + 1 < p_; ++i)
        s[i * t % p_] += c_[i];
    return from_staging(p_, std::move(s));
}

bool CyclotomicInt::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicInt::is_rational_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

mpz_class CyclotomicInt::rational_value() const {
    if (!is_rational_integer())
        throw std::logic_error("CyclotomicInt::rational_value: zeta dependence present");
    return c_[0];
}

mpz_class CyclotomicInt::eval_at_one() const {
    mpz_class s = 0;
    for (const auto& c : c_) s += c;
    return s;
}

mpz_class CyclotomicInt::norm() const {
    CyclotomicInt prod = *this;
    for (std::uint64_t t = 2; t < p_; ++t)
        prod = prod * galois(t);
    if (!prod.is_rational_integer())
        throw std::logic_error("CyclotomicInt::norm: product of conjugates not rational");
    return prod.c_[0];
}

unsigned long CyclotomicInt::pi_adic_valuation() const {
    if (is_zero())
        throw std::domain_error("CyclotomicInt::pi_adic_valuation: zero element");
    const mpz_class pz(static_cast<unsigned long>(p_));
    unsigned long best = std::numeric_limits<unsigned long>::max();
    mpz_class b, binom, tmp;
    for (std::size_t j = 0; j + 1 < p_; ++j) {
        b = 0;
        for (std::size_t i = j; i + 1 < p_; ++i) {
            if (c_[i] == 0) continue;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(j));
            mpz_addmul(b.get_mpz_t(), binom.get_mpz_t(), c_[i].get_mpz_t());
        }
        if (b == 0) continue;
        const auto e = static_cast<unsigned long>(mpz_remove(tmp.get_mpz_t(), b.get_mpz_t(), pz.get_mpz_t()));
        const unsigned long cand = e * (static_cast<unsigned long>(p_) - 1) + static_cast<unsigned long>(j);
        if (cand < best) best = cand;
    }
    return best;
}

std::string CyclotomicInt::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << " ";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

BicyclotomicInt::BicyclotomicInt(std::uint64_t p, std::uint64_t q)
    : p_(p), q_(q), c_((p - 1) * (q - 1)) {
    if (p < 3 || q < 3)
        throw std::domain_error("BicyclotomicInt: p and q must be >= 3");
}

BicyclotomicInt::BicyclotomicInt(std::uint64_t p, std::uint64_t q, mpz_class constant)
    : BicyclotomicInt(p, q) {
    c_[0] = std::move(constant);
}

BicyclotomicInt BicyclotomicInt::from_staging(std::uint64_t p, std::uint64_t q,
                                              std::vector<mpz_class> s) {
    if (s.size() != p * q)
        throw std::logic_error("BicyclotomicInt::from_staging: bad staging size");
    // Eliminate the zeta_p^{p-1} row, then the zeta_q^{q-1} column.
    for (std::size_t j = 0; j < q; ++j) {
        const mpz_class top = s[(p - 1) * q + j];
        if (top != 0)
            for (std::size_t i = 0; i + 1 < p; ++i) s[i * q + j] -= top;
    }
    BicyclotomicInt r(p, q);
    for (std::size_t i = 0; i + 1 < p; ++i) {
        const mpz_class& last = s[i * q + (q - 1)];
        for (std::size_t j = 0; j + 1 < q; ++j)
            r.c_[r.idx(i, j)] = s[i * q + j] - last;
    }
    return r;
}

BicyclotomicInt BicyclotomicInt::embed_p(const CyclotomicInt& a, std::uint64_t q) {
    BicyclotomicInt r(a.p(), q);
    for (std::size_t i = 0; i + 1 < a.p(); ++i)
        r.c_[r.idx(i, 0)] = a.coeff(i);
    return r;
}

const mpz_class& BicyclotomicInt::coeff(std::size_t i, std::size_t j) const {
    if (i + 1 >= p_ || j + 1 >= q_)
        throw std::domain_error("BicyclotomicInt::coeff: index out of range");
    return c_[idx(i, j)];
}

BicyclotomicInt& BicyclotomicInt::operator+=(const BicyclotomicInt& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

BicyclotomicInt& BicyclotomicInt::operator-=(const BicyclotomicInt& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

BicyclotomicInt operator*(const BicyclotomicInt& a, const BicyclotomicInt& b) {
    require_same(a, b);
    const std::uint64_t p = a.p_, q = a.q_;
    std::vector<mpz_class> s(p * q);
    for (std::size_t i1 = 0; i1 + 1 < p; ++i1) {
        for (std::size_t i2 = 0; i2 + 1 < p; ++i2) {
            std::size_t ep = i1 + i2;
            if (ep >= p) ep -= p;
            const std::size_t row = ep * q;
            for (std::size_t j1 = 0; j1 + 1 < q; ++j1) {
                const mpz_class& av = a.c_[a.idx(i1, j1)];
                if (av == 0) continue;
                for (std::size_t j2 = 0; j2 + 1 < q; ++j2) {
                    const mpz_class& bv = b.c_[b.idx(i2, j2)];
                    if (bv == 0) continue;
                    std::size_t eq = j1 + j2;
                    if (eq >= q) eq -= q;
                    mpz_addmul(s[row + eq].get_mpz_t(), av.get_mpz_t(), bv.get_mpz_t());
                }
            }
        }
    }
    return BicyclotomicInt::from_staging(p, q, std::move(s));
}

BicyclotomicInt BicyclotomicInt::galois_p(std::uint64_t t) const {
    t %= p_;
    if (t == 0)
        throw std::domain_error("BicyclotomicInt::galois_p: t = 0 mod p");
    std::vector<mpz_class> s(p_ * q_);
    for (std::size_t i = 0; i + 1 < p_; ++i)
        for (std::size_t j = 0; j + 1 < q_; ++j)
            s[(i * t % p_) * q_ + j] += c_[idx(i, j)];
    return from_staging(p_, q_, std::move(s));
}

BicyclotomicInt BicyclotomicInt::galois_q(std::uint64_t t) const {
    t %= q_;
    if (t == 0)
        throw std::domain_error("BicyclotomicInt::galois_q: t = 0 mod q");
    std::vector<mpz_class> s(p_ * q_);
    for (std::size_t i = 0; i + 1 < p_; ++i)
        for (std::size_t j = 0; j + 1 < q_; ++j)
            s[i * q_ + (j * t % q_)] += c_[idx(i, j)];
    return from_staging(p_, q_, std::move(s));
}

BicyclotomicInt BicyclotomicInt::mul_zeta_p(std::uint64_t r) const {
    r %= p_;
    std::vector<mpz_class> s(p_ * q_);
    for (std::size_t i = 0; i + 1 < p_; ++i)
        for (std::size_t j = 0; j + 1 < q_; ++j)
            s[((i + r) % p_) * q_ + j] += c_[idx(i, j)];
    return from_staging(p_, q_, std::move(s));
}

bool BicyclotomicInt::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool BicyclotomicInt::is_zeta_q_free() const {
    for (std::size_t i = 0; i + 1 < p_; ++i)
        for (std::size_t j = 1; j + 1 < q_; ++j)
            if (c_[idx(i, j)] != 0) return false;
    return true;
}

CyclotomicInt BicyclotomicInt::project_to_p() const {
    if (!is_zeta_q_free())
        throw std::logic_error("BicyclotomicInt::project_to_p: zeta_q dependence present");
    return zq_column(0);
}

CyclotomicInt BicyclotomicInt::zq_column(std::size_t j) const {
    if (j + 1 >= q_)
        throw std::domain_error("BicyclotomicInt::zq_column: column out of range");
    std::vector<mpz_class> s(p_);
    for (std::size_t i = 0; i + 1 < p_; ++i)
        s[i] = c_[idx(i, j)];
    return CyclotomicInt::from_staging(p_, std::move(s));
}

CyclotomicInt BicyclotomicInt::punctured_zq_coeff(std::uint64_t j) const {
    if (j < 1 || j >= q_)
        throw std::domain_error("BicyclotomicInt::punctured_zq_coeff: j outside 1..q-1");
    if (j == q_ - 1)
        return -zq_column(0);
    return zq_column(j) - zq_column(0);
}

CyclotomicInt BicyclotomicInt::zp_image_at_one() const {
    std::vector<mpz_class> s(q_);
    for (std::size_t j = 0; j + 1 < q_; ++j)
        for (std::size_t i = 0; i + 1 < p_; ++i)
            s[j] += c_[idx(i, j)];
    // Only the class mod p is canonical; reduce before assembling (the
    // top staging slot is already zero, so reduction survives it).
    const mpz_class pz(static_cast<unsigned long>(p_));
    for (auto& x : s)
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    return CyclotomicInt::from_staging(q_, std::move(s));
}

std::string BicyclotomicInt::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i + 1 < p_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j + 1 < q_; ++j) {
            if (j) os << " ";
            os << c_[idx(i, j)];
        }
    }
    os << "]";
    return os.str();
}

} // namespace qscan
