#pragma once

// Exact arithmetic in Z[zeta_p] and Z[zeta_p, zeta_q] on the power
// bases zeta_p^0..zeta_p^{p-2} and zeta_p^i zeta_q^j (i <= p-2,
// j <= q-2).  Products fold exponents through zeta^p = 1 and then
// eliminate the top power via 1 + zeta + ... + zeta^{p-1} = 0, so every
// element has a unique canonical coefficient vector.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qscan {

class CyclotomicInt {
public:
    CyclotomicInt() = default;                       // empty sentinel, p() == 0
    explicit CyclotomicInt(std::uint64_t p);         // zero element
    CyclotomicInt(std::uint64_t p, mpz_class constant);
    static CyclotomicInt zeta_power(std::uint64_t p, std::uint64_t e);
    // Exponent vector over 0..p-1 (size p); the zeta^{p-1} slot is
    // eliminated into the canonical form.
    static CyclotomicInt from_staging(std::uint64_t p, std::vector<mpz_class> s);

    std::uint64_t p() const noexcept { return p_; }
    std::size_t size() const noexcept { return c_.size(); }   // p-1
    const mpz_class& coeff(std::size_t i) const;

    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt& operator-=(const CyclotomicInt& o);
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
    friend CyclotomicInt operator-(CyclotomicInt a);
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) = default;

    // zeta_p -> zeta_p^t; throws std::domain_error if t = 0 mod p.
    CyclotomicInt galois(std::uint64_t t) const;
    CyclotomicInt conj() const { return galois(p_ - 1); }

    bool is_zero() const;
    bool is_rational_integer() const;        // no zeta dependence
    mpz_class rational_value() const;        // requires is_rational_integer
    // Coefficient sum of the canonical representative.  zeta_p -> 1 kills
    // the relation 1 + zeta + ... + zeta^{p-1} = 0 only mod p, so this is
    // well defined as a ring image only in Z/p.
    mpz_class eval_at_one() const;

    // Product of all Galois conjugates; the result must be a rational
    // integer (std::logic_error otherwise).
    mpz_class norm() const;

    // v_pi with pi = (zeta_p - 1): expand in powers of lambda = zeta - 1
    // with integer coefficients b_j; v_pi(b_j lambda^j) = (p-1)v_p(b_j)+j
    // and these are pairwise distinct over distinct j, so the minimum
    // over nonzero terms is exact.  Throws std::domain_error on zero.
    unsigned long pi_adic_valuation() const;

    std::string to_string() const;

private:
    std::uint64_t p_ = 0;
    std::vector<mpz_class> c_;
};

class BicyclotomicInt {
public:
    BicyclotomicInt() = default;                     // empty sentinel
    BicyclotomicInt(std::uint64_t p, std::uint64_t q);   // zero element
    BicyclotomicInt(std::uint64_t p, std::uint64_t q, mpz_class constant);
    // Exponent grid over 0..p-1 x 0..q-1, row-major size p*q.
    static BicyclotomicInt from_staging(std::uint64_t p, std::uint64_t q,
                                        std::vector<mpz_class> s);
    static BicyclotomicInt embed_p(const CyclotomicInt& a, std::uint64_t q);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t q() const noexcept { return q_; }
    const mpz_class& coeff(std::size_t i, std::size_t j) const;

    BicyclotomicInt& operator+=(const BicyclotomicInt& o);
    BicyclotomicInt& operator-=(const BicyclotomicInt& o);
    friend BicyclotomicInt operator+(BicyclotomicInt a, const BicyclotomicInt& b) { return a += b; }
    friend BicyclotomicInt operator-(BicyclotomicInt a, const BicyclotomicInt& b) { return a -= b; }
    friend BicyclotomicInt operator*(const BicyclotomicInt& a, const BicyclotomicInt& b);
    friend bool operator==(const BicyclotomicInt& a, const BicyclotomicInt& b) = default;

    BicyclotomicInt galois_p(std::uint64_t t) const;   // zeta_p -> zeta_p^t
    BicyclotomicInt galois_q(std::uint64_t t) const;   // zeta_q -> zeta_q^t
    BicyclotomicInt conj() const { return galois_p(p_ - 1).galois_q(q_ - 1); }
    BicyclotomicInt mul_zeta_p(std::uint64_t r) const; // * zeta_p^r

    bool is_zero() const;
    bool is_zeta_q_free() const;             // all columns j != 0 vanish
    CyclotomicInt project_to_p() const;      // requires is_zeta_q_free

    // Canonical zeta_q^j column (j <= q-2) as an element of Z[zeta_p].
    CyclotomicInt zq_column(std::size_t j) const;
    // Coefficient of zeta_q^j in the punctured basis zeta_q^1..zeta_q^{q-1}
    // (a genuine Z[zeta_p]-basis): d_j = c_j - c_0 for j <= q-2 and
    // d_{q-1} = -c_0.
    CyclotomicInt punctured_zq_coeff(std::uint64_t j) const;

    // Image under the ring map zeta_p -> 1, which lands in (Z/p)[zeta_q];
    // returned over the zeta_q power basis with coefficients reduced to
    // 0..p-1.
    CyclotomicInt zp_image_at_one() const;

    std::string to_string() const;

private:
    std::uint64_t p_ = 0, q_ = 0;
    std::vector<mpz_class> c_;   // (p-1) x (q-1), row-major

    std::size_t idx(std::size_t i, std::size_t j) const { return i * (q_ - 1) + j; }
};

} // namespace qscan
