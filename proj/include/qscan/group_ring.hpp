#pragma once

// Dense elements of the integral group ring Z[G] for the cyclic Galois
// group of order p-1 (generator sigma, relation sigma^(p-1) = 1), and
// the integer coefficient vector delta of the quotient polynomial
// Q(sigma) = P(sigma)(sigma - v)/p together with its evaluation mod p.
//
// P(sigma) = sum_{i=0}^{p-2} v^{-i} sigma^i with v^{-i} the reduced
// power in 1..p-1.  Each delta_i = (v^{-(i-1)} - v^{-i} v)/p is an exact
// integer in (-p, 0]; delta_0 = 0.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "qscan/residue.hpp"

namespace qscan {

class GroupRingElem {
public:
    explicit GroupRingElem(std::uint64_t p);    // zero element
    static GroupRingElem monomial(std::uint64_t p, std::uint64_t exp, const mpz_class& c);

    std::uint64_t p() const noexcept { return p_; }
    std::size_t size() const noexcept { return c_.size(); }   // p-1

    const mpz_class& coeff(std::size_t i) const;
    mpz_class& coeff(std::size_t i);

    GroupRingElem& operator+=(const GroupRingElem& o);
    GroupRingElem& operator-=(const GroupRingElem& o);
    friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
    friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
    // Exponents reduce mod p-1.
    friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b);
    friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) = default;

    void scale(const mpz_class& s);
    mpz_class coefficient_sum() const;
    bool is_zero() const;
    bool divisible_by(unsigned long m) const;       // coefficientwise
    GroupRingElem divided_by(unsigned long m) const; // exact; throws std::logic_error otherwise

private:
    std::uint64_t p_;
    std::vector<mpz_class> c_;   // c_[i] is the coefficient of sigma^i
};

struct DeltaVector {
    std::uint64_t p = 0;
    std::uint64_t v = 0;
    std::vector<std::int64_t> delta;   // delta[i-1] = delta_i, i = 1..p-2

    std::int64_t at(std::size_t i) const;   // i in 1..p-2
};

// Exact delta_i = (v^{-(i-1)} - v^{-i} v)/p, i = 1..p-2.  Throws
// std::logic_error if a division is inexact or a value leaves (-p, 0]
// (both impossible with residues kept in 1..p-1).
DeltaVector delta_coefficients(const PrimeContext& ctx);

GroupRingElem P_of_sigma(const PrimeContext& ctx);

// T(sigma) = v^{-(p-2)} * prod_{k=0, k!=1}^{p-2} (sigma - v^k), expanded
// exactly in the group ring.
GroupRingElem T_of_sigma(const PrimeContext& ctx);

// Checks P = T coefficientwise mod p and returns R = (P - T)/p, which
// must have zero coefficient at sigma^{p-2}.  Throws std::logic_error on
// violation.
GroupRingElem verify_P_equals_T_mod_p(const PrimeContext& ctx);

// Expands P(sigma)(sigma - v) in the group ring (the sigma^{p-1} term
// wraps to sigma^0), divides by p exactly, and cross-checks the result
// against delta_coefficients.  Throws std::logic_error on any mismatch.
DeltaVector symbolic_Q_check(const PrimeContext& ctx);

// sum_{i=1}^{p-2} x^i delta_i mod p, Horner, result in 0..p-1.
// x is reduced mod p first; throws std::domain_error if x = 0 mod p.
std::uint64_t evaluate_Q(const DeltaVector& d, std::uint64_t x);

// sum_{i=1}^{p-2} x^{i-1} delta_i mod p: same zero set as evaluate_Q on
// nonzero residues (the two differ by the unit factor x).
std::uint64_t evaluate_Q_corollary(const DeltaVector& d, std::uint64_t x);

} // namespace qscan
