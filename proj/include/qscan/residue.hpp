#pragma once

// Modular arithmetic, primality, primitive roots, and the reduced power
// table for a fixed odd prime p.  Residues are normalized to 1..p-1
// throughout (never 0..p-2); the integrality of the delta coefficients
// downstream depends on that choice.
//
// Everything here is a pure function of its inputs.  PrimeContext is
// immutable after construction and safe to share across threads.

#include <cstdint>
#include <span>
#include <vector>

namespace qscan {

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

// base^exp mod modulus, result in 0..modulus-1, O(log exp) multiplications.
// Throws std::domain_error if modulus < 2.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);

// Inverse of a mod m; throws std::domain_error if gcd(a, m) != 1 or m < 2.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

// Distinct prime factors by trial division, ascending.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Least v >= 2 of multiplicative order exactly p-1 mod p.  The order is
// verified against the prime factorization of p-1.  Throws
// std::domain_error unless p is an odd prime.
std::uint64_t smallest_primitive_root(std::uint64_t p);

// Same value by the O(p) per-candidate full-power scan.  Kept as an
// independent oracle for tests; prefer smallest_primitive_root.
std::uint64_t smallest_primitive_root_scan(std::uint64_t p);

class PrimeContext {
public:
    // p an odd prime; v defaults to the smallest primitive root.
    explicit PrimeContext(std::uint64_t p);
    // Explicit primitive root; throws std::domain_error if v does not
    // have order p-1.
    PrimeContext(std::uint64_t p, std::uint64_t v);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t v() const noexcept { return v_; }

    // v^n reduced to 1..p-1, any integer n (negative n picks the inverse
    // power through the exponent reduced mod p-1).
    std::uint64_t reduced_power(std::int64_t n) const noexcept;

    // Index j in 0..p-2 with v^j = x mod p; throws std::domain_error if
    // x = 0 mod p.
    std::uint64_t dlog(std::uint64_t x) const;

    // pow_table()[j] = v^j in 1..p-1, j = 0..p-2.
    std::span<const std::uint64_t> pow_table() const noexcept { return pow_; }

private:
    std::uint64_t p_;
    std::uint64_t v_;
    std::vector<std::uint64_t> pow_;
    std::vector<std::uint32_t> dlog_;   // dlog_[x] = j for x in 1..p-1

    void build();
};

} // namespace qscan
