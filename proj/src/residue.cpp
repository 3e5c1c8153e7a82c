#include "qscan/residue.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace qscan {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Witnesses covering all 64-bit inputs.
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t s : kWitnesses) {
        if (n % s == 0) return n == s;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : kWitnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
    if (modulus < 2)
        throw std::domain_error("mod_pow: modulus must be >= 2");
    return pow_mod(base, exp, modulus);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m < 2)
        throw std::domain_error("mod_inverse: modulus must be >= 2");
    // extended Euclid on (a mod m, m); track only the coefficient of a
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t qt = r / new_r;
        t = std::exchange(new_t, t - qt * new_t);
        r = std::exchange(new_r, r - qt * new_r);
    }
    if (r != 1)
        throw std::domain_error("mod_inverse: argument not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2) ? 1 : 2) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
    if (p < 3 || !is_prime(p))
        throw std::domain_error("smallest_primitive_root: p must be an odd prime");
    const auto factors = distinct_prime_factors(p - 1);
    for (std::uint64_t v = 2; v < p; ++v) {
        bool full_order = true;
        for (std::uint64_t ell : factors) {
            if (pow_mod(v, (p - 1) / ell, p) == 1) {
                full_order = false;
                break;
            }
        }
        if (full_order) return v;
    }
    throw std::logic_error("smallest_primitive_root: search exhausted");   // unreachable
}

std::uint64_t smallest_primitive_root_scan(std::uint64_t p) {
    if (p < 3 || !is_prime(p))
        throw std::domain_error("smallest_primitive_root_scan: p must be an odd prime");
    for (std::uint64_t v = 2; v < p; ++v) {
        std::uint64_t x = 1;
        bool full_order = true;
        for (std::uint64_t i = 1; i + 1 < p; ++i) {   // i = 1..p-2
            x = mul_mod(x, v, p);
            if (x == 1) {
                full_order = false;
                break;
            }
        }
        if (full_order) return v;
    }
    throw std::logic_error("smallest_primitive_root_scan: search exhausted");
}

PrimeContext::PrimeContext(std::uint64_t p)
    : p_(p), v_(smallest_primitive_root(p)) {
    build();
}

PrimeContext::PrimeContext(std::uint64_t p, std::uint64_t v) : p_(p), v_(v % p) {
    if (p < 3 || !is_prime(p))
        throw std::domain_error("PrimeContext: p must be an odd prime");
    if (v_ < 2)
        throw std::domain_error("PrimeContext: v must be >= 2 mod p");
    for (std::uint64_t ell : distinct_prime_factors(p - 1)) {
        if (pow_mod(v_, (p - 1) / ell, p) == 1)
            throw std::domain_error("PrimeContext: v is not a primitive root");
    }
    build();
}

void PrimeContext::build() {
    if (p_ > std::numeric_limits<std::uint32_t>::max())
        throw std::domain_error("PrimeContext: p exceeds the supported range");
    pow_.resize(p_ - 1);
    dlog_.assign(p_, 0);
    pow_[0] = 1;
    for (std::size_t j = 1; j + 1 < p_; ++j)
        pow_[j] = pow_[j - 1] * v_ % p_;   // p < 2^32, product fits
    for (std::size_t j = 0; j + 1 < p_; ++j)
        dlog_[pow_[j]] = static_cast<std::uint32_t>(j);
}

std::uint64_t PrimeContext::reduced_power(std::int64_t n) const noexcept {
    const std::int64_t order = static_cast<std::int64_t>(p_) - 1;
    std::int64_t r = n % order;
    if (r < 0) r += order;
    return pow_[static_cast<std::size_t>(r)];
}

std::uint64_t PrimeContext::dlog(std::uint64_t x) const {
    x %= p_;
    if (x == 0)
        throw std::domain_error("PrimeContext::dlog: x = 0 mod p");
    return dlog_[x];
}

} // namespace qscan
