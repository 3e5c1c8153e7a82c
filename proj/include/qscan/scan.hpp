#pragma once

// Irregular-prime detection by evaluating Q at odd powers of the
// primitive root, the Bernoulli cross-check, and the exhaustive
// regularity certificate.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qscan/group_ring.hpp"
#include "qscan/residue.hpp"

namespace qscan {

struct ScanHit {
    std::uint64_t p = 0;
    std::uint64_t v = 0;
    std::uint64_t k = 0;    // odd exponent, 3 <= k <= p-2
    std::uint64_t a2 = 0;   // p - k, the even Bernoulli index
    std::uint64_t mu = 0;   // v^k reduced, the evaluation point
    friend bool operator==(const ScanHit&, const ScanHit&) = default;
};

// Evaluates Q at x = v^k for odd k = 3, 5, .., p-2 (ascending k, hence
// descending a2) and reports the zeros.  Requires p >= 5 prime.
std::vector<ScanHit> scan_prime(const PrimeContext& ctx);
std::vector<ScanHit> scan_prime(std::uint64_t p);

// Concatenation of scan_prime over all primes 5 <= p <= p_max, ascending.
// jobs > 1 fans the primes out over worker threads; results are merged
// in ascending-p order, so output is independent of jobs.
std::vector<ScanHit> scan_range(std::uint64_t p_max, unsigned jobs = 1);

struct CrossCheckReport {
    struct Mismatch {
        std::uint64_t p = 0;
        std::vector<std::uint64_t> scan_a2;
        std::vector<std::uint64_t> oracle_a2;
    };
    std::uint64_t p_max = 0;
    std::size_t primes_checked = 0;
    std::vector<Mismatch> mismatches;
    bool ok() const noexcept { return mismatches.empty(); }
};

// Compares the a2-set of scan_prime with the Bernoulli oracle for every
// prime 5 <= p <= p_max.
CrossCheckReport cross_check(std::uint64_t p_max);

enum class Verdict { RegularCertified, Irregular, Inconclusive };

const char* to_string(Verdict v) noexcept;

struct Certificate {
    std::uint64_t p = 0;
    std::uint64_t v = 0;
    Verdict verdict = Verdict::Inconclusive;
    // Roots at odd powers v^k, 3 <= k <= p-2: irregularity evidence.
    std::vector<ScanHit> hits;
    // Roots at other points (even powers of v, or v itself), ascending.
    // Every prime has roots at all even powers v^{2m}, m >= 1; they are
    // recorded here and never counted as irregularity evidence.
    std::vector<std::uint64_t> stray_roots;
};

// Evaluates sum_{i=1}^{p-2} X^{i-1} delta_i mod p for every X in 1..p-1
// and classifies the roots.  Verdict is RegularCertified when no root
// lies at an odd power v^k with k >= 3, Irregular otherwise.
// Inconclusive is reserved and not produced by the current
// implementation.  Requires p >= 5 prime.
Certificate regularity_certificate(std::uint64_t p);

} // namespace qscan
