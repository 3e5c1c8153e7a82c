#include "qscan/scan.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "qscan/bernoulli.hpp"

namespace qscan {

namespace {

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> a2_set(const std::vector<ScanHit>& hits) {
    std::vector<std::uint64_t> s;
    s.reserve(hits.size());
    for (const auto& h : hits) s.push_back(h.a2);
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

std::vector<ScanHit> scan_prime(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    if (p < 5)
        throw std::domain_error("scan_prime: p must be >= 5");
    const DeltaVector d = delta_coefficients(ctx);
    std::vector<ScanHit> hits;
    // Cost is O(p) per point, O(p^2) per prime; a multipoint evaluation
    // scheme would lower this if p_max ever grows beyond desk scale.
    for (std::uint64_t k = 3; k <= p - 2; k += 2) {
        const std::uint64_t x = ctx.reduced_power(static_cast<std::int64_t>(k));
        if (evaluate_Q(d, x) == 0)
            hits.push_back({p, ctx.v(), k, p - k, x});
    }
    return hits;
}

std::vector<ScanHit> scan_prime(std::uint64_t p) {
    if (p < 5 || !is_prime(p))
        throw std::domain_error("scan_prime: p must be a prime >= 5");
    return scan_prime(PrimeContext(p));
}

std::vector<ScanHit> scan_range(std::uint64_t p_max, unsigned jobs) {
    if (p_max < 5)
        throw std::domain_error("scan_range: p_max must be >= 5");
    const std::vector<std::uint64_t> primes = primes_in_range(5, p_max);
    std::vector<std::vector<ScanHit>> per_prime(primes.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i)
            per_prime[i] = scan_prime(primes[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < primes.size(); i = next.fetch_add(1))
                per_prime[i] = scan_prime(primes[i]);
        };
        std::vector<std::thread> pool;
        const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(primes.size()));
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // Merge in ascending-p order: identical output for any jobs value.
    std::vector<ScanHit> out;
    for (auto& hits : per_prime)
        out.insert(out.end(), hits.begin(), hits.end());
    return out;
}

CrossCheckReport cross_check(std::uint64_t p_max) {
    if (p_max < 5)
        throw std::domain_error("cross_check: p_max must be >= 5");
    CrossCheckReport report;
    report.p_max = p_max;
    for (std::uint64_t p : primes_in_range(5, p_max)) {
        ++report.primes_checked;
        const auto scan = a2_set(scan_prime(p));
        std::vector<std::uint64_t> oracle;
        for (const auto& pair : irregular_pairs_oracle(p)) oracle.push_back(pair.a2);
        std::sort(oracle.begin(), oracle.end());
        if (scan != oracle)
            report.mismatches.push_back({p, scan, oracle});
    }
    return report;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::RegularCertified: return "regular-certified";
        case Verdict::Irregular: return "irregular";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Certificate regularity_certificate(std::uint64_t p) {
    if (p < 5 || !is_prime(p))
        throw std::domain_error("regularity_certificate: p must be a prime >= 5");
    const PrimeContext ctx(p);
    const DeltaVector d = delta_coefficients(ctx);
    Certificate cert;
    cert.p = p;
    cert.v = ctx.v();
    for (std::uint64_t x = 1; x <= p - 1; ++x) {
        if (evaluate_Q_corollary(d, x) != 0) continue;
        const std::uint64_t j = ctx.dlog(x);
        if ((j & 1) != 0 && j >= 3)
            cert.hits.push_back({p, ctx.v(), j, p - j, x});
        else
            cert.stray_roots.push_back(x);
    }
    std::sort(cert.hits.begin(), cert.hits.end(),
              [](const ScanHit& a, const ScanHit& b) { return a.k < b.k; });
    std::sort(cert.stray_roots.begin(), cert.stray_roots.end());
    cert.verdict = cert.hits.empty() ? Verdict::RegularCertified : Verdict::Irregular;
    return cert;
}

} // namespace qscan
