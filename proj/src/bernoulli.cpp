#include "qscan/bernoulli.hpp"

#include <stdexcept>

#include "qscan/residue.hpp"

namespace qscan {

BernoulliTableModP bernoulli_mod_p(std::uint64_t p) {
    if (p < 5 || !is_prime(p))
        throw std::domain_error("bernoulli_mod_p: p must be a prime >= 5");
    const std::size_t n_max = p - 3;
    std::vector<std::uint64_t> b(n_max + 1, 0);
    b[0] = 1;
    // row[j] = C(n+1, j) mod p, extended one row per step.
    std::vector<std::uint64_t> row = {1, 1};
    for (std::size_t n = 1; n <= n_max; ++n) {
        row.push_back(1);
        for (std::size_t j = row.size() - 2; j >= 1; --j)
            row[j] = (row[j] + row[j - 1]) % p;
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j)
            acc = (acc + row[j] * b[j]) % p;   // p < 2^32: products fit
        // C(n+1, n) = n+1 <= p-2 is invertible mod p.
        const std::uint64_t inv = mod_inverse((n + 1) % p, p);
        b[n] = (p - acc) % p * inv % p;
    }
    return {p, std::move(b)};
}

std::vector<IrregularPair> irregular_pairs_oracle(std::uint64_t p) {
    const BernoulliTableModP table = bernoulli_mod_p(p);
    std::vector<IrregularPair> pairs;
    for (std::uint64_t a2 = 2; a2 <= p - 3; a2 += 2) {
        if (table.values[a2] == 0) {
            const std::uint64_t k = p - a2;
            pairs.push_back({p, a2, k, (k - 1) / 2});
        }
    }
    return pairs;
}

std::size_t index_of_irregularity(std::uint64_t p) {
    return irregular_pairs_oracle(p).size();
}

} // namespace qscan
