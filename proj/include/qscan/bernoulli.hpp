#pragma once

// Bernoulli numbers mod p and the classical irregular-pair oracle.
// Independent of the polynomial scan; used to cross-check it.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qscan {

struct BernoulliTableModP {
    std::uint64_t p = 0;
    // values[n] = B_n mod p for n = 0..p-3, with the B_1 = -1/2
    // convention.  Denominators are invertible mod p in this range.
    std::vector<std::uint64_t> values;
};

// O(p^2) recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0, binomials by Pascal
// row iteration mod p.  Requires p >= 5 prime.
BernoulliTableModP bernoulli_mod_p(std::uint64_t p);

struct IrregularPair {
    std::uint64_t p = 0;
    std::uint64_t a2 = 0;   // even index with B_a2 = 0 mod p, 2 <= a2 <= p-3
    std::uint64_t k = 0;    // p - a2 (odd)
    std::uint64_t m = 0;    // (k-1)/2
    friend bool operator==(const IrregularPair&, const IrregularPair&) = default;
};

// All irregular pairs of p, ascending a2.  Requires p >= 5 prime.
std::vector<IrregularPair> irregular_pairs_oracle(std::uint64_t p);

std::size_t index_of_irregularity(std::uint64_t p);

} // namespace qscan
