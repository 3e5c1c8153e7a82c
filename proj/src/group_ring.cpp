#include "qscan/group_ring.hpp"

#include <stdexcept>

namespace qscan {

namespace {

void require_same_ring(const GroupRingElem& a, const GroupRingElem& b) {
    if (a.p() != b.p())
        throw std::logic_error("GroupRingElem: mixed group orders");
}

} // namespace

GroupRingElem::GroupRingElem(std::uint64_t p) : p_(p), c_(p - 1) {
    if (p < 3)
        throw std::domain_error("GroupRingElem: p must be >= 3");
}

GroupRingElem GroupRingElem::monomial(std::uint64_t p, std::uint64_t exp, const mpz_class& c) {
    GroupRingElem e(p);
    e.c_[exp % (p - 1)] = c;
    return e;
}

const mpz_class& GroupRingElem::coeff(std::size_t i) const { return c_.at(i); }
mpz_class& GroupRingElem::coeff(std::size_t i) { return c_.at(i); }

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& o) {
    require_same_ring(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& o) {
    require_same_ring(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
    require_same_ring(a, b);
    const std::size_t n = a.c_.size();   // p - 1
    GroupRingElem r(a.p_);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.c_[j] == 0) continue;
            std::size_t e = i + j;
            if (e >= n) e -= n;
            mpz_addmul(r.c_[e].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    return r;
}

void GroupRingElem::scale(const mpz_class& s) {
    for (auto& c : c_) c *= s;
}

mpz_class GroupRingElem::coefficient_sum() const {
    mpz_class s = 0;
    for (const auto& c : c_) s += c;
    return s;
}

bool GroupRingElem::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool GroupRingElem::divisible_by(unsigned long m) const {
    for (const auto& c : c_)
        if (!mpz_divisible_ui_p(c.get_mpz_t(), m)) return false;
    return true;
}

GroupRingElem GroupRingElem::divided_by(unsigned long m) const {
    GroupRingElem r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!mpz_divisible_ui_p(c_[i].get_mpz_t(), m))
            throw std::logic_error("GroupRingElem::divided_by: inexact division");
        mpz_divexact_ui(r.c_[i].get_mpz_t(), c_[i].get_mpz_t(), m);
    }
    return r;
}

std::int64_t DeltaVector::at(std::size_t i) const {
    if (i < 1 || i > delta.size())
        throw std::domain_error("DeltaVector::at: index outside 1..p-2");
    return delta[i - 1];
}

DeltaVector delta_coefficients(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    const auto sp = static_cast<std::int64_t>(p);
    DeltaVector d{p, ctx.v(), {}};
    d.delta.reserve(p - 2);
    // delta_0 = (v^{-(p-2)} - v)/p vanishes identically: v^{-(p-2)} = v^1.
    if (ctx.reduced_power(-static_cast<std::int64_t>(p - 2)) != ctx.v())
        throw std::logic_error("delta_coefficients: delta_0 != 0");
    for (std::uint64_t i = 1; i <= p - 2; ++i) {
        const auto hi = static_cast<std::int64_t>(ctx.reduced_power(-(static_cast<std::int64_t>(i) - 1)));
        const auto lo = static_cast<std::int64_t>(ctx.reduced_power(-static_cast<std::int64_t>(i)) * ctx.v());
        const std::int64_t num = hi - lo;
        if (num % sp != 0)
            throw std::logic_error("delta_coefficients: inexact division");
        const std::int64_t di = num / sp;
        if (di <= -sp || di > 0)
            throw std::logic_error("delta_coefficients: value outside (-p, 0]");
        d.delta.push_back(di);
    }
    return d;
}

GroupRingElem P_of_sigma(const PrimeContext& ctx) {
    GroupRingElem e(ctx.p());
    for (std::uint64_t i = 0; i + 1 < ctx.p(); ++i)
        e.coeff(i) = mpz_class(static_cast<unsigned long>(ctx.reduced_power(-static_cast<std::int64_t>(i))));
    return e;
}

GroupRingElem T_of_sigma(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    GroupRingElem t = GroupRingElem::monomial(p, 0, 1);
    for (std::uint64_t k = 0; k <= p - 2; ++k) {
        if (k == 1) continue;
        GroupRingElem lin(p);
        lin.coeff(1) = 1;
        lin.coeff(0) = -mpz_class(static_cast<unsigned long>(ctx.reduced_power(static_cast<std::int64_t>(k))));
        t = t * lin;
    }
    t.scale(mpz_class(static_cast<unsigned long>(ctx.reduced_power(-static_cast<std::int64_t>(p - 2)))));
    return t;
}

GroupRingElem verify_P_equals_T_mod_p(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    GroupRingElem diff = P_of_sigma(ctx) - T_of_sigma(ctx);
    if (!diff.divisible_by(static_cast<unsigned long>(p)))
        throw std::logic_error("verify_P_equals_T_mod_p: P - T not divisible by p");
    GroupRingElem r = diff.divided_by(static_cast<unsigned long>(p));
    if (r.coeff(p - 2) != 0)
        throw std::logic_error("verify_P_equals_T_mod_p: R has degree p-2");
    return r;
}

DeltaVector symbolic_Q_check(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    GroupRingElem lin(p);
    lin.coeff(1) = 1;
    lin.coeff(0) = -mpz_class(static_cast<unsigned long>(ctx.v()));
    const GroupRingElem prod = P_of_sigma(ctx) * lin;   // sigma^{p-1} wraps to sigma^0
    if (!prod.divisible_by(static_cast<unsigned long>(p)))
        throw std::logic_error("symbolic_Q_check: P(sigma)(sigma - v) not divisible by p");
    const GroupRingElem q = prod.divided_by(static_cast<unsigned long>(p));
    if (q.coeff(0) != 0)
        throw std::logic_error("symbolic_Q_check: constant coefficient of Q nonzero");
    const DeltaVector direct = delta_coefficients(ctx);
    DeltaVector out{p, ctx.v(), {}};
    out.delta.reserve(p - 2);
    for (std::uint64_t i = 1; i <= p - 2; ++i) {
        if (q.coeff(i) != direct.at(i))
            throw std::logic_error("symbolic_Q_check: expansion disagrees with the direct formula");
        out.delta.push_back(direct.at(i));
    }
    return out;
}

namespace {

// Horner evaluation of sum_{i=1}^{p-2} x^i c_i with c_i = delta_i mod p.
std::uint64_t horner_theorem_form(const DeltaVector& d, std::uint64_t x) {
    const std::uint64_t p = d.p;
    std::uint64_t acc = 0;
    for (std::size_t i = d.delta.size(); i >= 1; --i) {
        const std::int64_t di = d.delta[i - 1];
        const std::uint64_t c = di < 0 ? static_cast<std::uint64_t>(di + static_cast<std::int64_t>(p)) : 0;
        acc = (acc * x + c) % p;   // p < 2^32: products fit
    }
    return acc * x % p;
}

} // namespace

std::uint64_t evaluate_Q(const DeltaVector& d, std::uint64_t x) {
    x %= d.p;
    if (x == 0)
        throw std::domain_error("evaluate_Q: x = 0 mod p");
    return horner_theorem_form(d, x);
}

std::uint64_t evaluate_Q_corollary(const DeltaVector& d, std::uint64_t x) {
    x %= d.p;
    if (x == 0)
        throw std::domain_error("evaluate_Q_corollary: x = 0 mod p");
    const std::uint64_t p = d.p;
    std::uint64_t acc = 0;
    for (std::size_t i = d.delta.size(); i >= 1; --i) {
        const std::int64_t di = d.delta[i - 1];
        const std::uint64_t c = di < 0 ? static_cast<std::uint64_t>(di + static_cast<std::int64_t>(p)) : 0;
        acc = (acc * x + c) % p;
    }
    return acc;
}

} // namespace qscan
