// qscan: irregular-prime scanner and Gauss-sum verifier.
//
// Exit codes: 0 success, 1 discrepancy or verification failure, 2 usage,
// 3 irregular prime certified, 4 precision exhausted.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qscan/bernoulli.hpp"
#include "qscan/gauss.hpp"
#include "qscan/residue.hpp"
#include "qscan/scan.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kIrregular = 3;
constexpr int kInconclusive = 4;

unsigned env_unsigned(const char* name, unsigned fallback) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) return fallback;
    return static_cast<unsigned>(v);
}

int run_scan(std::uint64_t p_max, unsigned jobs, const std::string& format) {
    const auto hits = qscan::scan_range(p_max, jobs);
    if (format == "csv") {
        std::cout << "p,v,a2\n";
        for (const auto& h : hits)
            std::cout << h.p << "," << h.v << "," << h.a2 << "\n";
    } else if (format == "json") {
        json arr = json::array();
        for (const auto& h : hits)
            arr.push_back({{"p", h.p}, {"v", h.v}, {"k", h.k}, {"a2", h.a2}, {"mu", h.mu}});
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& h : hits)
            std::cout << "p=" << h.p << " v=" << h.v << " a2=" << h.a2 << "\n";
    }
    return kOk;
}

int run_crosscheck(std::uint64_t p_max, const std::string& format) {
    const auto report = qscan::cross_check(p_max);
    if (format == "json") {
        json j;
        j["p_max"] = report.p_max;
        j["primes_checked"] = report.primes_checked;
        j["ok"] = report.ok();
        json arr = json::array();
        for (const auto& m : report.mismatches)
            arr.push_back({{"p", m.p}, {"scan_a2", m.scan_a2}, {"oracle_a2", m.oracle_a2}});
        j["mismatches"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "crosscheck p_max=" << report.p_max
                  << " primes=" << report.primes_checked
                  << " mismatches=" << report.mismatches.size() << "\n";
        for (const auto& m : report.mismatches) {
            std::cout << "mismatch p=" << m.p << " scan=";
            for (std::size_t i = 0; i < m.scan_a2.size(); ++i)
                std::cout << (i ? "," : "") << m.scan_a2[i];
            std::cout << " oracle=";
            for (std::size_t i = 0; i < m.oracle_a2.size(); ++i)
                std::cout << (i ? "," : "") << m.oracle_a2[i];
            std::cout << "\n";
        }
        std::cout << (report.ok() ? "ok" : "FAIL") << "\n";
    }
    return report.ok() ? kOk : kFail;
}

int run_certify(std::uint64_t p, const std::string& format) {
    const auto cert = qscan::regularity_certificate(p);
    if (format == "json") {
        json j;
        j["p"] = cert.p;
        j["v"] = cert.v;
        j["verdict"] = qscan::to_string(cert.verdict);
        json arr = json::array();
        for (const auto& h : cert.hits)
            arr.push_back({{"k", h.k}, {"a2", h.a2}, {"mu", h.mu}});
        j["hits"] = arr;
        j["stray_roots"] = cert.stray_roots;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "p=" << cert.p << " v=" << cert.v
                  << " verdict=" << qscan::to_string(cert.verdict) << "\n";
        for (const auto& h : cert.hits)
            std::cout << "hit k=" << h.k << " a2=" << h.a2 << " mu=" << h.mu << "\n";
        std::cout << "stray_roots=" << cert.stray_roots.size() << "\n";
    }
    switch (cert.verdict) {
        case qscan::Verdict::RegularCertified: return kOk;
        case qscan::Verdict::Irregular: return kIrregular;
        case qscan::Verdict::Inconclusive: return kInconclusive;
    }
    return kFail;
}

int run_bernoulli(std::uint64_t p, const std::string& format) {
    const auto table = qscan::bernoulli_mod_p(p);
    if (format == "csv") {
        std::cout << "n,value\n";
        for (std::size_t n = 0; n < table.values.size(); ++n)
            std::cout << n << "," << table.values[n] << "\n";
    } else if (format == "json") {
        json j;
        j["p"] = table.p;
        j["values"] = table.values;
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t n = 0; n < table.values.size(); ++n)
            std::cout << "B[" << n << "] = " << table.values[n] << "\n";
    }
    return kOk;
}

const char* passfail(bool ok) { return ok ? "pass" : "FAIL"; }

int run_gauss_split(std::uint64_t p, std::uint64_t q, const std::string& format,
                    bool skip_structure, bool skip_power, bool skip_stickelberger,
                    bool skip_norm) {
    const qscan::ResidueCharacter chr(p, q);
    const auto rec = qscan::gauss_sum(chr);
    json j;
    j["p"] = p;
    j["q"] = q;
    j["case"] = "split";
    j["f"] = rec.f;
    j["u"] = chr.u();
    j["w"] = chr.w();
    j["rho"] = rec.rho;

    if (format != "json")
        std::cout << "gauss p=" << p << " q=" << q << " case=split f=" << rec.f
                  << " u=" << chr.u() << " w=" << chr.w() << "\n"
                  << "rho=" << rec.rho << "\n";

    {
        const bool image_ok =
            (rec.g.zp_image_at_one() ==
             qscan::CyclotomicInt(q, mpz_class(static_cast<unsigned long>(p - 1))));
        const bool conj_ok = (rec.g * rec.g.conj() ==
                              qscan::BicyclotomicInt(p, q, mpz_class(static_cast<unsigned long>(q))));
        j["image_at_one_ok"] = image_ok;
        j["conj_product_ok"] = conj_ok;
        if (format != "json") {
            std::cout << "zeta_p -> 1 image == -1: " << passfail(image_ok) << "\n";
            std::cout << "g * conj(g) == q^f: " << passfail(conj_ok) << "\n";
        }
        if (!image_ok || !conj_ok)
            throw std::logic_error("gauss: basic identities failed");
    }

    if (!skip_structure) {
        const auto d = qscan::structure_check(rec, chr);
        j["structure"] = {{"g0_zero", d.g0_zero},
                          {"pattern_ok", d.pattern_ok},
                          {"g1_is_unit", d.g1_is_unit},
                          {"g1_is_one", d.g1_is_one},
                          {"reconstruction_ok", d.reconstruction_ok},
                          {"minus_v_mod_p", d.minus_v_mod_p},
                          {"rho_matches_minus_v", d.rho_matches_minus_v}};
        if (format != "json") {
            std::cout << "zero-constant form: " << passfail(d.g0_zero) << "\n";
            std::cout << "coefficient pattern: " << passfail(d.pattern_ok) << "\n";
            std::cout << "unit leading coefficient: " << passfail(d.g1_is_unit) << "\n";
            std::cout << "leading coefficient is 1: " << (d.g1_is_one ? "yes" : "no") << "\n";
            std::cout << "reconstruction: " << passfail(d.reconstruction_ok) << "\n";
            std::cout << "rho == -v mod p: " << (d.rho_matches_minus_v ? "yes" : "no")
                      << " (diagnostic, -v mod p = " << d.minus_v_mod_p << ")\n";
        }
    }

    if (!skip_power) {
        const auto pw = qscan::gauss_power(rec);
        j["vpi_g_minus_1"] = pw.vpi_G_minus_1;
        j["vpi_g_plus_1"] = pw.vpi_G_plus_1;
        j["plus_branch"] = pw.congruent_plus_one_mod_pi_p;
        j["minus_branch"] = pw.congruent_minus_one_mod_pi_p;
        if (format != "json") {
            std::cout << "G = g^p lands in Z[zeta_p]: pass\n";
            std::cout << "v_pi(G-1)=" << pw.vpi_G_minus_1
                      << " v_pi(G+1)=" << pw.vpi_G_plus_1 << "\n";
            std::cout << "G == +1 mod pi^p: " << (pw.congruent_plus_one_mod_pi_p ? "yes" : "no")
                      << "\n";
            std::cout << "G == -1 mod pi^p: " << (pw.congruent_minus_one_mod_pi_p ? "yes" : "no")
                      << "\n";
        }
        if (!pw.congruent_plus_one_mod_pi_p && !pw.congruent_minus_one_mod_pi_p)
            throw std::logic_error("gauss: G is not +-1 mod pi^p");

        if (!skip_norm) {
            mpz_class n = pw.G.norm();
            mpz_class expected;
            mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(q),
                          static_cast<unsigned long>(p * (p - 1) / 2));
            const bool norm_ok = (abs(n) == expected);
            j["norm_ok"] = norm_ok;
            if (format != "json")
                std::cout << "|N(G)| == q^(p(p-1)/2): " << passfail(norm_ok) << "\n";
            if (!norm_ok)
                throw std::logic_error("gauss: norm of G has the wrong magnitude");
        }

        if (!skip_stickelberger) {
            qscan::PrecisionPolicy policy;
            policy.cap = env_unsigned("QSCAN_PRECISION_CAP", 0);
            const auto rep = qscan::stickelberger_check(pw.G, chr, policy);
            j["stickelberger"] = {{"valuations", rep.valuations},
                                  {"precision_used", rep.precision_used},
                                  {"multiset_ok", rep.multiset_ok},
                                  {"sum_ok", rep.sum_ok},
                                  {"labels_ok", rep.labels_ok}};
            if (format != "json") {
                std::cout << "stickelberger valuations:";
                for (auto v : rep.valuations) std::cout << " " << v;
                std::cout << "\n";
                std::cout << "stickelberger multiset: " << passfail(rep.multiset_ok) << "\n";
                std::cout << "stickelberger sum: " << passfail(rep.sum_ok) << "\n";
                std::cout << "stickelberger labels: " << passfail(rep.labels_ok) << "\n";
                std::cout << "precision used: " << rep.precision_used << "\n";
            }
        }
    }

    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << "all hard checks passed\n";
    return kOk;
}

int run_gauss_general(std::uint64_t p, std::uint64_t q, const std::string& format) {
    const auto rec = qscan::gauss_sum_general(p, q);
    const bool in_zp = rec.g.is_zeta_q_free();
    const bool image_ok =
        (rec.g.zp_image_at_one() ==
         qscan::CyclotomicInt(q, mpz_class(static_cast<unsigned long>(p - 1))));
    mpz_class qf;
    mpz_ui_pow_ui(qf.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(rec.f));
    const bool conj_ok = (rec.g * rec.g.conj() == qscan::BicyclotomicInt(p, q, qf));

    if (format == "json") {
        json j;
        j["p"] = p;
        j["q"] = q;
        j["case"] = "nonsplit";
        j["f"] = rec.f;
        j["rho"] = rec.rho;
        j["in_zp"] = in_zp;
        j["image_at_one_ok"] = image_ok;
        j["conj_product_ok"] = conj_ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "gauss p=" << p << " q=" << q << " case=nonsplit f=" << rec.f << "\n";
        std::cout << "g in Z[zeta_p]: " << passfail(in_zp) << "\n";
        std::cout << "zeta_p -> 1 image == -1: " << passfail(image_ok) << "\n";
        std::cout << "g * conj(g) == q^f: " << passfail(conj_ok) << "\n";
    }
    if (!in_zp || !image_ok || !conj_ok)
        throw std::logic_error("gauss: nonsplit identities failed");
    if (format != "json")
        std::cout << "all hard checks passed\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"irregular-prime scanner and Gauss-sum verifier"};
    app.require_subcommand(1);

    const unsigned default_jobs = env_unsigned("QSCAN_JOBS", 1);

    std::uint64_t p_max = 0, p = 0, q = 0;
    unsigned jobs = default_jobs;
    std::string format = "text";
    bool skip_structure = false, skip_power = false, skip_stickelberger = false,
         skip_norm = false;

    auto* scan = app.add_subcommand("scan", "scan primes 5..p-max for irregular pairs");
    scan->add_option("--p-max", p_max, "largest prime to scan")->required();
    scan->add_option("--jobs", jobs, "worker threads");
    scan->add_option("--format", format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    auto* crosscheck =
        app.add_subcommand("crosscheck", "compare the scan against the Bernoulli oracle");
    crosscheck->add_option("--p-max", p_max, "largest prime to check")->required();
    crosscheck->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* certify = app.add_subcommand("certify", "regularity certificate for one prime");
    certify->add_option("--p", p, "prime to certify")->required();
    certify->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* gauss = app.add_subcommand("gauss", "Gauss-sum structure checks for a prime pair");
    gauss->add_option("--p", p, "odd prime p")->required();
    gauss->add_option("--q", q, "odd prime q distinct from p")->required();
    gauss->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    gauss->add_flag("--skip-structure", skip_structure, "skip coefficient-structure checks");
    gauss->add_flag("--skip-power", skip_power, "skip the g^p computation");
    gauss->add_flag("--skip-stickelberger", skip_stickelberger,
                    "skip the q-adic valuation checks");
    gauss->add_flag("--skip-norm", skip_norm, "skip the norm magnitude check");

    auto* bernoulli = app.add_subcommand("bernoulli", "Bernoulli numbers mod p");
    bernoulli->add_option("--p", p, "prime modulus")->required();
    bernoulli->add_option("--format", format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (scan->parsed()) {
            if (p_max < 5) {
                std::cerr << "scan: --p-max must be at least 5\n";
                return kUsage;
            }
            if (jobs == 0) jobs = 1;
            return run_scan(p_max, jobs, format);
        }
        if (crosscheck->parsed()) {
            if (p_max < 5) {
                std::cerr << "crosscheck: --p-max must be at least 5\n";
                return kUsage;
            }
            return run_crosscheck(p_max, format);
        }
        if (certify->parsed()) {
            if (p < 5 || !qscan::is_prime(p)) {
                std::cerr << "certify: --p must be a prime >= 5\n";
                return kUsage;
            }
            return run_certify(p, format);
        }
        if (gauss->parsed()) {
            if (p < 3 || !qscan::is_prime(p) || q < 3 || !qscan::is_prime(q) || p == q) {
                std::cerr << "gauss: --p and --q must be distinct odd primes\n";
                return kUsage;
            }
            if (q % p == 1)
                return run_gauss_split(p, q, format, skip_structure, skip_power,
                                       skip_stickelberger, skip_norm);
            return run_gauss_general(p, q, format);
        }
        if (bernoulli->parsed()) {
            if (p < 5 || !qscan::is_prime(p)) {
                std::cerr << "bernoulli: --p must be a prime >= 5\n";
                return kUsage;
            }
            return run_bernoulli(p, format);
        }
    } catch (const qscan::precision_exhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
