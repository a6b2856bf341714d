/*
   Copyright 2026 The almostnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "almostnet/cert.hpp"
#include "almostnet/generator.hpp"
#include "almostnet/point_file.hpp"
#include "almostnet/verifier.hpp"
#include "almostnet/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

uint32_t threads_from_env() {
    const char* env = std::getenv("ANET_THREADS");
    if (!env) return 1;
    long v = std::strtol(env, nullptr, 10);
    return v > 1 ? static_cast<uint32_t>(v) : 1;
}

double theorem_threshold(uint32_t q, uint32_t d, uint64_t m) {
    return 10.0 * std::sqrt(d * std::log(static_cast<double>(d) * q) / static_cast<double>(m));
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void print_csv_block(const std::string& header, const std::string& row, const std::string& path) {
    std::cout << "CSV:\n" << header << "\n" << row << "\n";
    if (!path.empty()) {
        std::ofstream out(path);
        out << header << "\n" << row << "\n";
    }
}

struct GenOptions {
    uint32_t q = 2;
    uint32_t d = 2;
    uint64_t m = 1;
    uint32_t n = 0;
    std::optional<uint32_t> t;
    uint64_t seed = 1;
    std::optional<double> verified_target;
    uint32_t retries = 5;
    uint32_t perturb = 0;
    std::string floats_path;
    std::string csv_path;
    std::string out_path;
    uint32_t threads = 1;
};

int run_gen(const GenOptions& opt) {
    anet::NetParams params = anet::derive_params(opt.q, opt.d, opt.m, opt.n, opt.t, opt.seed);
    if (params.below_guaranteed_m)
        std::cerr << "warning: m < 400*d*ln(d*q) = "
                  << format_double(400.0 * opt.d * std::log(static_cast<double>(opt.d) * opt.q))
                  << "; the deviation guarantee does not apply\n";

    anet::PointFileHeader header;
    header.q = params.q;
    header.d = params.d;
    header.digit_count = params.digits_per_coord() + opt.perturb;
    header.point_count = params.point_count();
    header.m = params.m;
    header.n = params.n;
    header.t = params.t;
    header.digits_mode = params.q <= 10 ? "chars" : "csv";
    header.version = anet::kVersion;

    if (opt.verified_target) {
        anet::VerifiedNet vn = anet::generate_verified(params, *opt.verified_target, opt.retries, opt.threads);
        params = vn.params;
        header.annotations.emplace_back("eps_obs", format_double(vn.eps_obs));
        header.annotations.emplace_back("retries", std::to_string(vn.retries));
        header.annotations.emplace_back("target", format_double(*opt.verified_target));
    }
    header.seed = params.seed;
    if (opt.perturb) header.annotations.emplace_back("perturb", std::to_string(opt.perturb));

    anet::PointFileWriter writer(opt.out_path, header);
    std::ofstream floats;
    if (!opt.floats_path.empty()) {
        floats.open(opt.floats_path);
        floats.precision(17);
    }
    anet::generate(
        params,
        [&](const anet::DigitPoint& pt) {
            writer.write(pt);
            if (floats.is_open()) {
                for (uint32_t i = 0; i < pt.dimension; ++i) {
                    if (i) floats << ',';
                    floats << anet::to_float(pt.coord_string(i));
                }
                floats << '\n';
            }
        },
        opt.perturb);
    writer.close();

    std::cout << "wrote " << header.point_count << " points to " << opt.out_path << "\n"
              << "q=" << params.q << " d=" << params.d << " m=" << params.m << " n=" << params.n
              << " t=" << params.t << " seed=" << params.seed << " D=" << header.digit_count << "\n"
              << "eps_guarantee=" << format_double(params.eps_guarantee())
              << " eps_internal=" << format_double(params.eps_internal()) << "\n";
    for (const auto& [key, value] : header.annotations) std::cout << key << "=" << value << "\n";
    print_csv_block("q,d,m,n,t,seed,D,N,eps_guarantee",
                    std::to_string(params.q) + "," + std::to_string(params.d) + "," +
                        std::to_string(params.m) + "," + std::to_string(params.n) + "," +
                        std::to_string(params.t) + "," + std::to_string(params.seed) + "," +
                        std::to_string(header.digit_count) + "," + std::to_string(header.point_count) +
                        "," + format_double(params.eps_guarantee()),
                    opt.csv_path);
    return kExitPass;
}

int run_verify(const std::string& path, std::optional<uint32_t> level, std::optional<uint64_t> m,
               std::optional<double> threshold, uint32_t threads, const std::string& csv_path) {
    anet::PointFileReader reader(path);
    const auto& header = reader.header();
    uint32_t n = level.value_or(header.n);
    uint64_t expected_m = m.value_or(header.m);
    if (expected_m == 0) throw std::invalid_argument("m is zero; pass --m explicitly");
    double limit = threshold ? *threshold : theorem_threshold(header.q, header.d, expected_m);

    anet::VerifyAccumulator acc(header.q, header.d, n, expected_m, threads);
    reader.drain([&](const anet::DigitPoint& pt) { acc.add(pt); });
    anet::VerifyReport report = acc.finalize();

    std::cout << report.to_text() << "threshold=" << format_double(limit) << "\n";
    print_csv_block(anet::VerifyReport::csv_header(), report.to_csv_row(), csv_path);
    return report.eps_obs <= limit ? kExitPass : kExitCheckFailed;
}

int run_check_net(const std::string& path, std::optional<uint32_t> level, std::optional<uint64_t> mu,
                  uint32_t threads, const std::string& csv_path) {
    anet::PointFileReader reader(path);
    const auto& header = reader.header();
    uint32_t dt2 = 2 * header.d * header.t;
    uint32_t n_prime;
    if (level) {
        n_prime = *level;
    } else {
        if (header.n < dt2)
            throw std::invalid_argument("n < 2*d*t; no default net level, pass --level");
        n_prime = header.n - dt2;
    }
    uint64_t expected;
    if (mu) {
        expected = *mu;
    } else {
        expected = header.m;
        for (uint32_t i = 0; i < dt2; ++i) {
            if (expected > UINT64_MAX / header.q) throw std::overflow_error("q^(2dt)*m overflows");
            expected *= header.q;
        }
    }

    anet::VerifyAccumulator acc(header.q, header.d, n_prime, expected, threads);
    reader.drain([&](const anet::DigitPoint& pt) { acc.add(pt); });
    anet::VerifyReport report = acc.finalize();
    bool perfect = report.min_count == expected && report.max_count == expected;

    std::cout << (perfect ? "PASS" : "FAIL") << ": every box of volume q^-" << n_prime
              << (perfect ? " holds exactly " : " should hold ") << expected << " points\n";
    if (!perfect)
        std::cout << "violation: box " << report.worst_box.to_string() << " (counts range "
                  << report.min_count << ".." << report.max_count << ")\n";
    print_csv_block("perfect,level,expected," + anet::VerifyReport::csv_header(),
                    std::string(perfect ? "1" : "0") + "," + std::to_string(n_prime) + "," +
                        std::to_string(expected) + "," + report.to_csv_row(),
                    csv_path);
    return perfect ? kExitPass : kExitCheckFailed;
}

int run_cert(const std::string& path, uint32_t k, std::optional<double> eps,
             const std::string& out_path, const std::string& csv_path) {
    anet::PointFileReader reader(path);
    const auto& header = reader.header();
    double eps_ref;
    if (eps) {
        eps_ref = *eps;
    } else {
        std::string note = header.annotation("eps_obs");
        if (note.empty())
            throw std::invalid_argument("no --eps given and the file carries no verified deviation");
        eps_ref = std::stod(note);
    }

    anet::WindowCollector collector(header.q, header.d, header.n, k);
    reader.drain([&](const anet::DigitPoint& pt) { collector.add(pt); });
    anet::WindowSample window = collector.take();
    anet::GramCertificate cert = anet::gram_matrix(window);
    anet::CertificateCheck check = anet::certificate_check(cert, eps_ref, header.m);

    std::cout << check.summary;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << cert.to_csv();
        std::cout << "entry table written to " << out_path << "\n";
    } else {
        std::cout << cert.to_csv();
    }
    print_csv_block("passed,max_offdiag,bound,rank_estimate,dim,window",
                    std::string(check.passed ? "1" : "0") + "," + format_double(check.max_offdiag) +
                        "," + format_double(check.bound) + "," + std::to_string(check.rank_estimate) +
                        "," + std::to_string(cert.dim()) + "," + std::to_string(cert.selected),
                    csv_path);
    return check.passed ? kExitPass : kExitCheckFailed;
}

int run_irreducibles(uint32_t q, uint32_t t, std::optional<uint64_t> count, const std::string& csv_path) {
    uint64_t available = anet::irreducible_count(q, t);
    uint64_t want = count.value_or(available);
    auto polys = anet::enumerate_irreducibles(q, t, want);
    std::cout << "N(" << q << "," << t << ")=" << available << "\n";
    std::string rows;
    for (size_t i = 0; i < polys.size(); ++i) {
        std::cout << polys[i].to_string() << "\n";
        rows += std::to_string(i) + "," + polys[i].to_string() + "\n";
    }
    std::cout << "CSV:\nindex,poly\n" << rows;
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << "index,poly\n" << rows;
    }
    return kExitPass;
}

// quick property checks bundled into the self-test command
void append_property_items(anet::SelfTestReport& report, const anet::SelfTestParams& p) {
    using anet::Poly;
    anet::CounterRng rng = anet::make_rng(p.seed + 2, anet::RngStream::selftest);
    auto random_poly = [&](uint32_t len) {
        std::vector<uint8_t> c(len);
        for (auto& x : c) x = static_cast<uint8_t>(rng.next_below(p.q));
        return Poly::from_coeffs(p.q, std::move(c));
    };

    {
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            Poly f = random_poly(12), g = random_poly(12), h = random_poly(12);
            ok = (f + g) + h == f + (g + h) && f * (g + h) == f * g + f * h;
        }
        report.items.push_back({"ring-axioms", ok, "200 random triples"});
    }
    {
        bool ok = true;
        int tried = 0;
        for (int i = 0; i < 200; ++i) {
            Poly f = random_poly(16), g = random_poly(8);
            if (g.is_zero()) continue;
            ++tried;
            auto [quo, rem] = anet::poly_divmod(f, g);
            ok = ok && quo * g + rem == f && rem.degree() < g.degree();
        }
        report.items.push_back({"divmod-roundtrip", ok, std::to_string(tried) + " random pairs"});
    }
    {
        anet::IrreducibleBasis basis = anet::IrreducibleBasis::first(p.q, p.t, p.d);
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            Poly f = random_poly(40);
            for (const auto& base : basis.polys)
                ok = ok && anet::expand_base_p(f, base).reconstruct() == f;
        }
        report.items.push_back({"expansion-reconstruction", ok, "100 random polynomials"});
    }
    {
        // distinct digit prefixes for all polynomials below a block count
        const double bits_per_block = p.t * std::log2(static_cast<double>(p.q));
        if (bits_per_block <= 14.0) {
            anet::IrreducibleBasis basis = anet::IrreducibleBasis::first(p.q, p.t, 1);
            uint32_t blocks = 1;
            while ((blocks + 1) * bits_per_block <= 14.0) ++blocks;
            uint32_t len = blocks * p.t;
            uint64_t size = 1;
            for (uint32_t e = 0; e < len; ++e) size *= p.q;
            std::vector<std::string> seen;
            seen.reserve(size);
            for (uint64_t v = 0; v < size; ++v)
                seen.push_back(
                    anet::coordinate_digits(Poly::from_value(p.q, v), basis.polys[0], len).to_string());
            std::sort(seen.begin(), seen.end());
            bool ok = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
            report.items.push_back({"prefix-bijection", ok,
                                    std::to_string(size) + " polynomials, " + std::to_string(len) +
                                        " digits, all prefixes distinct"});
        }
    }
}

int run_selftest(const anet::SelfTestParams& params) {
    anet::SelfTestReport report = anet::structural_selftest(params);
    append_property_items(report, params);
    for (const auto& item : report.items)
        std::cout << (item.passed ? "PASS" : "FAIL") << " " << item.name << " (" << item.detail << ")\n";
    std::cout << "CSV:\nname,passed\n";
    for (const auto& item : report.items) std::cout << item.name << "," << (item.passed ? 1 : 0) << "\n";
    return report.all_passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost-net point sets: generation, exhaustive verification, certificates"};
    app.set_version_flag("--version", anet::kVersion);
    app.require_subcommand(1);

    GenOptions gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a point file");
    cmd_gen->add_option("-q,--base", gen.q, "prime base")->required();
    cmd_gen->add_option("-d,--dim", gen.d, "dimension (>= 2)")->required();
    cmd_gen->add_option("-m,--multiplier", gen.m, "points per box")->required();
    cmd_gen->add_option("-n,--level", gen.n, "box depth: boxes of volume q^-n")->required();
    cmd_gen->add_option("-t,--block", gen.t, "digit block size override");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed (default 1)");
    cmd_gen->add_option("--verified", gen.verified_target,
                        "retry seeds until the verified deviation is at or below this target");
    cmd_gen->add_option("--retries", gen.retries, "attempts for --verified (default 5)");
    cmd_gen->add_option("--perturb", gen.perturb, "append this many seeded random tail digits");
    cmd_gen->add_option("--floats", gen.floats_path, "also write float coordinates as CSV");
    cmd_gen->add_option("--csv", gen.csv_path, "write the summary CSV to a file");
    cmd_gen->add_option("--threads", gen.threads, "verifier threads for --verified");
    cmd_gen->add_option("output", gen.out_path, "output point file")->required();

    std::string in_path;
    std::optional<uint32_t> level;
    std::optional<uint64_t> m_override;
    std::optional<double> threshold;
    std::string csv_path;
    uint32_t threads = threads_from_env();
    auto* cmd_verify = app.add_subcommand("verify", "exhaustively measure the worst-box deviation");
    cmd_verify->add_option("input", in_path, "point file")->required();
    cmd_verify->add_option("--level", level, "verification depth n (default: header n)");
    cmd_verify->add_option("--m", m_override, "expected per-box count (default: header m)");
    cmd_verify->add_option("--threshold", threshold,
                           "pass bound on eps (default: 10*sqrt(d*ln(d*q)/m))");
    cmd_verify->add_option("--threads", threads, "worker threads (default: ANET_THREADS or 1)");
    cmd_verify->add_option("--csv", csv_path, "write the report CSV to a file");

    std::string net_path;
    std::optional<uint32_t> net_level;
    std::optional<uint64_t> net_mu;
    std::string net_csv;
    uint32_t net_threads = threads_from_env();
    auto* cmd_check = app.add_subcommand("check-net", "exact equidistribution check");
    cmd_check->add_option("input", net_path, "point file")->required();
    cmd_check->add_option("--level", net_level, "depth n' (default: n - 2*d*t)");
    cmd_check->add_option("--mu", net_mu, "expected exact count (default: q^(2dt)*m)");
    cmd_check->add_option("--threads", net_threads, "worker threads");
    cmd_check->add_option("--csv", net_csv, "write the report CSV to a file");

    std::string cert_path;
    uint32_t cert_k = 1;
    std::optional<double> cert_eps;
    std::string cert_out;
    std::string cert_csv;
    auto* cmd_cert = app.add_subcommand("cert", "Gram-matrix certificate for a point file");
    cmd_cert->add_option("input", cert_path, "point file")->required();
    cmd_cert->add_option("-k", cert_k, "window exponent, 1 <= k <= d/2 (default 1)");
    cmd_cert->add_option("--eps", cert_eps, "reference deviation (default: header eps_obs)");
    cmd_cert->add_option("--out", cert_out, "write the entry table CSV here instead of stdout");
    cmd_cert->add_option("--csv", cert_csv, "write the summary CSV to a file");

    uint32_t irr_q = 2, irr_t = 1;
    std::optional<uint64_t> irr_count;
    std::string irr_csv;
    auto* cmd_irr = app.add_subcommand("irreducibles", "list monic irreducible polynomials");
    cmd_irr->add_option("-q,--base", irr_q, "prime base")->required();
    cmd_irr->add_option("-t,--degree", irr_t, "degree")->required();
    cmd_irr->add_option("--count", irr_count, "how many (default: all)");
    cmd_irr->add_option("--csv", irr_csv, "write the listing CSV to a file");

    anet::SelfTestParams st;
    st.q = 2;
    st.d = 1;
    std::optional<uint32_t> st_t;
    auto* cmd_selftest = app.add_subcommand("selftest", "structural and property self-tests");
    cmd_selftest->add_option("-q,--base", st.q, "prime base")->required();
    cmd_selftest->add_option("-d,--dim", st.d, "dimension (>= 1)")->required();
    cmd_selftest->add_option("-t,--block", st_t, "digit block size (default: derived)");
    cmd_selftest->add_option("-n,--level", st.n, "box depth (requires n >= 3*d*t)")->required();
    cmd_selftest->add_option("--seed", st.seed, "RNG seed");
    cmd_selftest->add_option("--trials", st.trials, "randomized trials per item (default 1000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_gen) return run_gen(gen);
        if (*cmd_verify) return run_verify(in_path, level, m_override, threshold, threads, csv_path);
        if (*cmd_check) return run_check_net(net_path, net_level, net_mu, net_threads, net_csv);
        if (*cmd_cert) return run_cert(cert_path, cert_k, cert_eps, cert_out, cert_csv);
        if (*cmd_irr) return run_irreducibles(irr_q, irr_t, irr_count, irr_csv);
        if (*cmd_selftest) {
            if (st_t) {
                st.t = *st_t;
            } else {
                uint64_t need = static_cast<uint64_t>(st.d) * st.d;
                uint32_t s = 0;
                uint64_t power = 1;
                while (power < need) {
                    power *= st.q;
                    ++s;
                }
                st.t = s + 2;
            }
            return run_selftest(st);
        }
    } catch (const anet::RetriesExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
