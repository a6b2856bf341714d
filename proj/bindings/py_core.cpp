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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "almostnet/cert.hpp"
#include "almostnet/generator.hpp"
#include "almostnet/point_file.hpp"
#include "almostnet/verifier.hpp"
#include "almostnet/version.hpp"

namespace py = pybind11;
using namespace anet;

namespace {

NetParams make_params(uint32_t q, uint32_t d, uint64_t m, uint32_t n,
                      std::optional<uint32_t> t, uint64_t seed) {
    return derive_params(q, d, m, n, t, seed);
}

std::vector<std::vector<std::string>> py_generate_digit_points(const NetParams& params) {
    if (params.point_count() > (1ULL << 22))
        throw std::invalid_argument("too many points to materialize; write a file instead");
    std::vector<std::vector<std::string>> out;
    out.reserve(params.point_count());
    generate(params, [&](const DigitPoint& pt) {
        std::vector<std::string> coords;
        coords.reserve(pt.dimension);
        for (uint32_t i = 0; i < pt.dimension; ++i) coords.push_back(pt.coord_string(i).to_string());
        out.push_back(std::move(coords));
    });
    return out;
}

py::array_t<double> py_generate_float_points(const NetParams& params) {
    if (params.point_count() > (1ULL << 24))
        throw std::invalid_argument("too many points to materialize; write a file instead");
    const auto rows = static_cast<py::ssize_t>(params.point_count());
    const auto cols = static_cast<py::ssize_t>(params.d);
    py::array_t<double> out({rows, cols});
    auto view = out.mutable_unchecked<2>();
    py::ssize_t r = 0;
    generate(params, [&](const DigitPoint& pt) {
        for (uint32_t i = 0; i < pt.dimension; ++i) view(r, i) = to_float(pt.coord_string(i));
        ++r;
    });
    return out;
}

VerifyReport py_verify_params(const NetParams& params, uint32_t threads) {
    return epsilon_observed_from_params(params, threads);
}

VerifyReport py_verify_file(const std::string& path, std::optional<uint32_t> level,
                            std::optional<uint64_t> m, uint32_t threads) {
    PointFileReader reader(path);
    const auto& header = reader.header();
    VerifyAccumulator acc(header.q, header.d, level.value_or(header.n), m.value_or(header.m), threads);
    reader.drain([&](const DigitPoint& pt) { acc.add(pt); });
    return acc.finalize();
}

py::tuple py_generate_verified(const NetParams& params, double target_eps, uint32_t max_retries,
                               uint32_t threads) {
    VerifiedNet vn = generate_verified(params, target_eps, max_retries, threads);
    return py::make_tuple(vn.params, vn.eps_obs, vn.retries);
}

void py_write_point_file(const NetParams& params, const std::string& path, uint32_t perturb,
                         std::optional<double> eps_obs) {
    PointFileHeader header;
    header.q = params.q;
    header.d = params.d;
    header.digit_count = params.digits_per_coord() + perturb;
    header.point_count = params.point_count();
    header.m = params.m;
    header.n = params.n;
    header.t = params.t;
    header.seed = params.seed;
    header.digits_mode = params.q <= 10 ? "chars" : "csv";
    header.version = kVersion;
    if (eps_obs) {
        std::ostringstream os;
        os.precision(12);
        os << *eps_obs;
        header.annotations.emplace_back("eps_obs", os.str());
    }
    if (perturb) header.annotations.emplace_back("perturb", std::to_string(perturb));
    PointFileWriter writer(path, header);
    generate(params, [&](const DigitPoint& pt) { writer.write(pt); }, perturb);
    writer.close();
}

py::tuple py_perfect_net_check_file(const std::string& path, std::optional<uint32_t> level,
                                    std::optional<uint64_t> expected, uint32_t threads) {
    PointFileReader reader(path);
    const auto& header = reader.header();
    uint32_t n_prime;
    if (level) {
        n_prime = *level;
    } else {
        uint32_t dt2 = 2 * header.d * header.t;
        if (header.n < dt2) throw std::invalid_argument("n < 2*d*t; pass level explicitly");
        n_prime = header.n - dt2;
    }
    uint64_t mu;
    if (expected) {
        mu = *expected;
    } else {
        mu = header.m;
        for (uint32_t i = 0; i < 2 * header.d * header.t; ++i) mu *= header.q;
    }
    VerifyAccumulator acc(header.q, header.d, n_prime, mu, threads);
    reader.drain([&](const DigitPoint& pt) { acc.add(pt); });
    VerifyReport report = acc.finalize();
    bool perfect = report.min_count == mu && report.max_count == mu;
    return py::make_tuple(perfect, report);
}

py::tuple py_certificate_file(const std::string& path, uint32_t k, std::optional<double> eps) {
    PointFileReader reader(path);
    const auto& header = reader.header();
    double eps_ref = 0.0;
    if (eps) {
        eps_ref = *eps;
    } else {
        std::string note = header.annotation("eps_obs");
        if (note.empty()) throw std::invalid_argument("no eps given and none recorded in the file");
        eps_ref = std::stod(note);
    }
    WindowCollector collector(header.q, header.d, header.n, k);
    reader.drain([&](const DigitPoint& pt) { collector.add(pt); });
    GramCertificate cert = gram_matrix(collector.take());
    CertificateCheck check = certificate_check(cert, eps_ref, header.m);
    return py::make_tuple(cert, check);
}

std::vector<std::string> py_enumerate_irreducibles(uint32_t q, uint32_t t, uint64_t count) {
    std::vector<std::string> out;
    for (const auto& p : enumerate_irreducibles(q, t, count)) out.push_back(p.to_string());
    return out;
}

std::vector<py::tuple> py_selftest(uint32_t q, uint32_t d, uint32_t t, uint32_t n, uint64_t seed,
                                   uint32_t trials) {
    SelfTestParams params{q, d, t, n, seed, trials};
    std::vector<py::tuple> out;
    for (const auto& item : structural_selftest(params).items)
        out.push_back(py::make_tuple(item.name, item.passed, item.detail));
    return out;
}

py::array_t<std::complex<double>> cert_matrix(const GramCertificate& cert) {
    const auto dim = static_cast<py::ssize_t>(cert.dim());
    py::array_t<std::complex<double>> out({dim, dim});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t a = 0; a < dim; ++a)
        for (py::ssize_t b = 0; b < dim; ++b)
            view(a, b) = cert.at(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Almost-net point sets: seeded generation, exhaustive box-count verification, "
              "and Gram-matrix certificates.";
    m.attr("__version__") = kVersion;

    py::class_<NetParams>(m, "NetParams")
        .def_readonly("q", &NetParams::q)
        .def_readonly("d", &NetParams::d)
        .def_readonly("m", &NetParams::m)
        .def_readonly("n", &NetParams::n)
        .def_readonly("t", &NetParams::t)
        .def_readonly("seed", &NetParams::seed)
        .def_readonly("t_overridden", &NetParams::t_overridden)
        .def_readonly("below_guaranteed_m", &NetParams::below_guaranteed_m)
        .def_property_readonly("point_count", &NetParams::point_count)
        .def_property_readonly("translate_count", &NetParams::translate_count)
        .def_property_readonly("digits_per_coord", &NetParams::digits_per_coord)
        .def_property_readonly("eps_guarantee", &NetParams::eps_guarantee)
        .def_property_readonly("eps_internal", &NetParams::eps_internal)
        .def("__repr__", [](const NetParams& p) {
            return "NetParams(q=" + std::to_string(p.q) + ", d=" + std::to_string(p.d) +
                   ", m=" + std::to_string(p.m) + ", n=" + std::to_string(p.n) +
                   ", t=" + std::to_string(p.t) + ", seed=" + std::to_string(p.seed) + ")";
        });

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("eps_obs", &VerifyReport::eps_obs)
        .def_readonly("min_count", &VerifyReport::min_count)
        .def_readonly("max_count", &VerifyReport::max_count)
        .def_readonly("boxes_checked", &VerifyReport::boxes_checked)
        .def_readonly("compositions_checked", &VerifyReport::compositions_checked)
        .def_readonly("empty_box_seen", &VerifyReport::empty_box_seen)
        .def_property_readonly("worst_box", [](const VerifyReport& r) { return r.worst_box.to_string(); })
        .def("to_text", &VerifyReport::to_text)
        .def("to_csv_row", &VerifyReport::to_csv_row)
        .def_static("csv_header", &VerifyReport::csv_header)
        .def("__repr__", [](const VerifyReport& r) {
            return "VerifyReport(eps_obs=" + std::to_string(r.eps_obs) + ", boxes_checked=" +
                   std::to_string(r.boxes_checked) + ")";
        });

    py::class_<GramCertificate>(m, "GramCertificate")
        .def_readonly("q", &GramCertificate::q)
        .def_readonly("d", &GramCertificate::d)
        .def_readonly("k", &GramCertificate::k)
        .def_readonly("selected", &GramCertificate::selected)
        .def_readonly("max_offdiag", &GramCertificate::max_offdiag)
        .def_readonly("rank_estimate", &GramCertificate::rank_estimate)
        .def_property_readonly("matrix", &cert_matrix)
        .def("to_csv", &GramCertificate::to_csv);

    py::class_<CertificateCheck>(m, "CertificateCheck")
        .def_readonly("passed", &CertificateCheck::passed)
        .def_readonly("max_offdiag", &CertificateCheck::max_offdiag)
        .def_readonly("bound", &CertificateCheck::bound)
        .def_readonly("rank_estimate", &CertificateCheck::rank_estimate)
        .def_readonly("summary", &CertificateCheck::summary);

    m.def("derive_params", &make_params, py::arg("q"), py::arg("d"), py::arg("m"), py::arg("n"),
          py::arg("t") = std::nullopt, py::arg("seed") = 1,
          "Validate and complete construction parameters.");
    m.def("irreducible_count", &irreducible_count, py::arg("q"), py::arg("t"));
    m.def("enumerate_irreducibles", &py_enumerate_irreducibles, py::arg("q"), py::arg("t"),
          py::arg("count"));
    m.def("generate_digit_points", &py_generate_digit_points, py::arg("params"),
          "All points as exact digit strings (small runs only).");
    m.def("generate_float_points", &py_generate_float_points, py::arg("params"),
          "All points as an (N, d) float64 array.");
    m.def("verify", &py_verify_params, py::arg("params"), py::arg("threads") = 1,
          "Generate and exhaustively verify; returns the deviation report.");
    m.def("verify_file", &py_verify_file, py::arg("path"), py::arg("level") = std::nullopt,
          py::arg("m") = std::nullopt, py::arg("threads") = 1);
    m.def("generate_verified", &py_generate_verified, py::arg("params"), py::arg("target_eps"),
          py::arg("max_retries") = 5, py::arg("threads") = 1,
          "Retry seeds until the verified deviation meets the target; returns "
          "(params, eps_obs, retries).");
    m.def("write_point_file", &py_write_point_file, py::arg("params"), py::arg("path"),
          py::arg("perturb") = 0, py::arg("eps_obs") = std::nullopt);
    m.def("perfect_net_check_file", &py_perfect_net_check_file, py::arg("path"),
          py::arg("level") = std::nullopt, py::arg("expected") = std::nullopt,
          py::arg("threads") = 1, "Returns (perfect, report).");
    m.def("certificate_file", &py_certificate_file, py::arg("path"), py::arg("k") = 1,
          py::arg("eps") = std::nullopt, "Returns (certificate, check).");
    m.def("structural_selftest", &py_selftest, py::arg("q"), py::arg("d"), py::arg("t"),
          py::arg("n"), py::arg("seed") = 1, py::arg("trials") = 1000,
          "Returns a list of (name, passed, detail) items.");
    m.def("to_float", [](const std::string& digits, uint32_t q) {
        return to_float(DigitString::parse(q, digits));
    }, py::arg("digits"), py::arg("q"));
}
