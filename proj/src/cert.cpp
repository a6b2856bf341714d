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

#include "almostnet/cert.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace anet {
namespace {

std::vector<std::vector<uint32_t>> k_subsets(uint32_t d, uint32_t k) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> current(k);
    for (uint32_t i = 0; i < k; ++i) current[i] = i;
    while (true) {
        out.push_back(current);
        // advance to the lexicographic successor
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && current[pos] == d - k + pos) --pos;
        if (pos < 0) break;
        ++current[pos];
        for (uint32_t i = pos + 1; i < k; ++i) current[i] = current[i - 1] + 1;
    }
    return out;
}

double binomial(uint32_t n, uint32_t k) {
    double v = 1.0;
    for (uint32_t i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

}  // namespace

WindowCollector::WindowCollector(uint32_t q, uint32_t d, uint32_t n, uint32_t k) {
    require_prime_base(q);
    if (k < 1 || 2 * k > d) throw std::invalid_argument("window exponent k must satisfy 1 <= k <= d/2");
    if (n < 2 * k) throw std::invalid_argument("window needs n >= 2k");
    sample_.q = q;
    sample_.d = d;
    sample_.n = n;
    sample_.k = k;
    zero_prefix_ = n - 2 * k;
}

void WindowCollector::add(const DigitPoint& pt) {
    if (pt.q != sample_.q || pt.dimension != sample_.d)
        throw std::invalid_argument("point does not match the window collector");
    if (pt.digits_per_coord < zero_prefix_ + 1)
        throw std::invalid_argument("point carries too few digits for the window");
    auto first = pt.coord(0);
    for (uint32_t j = 0; j < zero_prefix_; ++j)
        if (first[j] != 0) return;
    sample_.features.push_back(first[zero_prefix_]);
    for (uint32_t i = 1; i < sample_.d; ++i) sample_.features.push_back(pt.digit(i, 0));
    ++sample_.selected;
}

WindowSample extract_window(const std::vector<DigitPoint>& points, uint32_t q, uint32_t d,
                            uint32_t n, uint32_t k) {
    WindowCollector collector(q, d, n, k);
    for (const auto& pt : points) collector.add(pt);
    return collector.take();
}

std::vector<uint64_t> pair_residue_counts(const WindowSample& window,
                                          const std::vector<uint32_t>& row_subset,
                                          const std::vector<uint32_t>& col_subset) {
    const uint32_t q = window.q;
    std::vector<uint64_t> counts(q, 0);
    for (uint64_t r = 0; r < window.selected; ++r) {
        const uint8_t* features = window.row(r);
        uint32_t sum = 0;
        for (uint32_t j : row_subset) sum += features[j];
        uint32_t neg = 0;
        for (uint32_t j : col_subset) neg += features[j];
        ++counts[(sum % q + q - neg % q) % q];
    }
    return counts;
}

GramCertificate gram_matrix(const WindowSample& window) {
    if (window.selected == 0) throw std::invalid_argument("empty window; no points to certify");
    const uint32_t q = window.q;
    GramCertificate cert;
    cert.q = q;
    cert.d = window.d;
    cert.k = window.k;
    cert.selected = window.selected;
    cert.subsets = k_subsets(window.d, window.k);
    const uint32_t dim = cert.dim();
    cert.entries.assign(static_cast<size_t>(dim) * dim, {0.0, 0.0});

    // feature sums per subset, mod q
    std::vector<uint8_t> sums(static_cast<size_t>(dim) * window.selected);
    for (uint32_t s = 0; s < dim; ++s) {
        uint8_t* out = sums.data() + static_cast<size_t>(s) * window.selected;
        for (uint64_t r = 0; r < window.selected; ++r) {
            uint32_t acc = 0;
            const uint8_t* features = window.row(r);
            for (uint32_t j : cert.subsets[s]) acc += features[j];
            out[r] = static_cast<uint8_t>(acc % q);
        }
    }

    std::vector<std::complex<double>> roots(q);
    for (uint32_t tau = 0; tau < q; ++tau)
        roots[tau] = std::polar(1.0, 2.0 * std::numbers::pi * tau / q);

    const double inv = 1.0 / static_cast<double>(window.selected);
    for (uint32_t a = 0; a < dim; ++a) {
        cert.entries[static_cast<size_t>(a) * dim + a] = {1.0, 0.0};
        const uint8_t* row_a = sums.data() + static_cast<size_t>(a) * window.selected;
        for (uint32_t b = a + 1; b < dim; ++b) {
            const uint8_t* row_b = sums.data() + static_cast<size_t>(b) * window.selected;
            std::vector<uint64_t> counts(q, 0);
            for (uint64_t r = 0; r < window.selected; ++r)
                ++counts[(row_a[r] + q - row_b[r]) % q];
            std::complex<double> entry{0.0, 0.0};
            for (uint32_t tau = 0; tau < q; ++tau)
                entry += static_cast<double>(counts[tau]) * roots[tau];
            entry *= inv;
            cert.entries[static_cast<size_t>(a) * dim + b] = entry;
            cert.entries[static_cast<size_t>(b) * dim + a] = std::conj(entry);
            cert.max_offdiag = std::max(cert.max_offdiag, std::abs(entry));
        }
    }

    // rank of the real part (a Hermitian matrix averaged with its
    // conjugate), estimated by thresholding eigenvalues at 1e-6
    Eigen::MatrixXd real_part(dim, dim);
    for (uint32_t a = 0; a < dim; ++a)
        for (uint32_t b = 0; b < dim; ++b)
            real_part(a, b) = cert.entries[static_cast<size_t>(a) * dim + b].real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_part, Eigen::EigenvaluesOnly);
    cert.rank_estimate = static_cast<int>((solver.eigenvalues().array() > 1e-6).count());
    return cert;
}

std::string GramCertificate::to_csv() const {
    std::ostringstream os;
    os << "row,col,re,im,modulus\n";
    os.precision(17);
    for (uint32_t a = 0; a < dim(); ++a)
        for (uint32_t b = 0; b < dim(); ++b) {
            const auto& e = at(a, b);
            os << a << ',' << b << ',' << e.real() << ',' << e.imag() << ',' << std::abs(e) << "\n";
        }
    return os.str();
}

CertificateCheck certificate_check(const GramCertificate& cert, double eps, uint64_t m) {
    CertificateCheck check;
    check.max_offdiag = cert.max_offdiag;
    check.bound = 2.0 * eps + 1e-9;
    check.passed = cert.max_offdiag <= check.bound;
    check.rank_estimate = cert.rank_estimate;
    double window_scale = 1.0;
    for (uint32_t i = 0; i < 2 * cert.k; ++i) window_scale *= cert.q;
    check.implied_m_floor = std::floor(cert.rank_estimate / (2.0 * window_scale));
    check.precondition_2eps = 2.0 * eps >= 1.0 / std::sqrt(binomial(cert.d, cert.k));

    std::ostringstream os;
    os << (check.passed ? "PASS" : "FAIL") << ": max off-diagonal modulus " << check.max_offdiag
       << " vs bound " << check.bound << "\n";
    os << "rank estimate " << check.rank_estimate << " of " << cert.dim();
    if (m > 0)
        os << "; implied floor(rank/(2q^2k)) = " << check.implied_m_floor << " <= (1+eps)m = "
           << (1.0 + eps) * static_cast<double>(m)
           << (check.implied_m_floor <= (1.0 + eps) * static_cast<double>(m) ? " (consistent)"
                                                                             : " (INCONSISTENT)");
    os << "\n";
    os << "window size " << cert.selected << "; 2eps >= C(d,k)^(-1/2) "
       << (check.precondition_2eps ? "holds" : "does not hold (reported only)") << "\n";
    check.summary = os.str();
    return check;
}

}  // namespace anet
