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

#ifndef ALMOSTNET_CERT_HPP
#define ALMOSTNET_CERT_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "almostnet/radix.hpp"

namespace anet {

/// Digit features of the points falling in the thin window
/// [0, q^-(n-2k)) x [0,1)^(d-1): for each such point, feature 0 is the
/// first digit of coordinate 0 after the forced zeros, and feature i
/// (i >= 1) is the leading digit of coordinate i.
struct WindowSample {
    uint32_t q = 0;
    uint32_t d = 0;
    uint32_t n = 0;
    uint32_t k = 0;
    uint64_t selected = 0;           // number of window points
    std::vector<uint8_t> features;   // selected x d, row-major

    const uint8_t* row(uint64_t i) const { return features.data() + i * d; }
};

/// Streaming window collector; feed every point of the set.
class WindowCollector {
  public:
    WindowCollector(uint32_t q, uint32_t d, uint32_t n, uint32_t k);
    void add(const DigitPoint& pt);
    WindowSample take() { return std::move(sample_); }

  private:
    WindowSample sample_;
    uint32_t zero_prefix_;  // n - 2k forced zero digits on coordinate 0
};

WindowSample extract_window(const std::vector<DigitPoint>& points, uint32_t q, uint32_t d,
                            uint32_t n, uint32_t k);

/// The normalized Hermitian Gram matrix of the window's character
/// vectors. Rows and columns are indexed by the k-element subsets of
/// the coordinate set in lexicographic order; every entry is assembled
/// from exact integer residue counts, so only q complex terms are ever
/// rounded. The diagonal is exactly 1.
struct GramCertificate {
    uint32_t q = 0;
    uint32_t d = 0;
    uint32_t k = 0;
    uint64_t selected = 0;
    std::vector<std::vector<uint32_t>> subsets;    // row index -> coordinate subset
    std::vector<std::complex<double>> entries;     // dim x dim, row-major
    double max_offdiag = 0.0;
    int rank_estimate = 0;                         // eigenvalues of Re(A) above 1e-6

    uint32_t dim() const { return static_cast<uint32_t>(subsets.size()); }
    const std::complex<double>& at(uint32_t r, uint32_t c) const { return entries[r * dim() + c]; }

    /// CSV: one row per entry pair (row, col, re, im, modulus).
    std::string to_csv() const;
};

GramCertificate gram_matrix(const WindowSample& window);

/// Exact residue counts behind one entry: result[tau] counts the window
/// points whose feature sums over the two subsets differ by tau mod q.
/// Exposed so the Hermitian symmetry can be checked bit-exactly.
std::vector<uint64_t> pair_residue_counts(const WindowSample& window,
                                          const std::vector<uint32_t>& row_subset,
                                          const std::vector<uint32_t>& col_subset);

/// Pass/fail against a deviation bound, plus informational context.
struct CertificateCheck {
    bool passed = false;
    double max_offdiag = 0.0;
    double bound = 0.0;            // 2*eps + 1e-9
    int rank_estimate = 0;
    double implied_m_floor = 0.0;  // rank / (2 q^{2k})
    bool precondition_2eps = false;  // 2*eps >= C(d,k)^(-1/2), reported only
    std::string summary;
};
CertificateCheck certificate_check(const GramCertificate& cert, double eps, uint64_t m = 0);

}  // namespace anet

#endif
