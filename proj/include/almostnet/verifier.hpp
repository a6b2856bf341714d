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

#ifndef ALMOSTNET_VERIFIER_HPP
#define ALMOSTNET_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "almostnet/boxes.hpp"
#include "almostnet/generator.hpp"
#include "almostnet/radix.hpp"

namespace anet {

/// Result of the exhaustive count over every basic box of volume q^-n.
/// eps_obs = max(|min_count/m - 1|, |max_count/m - 1|), and
/// boxes_checked = (number of compositions of n into d parts) * q^n.
struct VerifyReport {
    double eps_obs = 0.0;
    uint64_t min_count = 0;
    uint64_t max_count = 0;
    BasicBox worst_box;
    uint64_t boxes_checked = 0;
    uint64_t compositions_checked = 0;
    bool empty_box_seen = false;

    // context echoed for serialization
    uint32_t q = 0;
    uint32_t d = 0;
    uint32_t n = 0;
    uint64_t m = 0;

    /// Flat key=value block, one field per line.
    std::string to_text() const;
    /// Header and one row, fields in declaration order.
    static std::string csv_header();
    std::string to_csv_row() const;

    bool same_counts(const VerifyReport& rhs) const {
        return eps_obs == rhs.eps_obs && min_count == rhs.min_count && max_count == rhs.max_count &&
               worst_box == rhs.worst_box && boxes_checked == rhs.boxes_checked &&
               compositions_checked == rhs.compositions_checked && empty_box_seen == rhs.empty_box_seen;
    }
};

/// All compositions of n into d nonnegative parts, lexicographically
/// increasing as vectors.
std::vector<std::vector<uint32_t>> compositions(uint32_t n, uint32_t d);

/// Streaming exhaustive counter. Feed every point, then finalize once.
/// Counting is exact 64-bit integer bucketing per composition; a
/// multithreaded run produces bit-identical reports because bucket
/// updates commute.
class VerifyAccumulator {
  public:
    /// m is the expected per-box count; the total stream must hold
    /// m * q^n points. threads > 1 spreads compositions over workers.
    VerifyAccumulator(uint32_t q, uint32_t d, uint32_t n, uint64_t m, uint32_t threads = 1);
    ~VerifyAccumulator();

    VerifyAccumulator(const VerifyAccumulator&) = delete;
    VerifyAccumulator& operator=(const VerifyAccumulator&) = delete;

    void add(const DigitPoint& pt);
    VerifyReport finalize();

    /// Sink adapter for generate().
    PointSink sink() {
        return [this](const DigitPoint& pt) { add(pt); };
    }

  private:
    void flush();

    uint32_t q_, d_, n_;
    uint64_t m_;
    uint32_t threads_;
    uint64_t q_pow_n_ = 1;
    uint64_t seen_ = 0;
    std::vector<std::vector<uint32_t>> comps_;
    std::vector<std::vector<uint64_t>> divisors_;     // per comp, per coord: q^(n-k_i)
    std::vector<std::vector<uint64_t>> multipliers_;  // per comp, per coord: q^(k_i)
    std::vector<std::vector<uint64_t>> counts_;       // per comp, q^n cells
    std::vector<uint64_t> digit_weight_;              // q^(n-1-j) for packing
    std::vector<uint64_t> chunk_;                     // packed coords, d per point
    size_t chunk_capacity_;
};

/// One-call wrappers.
VerifyReport epsilon_observed(const std::vector<DigitPoint>& points, uint32_t q, uint32_t d,
                              uint32_t n, uint64_t m, uint32_t threads = 1);
VerifyReport epsilon_observed_from_params(const NetParams& params, uint32_t threads = 1);

/// Exact equidistribution check: true iff every basic box of volume
/// q^-level holds exactly expected points. On failure, `witness` is the
/// first offending box in scan order and `witness_count` its count.
struct PerfectNetResult {
    bool perfect = false;
    BasicBox witness;
    uint64_t witness_count = 0;
    VerifyReport report;
};
PerfectNetResult perfect_net_check(const std::vector<DigitPoint>& points, uint32_t q, uint32_t d,
                                   uint32_t level, uint64_t expected, uint32_t threads = 1);

/// Parameters for the structural self-test; unlike NetParams this
/// allows d = 1 (the self-test is meaningful there).
struct SelfTestParams {
    uint32_t q = 0;
    uint32_t d = 0;
    uint32_t t = 0;
    uint32_t n = 0;
    uint64_t seed = 0;
    uint32_t trials = 1000;
};

struct SelfTestItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfTestReport {
    std::vector<SelfTestItem> items;
    bool all_passed() const {
        for (const auto& item : items)
            if (!item.passed) return false;
        return true;
    }
};

/// Structural checks of the construction itself:
///  (a) the degree-(n+dt) grid puts exactly q^dt points in every basic
///      box of volume q^-n (exhaustive; guarded by q^(n+dt) <= 2^22);
///  (b) membership transfer between a coset structure and its
///      high-coefficient truncation on random translate classes;
///  (c) digit membership against residue membership for random (f, box).
/// Requires n >= 3*d*t.
SelfTestReport structural_selftest(const SelfTestParams& params);

/// Measured deviation of the constructed net next to an i.i.d.-uniform
/// multiset of the same size, same verifier. Informational.
struct BaselineComparison {
    double eps_net = 0.0;
    double eps_iid = 0.0;
    double ratio() const { return eps_iid > 0 ? eps_net / eps_iid : 0.0; }
};
BaselineComparison baseline_compare(const NetParams& params, uint32_t threads = 1);

}  // namespace anet

#endif
