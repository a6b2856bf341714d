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

#include "almostnet/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace anet {
namespace {

uint64_t pow_u64(uint32_t q, uint32_t e) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= q;
    return v;
}

void gather_compositions(uint32_t remaining, uint32_t parts, std::vector<uint32_t>& prefix,
                         std::vector<std::vector<uint32_t>>& out) {
    if (parts == 1) {
        prefix.push_back(remaining);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (uint32_t first = 0; first <= remaining; ++first) {
        prefix.push_back(first);
        gather_compositions(remaining - first, parts - 1, prefix, out);
        prefix.pop_back();
    }
}

BasicBox decode_box(uint32_t q, const std::vector<uint32_t>& parts, uint64_t key) {
    BasicBox box;
    box.q = q;
    box.prefixes.resize(parts.size());
    for (size_t i = parts.size(); i-- > 0;) {
        uint64_t cells = pow_u64(q, parts[i]);
        uint64_t value = key % cells;
        key /= cells;
        std::vector<uint8_t>& prefix = box.prefixes[i];
        prefix.assign(parts[i], 0);
        for (size_t j = parts[i]; j-- > 0;) {
            prefix[j] = static_cast<uint8_t>(value % q);
            value /= q;
        }
    }
    return box;
}

}  // namespace

std::vector<std::vector<uint32_t>> compositions(uint32_t n, uint32_t d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> prefix;
    gather_compositions(n, d, prefix, out);
    return out;
}

std::string VerifyReport::to_text() const {
    std::ostringstream os;
    os << "eps_obs=" << eps_obs << "\n"
       << "min_count=" << min_count << "\n"
       << "max_count=" << max_count << "\n"
       << "worst_box=" << worst_box.to_string() << "\n"
       << "boxes_checked=" << boxes_checked << "\n"
       << "compositions_checked=" << compositions_checked << "\n"
       << "empty_box_seen=" << (empty_box_seen ? 1 : 0) << "\n";
    return os.str();
}

std::string VerifyReport::csv_header() {
    return "eps_obs,min_count,max_count,worst_box,boxes_checked,compositions_checked,empty_box_seen";
}

std::string VerifyReport::to_csv_row() const {
    std::ostringstream os;
    os << eps_obs << ',' << min_count << ',' << max_count << ',' << worst_box.to_string() << ','
       << boxes_checked << ',' << compositions_checked << ',' << (empty_box_seen ? 1 : 0);
    return os.str();
}

VerifyAccumulator::VerifyAccumulator(uint32_t q, uint32_t d, uint32_t n, uint64_t m, uint32_t threads)
    : q_(q), d_(d), n_(n), m_(m), threads_(std::max<uint32_t>(threads, 1)) {
    require_prime_base(q);
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (n > 0 && std::log2(static_cast<double>(q)) * n > 40)
        throw std::overflow_error("q^n too large for exhaustive verification");
    q_pow_n_ = pow_u64(q, n);
    comps_ = compositions(n, d);
    const double cells = static_cast<double>(comps_.size()) * static_cast<double>(q_pow_n_);
    if (cells * 8 > 2.0e9)
        throw std::overflow_error("exhaustive verification would need more than 2 GB of counters");

    divisors_.resize(comps_.size());
    multipliers_.resize(comps_.size());
    counts_.resize(comps_.size());
    for (size_t c = 0; c < comps_.size(); ++c) {
        divisors_[c].resize(d_);
        multipliers_[c].resize(d_);
        for (uint32_t i = 0; i < d_; ++i) {
            divisors_[c][i] = pow_u64(q_, n_ - comps_[c][i]);
            multipliers_[c][i] = pow_u64(q_, comps_[c][i]);
        }
        counts_[c].assign(q_pow_n_, 0);
    }
    digit_weight_.resize(n_ ? n_ : 1);
    for (uint32_t j = 0; j < n_; ++j) digit_weight_[j] = pow_u64(q_, n_ - 1 - j);
    chunk_capacity_ = 1 << 16;
    chunk_.reserve(chunk_capacity_ * d_);
}

VerifyAccumulator::~VerifyAccumulator() = default;

void VerifyAccumulator::add(const DigitPoint& pt) {
    if (pt.q != q_) throw std::invalid_argument("point base does not match the verifier");
    if (pt.dimension != d_) throw std::invalid_argument("point dimension does not match the verifier");
    if (pt.digits_per_coord < n_)
        throw std::invalid_argument("point carries fewer digits than the verification depth");
    for (uint32_t i = 0; i < d_; ++i) {
        const uint8_t* digits = pt.digits.data() + static_cast<size_t>(i) * pt.digits_per_coord;
        uint64_t value = 0;
        for (uint32_t j = 0; j < n_; ++j) value += digit_weight_[j] * digits[j];
        chunk_.push_back(value);
    }
    ++seen_;
    if (chunk_.size() >= chunk_capacity_ * d_) flush();
}

void VerifyAccumulator::flush() {
    if (chunk_.empty()) return;
    const size_t rows = chunk_.size() / d_;
    auto process = [&](size_t comp_begin, size_t comp_end) {
        for (size_t c = comp_begin; c < comp_end; ++c) {
            const uint64_t* div = divisors_[c].data();
            const uint64_t* mul = multipliers_[c].data();
            uint64_t* counts = counts_[c].data();
            const uint64_t* row = chunk_.data();
            for (size_t r = 0; r < rows; ++r, row += d_) {
                uint64_t key = 0;
                for (uint32_t i = 0; i < d_; ++i) key = key * mul[i] + row[i] / div[i];
                ++counts[key];
            }
        }
    };
    const uint32_t workers = std::min<uint32_t>(threads_, static_cast<uint32_t>(comps_.size()));
    if (workers <= 1) {
        process(0, comps_.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const size_t per = (comps_.size() + workers - 1) / workers;
        for (uint32_t w = 0; w < workers; ++w) {
            size_t begin = w * per;
            size_t end = std::min(comps_.size(), begin + per);
            if (begin >= end) break;
            pool.emplace_back(process, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    chunk_.clear();
}

VerifyReport VerifyAccumulator::finalize() {
    flush();
    const uint64_t expected = m_ * q_pow_n_;
    if (seen_ != expected)
        throw std::invalid_argument("point count mismatch: saw " + std::to_string(seen_) +
                                    ", expected m*q^n = " + std::to_string(expected));

    VerifyReport report;
    report.q = q_;
    report.d = d_;
    report.n = n_;
    report.m = m_;
    report.compositions_checked = comps_.size();
    report.boxes_checked = comps_.size() * q_pow_n_;

    uint64_t min_count = UINT64_MAX, max_count = 0;
    uint64_t best_dev = 0;
    size_t best_comp = 0;
    uint64_t best_key = 0;
    bool have_best = false;
    for (size_t c = 0; c < comps_.size(); ++c) {
        uint64_t total = 0;
        for (uint64_t key = 0; key < q_pow_n_; ++key) {
            uint64_t count = counts_[c][key];
            total += count;
            min_count = std::min(min_count, count);
            max_count = std::max(max_count, count);
            uint64_t dev = count >= m_ ? count - m_ : m_ - count;
            if (!have_best || dev > best_dev) {
                have_best = true;
                best_dev = dev;
                best_comp = c;
                best_key = key;
            }
        }
        if (total != expected)
            throw std::logic_error("internal count conservation failure in composition " +
                                   std::to_string(c));
    }
    report.min_count = min_count;
    report.max_count = max_count;
    report.empty_box_seen = min_count == 0;
    const double m = static_cast<double>(m_);
    report.eps_obs = std::max(std::abs(static_cast<double>(min_count) / m - 1.0),
                              std::abs(static_cast<double>(max_count) / m - 1.0));
    report.worst_box = decode_box(q_, comps_[best_comp], best_key);
    return report;
}

VerifyReport epsilon_observed(const std::vector<DigitPoint>& points, uint32_t q, uint32_t d,
                              uint32_t n, uint64_t m, uint32_t threads) {
    VerifyAccumulator acc(q, d, n, m, threads);
    for (const auto& pt : points) acc.add(pt);
    return acc.finalize();
}

VerifyReport epsilon_observed_from_params(const NetParams& params, uint32_t threads) {
    VerifyAccumulator acc(params.q, params.d, params.n, params.m, threads);
    generate(params, acc.sink());
    return acc.finalize();
}

PerfectNetResult perfect_net_check(const std::vector<DigitPoint>& points, uint32_t q, uint32_t d,
                                   uint32_t level, uint64_t expected, uint32_t threads) {
    PerfectNetResult result;
    VerifyAccumulator acc(q, d, level, expected, threads);
    for (const auto& pt : points) acc.add(pt);
    result.report = acc.finalize();
    result.perfect = result.report.min_count == expected && result.report.max_count == expected;
    if (!result.perfect) {
        result.witness = result.report.worst_box;
        uint64_t lo_dev = expected - result.report.min_count;
        uint64_t hi_dev = result.report.max_count - expected;
        result.witness_count = hi_dev >= lo_dev ? result.report.max_count : result.report.min_count;
    }
    return result;
}

namespace {

std::vector<uint32_t> random_composition(CounterRng& rng, uint32_t total, uint32_t parts) {
    // remaining-budget draws; not uniform over compositions, but it
    // visits the full range deterministically from the seed
    std::vector<uint32_t> out(parts, 0);
    uint32_t left = total;
    for (uint32_t i = 0; i + 1 < parts; ++i) {
        out[i] = rng.next_below(left + 1);
        left -= out[i];
    }
    out[parts - 1] = left;
    return out;
}

std::vector<uint8_t> random_digits(CounterRng& rng, uint32_t q, uint32_t len) {
    std::vector<uint8_t> out(len);
    for (auto& d : out) d = static_cast<uint8_t>(rng.next_below(q));
    return out;
}

Poly random_poly(CounterRng& rng, uint32_t q, uint32_t degree_bound) {
    return Poly::from_coeffs(q, random_digits(rng, q, degree_bound));
}

bool in_translate_class(const Poly& candidate, const Poly& h, uint32_t grid_degree) {
    return (candidate - h).degree() < static_cast<int>(grid_degree);
}

}  // namespace

SelfTestReport structural_selftest(const SelfTestParams& params) {
    const uint32_t q = params.q, d = params.d, t = params.t, n = params.n;
    require_prime_base(q);
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (t < 1) throw std::invalid_argument("block size must be >= 1");
    const uint32_t dt = d * t;
    if (n < 3 * dt) throw std::invalid_argument("self-test requires n >= 3*d*t");
    if (std::log2(static_cast<double>(q)) * (n + dt) > 22)
        throw std::invalid_argument("self-test enumeration guard exceeded (q^(n+dt) > 2^22)");

    IrreducibleBasis basis = IrreducibleBasis::first(q, t, d);
    SelfTestReport report;

    // (a) the degree-(n+dt) grid is exactly equidistributed at depth n
    {
        const uint32_t coeff_len = n + dt;
        const uint32_t digit_count = (coeff_len + t - 1) / t * t;
        const uint64_t grid_size = pow_u64(q, coeff_len);
        const uint64_t expected = pow_u64(q, dt);
        VerifyAccumulator acc(q, d, n, expected);
        std::vector<detail::DigitEmitter> emitters;
        for (uint32_t i = 0; i < d; ++i) emitters.emplace_back(basis.polys[i], digit_count);
        DigitPoint pt;
        pt.reset(q, d, digit_count);
        detail::PolyOdometer grid(q, coeff_len);
        for (uint64_t v = 0; v < grid_size; ++v) {
            for (uint32_t i = 0; i < d; ++i)
                emitters[i].run(grid.digits().data(), coeff_len, pt.coord(i).data());
            acc.add(pt);
            grid.advance();
        }
        VerifyReport r = acc.finalize();
        bool ok = r.min_count == expected && r.max_count == expected;
        report.items.push_back({"grid-equidistribution",
                                ok,
                                "min=" + std::to_string(r.min_count) + " max=" + std::to_string(r.max_count) +
                                    " expected=" + std::to_string(expected)});
    }

    // (b) membership transfer to the high-coefficient truncation
    {
        CounterRng rng = make_rng(params.seed, RngStream::selftest);
        uint32_t agreements = 0;
        uint32_t positives = 0;
        for (uint32_t trial = 0; trial < params.trials; ++trial) {
            BasicBox beta{q, {}};
            auto parts = random_composition(rng, n, d);
            for (uint32_t i = 0; i < d; ++i) beta.prefixes.push_back(random_digits(rng, q, parts[i]));
            CanonicalBox enclosing = smallest_canonical_superbox(beta, t);
            CrtStructure s = crt_structure(enclosing, basis);
            BoxType type = box_type(enclosing, s, n, d, t);

            Poly g;
            if (trial % 2 == 0) {
                uint32_t g_len = trial % 10 == 8 ? 2 * dt + 2 : 2 * dt;  // a few trivially-deep cases
                g = random_poly(rng, q, g_len);
            } else {
                // keep offset + g*modulus inside the degree range so the
                // forced positive h below is a legal translate
                g = random_poly(rng, q, n + dt - static_cast<uint32_t>(s.modulus.degree()));
            }
            Poly exact = s.offset + g * s.modulus;
            Poly truncated = type.offset + g * type.modulus;
            Poly h;
            if (trial % 2 == 0) {
                h = random_poly(rng, q, n + dt);
            } else {
                h = exact - random_poly(rng, q, n - dt);  // forces a positive case
            }
            bool lhs = in_translate_class(truncated, h, n - dt);
            bool rhs = in_translate_class(exact, h, n - dt);
            if (lhs == rhs) ++agreements;
            if (rhs) ++positives;
        }
        bool ok = agreements == params.trials && positives > 0;
        report.items.push_back({"type-truncation-membership",
                                ok,
                                std::to_string(agreements) + "/" + std::to_string(params.trials) +
                                    " agree, " + std::to_string(positives) + " positive"});
    }

    // (c) digit membership == residue membership
    {
        CounterRng rng = make_rng(params.seed + 1, RngStream::selftest);
        uint32_t agreements = 0;
        uint32_t positives = 0;
        for (uint32_t trial = 0; trial < params.trials; ++trial) {
            CanonicalBox box;
            box.q = q;
            box.t = t;
            uint32_t blocks_left = n / t;
            for (uint32_t i = 0; i < d; ++i) {
                uint32_t k = rng.next_below(blocks_left + 1);
                if (i + 1 < d) blocks_left -= k;
                box.prefixes.push_back(random_digits(rng, q, k * t));
            }
            CrtStructure s = crt_structure(box, basis);
            Poly f;
            if (trial % 2 == 0) {
                f = random_poly(rng, q, n + dt);
            } else {
                f = s.offset + random_poly(rng, q, 2 * dt) * s.modulus;
            }
            uint32_t longest = 0;
            for (uint32_t i = 0; i < d; ++i) longest = std::max(longest, box.blocks(i) * t);
            DigitPoint pt = map_point(f, basis, longest);
            bool by_digits = contains(box.as_basic(), pt);
            bool by_residue = s.modulus.is_one() || poly_divmod(f - s.offset, s.modulus).second.is_zero();
            if (by_digits == by_residue) ++agreements;
            if (by_residue) ++positives;
        }
        bool ok = agreements == params.trials && positives > 0;
        report.items.push_back({"digit-vs-residue-membership",
                                ok,
                                std::to_string(agreements) + "/" + std::to_string(params.trials) +
                                    " agree, " + std::to_string(positives) + " positive"});
    }

    return report;
}

BaselineComparison baseline_compare(const NetParams& params, uint32_t threads) {
    BaselineComparison cmp;
    cmp.eps_net = epsilon_observed_from_params(params, threads).eps_obs;

    VerifyAccumulator acc(params.q, params.d, params.n, params.m, threads);
    CounterRng rng = make_rng(params.seed, RngStream::iid_baseline);
    const uint64_t total = params.point_count();
    DigitPoint pt;
    pt.reset(params.q, params.d, params.digits_per_coord());
    for (uint64_t i = 0; i < total; ++i) {
        for (auto& digit : pt.digits) digit = static_cast<uint8_t>(rng.next_below(params.q));
        acc.add(pt);
    }
    cmp.eps_iid = acc.finalize().eps_obs;
    return cmp;
}

}  // namespace anet
