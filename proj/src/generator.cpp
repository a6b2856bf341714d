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

#include "almostnet/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "almostnet/verifier.hpp"

namespace anet {
namespace {

uint64_t checked_pow(uint32_t q, uint32_t e, uint64_t limit, const char* what) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (v > limit / q) throw std::overflow_error(what);
        v *= q;
    }
    return v;
}

}  // namespace

uint64_t NetParams::translate_count() const {
    uint64_t power = checked_pow(q, dt(), UINT64_MAX / (m ? m : 1),
                                 "q^dt * m exceeds the sampling guard");
    uint64_t count = power * m;
    if (count > (1ULL << 40)) throw std::overflow_error("q^dt * m exceeds the sampling guard (2^40)");
    return count;
}

uint64_t NetParams::point_count() const {
    uint64_t power = checked_pow(q, n, UINT64_MAX / (m ? m : 1),
                                 "m * q^n exceeds the 64-bit point counter");
    uint64_t count = power * m;
    if (count > (1ULL << 63)) throw std::overflow_error("m * q^n exceeds the 64-bit point counter");
    return count;
}

double NetParams::eps_guarantee() const {
    return 10.0 * std::sqrt(d * std::log(static_cast<double>(d) * q) / static_cast<double>(m));
}

double NetParams::eps_internal() const {
    return std::sqrt(33.0 * d * t * std::log(static_cast<double>(q)) / static_cast<double>(m));
}

NetParams derive_params(uint32_t q, uint32_t d, uint64_t m, uint32_t n,
                        std::optional<uint32_t> t_override, uint64_t seed) {
    require_prime_base(q);
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    if (m < 1) throw std::invalid_argument("multiplier m must be >= 1");

    NetParams p;
    p.q = q;
    p.d = d;
    p.m = m;
    p.n = n;
    p.seed = seed;
    if (t_override) {
        p.t = *t_override;
        p.t_overridden = true;
        if (p.t < 1) throw std::invalid_argument("block size must be >= 1");
    } else {
        // smallest t with q^(t-2) >= d^2, i.e. ceil(2 log_q d) + 2
        uint64_t need = static_cast<uint64_t>(d) * d;
        uint32_t s = 0;
        uint64_t power = 1;
        while (power < need) {
            power *= q;
            ++s;
        }
        p.t = s + 2;
    }
    uint64_t available = irreducible_count(q, p.t);
    if (available < d)
        throw std::invalid_argument("only " + std::to_string(available) +
                                    " irreducible polynomials of degree " + std::to_string(p.t) +
                                    " exist over F_" + std::to_string(q) + "; need " + std::to_string(d));
    if (n < p.dt())
        throw std::invalid_argument("n must be at least d*t = " + std::to_string(p.dt()));
    p.point_count();      // enforce the counter guard
    p.below_guaranteed_m =
        static_cast<double>(m) < 400.0 * d * std::log(static_cast<double>(d) * q);
    return p;
}

Poly TranslateSet::poly(uint32_t q, uint64_t i) const {
    return Poly::from_coeffs(q, std::vector<uint8_t>(row(i), row(i) + coeff_len));
}

TranslateSet sample_translates(const NetParams& params) {
    TranslateSet h;
    h.seed = params.seed;
    h.coeff_len = params.translate_degree_bound();
    h.count = params.translate_count();
    h.coeffs.resize(h.count * h.coeff_len);
    CounterRng rng = make_rng(params.seed, RngStream::translates);
    for (auto& c : h.coeffs) c = static_cast<uint8_t>(rng.next_below(params.q));
    return h;
}

void generate(const NetParams& params, const PointSink& sink, uint32_t extra_digits) {
    const uint32_t q = params.q;
    const uint32_t d = params.d;
    const uint32_t t = params.t;
    if (params.n < params.dt()) throw std::invalid_argument("n must be at least d*t");
    const uint32_t coeff_len = params.translate_degree_bound();
    const uint32_t body_digits = params.digits_per_coord();
    const uint32_t grid_len = params.n - params.dt();
    const uint64_t grid_size = checked_pow(q, grid_len, UINT64_MAX, "grid size overflow");

    IrreducibleBasis basis = IrreducibleBasis::first(q, t, d);
    TranslateSet translates = sample_translates(params);

    std::vector<detail::DigitEmitter> emitters;
    emitters.reserve(d);
    for (uint32_t i = 0; i < d; ++i) emitters.emplace_back(basis.polys[i], body_digits);

    CounterRng tail_rng = make_rng(params.seed, RngStream::perturbation);

    DigitPoint pt;
    pt.reset(q, d, body_digits + extra_digits);
    std::vector<uint8_t> sum(coeff_len);
    std::vector<uint8_t> tmp(body_digits);

    for (uint64_t hi = 0; hi < translates.count; ++hi) {
        const uint8_t* h = translates.row(hi);
        detail::PolyOdometer grid(q, grid_len);
        for (uint64_t v = 0; v < grid_size; ++v) {
            const auto& f = grid.digits();
            for (uint32_t j = 0; j < coeff_len; ++j) {
                uint32_t s = h[j] + (j < grid_len ? f[j] : 0);
                if (s >= q) s -= q;
                sum[j] = static_cast<uint8_t>(s);
            }
            for (uint32_t i = 0; i < d; ++i) {
                uint8_t* out = pt.digits.data() + static_cast<size_t>(i) * pt.digits_per_coord;
                emitters[i].run(sum.data(), coeff_len, out);
                for (uint32_t e = 0; e < extra_digits; ++e)
                    out[body_digits + e] = static_cast<uint8_t>(tail_rng.next_below(q));
            }
            sink(pt);
            grid.advance();
        }
    }
}

std::vector<DigitPoint> generate_points(const NetParams& params, uint32_t extra_digits) {
    const uint64_t total = params.point_count();
    if (total > (1ULL << 24))
        throw std::invalid_argument("refusing to materialize more than 2^24 points; stream instead");
    std::vector<DigitPoint> out;
    out.reserve(total);
    generate(params, [&](const DigitPoint& pt) { out.push_back(pt); }, extra_digits);
    return out;
}

VerifiedNet generate_verified(const NetParams& params, double target_eps, uint32_t max_retries,
                              uint32_t threads) {
    if (max_retries < 1) throw std::invalid_argument("max_retries must be >= 1");
    double best_eps = -1.0;
    uint64_t best_seed = params.seed;
    for (uint32_t attempt = 0; attempt < max_retries; ++attempt) {
        NetParams trial = params;
        trial.seed = params.seed + attempt;
        VerifyReport report = epsilon_observed_from_params(trial, threads);
        if (best_eps < 0.0 || report.eps_obs < best_eps) {
            best_eps = report.eps_obs;
            best_seed = trial.seed;
        }
        if (report.eps_obs <= target_eps) return VerifiedNet{trial, attempt, report.eps_obs};
    }
    throw RetriesExhausted("no seed in " + std::to_string(max_retries) +
                               " attempts reached the target deviation; best " +
                               std::to_string(best_eps) + " at seed " + std::to_string(best_seed),
                           best_eps, best_seed);
}

}  // namespace anet
