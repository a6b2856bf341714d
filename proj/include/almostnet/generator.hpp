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

#ifndef ALMOSTNET_GENERATOR_HPP
#define ALMOSTNET_GENERATOR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "almostnet/gf.hpp"
#include "almostnet/radix.hpp"
#include "almostnet/rng.hpp"

namespace anet {

/// Construction parameters. The emitted point multiset has m * q^n
/// points in [0,1)^d, built from translates of the degree-(n-dt) grid
/// by q^(dt) * m seeded random polynomials of degree < n + dt.
struct NetParams {
    uint32_t q = 0;
    uint32_t d = 0;
    uint64_t m = 0;
    uint32_t n = 0;
    uint32_t t = 0;
    uint64_t seed = 0;
    bool t_overridden = false;
    /// Set when m is below 400 * d * ln(d*q), the regime where the
    /// near-uniformity guarantee holds.
    bool below_guaranteed_m = false;

    uint32_t dt() const { return d * t; }
    uint32_t translate_degree_bound() const { return n + dt(); }
    /// Digits emitted per coordinate: enough blocks to hold every
    /// generated polynomial exactly.
    uint32_t digits_per_coord() const { return (n + dt() + t - 1) / t * t; }
    uint64_t translate_count() const;  // q^dt * m
    uint64_t point_count() const;      // m * q^n

    /// Worst-case relative deviation guaranteed for basic boxes of
    /// volume q^-n (natural logarithm).
    double eps_guarantee() const;
    /// The sharper internal bound used by the union-bound argument.
    double eps_internal() const;
};

/// Validates and completes parameters. The block size defaults to the
/// smallest t with q^(t-2) >= d^2; an override is accepted whenever at
/// least d monic irreducible polynomials of degree t exist.
NetParams derive_params(uint32_t q, uint32_t d, uint64_t m, uint32_t n,
                        std::optional<uint32_t> t_override, uint64_t seed);

/// The sampled translate multiset: count polynomials of degree
/// < coeff_len, stored as a flat coefficient matrix.
struct TranslateSet {
    uint64_t seed = 0;
    uint32_t coeff_len = 0;
    uint64_t count = 0;
    std::vector<uint8_t> coeffs;  // count x coeff_len, row-major

    const uint8_t* row(uint64_t i) const { return coeffs.data() + i * coeff_len; }
    Poly poly(uint32_t q, uint64_t i) const;
};

/// Draws q^dt * m translate polynomials with i.i.d. uniform
/// coefficients from the seeded counter generator. Identical seeds
/// give identical multisets.
TranslateSet sample_translates(const NetParams& params);

using PointSink = std::function<void(const DigitPoint&)>;

/// Streams the full point multiset in deterministic order: translates
/// in sample order, the inner grid polynomial in base-q value order
/// (constant coefficient least significant). The sink receives a
/// reused buffer holding digits_per_coord digits per coordinate, plus
/// extra_digits seeded-random tail digits when perturbation is on.
void generate(const NetParams& params, const PointSink& sink, uint32_t extra_digits = 0);

/// Convenience materialization for small runs (guarded).
std::vector<DigitPoint> generate_points(const NetParams& params, uint32_t extra_digits = 0);

struct VerifyReport;  // verifier.hpp

struct VerifiedNet {
    NetParams params;  // the seed that met the target
    uint32_t retries = 0;
    double eps_obs = 0.0;
};

class RetriesExhausted : public std::runtime_error {
  public:
    RetriesExhausted(std::string msg, double best_eps, uint64_t best_seed)
        : std::runtime_error(std::move(msg)), best_eps(best_eps), best_seed(best_seed) {}
    double best_eps;
    uint64_t best_seed;
};

/// Regenerates with seed, seed+1, ... until the exhaustively verified
/// deviation is at or below target_eps. Throws RetriesExhausted (with
/// the best deviation found) when max_retries attempts all miss.
VerifiedNet generate_verified(const NetParams& params, double target_eps, uint32_t max_retries,
                              uint32_t threads = 1);

namespace detail {

/// Enumerates the polynomials of degree < coeff_len in base-q value
/// order by odometer increments; the digit vector is reused.
class PolyOdometer {
  public:
    PolyOdometer(uint32_t q, uint32_t coeff_len)
        : q_(q), digits_(std::max<uint32_t>(coeff_len, 1), 0) {}

    const std::vector<uint8_t>& digits() const { return digits_; }
    void advance() {
        for (auto& d : digits_) {
            if (++d < q_) return;
            d = 0;
        }
    }

  private:
    uint32_t q_;
    std::vector<uint8_t> digits_;
};

}  // namespace detail
}  // namespace anet

#endif
