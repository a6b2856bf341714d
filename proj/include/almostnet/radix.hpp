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

#ifndef ALMOSTNET_RADIX_HPP
#define ALMOSTNET_RADIX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "almostnet/gf.hpp"

namespace anet {

/// A fractional base-q digit string: digits[j] is the coefficient of
/// q^-(j+1). All geometry in this library runs on these exact strings;
/// floating point appears only at the export boundary.
struct DigitString {
    uint32_t q = 0;
    std::vector<uint8_t> digits;

    size_t size() const { return digits.size(); }

    /// For q <= 10 contiguous characters '0'-'9'; for larger q
    /// comma-separated decimal digits.
    std::string to_string() const;
    static DigitString parse(uint32_t q, const std::string& text);

    bool operator==(const DigitString& rhs) const = default;
};

/// Nearest binary double to sum digits[j] * q^-(j+1).
double to_float(const DigitString& s);

/// A point of [0,1)^d held as d equal-length digit strings, stored
/// row-major in one flat buffer.
struct DigitPoint {
    uint32_t q = 0;
    uint32_t dimension = 0;
    uint32_t digits_per_coord = 0;
    std::vector<uint8_t> digits;  // dimension * digits_per_coord

    void reset(uint32_t q_, uint32_t d_, uint32_t len_) {
        q = q_;
        dimension = d_;
        digits_per_coord = len_;
        digits.assign(static_cast<size_t>(d_) * len_, 0);
    }
    std::span<const uint8_t> coord(uint32_t i) const {
        return {digits.data() + static_cast<size_t>(i) * digits_per_coord, digits_per_coord};
    }
    std::span<uint8_t> coord(uint32_t i) {
        return {digits.data() + static_cast<size_t>(i) * digits_per_coord, digits_per_coord};
    }
    uint8_t digit(uint32_t i, uint32_t j) const {
        return digits[static_cast<size_t>(i) * digits_per_coord + j];
    }
    DigitString coord_string(uint32_t i) const;
};

/// Digits of the base-p representation f = d0 + d1*p + d2*p^2 + ...,
/// each of degree below deg p, most significant last. Empty for f = 0.
struct Expansion {
    Poly base;
    std::vector<Poly> digits;

    Poly reconstruct() const;
};

/// Base-p expansion by repeated division. p must be irreducible of
/// degree >= 1.
Expansion expand_base_p(const Poly& f, const Poly& p);

/// First `digit_count` base-q digits of the coordinate value assigned
/// to f by the degree-t irreducible p: the expansion digits are laid
/// out in blocks of t, and inside each block the coefficient of x^0
/// comes first (it is the most significant digit of the block).
/// digit_count must be a multiple of t.
DigitString coordinate_digits(const Poly& f, const Poly& p, uint32_t digit_count);

/// All d coordinates of f under the basis, digit_count digits each.
DigitPoint map_point(const Poly& f, const IrreducibleBasis& basis, uint32_t digit_count);

namespace detail {

/// Allocation-free digit extraction for hot loops. Writes digit_count
/// base-q digits of the coordinate value of the polynomial with the
/// given coefficients (length n, not necessarily trimmed) into out.
/// The modulus must be monic. Scratch vectors grow as needed and are
/// reused across calls.
class DigitEmitter {
  public:
    DigitEmitter(const Poly& modulus, uint32_t digit_count);

    void run(const uint8_t* coeffs, size_t n, uint8_t* out);

    uint32_t digit_count() const { return digit_count_; }

  private:
    uint32_t q_;
    uint32_t t_;
    uint32_t digit_count_;
    std::vector<uint8_t> modulus_;  // length t_, the coefficients below the leading 1
    std::vector<uint8_t> work_;
    std::vector<uint8_t> quot_;
    std::vector<uint8_t> mul_;  // q x q multiplication table
    std::vector<uint8_t> sub_;  // q x q subtraction table
};

}  // namespace detail
}  // namespace anet

#endif
