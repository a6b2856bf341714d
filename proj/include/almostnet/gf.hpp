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

#ifndef ALMOSTNET_GF_HPP
#define ALMOSTNET_GF_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace anet {

/// Deterministic primality check (trial division; bases are small).
bool is_prime(uint32_t n);

/// Coefficients and digits are stored in bytes, so the base must fit one.
inline constexpr uint32_t kMaxBase = 251;

/// Throws std::invalid_argument unless q is a supported prime base.
void require_prime_base(uint32_t q);

/// A polynomial over F_q, q prime. Coefficients are stored
/// least-significant first with no trailing zeros; the zero polynomial
/// has an empty coefficient vector and degree() == -1 (the stand-in for
/// degree minus infinity).
class Poly {
  public:
    Poly() = default;  // unusable placeholder (base 0); assign before use

    static Poly zero(uint32_t q);
    static Poly one(uint32_t q);
    static Poly from_coeffs(uint32_t q, std::vector<uint8_t> coeffs);
    /// Base-q digits of v, constant coefficient = least significant digit.
    static Poly from_value(uint32_t q, uint64_t v);
    static Poly monomial(uint32_t q, uint32_t degree, uint8_t coeff = 1);

    /// Text form: coefficient digits from the constant term upward,
    /// e.g. "11001" = 1 + x + x^4 over F_2. For q > 10 the digits are
    /// comma-separated decimal numbers. Digits >= q are rejected.
    static Poly parse(uint32_t q, const std::string& text);
    std::string to_string() const;

    uint32_t base() const { return q_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    /// Coefficient of x^i (0 beyond the stored range).
    uint8_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<uint8_t>& coeffs() const { return c_; }

    /// Integer encoding sum coeff(i)*q^i. Throws if it does not fit u64.
    uint64_t to_value() const;

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly operator-() const;
    Poly scaled(uint8_t factor) const;
    /// Multiplies by x^k.
    Poly shifted(uint32_t k) const;
    /// Same polynomial scaled to leading coefficient 1. Throws on zero.
    Poly monic() const;

    bool operator==(const Poly& rhs) const { return q_ == rhs.q_ && c_ == rhs.c_; }
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }
    bool operator<(const Poly& rhs) const;  // degree, then lexicographic from the top

    friend std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);

  private:
    Poly(uint32_t q, std::vector<uint8_t> c) : q_(q), c_(std::move(c)) { trim(); }
    void trim();

    uint32_t q_ = 0;
    std::vector<uint8_t> c_;
};

/// f = quotient*g + remainder with deg remainder < deg g. Throws when g = 0.
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);

/// Monic greatest common divisor. gcd(0, 0) throws.
Poly poly_gcd(Poly f, Poly g);

struct ExtGcd {
    Poly gcd;  // monic
    Poly u;
    Poly v;  // u*f + v*g = gcd
};
ExtGcd ext_gcd(const Poly& f, const Poly& g);

/// base^exponent reduced mod modulus (square-and-multiply).
Poly pow_mod(const Poly& base, uint64_t exponent, const Poly& modulus);

/// Deterministic irreducibility test for deg f >= 1: f is irreducible
/// iff gcd(f, x^(q^i) - x) = 1 for all 1 <= i <= deg(f)/2, with the
/// Frobenius iterates computed by repeated powering mod f. Constant
/// input throws.
bool is_irreducible(const Poly& f);

/// Number of monic irreducible polynomials of degree t over F_q:
/// (1/t) * sum over i | t of mobius(i) * q^(t/i).
uint64_t irreducible_count(uint32_t q, uint32_t t);

/// The first `count` monic irreducible polynomials of degree t, ordered
/// by the integer encoding of their lower coefficients (constant
/// coefficient least significant). Throws when count exceeds the number
/// available, naming that number.
std::vector<Poly> enumerate_irreducibles(uint32_t q, uint32_t t, uint64_t count);

/// Unique f with deg f < sum of deg moduli and f = residues[i] mod
/// moduli[i]. Moduli must be pairwise coprime and residues reduced.
Poly crt_solve(const std::vector<Poly>& residues, const std::vector<Poly>& moduli);

/// The d irreducible polynomials of degree t assigned to the coordinate
/// directions, in deterministic enumeration order.
struct IrreducibleBasis {
    uint32_t q = 0;
    uint32_t t = 0;
    std::vector<Poly> polys;

    static IrreducibleBasis first(uint32_t q, uint32_t t, uint32_t d);
    uint32_t dimension() const { return static_cast<uint32_t>(polys.size()); }
};

}  // namespace anet

#endif
