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

#include "almostnet/gf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace anet {
namespace {

uint32_t mod_inverse(uint32_t a, uint32_t q) {
    // extended Euclid on integers; q prime, 0 < a < q
    int64_t t = 0, new_t = 1, r = q, new_r = a;
    while (new_r != 0) {
        int64_t quo = r / new_r;
        std::tie(t, new_t) = std::make_tuple(new_t, t - quo * new_t);
        std::tie(r, new_r) = std::make_tuple(new_r, r - quo * new_r);
    }
    if (t < 0) t += q;
    return static_cast<uint32_t>(t);
}

void require_same_base(const Poly& a, const Poly& b) {
    if (a.base() != b.base())
        throw std::invalid_argument("polynomials over different bases");
    require_prime_base(a.base());
}

int mobius(uint32_t n) {
    int result = 1;
    for (uint32_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;  // squareful
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

}  // namespace

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

void require_prime_base(uint32_t q) {
    if (!is_prime(q))
        throw std::invalid_argument("base " + std::to_string(q) + " is not prime");
    if (q > kMaxBase)
        throw std::invalid_argument("base " + std::to_string(q) + " exceeds the supported maximum " +
                                    std::to_string(kMaxBase));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::zero(uint32_t q) {
    require_prime_base(q);
    return Poly(q, {});
}

Poly Poly::one(uint32_t q) {
    require_prime_base(q);
    return Poly(q, {1});
}

Poly Poly::from_coeffs(uint32_t q, std::vector<uint8_t> coeffs) {
    require_prime_base(q);
    for (uint8_t c : coeffs)
        if (c >= q) throw std::invalid_argument("coefficient out of range for base");
    return Poly(q, std::move(coeffs));
}

Poly Poly::from_value(uint32_t q, uint64_t v) {
    require_prime_base(q);
    std::vector<uint8_t> c;
    while (v != 0) {
        c.push_back(static_cast<uint8_t>(v % q));
        v /= q;
    }
    return Poly(q, std::move(c));
}

Poly Poly::monomial(uint32_t q, uint32_t degree, uint8_t coeff) {
    require_prime_base(q);
    if (coeff >= q) throw std::invalid_argument("coefficient out of range for base");
    if (coeff == 0) return zero(q);
    std::vector<uint8_t> c(degree + 1, 0);
    c.back() = coeff;
    return Poly(q, std::move(c));
}

Poly Poly::parse(uint32_t q, const std::string& text) {
    require_prime_base(q);
    std::vector<uint8_t> c;
    if (q <= 10) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit character in polynomial text");
            uint32_t digit = static_cast<uint32_t>(ch - '0');
            if (digit >= q) throw std::invalid_argument("digit out of range for base");
            c.push_back(static_cast<uint8_t>(digit));
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t pos = 0;
            unsigned long digit = std::stoul(item, &pos);
            if (pos != item.size()) throw std::invalid_argument("bad digit token in polynomial text");
            if (digit >= q) throw std::invalid_argument("digit out of range for base");
            c.push_back(static_cast<uint8_t>(digit));
        }
    }
    return Poly(q, std::move(c));
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    if (q_ <= 10) {
        for (uint8_t d : c_) out.push_back(static_cast<char>('0' + d));
    } else {
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(c_[i]);
        }
    }
    return out;
}

uint64_t Poly::to_value() const {
    uint64_t v = 0;
    for (size_t i = c_.size(); i-- > 0;) {
        if (v > (UINT64_MAX - c_[i]) / q_)
            throw std::overflow_error("polynomial value does not fit 64 bits");
        v = v * q_ + c_[i];
    }
    return v;
}

Poly Poly::operator+(const Poly& rhs) const {
    require_same_base(*this, rhs);
    std::vector<uint8_t> c(std::max(c_.size(), rhs.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint32_t s = coeff(i) + rhs.coeff(i);
        if (s >= q_) s -= q_;
        c[i] = static_cast<uint8_t>(s);
    }
    return Poly(q_, std::move(c));
}

Poly Poly::operator-(const Poly& rhs) const {
    require_same_base(*this, rhs);
    std::vector<uint8_t> c(std::max(c_.size(), rhs.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint32_t s = coeff(i) + q_ - rhs.coeff(i);
        if (s >= q_) s -= q_;
        c[i] = static_cast<uint8_t>(s);
    }
    return Poly(q_, std::move(c));
}

Poly Poly::operator-() const {
    require_prime_base(q_);
    return zero(q_) - *this;
}

Poly Poly::operator*(const Poly& rhs) const {
    require_same_base(*this, rhs);
    if (is_zero() || rhs.is_zero()) return zero(q_);
    std::vector<uint8_t> c(c_.size() + rhs.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < rhs.c_.size(); ++j) {
            c[i + j] = static_cast<uint8_t>((c[i + j] + static_cast<uint32_t>(c_[i]) * rhs.c_[j]) % q_);
        }
    }
    return Poly(q_, std::move(c));
}

Poly Poly::scaled(uint8_t factor) const {
    require_prime_base(q_);
    if (factor >= q_) throw std::invalid_argument("scale factor out of range for base");
    std::vector<uint8_t> c(c_);
    for (auto& x : c) x = static_cast<uint8_t>(x * static_cast<uint32_t>(factor) % q_);
    return Poly(q_, std::move(c));
}

Poly Poly::shifted(uint32_t k) const {
    require_prime_base(q_);
    if (is_zero() || k == 0) return *this;
    std::vector<uint8_t> c(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return Poly(q_, std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) throw std::invalid_argument("zero polynomial has no monic form");
    if (c_.back() == 1) return *this;
    return scaled(static_cast<uint8_t>(mod_inverse(c_.back(), q_)));
}

bool Poly::operator<(const Poly& rhs) const {
    if (degree() != rhs.degree()) return degree() < rhs.degree();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != rhs.c_[i]) return c_[i] < rhs.c_[i];
    return false;
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
    require_same_base(f, g);
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    const uint32_t q = f.base();
    if (f.degree() < g.degree()) return {Poly::zero(q), f};

    std::vector<uint8_t> rem(f.coeffs());
    std::vector<uint8_t> quo(f.degree() - g.degree() + 1, 0);
    const auto& gc = g.coeffs();
    const size_t gdeg = gc.size() - 1;
    const uint32_t lead_inv = mod_inverse(gc.back(), q);
    for (size_t j = rem.size() - 1;; --j) {
        uint32_t factor = rem[j] * lead_inv % q;
        if (factor != 0) {
            quo[j - gdeg] = static_cast<uint8_t>(factor);
            for (size_t i = 0; i <= gdeg; ++i) {
                uint32_t sub = factor * gc[i] % q;
                rem[j - gdeg + i] = static_cast<uint8_t>((rem[j - gdeg + i] + q - sub) % q);
            }
        }
        if (j == gdeg) break;
    }
    rem.resize(gdeg);
    return {Poly::from_coeffs(q, std::move(quo)), Poly::from_coeffs(q, std::move(rem))};
}

Poly poly_gcd(Poly f, Poly g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    while (!g.is_zero()) {
        Poly r = poly_divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

ExtGcd ext_gcd(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    require_same_base(f, g);
    const uint32_t q = f.base();
    Poly r0 = f, r1 = g;
    Poly u0 = Poly::one(q), u1 = Poly::zero(q);
    Poly v0 = Poly::zero(q), v1 = Poly::one(q);
    while (!r1.is_zero()) {
        auto [quo, rem] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly u2 = u0 - quo * u1;
        u0 = std::move(u1);
        u1 = std::move(u2);
        Poly v2 = v0 - quo * v1;
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    // normalize the gcd to monic and scale the cofactors to match
    uint8_t lead = r0.coeffs().back();
    uint8_t inv = static_cast<uint8_t>(mod_inverse(lead, q));
    return ExtGcd{r0.scaled(inv), u0.scaled(inv), v0.scaled(inv)};
}

Poly pow_mod(const Poly& base, uint64_t exponent, const Poly& modulus) {
    require_same_base(base, modulus);
    if (modulus.degree() < 1) throw std::invalid_argument("modulus must have degree >= 1");
    Poly result = Poly::one(base.base());
    Poly acc = poly_divmod(base, modulus).second;
    while (exponent != 0) {
        if (exponent & 1) result = poly_divmod(result * acc, modulus).second;
        exponent >>= 1;
        if (exponent) acc = poly_divmod(acc * acc, modulus).second;
    }
    return result;
}

bool is_irreducible(const Poly& f) {
    require_prime_base(f.base());
    const int n = f.degree();
    if (n < 1) throw std::invalid_argument("irreducibility is defined for degree >= 1");
    if (n == 1) return true;
    const uint32_t q = f.base();
    const Poly fm = f.monic();
    const Poly x = Poly::monomial(q, 1);
    // Frobenius iterates x^(q^i) mod f; a nontrivial gcd with any of the
    // first n/2 exposes an irreducible factor of degree dividing i.
    Poly frob = poly_divmod(x, fm).second;
    for (int i = 1; i <= n / 2; ++i) {
        frob = pow_mod(frob, q, fm);
        Poly diff = frob - poly_divmod(x, fm).second;
        if (diff.is_zero()) return false;  // all factors of degree <= i
        if (!poly_gcd(fm, diff).is_one()) return false;
    }
    return true;
}

uint64_t irreducible_count(uint32_t q, uint32_t t) {
    require_prime_base(q);
    if (t < 1) throw std::invalid_argument("degree must be >= 1");
    // guard q^t against overflow in the leading Mobius term
    double bits = t * std::log2(static_cast<double>(q));
    if (bits > 62) throw std::overflow_error("q^t too large for the irreducible count");
    int64_t sum = 0;
    for (uint32_t i = 1; i <= t; ++i) {
        if (t % i != 0) continue;
        int mu = mobius(i);
        if (mu == 0) continue;
        int64_t power = 1;
        for (uint32_t e = 0; e < t / i; ++e) power *= q;
        sum += mu * power;
    }
    return static_cast<uint64_t>(sum / t);
}

std::vector<Poly> enumerate_irreducibles(uint32_t q, uint32_t t, uint64_t count) {
    const uint64_t available = irreducible_count(q, t);
    if (count > available)
        throw std::invalid_argument("requested " + std::to_string(count) + " irreducible polynomials of degree " +
                                    std::to_string(t) + " over F_" + std::to_string(q) + ", but only " +
                                    std::to_string(available) + " exist");
    std::vector<Poly> out;
    out.reserve(count);
    const Poly top = Poly::monomial(q, t);
    for (uint64_t v = 0; out.size() < count; ++v) {
        Poly candidate = top + Poly::from_value(q, v);
        if (is_irreducible(candidate)) out.push_back(std::move(candidate));
    }
    return out;
}

Poly crt_solve(const std::vector<Poly>& residues, const std::vector<Poly>& moduli) {
    if (residues.size() != moduli.size())
        throw std::invalid_argument("residue/modulus count mismatch");
    if (moduli.empty()) throw std::invalid_argument("no moduli given");
    const uint32_t q = moduli.front().base();
    for (size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i].base() != q || residues[i].base() != q)
            throw std::invalid_argument("mixed bases in CRT input");
        if (moduli[i].degree() < 1)
            throw std::invalid_argument("CRT modulus must have degree >= 1");
        if (residues[i].degree() >= moduli[i].degree())
            throw std::invalid_argument("CRT residue not reduced mod its modulus");
    }
    Poly solution = residues[0];
    Poly modulus = moduli[0];
    for (size_t i = 1; i < moduli.size(); ++i) {
        ExtGcd e = ext_gcd(modulus, moduli[i]);
        if (!e.gcd.is_one()) throw std::invalid_argument("CRT moduli are not pairwise coprime");
        // solution' = solution * v * m_i + residue_i * u * modulus (mod modulus * m_i)
        Poly combined = solution * e.v * moduli[i] + residues[i] * e.u * modulus;
        modulus = modulus * moduli[i];
        solution = poly_divmod(combined, modulus).second;
    }
    return solution;
}

IrreducibleBasis IrreducibleBasis::first(uint32_t q, uint32_t t, uint32_t d) {
    IrreducibleBasis basis;
    basis.q = q;
    basis.t = t;
    basis.polys = enumerate_irreducibles(q, t, d);
    return basis;
}

}  // namespace anet
