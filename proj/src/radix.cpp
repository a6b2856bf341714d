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

#include "almostnet/radix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace anet {

std::string DigitString::to_string() const {
    std::string out;
    if (q <= 10) {
        out.reserve(digits.size());
        for (uint8_t d : digits) out.push_back(static_cast<char>('0' + d));
    } else {
        for (size_t i = 0; i < digits.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(digits[i]);
        }
    }
    return out;
}

DigitString DigitString::parse(uint32_t q, const std::string& text) {
    require_prime_base(q);
    DigitString s;
    s.q = q;
    if (q <= 10) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("bad character in digit string");
            uint32_t d = static_cast<uint32_t>(ch - '0');
            if (d >= q) throw std::invalid_argument("digit out of range for base");
            s.digits.push_back(static_cast<uint8_t>(d));
        }
    } else if (!text.empty()) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t pos = 0;
            unsigned long d = std::stoul(item, &pos);
            if (pos != item.size()) throw std::invalid_argument("bad token in digit string");
            if (d >= q) throw std::invalid_argument("digit out of range for base");
            s.digits.push_back(static_cast<uint8_t>(d));
        }
    }
    return s;
}

double to_float(const DigitString& s) {
    // Horner from the least significant end keeps every step exact
    // until the final roundings.
    double v = 0.0;
    for (size_t j = s.digits.size(); j-- > 0;) v = (v + s.digits[j]) / s.q;
    return v;
}

DigitString DigitPoint::coord_string(uint32_t i) const {
    DigitString s;
    s.q = q;
    auto c = coord(i);
    s.digits.assign(c.begin(), c.end());
    return s;
}

Poly Expansion::reconstruct() const {
    Poly acc = Poly::zero(base.base());
    for (size_t i = digits.size(); i-- > 0;) acc = acc * base + digits[i];
    return acc;
}

Expansion expand_base_p(const Poly& f, const Poly& p) {
    if (p.degree() < 1) throw std::invalid_argument("expansion base must have degree >= 1");
    if (!is_irreducible(p)) throw std::invalid_argument("expansion base must be irreducible");
    if (f.base() != p.base()) throw std::invalid_argument("polynomials over different bases");
    Expansion e;
    e.base = p;
    Poly rest = f;
    while (!rest.is_zero()) {
        auto [quo, rem] = poly_divmod(rest, p);
        e.digits.push_back(std::move(rem));
        rest = std::move(quo);
    }
    return e;
}

DigitString coordinate_digits(const Poly& f, const Poly& p, uint32_t digit_count) {
    const uint32_t t = static_cast<uint32_t>(std::max(p.degree(), 0));
    if (p.degree() < 1) throw std::invalid_argument("expansion base must have degree >= 1");
    if (digit_count % t != 0)
        throw std::invalid_argument("digit count must be a multiple of the block size");
    Expansion e = expand_base_p(f, p);
    DigitString s;
    s.q = f.base();
    s.digits.assign(digit_count, 0);
    const uint32_t blocks = digit_count / t;
    for (uint32_t b = 0; b < blocks && b < e.digits.size(); ++b) {
        // inside a block, the coefficient of x^0 is the most significant digit
        for (uint32_t i = 0; i < t; ++i) s.digits[b * t + i] = e.digits[b].coeff(i);
    }
    return s;
}

DigitPoint map_point(const Poly& f, const IrreducibleBasis& basis, uint32_t digit_count) {
    if (f.base() != basis.q) throw std::invalid_argument("polynomial base does not match basis");
    DigitPoint pt;
    pt.reset(basis.q, basis.dimension(), digit_count);
    for (uint32_t i = 0; i < basis.dimension(); ++i) {
        DigitString s = coordinate_digits(f, basis.polys[i], digit_count);
        std::copy(s.digits.begin(), s.digits.end(), pt.coord(i).begin());
    }
    return pt;
}

namespace detail {

DigitEmitter::DigitEmitter(const Poly& modulus, uint32_t digit_count)
    : q_(modulus.base()),
      t_(static_cast<uint32_t>(modulus.degree())),
      digit_count_(digit_count) {
    require_prime_base(q_);
    if (modulus.degree() < 1 || !modulus.is_monic())
        throw std::invalid_argument("digit emitter needs a monic modulus of degree >= 1");
    if (digit_count % t_ != 0)
        throw std::invalid_argument("digit count must be a multiple of the block size");
    modulus_.assign(modulus.coeffs().begin(), modulus.coeffs().end() - 1);
    mul_.resize(static_cast<size_t>(q_) * q_);
    sub_.resize(static_cast<size_t>(q_) * q_);
    for (uint32_t a = 0; a < q_; ++a) {
        for (uint32_t b = 0; b < q_; ++b) {
            mul_[a * q_ + b] = static_cast<uint8_t>(a * b % q_);
            sub_[a * q_ + b] = static_cast<uint8_t>((a + q_ - b) % q_);
        }
    }
}

void DigitEmitter::run(const uint8_t* coeffs, size_t n, uint8_t* out) {
    const uint32_t blocks = digit_count_ / t_;
    work_.assign(std::max<size_t>(n, 1), 0);
    std::copy(coeffs, coeffs + n, work_.begin());
    quot_.assign(work_.size(), 0);

    size_t len = work_.size();
    for (uint32_t b = 0; b < blocks; ++b) {
        // one round of long division by the monic degree-t modulus:
        // remainder -> digit block b, quotient -> next round's input
        if (len > t_) {
            for (size_t j = len - 1; j >= t_; --j) {
                const uint8_t factor = work_[j];
                if (factor != 0) {
                    const uint8_t* mrow = &mul_[static_cast<size_t>(factor) * q_];
                    for (uint32_t i = 0; i < t_; ++i) {
                        uint8_t& cell = work_[j - t_ + i];
                        cell = sub_[static_cast<size_t>(cell) * q_ + mrow[modulus_[i]]];
                    }
                    quot_[j - t_] = factor;
                    work_[j] = 0;
                }
            }
        }
        // block layout: the coefficient of x^0 is the block's most
        // significant digit, so it is written first
        const uint32_t avail = static_cast<uint32_t>(std::min<size_t>(len, t_));
        for (uint32_t i = 0; i < t_; ++i) out[b * t_ + i] = i < avail ? work_[i] : 0;
        if (len > t_) {
            std::copy(quot_.begin(), quot_.begin() + static_cast<long>(len - t_), work_.begin());
            std::fill(quot_.begin(), quot_.begin() + static_cast<long>(len - t_), 0);
            len -= t_;
        } else {
            len = 1;
            work_[0] = 0;
        }
    }
}

}  // namespace detail
}  // namespace anet
