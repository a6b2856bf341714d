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

#include "almostnet/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anet {

uint32_t BasicBox::total_length() const {
    uint32_t sum = 0;
    for (const auto& p : prefixes) sum += static_cast<uint32_t>(p.size());
    return sum;
}

std::string BasicBox::to_string() const {
    std::string out;
    for (uint32_t i = 0; i < dimension(); ++i) {
        if (i) out.push_back('x');
        DigitString s{q, prefixes[i]};
        out += s.to_string();
    }
    return out;
}

BasicBox BasicBox::parse(uint32_t q, const std::string& text) {
    require_prime_base(q);
    BasicBox box;
    box.q = q;
    size_t start = 0;
    while (true) {
        size_t sep = text.find('x', start);
        std::string field = text.substr(start, sep == std::string::npos ? sep : sep - start);
        box.prefixes.push_back(DigitString::parse(q, field).digits);
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    return box;
}

uint32_t CanonicalBox::total_blocks() const {
    uint32_t sum = 0;
    for (uint32_t i = 0; i < dimension(); ++i) sum += blocks(i);
    return sum;
}

CanonicalBox smallest_canonical_superbox(const BasicBox& box, uint32_t t) {
    if (t < 1) throw std::invalid_argument("block size must be >= 1");
    CanonicalBox out;
    out.q = box.q;
    out.t = t;
    out.prefixes.reserve(box.prefixes.size());
    for (const auto& p : box.prefixes) {
        size_t keep = p.size() - p.size() % t;
        out.prefixes.emplace_back(p.begin(), p.begin() + static_cast<long>(keep));
    }
    return out;
}

CrtStructure crt_structure(const CanonicalBox& box, const IrreducibleBasis& basis) {
    if (basis.dimension() != box.dimension())
        throw std::invalid_argument("basis dimension does not match the box");
    if (basis.q != box.q || basis.t != box.t)
        throw std::invalid_argument("basis parameters do not match the box");
    const uint32_t q = box.q;
    const uint32_t t = box.t;

    CrtStructure s;
    s.residues.reserve(box.dimension());
    std::vector<Poly> active_residues;
    std::vector<Poly> active_moduli;
    Poly modulus = Poly::one(q);
    for (uint32_t i = 0; i < box.dimension(); ++i) {
        const auto& prefix = box.prefixes[i];
        const uint32_t k = box.blocks(i);
        // chunk the prefix into blocks of t digits; block j becomes the
        // coefficient of p_i^j, with digit u of the block the
        // coefficient of x^u
        Poly residue = Poly::zero(q);
        Poly power = Poly::one(q);
        for (uint32_t j = 0; j < k; ++j) {
            std::vector<uint8_t> block(prefix.begin() + j * t, prefix.begin() + (j + 1) * t);
            residue = residue + Poly::from_coeffs(q, std::move(block)) * power;
            power = power * basis.polys[i];
        }
        s.residues.push_back(residue);
        if (k > 0) {
            active_residues.push_back(residue);
            active_moduli.push_back(power);  // p_i^{k_i}
            modulus = modulus * power;
        }
    }
    s.offset = active_moduli.empty() ? Poly::zero(q) : crt_solve(active_residues, active_moduli);
    s.modulus = modulus;
    return s;
}

bool contains(const BasicBox& box, const DigitPoint& pt) {
    if (box.q != pt.q) throw std::invalid_argument("box and point bases differ");
    if (box.dimension() != pt.dimension) throw std::invalid_argument("box and point dimensions differ");
    for (uint32_t i = 0; i < box.dimension(); ++i) {
        const auto& prefix = box.prefixes[i];
        if (prefix.size() > pt.digits_per_coord)
            throw std::invalid_argument("point carries too few digits for this box");
        auto c = pt.coord(i);
        if (!std::equal(prefix.begin(), prefix.end(), c.begin())) return false;
    }
    return true;
}

BoxType box_type(const CanonicalBox& box, const CrtStructure& s, uint32_t n, uint32_t d, uint32_t t) {
    if (box.dimension() != d) throw std::invalid_argument("box dimension mismatch");
    const uint32_t depth = box.total_blocks() * t;  // volume = q^-depth
    const uint32_t dt = d * t;
    if (depth > n || depth + dt < n + 1)
        throw std::invalid_argument("box volume outside the good-pair range");

    auto cleared_below = [&](const Poly& p, int64_t end_index) {
        // zero the coefficients of x^0 .. x^end_index (clamped)
        if (end_index < 0) return p;
        std::vector<uint8_t> c(p.coeffs());
        for (size_t i = 0; i < c.size() && i <= static_cast<size_t>(end_index); ++i) c[i] = 0;
        return Poly::from_coeffs(p.base(), std::move(c));
    };
    BoxType type;
    type.offset = cleared_below(s.offset, static_cast<int64_t>(n) - dt - 1);
    type.modulus = cleared_below(s.modulus, static_cast<int64_t>(n) - 3 * static_cast<int64_t>(dt));
    return type;
}

std::vector<Poly> fiber_selector(const CanonicalBox& enclosing, const BasicBox& beta,
                                 const IrreducibleBasis& basis, uint32_t degree_bound) {
    const uint32_t q = beta.q;
    require_prime_base(q);
    double bits = degree_bound * std::log2(static_cast<double>(q));
    if (bits > 22) throw std::invalid_argument("fiber enumeration guard exceeded (q^degree_bound > 2^22)");
    CanonicalBox expected = smallest_canonical_superbox(beta, enclosing.t);
    if (expected.prefixes != enclosing.prefixes)
        throw std::invalid_argument("the canonical box is not the smallest one enclosing beta");

    CrtStructure s = crt_structure(enclosing, basis);
    uint32_t longest = 0;
    for (uint32_t i = 0; i < beta.dimension(); ++i)
        longest = std::max(longest, beta.prefix_length(i));
    const uint32_t t = enclosing.t;
    const uint32_t digit_count = (longest + t - 1) / t * t;

    uint64_t total = 1;
    for (uint32_t e = 0; e < degree_bound; ++e) total *= q;
    std::vector<Poly> selected;
    for (uint64_t v = 0; v < total; ++v) {
        Poly g = Poly::from_value(q, v);
        DigitPoint pt = map_point(s.offset + g * s.modulus, basis, digit_count);
        if (contains(beta, pt)) selected.push_back(std::move(g));
    }
    return selected;
}

}  // namespace anet
