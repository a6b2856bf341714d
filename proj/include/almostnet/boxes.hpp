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

#ifndef ALMOSTNET_BOXES_HPP
#define ALMOSTNET_BOXES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "almostnet/gf.hpp"
#include "almostnet/radix.hpp"

namespace anet {

/// A product of base-q digit-prefix intervals: coordinate i spans
/// [0.prefix_i, 0.prefix_i + q^-len_i). Prefixes may be empty (the
/// whole [0,1) in that coordinate). Half-open semantics come for free
/// from the prefix representation.
struct BasicBox {
    uint32_t q = 0;
    std::vector<std::vector<uint8_t>> prefixes;

    uint32_t dimension() const { return static_cast<uint32_t>(prefixes.size()); }
    uint32_t prefix_length(uint32_t i) const { return static_cast<uint32_t>(prefixes[i].size()); }
    /// Sum of prefix lengths: the box has volume q^-total.
    uint32_t total_length() const;

    /// Text form: prefixes joined by 'x', e.g. "10x1x" for d=3 with an
    /// empty third prefix. The base is supplied by the caller.
    std::string to_string() const;
    static BasicBox parse(uint32_t q, const std::string& text);

    bool operator==(const BasicBox& rhs) const = default;
};

/// A basic box whose prefix lengths are all multiples of the digit
/// block size t.
struct CanonicalBox {
    uint32_t q = 0;
    uint32_t t = 0;
    std::vector<std::vector<uint8_t>> prefixes;

    uint32_t dimension() const { return static_cast<uint32_t>(prefixes.size()); }
    /// Number of complete digit blocks in coordinate i.
    uint32_t blocks(uint32_t i) const { return static_cast<uint32_t>(prefixes[i].size()) / t; }
    uint32_t total_blocks() const;

    BasicBox as_basic() const { return BasicBox{q, prefixes}; }
};

/// The polynomial preimage of a canonical box: the coset
/// offset + modulus * F_q[x], with modulus the product of the basis
/// primes raised to the per-coordinate block counts.
struct CrtStructure {
    Poly offset;                  // degree < deg(modulus)
    Poly modulus;                 // product of p_i^{k_i}
    std::vector<Poly> residues;   // per-coordinate residues mod p_i^{k_i}
};

/// High-coefficient truncation of a coset structure: two boxes with
/// equal truncations intersect every translate class the same way.
struct BoxType {
    Poly offset;   // coefficients of x^0..x^(n-dt-1) cleared
    Poly modulus;  // coefficients of x^0..x^(n-3dt) cleared
};

/// Per coordinate, drops the trailing digits that do not fill a whole
/// block; the result is the smallest canonical box containing the input.
CanonicalBox smallest_canonical_superbox(const BasicBox& box, uint32_t t);

/// Builds the coset structure of a canonical box over the given basis.
CrtStructure crt_structure(const CanonicalBox& box, const IrreducibleBasis& basis);

/// Prefix membership. The point must carry at least as many digits as
/// the longest prefix; anything less is an error, never a truncation.
bool contains(const BasicBox& box, const DigitPoint& pt);

/// Truncates (offset, modulus) to their high coefficients. Requires the
/// box volume to lie in the good-pair range [q^-n, q^(-n+dt-1)]; the
/// cleared index ranges are clamped at zero for small n.
BoxType box_type(const CanonicalBox& box, const CrtStructure& s, uint32_t n, uint32_t d, uint32_t t);

/// Test-support enumeration of {g : deg g < degree_bound,
/// r(offset + g*modulus) lands in beta}. Guarded: q^degree_bound must
/// stay at or below 2^22. Not used on generation or verification paths.
std::vector<Poly> fiber_selector(const CanonicalBox& enclosing, const BasicBox& beta,
                                 const IrreducibleBasis& basis, uint32_t degree_bound);

}  // namespace anet

#endif
