#pragma once

#include <map>

#include "qweyl/series.hpp"

namespace qweyl {

// Exact element of Z[(1 - [-alpha])^{-1}]: a signed weight monomial times a
// product of factors (1 - [-alpha])^e with alpha a root.
struct RationalChar {
    Term num;                      // pure weight part, coefficient +-1
    std::map<Weight, int> factors; // alpha -> exponent e (negative = denominator)

    static RationalChar one(const CartanData& cd);
    RationalChar mul(const RationalChar& o) const;
    RationalChar inverse() const;
    RationalChar pow(int k) const;
    bool operator==(const RationalChar& o) const;
    std::string to_string() const;
};

// chi_{w(omega_i)} through the recursion along one reduced word of w.
RationalChar chi_extremal(const CartanData& cd, const WeylWord& w, int i);

// e_v-expansion truncated at height `order`
TruncSeries expand_char(const CartanData& cd, const RationalChar& c, const WeylElt& v, int order);

// the closed forms of the rank-2 catalog; key is the orbit weight w(omega_i)
RationalChar chi_catalog_rank2(const CartanData& cd, const Weight& orbitWeight);
// all catalog weights for a type, per-orbit order
std::vector<Weight> chi_catalog_weights(const CartanData& cd);

} // namespace qweyl
