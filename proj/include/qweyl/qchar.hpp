#pragma once

#include "qweyl/qseries.hpp"

namespace qweyl {

// Finite exact q-character with a dominant highest monomial.
struct QCharacter {
    Term highest;
    Poly body;
};

// catalog entries: A1 (i=1), A2 (i=1,2), B2 (i=1,2), G2 (i=2)
QCharacter qchar_small_rep(const CartanData& cd, int i, int r);
std::vector<int> qchar_catalog_nodes(const CartanData& cd);

// Minimal closure of a dominant monomial under sl2-string expansions at each
// node. Loud failure when the content is not a plain string or the closure
// exceeds `bound`.
QCharacter fm_complete(const CartanData& cd, const Term& m, size_t bound = 512);

// chi_q(V) with every Y_{i,q^s} replaced by the w-twisted ratio
// [w(omega_i)] Psi_{w,s-d_i} E_e(Q_{w,s-d_i}) / (Psi_{w,s+d_i} E_e(Q_{w,s+d_i})),
// expanded in the identity component. The result is in Psi-coordinates.
TruncSeries tq_substitution(const CartanData& cd, const WeylWord& w, const QCharacter& V,
                            int order, QCache* cache = nullptr);

// substitution invariance for every (w, catalog node) pair
VerifyReport verify_TQ(const CartanData& cd, int order, int maxLength = -1,
                       QCache* cache = nullptr, int jobs = 1);

// Theta_i-invariance of a q-character in every component, per node i
VerifyReport verify_weyl_invariance(const CartanData& cd, const QCharacter& V, int order);

} // namespace qweyl
