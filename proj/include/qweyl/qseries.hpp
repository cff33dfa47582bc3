#pragma once

#include <functional>
#include <map>

#include "qweyl/chi.hpp"
#include "qweyl/report.hpp"
#include "qweyl/series.hpp"
#include "qweyl/weylops.hpp"

namespace qweyl {

// Memo for solved Q-series, keyed by the orbit weight w(omega_i) and order.
class QCache {
public:
    const TruncSeries* find(const Weight& orbitWeight, int order) const;
    void put(const Weight& orbitWeight, int order, TruncSeries s);

private:
    std::map<std::pair<Weight, int>, TruncSeries> memo_;
};

// The normalized series Q_{w(omega_i),q^0} in the identity component:
// leading term 1, varpi-image 1, solving
//   E_e(Theta_w(Y_{i,q^{d_i}})) / leading = tau_{-d_i}(Q) / tau_{+d_i}(Q).
// Spectral equivariance gives every other shift via tau.
TruncSeries solve_Q(const CartanData& cd, const WeylWord& w, int i, int order,
                    QCache* cache = nullptr);

// V_{i,q^r}^{(k)} = (A_{i,q^r} A_{i,q^{r-2 d_i}} ... )^{-1} with k factors
Term v_block(const CartanData& cd, int i, int r, int k);

// One closed-form lattice sum: blocks with fixed spectral bases and a
// membership predicate on the exponent tuple.
struct LatticeSum {
    std::vector<std::pair<int, int>> blocks; // (node, base r)
    std::function<bool(const std::vector<int>&)> admit;
};

// expands the sum over all admissible tuples of total height <= order
TruncSeries lattice_sum_series(const CartanData& cd, const LatticeSum& ls, int shift, int order);

// the closed-form entries; key is the orbit weight w(omega_i)
LatticeSum rank2_Q_catalog(const CartanData& cd, const Weight& orbitWeight);
std::vector<Weight> rank2_Q_catalog_weights(const CartanData& cd);

// scripted Q with its chi and Psi factors, expanded in the identity component
TruncSeries script_Q(const CartanData& cd, const WeylWord& w, int i, int r, int order,
                     QCache* cache = nullptr);

// LHS and RHS of the extended QQ relation at (w, i), spectral shift r
std::pair<TruncSeries, TruncSeries> assemble_QQ_terms(const CartanData& cd, const WeylWord& w,
                                                      int i, int r, int order,
                                                      QCache* cache = nullptr);

VerifyReport verify_QQ(const CartanData& cd, int order, int maxLength = -1,
                       QCache* cache = nullptr, int jobs = 1);

struct ShiftedCharReport {
    Term psi;            // highest l-weight monomial
    TruncSeries series;  // E_e(Q) * bchi, the normalized q-character tail
    TruncSeries character; // bchi_{w(omega_i)}
    std::vector<Rat> coweight;
};

ShiftedCharReport shifted_qchar_report(const CartanData& cd, const WeylWord& w, int i, int r,
                                       int order, QCache* cache = nullptr);

// Sigma_{i,w,q^r} = Theta_w(Sigma_{i,q^r}) * Q_{w s_i(omega_i), q^{r+2 d_i}}^{-1},
// identity component
TruncSeries sigma_iw(const CartanData& cd, const WeylWord& w, int i, int r, int order,
                     QCache* cache = nullptr);

} // namespace qweyl
