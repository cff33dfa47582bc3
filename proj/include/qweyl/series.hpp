#pragma once

#include <map>
#include <vector>

#include "qweyl/monomial.hpp"

namespace qweyl {

// A height-truncated model of one component of the completed ring: all terms
// t satisfy v(anchor) - v(varpi(t)) in Q^+ with root-lattice height <= order,
// and the series is exactly represented through that height.
class TruncSeries {
public:
    TruncSeries() = default;
    // Filters terms above `order`; throws if a term is not below the anchor.
    TruncSeries(const CartanData& cd, WeylElt v, Weight anchor, int order, Poly body);

    const CartanData& cd() const { return *cd_; }
    const WeylElt& component() const { return v_; }
    const Weight& anchor() const { return anchor_; }
    int order() const { return order_; }
    const Poly& body() const { return body_; }
    const std::vector<int>& heights() const { return ht_; }
    bool is_zero() const { return body_.is_zero(); }

    int height_of(const Term& t) const; // throws if incomparable

    TruncSeries mul(const TruncSeries& o) const;
    TruncSeries mul_term(const Term& t) const;
    TruncSeries add(const TruncSeries& o) const;
    TruncSeries sub(const TruncSeries& o) const;
    TruncSeries negate() const;
    // requires an invertible leading term (coefficient +-1)
    TruncSeries invert() const;
    TruncSeries truncated(int newOrder) const;
    TruncSeries tau(int s) const;

    // unique term whose weight dominates every other term's in the v-twisted
    // order; throws AmbiguousLeading when tied or absent
    Term leading_term() const;

    // collapse every term to its pure weight class
    TruncSeries varpi() const;

    // height-graded slice
    Poly slice(int h) const;

    std::string to_string() const;

private:
    const CartanData* cd_ = nullptr;
    WeylElt v_;
    Weight anchor_;
    int order_ = 0;
    Poly body_;
    std::vector<int> ht_;

    void index();
};

// Sum with a common dominating anchor constructed automatically. All pairwise
// anchor differences must lie in the root lattice.
TruncSeries sum_series(const std::vector<TruncSeries>& parts);

// zero-vs-zero comparison window of a - b; the difference must vanish there
struct SeriesDiff {
    bool equal;        // no term within the window
    int window;        // certified comparison height
    std::string witness; // lowest offending term, if any
};
SeriesDiff compare_series(const TruncSeries& a, const TruncSeries& b, int upTo);

enum class SigmaBranch { E, Si };

// The two solutions of Sigma_{i,a} = 1 + A_{i,a}^{-1} Sigma_{i,a q^{-2 d_i}}.
TruncSeries sigma_series(const CartanData& cd, int i, int r, SigmaBranch branch, int order,
                         const WeylElt& component);

// branch selected by the component, as the operators require:
// component u carries branch E iff l(u s_i) > l(u)
SigmaBranch sigma_branch_for(const CartanData& cd, const WeylElt& u, int i);
TruncSeries sigma_series_in(const CartanData& cd, int i, int r, int order, const WeylElt& u);

// Direct sum over Weyl-group components.
class PiElement {
public:
    PiElement() = default;
    explicit PiElement(std::map<WeylElt, TruncSeries> comps) : comp_(std::move(comps)) {}
    const std::map<WeylElt, TruncSeries>& components() const { return comp_; }
    std::map<WeylElt, TruncSeries>& components() { return comp_; }
    const TruncSeries& at(const WeylElt& v) const;

private:
    std::map<WeylElt, TruncSeries> comp_;
};

// Diagonal embedding of a finite Y-polynomial (weight parts allowed) into
// every component.
PiElement diag_embed(const CartanData& cd, const Poly& p, int order);

// Sigma_{i,q^r} as an element of Pi, with the branch of each component chosen
// per the length rule.
PiElement sigma_pi(const CartanData& cd, int i, int r, int order);

// Theta_i on one component: Y-polynomial input (no Psi, no weight parts),
// output lands in component v * s_i.
TruncSeries theta_step(const CartanData& cd, int i, const TruncSeries& x);
// word applied letter by letter, rightmost letter first
TruncSeries theta_word(const CartanData& cd, const WeylWord& w, const TruncSeries& x);
PiElement theta_apply(const CartanData& cd, const WeylWord& w, const PiElement& x);

// E_e(Theta_w(p)) for a finite Y-polynomial p: routes through the single
// source component w.
TruncSeries theta_to_e(const CartanData& cd, const WeylWord& w, const Poly& p, int order);

// Theta'_i: Psi-variables and weight elements transform; Y-variables in the
// input are first embedded, so the result is Y-free.
TruncSeries theta_prime_step(const CartanData& cd, int i, const TruncSeries& x);
TruncSeries theta_prime_word(const CartanData& cd, const WeylWord& w, const TruncSeries& x);
TruncSeries theta_prime_to_e(const CartanData& cd, const WeylWord& w, const Poly& p, int order);

} // namespace qweyl
