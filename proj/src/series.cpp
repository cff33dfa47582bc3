#include "qweyl/series.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qweyl {

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(const CartanData& cd, WeylElt v, Weight anchor, int order, Poly body)
    : cd_(&cd), v_(std::move(v)), anchor_(std::move(anchor)), order_(order), body_(std::move(body)) {
    index();
}

int TruncSeries::height_of(const Term& t) const {
    Weight diff = v_.apply(anchor_ - t.ht_weight(*cd_));
    auto h = cd_->q_plus_height(diff);
    if (!h)
        throw std::invalid_argument("TruncSeries: term " + t.to_string() +
                                    " is not below the anchor " + anchor_.to_string());
    return *h;
}

void TruncSeries::index() {
    std::vector<Term> kept;
    kept.reserve(body_.term_count());
    for (const auto& t : body_.terms())
        if (height_of(t) <= order_) kept.push_back(t);
    body_ = Poly(std::move(kept));
    ht_.clear();
    ht_.reserve(body_.term_count());
    for (const auto& t : body_.terms()) ht_.push_back(height_of(t));
}

TruncSeries TruncSeries::mul(const TruncSeries& o) const {
    if (!(v_ == o.v_)) throw std::invalid_argument("TruncSeries::mul: component mismatch");
    int ord = std::min(order_, o.order_);
    std::vector<Term> acc;
    acc.reserve(body_.term_count() + o.body_.term_count());
    for (size_t a = 0; a < body_.term_count(); ++a) {
        for (size_t b = 0; b < o.body_.term_count(); ++b) {
            if (ht_[a] + o.ht_[b] > ord) continue;
            acc.push_back(body_.terms()[a].mul(o.body_.terms()[b]));
        }
    }
    return TruncSeries(*cd_, v_, anchor_ + o.anchor_, ord, Poly(std::move(acc)));
}

TruncSeries TruncSeries::mul_term(const Term& t) const {
    return TruncSeries(*cd_, v_, anchor_ + t.ht_weight(*cd_), order_, body_.mul_term(t));
}

TruncSeries TruncSeries::add(const TruncSeries& o) const { return sum_series({*this, o}); }

TruncSeries TruncSeries::sub(const TruncSeries& o) const { return add(o.negate()); }

TruncSeries TruncSeries::negate() const { return TruncSeries(*cd_, v_, anchor_, order_, -body_); }

TruncSeries TruncSeries::truncated(int newOrder) const {
    if (newOrder > order_)
        throw std::invalid_argument("TruncSeries::truncated: raising the order is not exact");
    return TruncSeries(*cd_, v_, anchor_, newOrder, body_);
}

TruncSeries TruncSeries::tau(int s) const {
    return TruncSeries(*cd_, v_, anchor_, order_, tau_shift(body_, s));
}

Term TruncSeries::leading_term() const {
    if (body_.is_zero()) throw std::domain_error("leading_term: zero series");
    int hmin = *std::min_element(ht_.begin(), ht_.end());
    std::vector<size_t> cands;
    for (size_t k = 0; k < ht_.size(); ++k)
        if (ht_[k] == hmin) cands.push_back(k);
    std::vector<size_t> winners;
    for (size_t c : cands) {
        Weight wc = body_.terms()[c].ht_weight(*cd_);
        bool dominates = true;
        for (size_t k = 0; k < body_.term_count(); ++k) {
            if (k == c) continue;
            Weight diff = v_.apply(wc - body_.terms()[k].ht_weight(*cd_));
            if (!cd_->q_plus_height(diff)) {
                dominates = false;
                break;
            }
        }
        if (dominates) winners.push_back(c);
    }
    if (winners.size() == 1) return body_.terms()[winners[0]];
    std::string msg = "leading_term: ambiguous maximal terms:";
    for (size_t c : cands) msg += " {" + body_.terms()[c].to_string() + "}";
    throw std::domain_error(msg);
}

TruncSeries TruncSeries::invert() const {
    Term lead = leading_term();
    if (!(lead.coeff.is_one() || lead.coeff.is_minus_one()))
        throw std::domain_error("invert: leading coefficient is not a unit: " + lead.to_string());
    int h0 = height_of(lead);
    Term m0inv = lead; // inverse monomial; +-1 coefficient is its own inverse
    m0inv.wt = -lead.wt;
    m0inv.y = lead.y.inverse();
    m0inv.psi = lead.psi.inverse();
    int ord = order_ - h0;
    if (ord < 0) throw std::domain_error("invert: leading term sits beyond the exact window");
    TruncSeries unitPart = mul_term(m0inv);
    unitPart = TruncSeries(*cd_, v_, Weight::zero(cd_->rank()), ord, unitPart.body());
    Poly r = unitPart.body() - Poly::of(unit_term(*cd_));
    TruncSeries R(*cd_, v_, Weight::zero(cd_->rank()), ord, std::move(r));
    for (int h : R.heights())
        if (h == 0) throw std::logic_error("invert: residual series has a height-0 term");
    TruncSeries acc(*cd_, v_, Weight::zero(cd_->rank()), ord, Poly::of(unit_term(*cd_)));
    TruncSeries p = acc;
    for (int k = 1; k <= ord && !p.is_zero(); ++k) {
        p = p.mul(R.negate());
        acc = TruncSeries(*cd_, v_, Weight::zero(cd_->rank()), ord, acc.body() + p.body());
    }
    return acc.mul_term(m0inv);
}

TruncSeries TruncSeries::varpi() const {
    Weight net = Weight::zero(cd_->rank());
    bool first = true;
    std::vector<Term> out;
    out.reserve(body_.term_count());
    for (const auto& t : body_.terms()) {
        Weight netT = t.varpi(*cd_) - t.ht_weight(*cd_); // Psi-contribution
        if (first) {
            net = netT;
            first = false;
        } else if (netT != net) {
            throw std::invalid_argument(
                "varpi: terms carry different net Psi-exponents; strip the prefactor first");
        }
        Term w;
        w.coeff = t.coeff;
        w.wt = t.varpi(*cd_);
        out.push_back(std::move(w));
    }
    return TruncSeries(*cd_, v_, anchor_ + net, order_, Poly(std::move(out)));
}

Poly TruncSeries::slice(int h) const {
    std::vector<Term> out;
    for (size_t k = 0; k < body_.term_count(); ++k)
        if (ht_[k] == h) out.push_back(body_.terms()[k]);
    return Poly(std::move(out));
}

std::string TruncSeries::to_string() const {
    return body_.to_string() + " + O(ht " + std::to_string(order_ + 1) + ")";
}

TruncSeries sum_series(const std::vector<TruncSeries>& parts) {
    if (parts.empty()) throw std::invalid_argument("sum_series: empty");
    const CartanData& cd = parts[0].cd();
    const WeylElt& v = parts[0].component();
    for (const auto& p : parts)
        if (!(p.component() == v)) throw std::invalid_argument("sum_series: component mismatch");
    const int n = cd.rank();
    std::vector<std::vector<int>> rel(parts.size());
    for (size_t k = 0; k < parts.size(); ++k) {
        Weight diff = v.apply(parts[k].anchor() - parts[0].anchor());
        auto rc = cd.root_coords(diff);
        if (!rc) throw std::invalid_argument("sum_series: anchors differ outside the root lattice");
        rel[k] = *rc;
    }
    std::vector<int> mx(n, 0);
    for (const auto& r : rel)
        for (int a = 0; a < n; ++a) mx[a] = std::max(mx[a], r[a]);
    Weight bump = Weight::zero(n);
    for (int a = 0; a < n; ++a) bump += cd.simple_root(a + 1) * mx[a];
    WeylElt vinv = cd.inverse(v);
    Weight U = parts[0].anchor() + vinv.apply(bump);
    int window = std::numeric_limits<int>::max();
    std::vector<Term> all;
    for (size_t k = 0; k < parts.size(); ++k) {
        int delta = 0;
        for (int a = 0; a < n; ++a) delta += mx[a] - rel[k][a];
        window = std::min(window, parts[k].order() + delta);
        for (const auto& t : parts[k].body().terms()) all.push_back(t);
    }
    return TruncSeries(cd, v, U, window, Poly(std::move(all)));
}

SeriesDiff compare_series(const TruncSeries& a, const TruncSeries& b, int upTo) {
    TruncSeries diff = a.sub(b);
    SeriesDiff out;
    out.window = diff.order();
    if (out.window < upTo) {
        out.equal = false;
        out.witness = "comparison window " + std::to_string(out.window) +
                      " below requested height " + std::to_string(upTo);
        return out;
    }
    out.window = upTo;
    for (size_t k = 0; k < diff.body().term_count(); ++k) {
        if (diff.heights()[k] <= upTo) {
            out.equal = false;
            out.witness = diff.body().terms()[k].to_string() + " at height " +
                          std::to_string(diff.heights()[k]);
            return out;
        }
    }
    out.equal = true;
    return out;
}

// ---------------------------------------------------------------- Sigma

SigmaBranch sigma_branch_for(const CartanData& cd, const WeylElt& u, int i) {
    WeylElt us = u.compose(cd.simple_reflection(i));
    return cd.length(us) > cd.length(u) ? SigmaBranch::E : SigmaBranch::Si;
}

TruncSeries sigma_series(const CartanData& cd, int i, int r, SigmaBranch branch, int order,
                         const WeylElt& component) {
    const int di = cd.sym(i);
    std::vector<Term> terms;
    if (branch == SigmaBranch::E) {
        Term cur = unit_term(cd);
        terms.push_back(cur);
        auto step = cd.q_plus_height(component.apply(cd.simple_root(i)));
        if (!step || *step == 0)
            throw std::invalid_argument("sigma_series: branch e invalid in this component");
        for (int k = 1; k * *step <= order; ++k) {
            Term a = special_monomial(cd, SpecialKind::A, i, r - 2 * di * (k - 1));
            a.y = a.y.inverse();
            cur = cur.mul(a);
            terms.push_back(cur);
        }
        return TruncSeries(cd, component, Weight::zero(cd.rank()), order, Poly(std::move(terms)));
    }
    auto step = cd.q_plus_height(component.apply(-cd.simple_root(i)));
    if (!step || *step == 0)
        throw std::invalid_argument("sigma_series: branch s_i invalid in this component");
    Term cur = unit_term(cd);
    cur.coeff = BigInt(-1);
    for (int k = 1; (k - 1) * *step <= order; ++k) {
        cur = cur.mul(special_monomial(cd, SpecialKind::A, i, r + 2 * di * k));
        terms.push_back(cur);
    }
    return TruncSeries(cd, component, cd.simple_root(i), order, Poly(std::move(terms)));
}

TruncSeries sigma_series_in(const CartanData& cd, int i, int r, int order, const WeylElt& u) {
    return sigma_series(cd, i, r, sigma_branch_for(cd, u, i), order, u);
}

// ---------------------------------------------------------------- PiElement

const TruncSeries& PiElement::at(const WeylElt& v) const {
    auto it = comp_.find(v);
    if (it == comp_.end()) throw std::out_of_range("PiElement: missing component");
    return it->second;
}

namespace {

// index of a term whose grading weight dominates all others in the w-order
int dominating_index(const CartanData& cd, const WeylElt& w, const Poly& p) {
    const auto& ts = p.terms();
    for (size_t c = 0; c < ts.size(); ++c) {
        bool dom = true;
        for (size_t k = 0; k < ts.size(); ++k)
            if (!cd.q_plus_height(w.apply(ts[c].ht_weight(cd) - ts[k].ht_weight(cd)))) {
                dom = false;
                break;
            }
        if (dom) return static_cast<int>(c);
    }
    return -1;
}

} // namespace

PiElement diag_embed(const CartanData& cd, const Poly& p, int order) {
    std::map<WeylElt, TruncSeries> comps;
    for (const auto& w : cd.all_elements()) {
        if (p.is_zero()) {
            comps.emplace(w, TruncSeries(cd, w, Weight::zero(cd.rank()), order, Poly()));
            continue;
        }
        int idx = dominating_index(cd, w, p);
        if (idx < 0)
            throw std::invalid_argument("diag_embed: no dominating weight in component " +
                                        cd.reduced_word(w).to_string());
        comps.emplace(w, TruncSeries(cd, w, p.terms()[idx].ht_weight(cd), order, p));
    }
    return PiElement(std::move(comps));
}

PiElement sigma_pi(const CartanData& cd, int i, int r, int order) {
    std::map<WeylElt, TruncSeries> comps;
    for (const auto& u : cd.all_elements()) comps.emplace(u, sigma_series_in(cd, i, r, order, u));
    return PiElement(std::move(comps));
}

// ---------------------------------------------------------------- Theta

namespace {

struct ThetaImages {
    const CartanData& cd;
    int i;
    WeylElt outComp;
    int order;
    std::map<int, std::vector<TruncSeries>> posPow;
    std::map<int, std::vector<TruncSeries>> negPow;

    ThetaImages(const CartanData& c, int node, WeylElt oc, int ord)
        : cd(c), i(node), outComp(std::move(oc)), order(ord) {}

    TruncSeries base(int r) {
        const int di = cd.sym(i);
        Term head = y_var(cd, i, r);
        Term a = special_monomial(cd, SpecialKind::A, i, r - di);
        a.y = a.y.inverse();
        head = head.mul(a);
        TruncSeries num = sigma_series_in(cd, i, r - 3 * di, order, outComp);
        TruncSeries den = sigma_series_in(cd, i, r - di, order, outComp);
        return num.mul(den.invert()).mul_term(head);
    }

    const TruncSeries& get(int r, int e) {
        auto& table = e > 0 ? posPow : negPow;
        int k = e > 0 ? e : -e;
        auto& vec = table[r];
        if (vec.empty()) {
            TruncSeries b = base(r);
            vec.push_back(e > 0 ? b : b.invert());
        }
        while (static_cast<int>(vec.size()) < k) vec.push_back(vec.back().mul(vec.front()));
        return vec[k - 1];
    }
};

} // namespace

TruncSeries theta_step(const CartanData& cd, int i, const TruncSeries& x) {
    const WeylElt si = cd.simple_reflection(i);
    const WeylElt outComp = x.component().compose(si);
    for (const auto& t : x.body().terms())
        if (!t.psi.empty() || !t.wt.is_zero())
            throw std::invalid_argument("theta_step: input must be a Y-polynomial component");
    ThetaImages imgs(cd, i, outComp, x.order());
    Weight outAnchor = si.apply(x.anchor());
    std::vector<Term> acc;
    for (size_t k = 0; k < x.body().term_count(); ++k) {
        const Term& t = x.body().terms()[k];
        const int baseHt = x.heights()[k];
        Term fixed;
        fixed.coeff = t.coeff;
        fixed.wt = t.wt;
        fixed.psi = t.psi;
        std::vector<std::pair<int, int>> ivars;
        for (const auto& f : t.y.factors()) {
            if (f.node == i)
                ivars.push_back({f.r, f.e});
            else
                fixed.y.mul_var(f.node, f.r, f.e);
        }
        if (ivars.empty()) {
            acc.push_back(fixed);
            continue;
        }
        TruncSeries prod = imgs.get(ivars[0].first, ivars[0].second);
        for (size_t c = 1; c < ivars.size(); ++c)
            prod = prod.mul(imgs.get(ivars[c].first, ivars[c].second));
        for (size_t c = 0; c < prod.body().term_count(); ++c) {
            if (baseHt + prod.heights()[c] > x.order()) continue;
            acc.push_back(prod.body().terms()[c].mul(fixed));
        }
    }
    return TruncSeries(cd, outComp, outAnchor, x.order(), Poly(std::move(acc)));
}

TruncSeries theta_word(const CartanData& cd, const WeylWord& w, const TruncSeries& x) {
    TruncSeries r = x;
    for (size_t k = w.letters.size(); k-- > 0;) r = theta_step(cd, w.letters[k], r);
    return r;
}

PiElement theta_apply(const CartanData& cd, const WeylWord& w, const PiElement& x) {
    PiElement cur = x;
    for (size_t k = w.letters.size(); k-- > 0;) {
        std::map<WeylElt, TruncSeries> next;
        for (const auto& [v, s] : cur.components()) {
            TruncSeries img = theta_step(cd, w.letters[k], s);
            next.emplace(img.component(), std::move(img));
        }
        cur = PiElement(std::move(next));
    }
    return cur;
}

TruncSeries theta_to_e(const CartanData& cd, const WeylWord& w, const Poly& p, int order) {
    WeylElt src = cd.elt_of(w);
    if (p.is_zero()) return TruncSeries(cd, cd.identity(), Weight::zero(cd.rank()), order, Poly());
    int idx = dominating_index(cd, src, p);
    if (idx < 0) throw std::invalid_argument("theta_to_e: no dominating weight");
    TruncSeries x(cd, src, p.terms()[idx].ht_weight(cd), order, p);
    TruncSeries r = theta_word(cd, w, x);
    if (!(r.component() == cd.identity()))
        throw std::logic_error("theta_to_e: did not land in the identity component");
    return r;
}

// ---------------------------------------------------------------- Theta'

namespace {

struct ThetaPrimeImages {
    const CartanData& cd;
    int i;
    WeylElt outComp;
    int order;
    std::map<int, std::vector<TruncSeries>> posPow;
    std::map<int, std::vector<TruncSeries>> negPow;

    ThetaPrimeImages(const CartanData& c, int node, WeylElt oc, int ord)
        : cd(c), i(node), outComp(std::move(oc)), order(ord) {}

    TruncSeries base(int r) {
        const int di = cd.sym(i);
        Term head = special_monomial(cd, SpecialKind::PsiTilde, i, r - 2 * di);
        TruncSeries sig = sigma_series_in(cd, i, r - 2 * di, order, outComp);
        TruncSeries emb(cd, outComp, sig.anchor(), order, embed_lweight(cd, sig.body()));
        return emb.mul_term(head);
    }

    const TruncSeries& get(int r, int e) {
        auto& table = e > 0 ? posPow : negPow;
        int k = e > 0 ? e : -e;
        auto& vec = table[r];
        if (vec.empty()) {
            TruncSeries b = base(r);
            vec.push_back(e > 0 ? b : b.invert());
        }
        while (static_cast<int>(vec.size()) < k) vec.push_back(vec.back().mul(vec.front()));
        return vec[k - 1];
    }
};

} // namespace

TruncSeries theta_prime_step(const CartanData& cd, int i, const TruncSeries& x) {
    const WeylElt si = cd.simple_reflection(i);
    const WeylElt outComp = x.component().compose(si);
    ThetaPrimeImages imgs(cd, i, outComp, x.order());
    std::vector<TruncSeries> pieces;
    for (size_t k = 0; k < x.body().term_count(); ++k) {
        Term t = embed_lweight(cd, x.body().terms()[k]);
        const int baseHt = x.heights()[k];
        Term fixed;
        fixed.coeff = t.coeff;
        fixed.wt = si.apply(t.wt);
        std::vector<std::pair<int, int>> ivars;
        for (const auto& f : t.psi.factors()) {
            if (f.node == i)
                ivars.push_back({f.r, f.e});
            else
                fixed.psi.mul_var(f.node, f.r, f.e);
        }
        TruncSeries piece(cd, outComp, fixed.ht_weight(cd), x.order() - baseHt, Poly::of(fixed));
        for (const auto& [r, e] : ivars) piece = piece.mul(imgs.get(r, e));
        pieces.push_back(piece.truncated(std::min(piece.order(), x.order() - baseHt)));
    }
    if (pieces.empty())
        return TruncSeries(cd, outComp, Weight::zero(cd.rank()), x.order(), Poly());
    return sum_series(pieces);
}

TruncSeries theta_prime_word(const CartanData& cd, const WeylWord& w, const TruncSeries& x) {
    TruncSeries r = x;
    for (size_t k = w.letters.size(); k-- > 0;) r = theta_prime_step(cd, w.letters[k], r);
    return r;
}

TruncSeries theta_prime_to_e(const CartanData& cd, const WeylWord& w, const Poly& p, int order) {
    WeylElt src = cd.elt_of(w);
    Poly emb = embed_lweight(cd, p);
    if (emb.is_zero()) return TruncSeries(cd, cd.identity(), Weight::zero(cd.rank()), order, Poly());
    int idx = dominating_index(cd, src, emb);
    if (idx < 0) throw std::invalid_argument("theta_prime_to_e: no dominating weight");
    TruncSeries x(cd, src, emb.terms()[idx].ht_weight(cd), order, emb);
    TruncSeries r = theta_prime_word(cd, w, x);
    if (!(r.component() == cd.identity()))
        throw std::logic_error("theta_prime_to_e: did not land in the identity component");
    return r;
}

} // namespace qweyl
