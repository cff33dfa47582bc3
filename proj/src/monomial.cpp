#include "qweyl/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace qweyl {

// ---------------------------------------------------------------- ExpMap

static bool key_less(const VarExp& a, const VarExp& b) {
    if (a.node != b.node) return a.node < b.node;
    return a.r < b.r;
}

void ExpMap::set(int node, int r, int e) {
    VarExp probe{node, r, 0};
    auto it = std::lower_bound(v_.begin(), v_.end(), probe, key_less);
    if (it != v_.end() && it->node == node && it->r == r) {
        if (e == 0)
            v_.erase(it);
        else
            it->e = e;
    } else if (e != 0) {
        v_.insert(it, VarExp{node, r, e});
    }
}

void ExpMap::mul_var(int node, int r, int e) {
    if (e == 0) return;
    VarExp probe{node, r, 0};
    auto it = std::lower_bound(v_.begin(), v_.end(), probe, key_less);
    if (it != v_.end() && it->node == node && it->r == r) {
        it->e += e;
        if (it->e == 0) v_.erase(it);
    } else {
        v_.insert(it, VarExp{node, r, e});
    }
}

int ExpMap::get(int node, int r) const {
    VarExp probe{node, r, 0};
    auto it = std::lower_bound(v_.begin(), v_.end(), probe, key_less);
    if (it != v_.end() && it->node == node && it->r == r) return it->e;
    return 0;
}

ExpMap ExpMap::operator*(const ExpMap& o) const {
    ExpMap r;
    r.v_.reserve(v_.size() + o.v_.size());
    size_t a = 0, b = 0;
    while (a < v_.size() && b < o.v_.size()) {
        if (key_less(v_[a], o.v_[b])) {
            r.v_.push_back(v_[a++]);
        } else if (key_less(o.v_[b], v_[a])) {
            r.v_.push_back(o.v_[b++]);
        } else {
            int e = v_[a].e + o.v_[b].e;
            if (e != 0) r.v_.push_back(VarExp{v_[a].node, v_[a].r, e});
            ++a;
            ++b;
        }
    }
    while (a < v_.size()) r.v_.push_back(v_[a++]);
    while (b < o.v_.size()) r.v_.push_back(o.v_[b++]);
    return r;
}

ExpMap ExpMap::pow(int k) const {
    if (k == 0) return ExpMap();
    ExpMap r = *this;
    for (auto& f : r.v_) f.e *= k;
    return r;
}

ExpMap ExpMap::tau(int s) const {
    ExpMap r = *this;
    for (auto& f : r.v_) f.r += s;
    return r;
}

ExpMap ExpMap::flip_r() const {
    ExpMap r = *this;
    for (auto& f : r.v_) f.r = -f.r;
    std::sort(r.v_.begin(), r.v_.end(), key_less);
    return r;
}

bool ExpMap::operator<(const ExpMap& o) const {
    return std::lexicographical_compare(
        v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), [](const VarExp& a, const VarExp& b) {
            if (a.node != b.node) return a.node < b.node;
            if (a.r != b.r) return a.r < b.r;
            return a.e < b.e;
        });
}

// ---------------------------------------------------------------- Term

Weight Term::varpi(const CartanData& cd) const {
    Weight w = wt;
    for (const auto& f : y.factors()) w.c[f.node - 1] += f.e;
    for (const auto& f : psi.factors()) w.c[f.node - 1] += f.e;
    (void)cd;
    return w;
}

Weight Term::ht_weight(const CartanData& cd) const {
    Weight w = wt;
    for (const auto& f : y.factors()) w.c[f.node - 1] += f.e;
    (void)cd;
    return w;
}

Term Term::mul(const Term& o) const {
    Term r;
    r.coeff = coeff * o.coeff;
    r.wt = wt + o.wt;
    r.y = y * o.y;
    r.psi = psi * o.psi;
    return r;
}

Term Term::tau(int s) const {
    Term r = *this;
    r.y = r.y.tau(s);
    r.psi = r.psi.tau(s);
    return r;
}

bool Term::mono_less(const Term& a, const Term& b) {
    if (a.wt != b.wt) return a.wt < b.wt;
    if (!(a.y == b.y)) return a.y < b.y;
    return a.psi < b.psi;
}

static void append_factors(std::string& s, const ExpMap& m, const char* name, bool display) {
    for (const auto& f : m.factors()) {
        s += " * ";
        s += name;
        s += "[";
        s += std::to_string(f.node);
        s += ",";
        if (display) s += "q^";
        s += std::to_string(f.r);
        s += "]^";
        s += std::to_string(f.e);
    }
}

static std::string term_to_string(const Term& t, bool display) {
    std::string s;
    bool unitCoeff = t.coeff.is_one();
    if (!unitCoeff) s += t.coeff.to_string();
    std::string body;
    if (!t.wt.is_zero()) body += " * w" + t.wt.to_string();
    append_factors(body, t.y, "Y", display);
    append_factors(body, t.psi, "Psi", display);
    if (body.empty()) return unitCoeff ? "1" : s;
    if (unitCoeff) return body.substr(3); // drop leading " * "
    return s + body;
}

std::string Term::to_string() const { return term_to_string(*this, false); }
std::string Term::to_display() const { return term_to_string(*this, true); }

Term make_term(const CartanData& cd, long long coeff, const Weight& wt,
               const std::vector<VarExp>& yexp, const std::vector<VarExp>& psiexp) {
    Term t;
    t.coeff = BigInt(coeff);
    t.wt = wt;
    if (wt.rank() != cd.rank()) throw std::invalid_argument("make_term: weight rank mismatch");
    for (const auto& f : yexp) t.y.mul_var(f.node, f.r, f.e);
    for (const auto& f : psiexp) t.psi.mul_var(f.node, f.r, f.e);
    return t;
}

Term unit_term(const CartanData& cd) {
    Term t;
    t.coeff = BigInt(1);
    t.wt = Weight::zero(cd.rank());
    return t;
}

Term weight_term(const CartanData& cd, const Weight& w, long long coeff) {
    Term t;
    t.coeff = BigInt(coeff);
    t.wt = w;
    (void)cd;
    return t;
}

Term y_var(const CartanData& cd, int i, int r, int e) {
    Term t = unit_term(cd);
    t.y.mul_var(i, r, e);
    return t;
}

Term psi_var(const CartanData& cd, int i, int r, int e) {
    Term t = unit_term(cd);
    t.psi.mul_var(i, r, e);
    return t;
}

Term special_monomial(const CartanData& cd, SpecialKind kind, int i, int r) {
    const int n = cd.rank();
    if (i < 1 || i > n) throw std::invalid_argument("special_monomial: node out of range");
    Term t = unit_term(cd);
    const int di = cd.sym(i);
    switch (kind) {
    case SpecialKind::A: {
        t.y.mul_var(i, r - di, 1);
        t.y.mul_var(i, r + di, 1);
        for (int j = 1; j <= n; ++j) {
            switch (cd.cartan(j, i)) {
            case -1: t.y.mul_var(j, r, -1); break;
            case -2:
                t.y.mul_var(j, r - 1, -1);
                t.y.mul_var(j, r + 1, -1);
                break;
            case -3:
                t.y.mul_var(j, r - 2, -1);
                t.y.mul_var(j, r, -1);
                t.y.mul_var(j, r + 2, -1);
                break;
            default: break;
            }
        }
        break;
    }
    case SpecialKind::W:
    case SpecialKind::U: {
        const int dloc = cd.lacing_of(i);
        const int gap = dloc - di;
        auto put = [&](int rr) {
            if (kind == SpecialKind::W) {
                t.y.mul_var(i, rr, 1);
            } else {
                t = t.mul(special_monomial(cd, SpecialKind::A, i, rr));
            }
        };
        if (gap == 0) {
            put(r);
        } else if (gap == 1) {
            put(r - 1);
            put(r + 1);
        } else if (gap == 2) {
            put(r - 2);
            put(r);
            put(r + 2);
        } else {
            throw std::logic_error("special_monomial: unreachable lacing gap");
        }
        break;
    }
    case SpecialKind::PsiTilde: {
        t.psi.mul_var(i, r, -1);
        for (int j = 1; j <= n; ++j) {
            switch (cd.cartan(i, j)) {
            case -1: t.psi.mul_var(j, r + di, 1); break;
            case -2:
                t.psi.mul_var(j, r, 1);
                t.psi.mul_var(j, r + 2, 1);
                break;
            case -3:
                t.psi.mul_var(j, r - 1, 1);
                t.psi.mul_var(j, r + 1, 1);
                t.psi.mul_var(j, r + 3, 1);
                break;
            default: break;
            }
        }
        break;
    }
    }
    return t;
}

Term embed_lweight(const CartanData& cd, const Term& t) {
    Term r = t;
    r.y = ExpMap();
    for (const auto& f : t.y.factors()) {
        const int dj = cd.sym(f.node);
        r.wt.c[f.node - 1] += f.e;
        r.psi.mul_var(f.node, f.r - dj, f.e);
        r.psi.mul_var(f.node, f.r + dj, -f.e);
    }
    return r;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Term> terms) : t_(std::move(terms)) { canonicalize(); }

Poly Poly::of(const Term& t) {
    Poly p;
    if (!t.coeff.is_zero()) p.t_.push_back(t);
    return p;
}

void Poly::canonicalize() {
    std::sort(t_.begin(), t_.end(), Term::mono_less);
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
        if (!out.empty() && out.back().same_mono(t)) {
            out.back().coeff += t.coeff;
            if (out.back().coeff.is_zero()) out.pop_back();
        } else if (!t.coeff.is_zero()) {
            out.push_back(std::move(t));
        }
    }
    t_ = std::move(out);
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Term> all = t_;
    all.insert(all.end(), o.t_.begin(), o.t_.end());
    return Poly(std::move(all));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.coeff = -t.coeff;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    std::vector<Term> all;
    all.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
        for (const auto& b : o.t_) all.push_back(a.mul(b));
    return Poly(std::move(all));
}

Poly Poly::mul_term(const Term& t) const {
    std::vector<Term> all;
    all.reserve(t_.size());
    for (const auto& a : t_) all.push_back(a.mul(t));
    return Poly(std::move(all));
}

Poly Poly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    if (k == 0) {
        if (t_.empty()) throw std::invalid_argument("Poly::pow: 0^0");
        Poly r;
        r.t_.push_back(Term{BigInt(1), Weight::zero(t_[0].wt.rank()), {}, {}});
        return r;
    }
    if (t_.empty()) return Poly();
    Poly r = *this;
    for (int c = 1; c < k; ++c) r = r * (*this);
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t k = 0; k < t_.size(); ++k)
        if (!(t_[k].same_mono(o.t_[k]) && t_[k].coeff == o.t_[k].coeff)) return false;
    return true;
}

static std::string poly_to_string(const Poly& p, bool display) {
    if (p.is_zero()) return "0";
    std::string s;
    for (size_t k = 0; k < p.terms().size(); ++k) {
        if (k) s += " + ";
        s += display ? p.terms()[k].to_display() : p.terms()[k].to_string();
    }
    return s;
}

std::string Poly::to_string() const { return poly_to_string(*this, false); }
std::string Poly::to_display() const { return poly_to_string(*this, true); }

Poly tau_shift(const Poly& p, int s) {
    std::vector<Term> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) out.push_back(t.tau(s));
    return Poly(std::move(out));
}

Poly sigma_flip(const Poly& p) {
    std::vector<Term> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Term r = t;
        r.y = t.y.flip_r();
        r.psi = t.psi.flip_r().pow(-1);
        out.push_back(std::move(r));
    }
    return Poly(std::move(out));
}

Poly embed_lweight(const CartanData& cd, const Poly& p) {
    std::vector<Term> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) out.push_back(embed_lweight(cd, t));
    return Poly(std::move(out));
}

} // namespace qweyl
