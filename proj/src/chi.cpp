#include "qweyl/chi.hpp"

#include <stdexcept>

namespace qweyl {

RationalChar RationalChar::one(const CartanData& cd) {
    RationalChar c;
    c.num = unit_term(cd);
    return c;
}

RationalChar RationalChar::mul(const RationalChar& o) const {
    RationalChar r;
    r.num = num.mul(o.num);
    r.factors = factors;
    for (const auto& [alpha, e] : o.factors) {
        r.factors[alpha] += e;
        if (r.factors[alpha] == 0) r.factors.erase(alpha);
    }
    return r;
}

RationalChar RationalChar::inverse() const {
    RationalChar r;
    r.num = num;
    r.num.wt = -num.wt; // coefficient +-1 is self-inverse
    for (const auto& [alpha, e] : factors) r.factors[alpha] = -e;
    return r;
}

RationalChar RationalChar::pow(int k) const {
    RationalChar base = k < 0 ? inverse() : *this;
    int reps = k < 0 ? -k : k;
    RationalChar r;
    r.num = base.num; // placeholder; reset below
    r.num = Term{BigInt(1), Weight::zero(num.wt.rank()), {}, {}};
    for (int c = 0; c < reps; ++c) r = r.mul(base);
    return r;
}

bool RationalChar::operator==(const RationalChar& o) const {
    return num.coeff == o.num.coeff && num.wt == o.num.wt && factors == o.factors;
}

std::string RationalChar::to_string() const {
    std::string s = num.to_string();
    for (const auto& [alpha, e] : factors)
        s += " * (1 - [-" + alpha.to_string() + "])^" + std::to_string(e);
    return s;
}

RationalChar chi_extremal(const CartanData& cd, const WeylWord& w, int i) {
    if (!cd.is_reduced(w))
        throw std::invalid_argument("chi_extremal: word '" + w.to_string() + "' is not reduced");
    const int n = cd.rank();
    std::vector<RationalChar> cur(n + 1, RationalChar::one(cd));
    WeylElt u = cd.identity();
    for (int letter : w.letters) {
        Weight walpha = u.apply(cd.simple_root(letter));
        if (!cd.is_positive_root(walpha))
            throw std::logic_error("chi_extremal: recursion step is not length-increasing");
        RationalChar rhs;
        rhs.num = unit_term(cd);
        rhs.factors[walpha] = -1;
        for (int j = 1; j <= n; ++j) {
            if (j == letter) continue;
            int c = cd.cartan(letter, j);
            if (c != 0) rhs = rhs.mul(cur[j].pow(-c));
        }
        cur[letter] = rhs.mul(cur[letter].inverse());
        u = u.compose(cd.simple_reflection(letter));
    }
    return cur[i];
}

TruncSeries expand_char(const CartanData& cd, const RationalChar& c, const WeylElt& v, int order) {
    TruncSeries acc(cd, v, c.num.ht_weight(cd), order, Poly::of(c.num));
    auto binom = [](long long a, long long b) {
        long long r = 1;
        for (long long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
        return r;
    };
    for (const auto& [alpha, e] : c.factors) {
        if (!cd.is_root(alpha) )
            throw std::invalid_argument("expand_char: factor " + alpha.to_string() + " is not a root");
        bool positiveDir = cd.q_plus_height(v.apply(alpha)).has_value();
        std::vector<Term> terms;
        if (e > 0) {
            // finite: sum_k (-1)^k C(e,k) [-k alpha]
            for (int k = 0; k <= e; ++k) {
                Term t = weight_term(cd, -alpha * k);
                t.coeff = BigInt((k % 2 == 0 ? 1 : -1) * binom(e, k));
                terms.push_back(t);
            }
        } else if (positiveDir) {
            // sum_k C(k+m-1, m-1) [-k alpha], m = -e
            int m = -e;
            for (int k = 0; k <= order; ++k) {
                Term t = weight_term(cd, -alpha * k);
                t.coeff = BigInt(binom(k + m - 1, m - 1));
                terms.push_back(t);
            }
        } else {
            // (1-[-alpha])^{-m} = (-1)^m [m alpha] (1-[alpha])^{-m}
            int m = -e;
            for (int k = 0; k <= order; ++k) {
                Term t = weight_term(cd, alpha * (k + m));
                t.coeff = BigInt((m % 2 == 0 ? 1 : -1) * binom(k + m - 1, m - 1));
                terms.push_back(t);
            }
        }
        Poly fp(std::move(terms));
        // anchor: dominating weight of the factor expansion
        int idx = -1;
        for (size_t a = 0; a < fp.terms().size() && idx < 0; ++a) {
            bool dom = true;
            for (size_t b = 0; b < fp.terms().size(); ++b)
                if (!cd.q_plus_height(v.apply(fp.terms()[a].wt - fp.terms()[b].wt))) {
                    dom = false;
                    break;
                }
            if (dom) idx = static_cast<int>(a);
        }
        if (idx < 0) throw std::logic_error("expand_char: factor has no dominating term");
        acc = acc.mul(TruncSeries(cd, v, fp.terms()[idx].wt, order, fp));
    }
    return acc;
}

namespace {

struct CatalogEntry {
    Weight weight;
    std::vector<std::pair<Weight, int>> factors; // (root in alpha-coords scaled), exponent
};

Weight root_of(const CartanData& cd, int m1, int m2) {
    return cd.simple_root(1) * m1 + cd.simple_root(2) * m2;
}

Weight wcoords(int a, int b) { return Weight({a, b}); }

} // namespace

std::vector<Weight> chi_catalog_weights(const CartanData& cd) {
    const std::string& t = cd.label();
    std::vector<Weight> out;
    if (t == "A2") {
        out = {wcoords(1, 0), wcoords(-1, 1), wcoords(0, -1)};
    } else if (t == "B2") {
        out = {wcoords(1, 0), wcoords(-1, 2), wcoords(1, -2), wcoords(-1, 0),
               wcoords(0, 1), wcoords(1, -1), wcoords(-1, 1), wcoords(0, -1)};
    } else if (t == "G2") {
        out = {wcoords(1, 0),  wcoords(-1, 3), wcoords(2, -3), wcoords(-2, 3),
               wcoords(1, -3), wcoords(-1, 0), wcoords(0, 1),  wcoords(1, -1),
               wcoords(-1, 2), wcoords(1, -2), wcoords(-1, 1), wcoords(0, -1)};
    } else {
        throw std::invalid_argument("chi catalog covers A2, B2, G2 only");
    }
    return out;
}

RationalChar chi_catalog_rank2(const CartanData& cd, const Weight& orbitWeight) {
    const std::string& t = cd.label();
    RationalChar c = RationalChar::one(cd);
    auto put = [&](std::initializer_list<std::pair<std::pair<int, int>, int>> fs) {
        for (const auto& [root, e] : fs) c.factors[root_of(cd, root.first, root.second)] = e;
    };
    if (t == "A2") {
        if (orbitWeight == wcoords(1, 0) || orbitWeight == wcoords(0, 1)) return c;
        if (orbitWeight == wcoords(-1, 1)) { put({{{1, 0}, -1}}); return c; }
        if (orbitWeight == wcoords(1, -1)) { put({{{0, 1}, -1}}); return c; }
        if (orbitWeight == wcoords(0, -1)) { put({{{1, 1}, -1}, {{0, 1}, -1}}); return c; }
        if (orbitWeight == wcoords(-1, 0)) { put({{{1, 1}, -1}, {{1, 0}, -1}}); return c; }
    } else if (t == "B2") {
        if (orbitWeight == wcoords(1, 0) || orbitWeight == wcoords(0, 1)) return c;
        if (orbitWeight == wcoords(-1, 2)) { put({{{1, 0}, -1}}); return c; }
        if (orbitWeight == wcoords(1, -2)) { put({{{1, 2}, -1}, {{0, 1}, -1}}); return c; }
        // the w0(omega_1) entry
        if (orbitWeight == wcoords(-1, 0)) {
            put({{{1, 2}, -1}, {{1, 0}, -1}, {{1, 1}, -1}});
            return c;
        }
        if (orbitWeight == wcoords(1, -1)) { put({{{0, 1}, -1}}); return c; }
        if (orbitWeight == wcoords(-1, 1)) { put({{{1, 1}, -1}, {{1, 0}, -2}}); return c; }
        if (orbitWeight == wcoords(0, -1)) {
            put({{{1, 1}, -1}, {{0, 1}, -1}, {{1, 2}, -2}});
            return c;
        }
    } else if (t == "G2") {
        if (orbitWeight == wcoords(1, 0) || orbitWeight == wcoords(0, 1)) return c;
        if (orbitWeight == wcoords(-1, 3)) { put({{{1, 0}, -1}}); return c; }
        if (orbitWeight == wcoords(2, -3)) { put({{{1, 3}, -1}, {{0, 1}, -1}}); return c; }
        // the recursion and the braid-image cross-check both require the
        // long root a_1^{-2}a_2^{-3} here
        if (orbitWeight == wcoords(-2, 3)) {
            put({{{2, 3}, -1}, {{1, 0}, -2}, {{1, 1}, -1}});
            return c;
        }
        if (orbitWeight == wcoords(1, -3)) {
            put({{{2, 3}, -1}, {{1, 2}, -1}, {{1, 3}, -2}, {{0, 1}, -1}});
            return c;
        }
        if (orbitWeight == wcoords(-1, 0)) {
            put({{{2, 3}, -2}, {{1, 1}, -1}, {{1, 0}, -1}, {{1, 2}, -1}, {{1, 3}, -1}});
            return c;
        }
        if (orbitWeight == wcoords(1, -1)) { put({{{0, 1}, -1}}); return c; }
        if (orbitWeight == wcoords(-1, 2)) { put({{{1, 1}, -1}, {{1, 0}, -3}}); return c; }
        // forced by the recursion step out of chi_{2 omega_1 - 3 omega_2}
        if (orbitWeight == wcoords(1, -2)) {
            put({{{0, 1}, -2}, {{1, 3}, -3}, {{1, 2}, -1}});
            return c;
        }
        if (orbitWeight == wcoords(-1, 1)) {
            put({{{1, 1}, -2}, {{1, 0}, -3}, {{1, 2}, -1}, {{2, 3}, -3}});
            return c;
        }
        if (orbitWeight == wcoords(0, -1)) {
            put({{{1, 1}, -1}, {{0, 1}, -1}, {{1, 2}, -2}, {{2, 3}, -3}, {{1, 3}, -3}});
            return c;
        }
    }
    throw std::invalid_argument("chi_catalog_rank2: no entry for weight " + orbitWeight.to_string() +
                                " in type " + t);
}

} // namespace qweyl
