#include "qweyl/qchar.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace qweyl {

namespace {

// body from a mult-by-A^{-1} chain out of the highest monomial
QCharacter chain_rep(const CartanData& cd, int i, int r,
                     const std::vector<std::pair<int, int>>& steps) {
    QCharacter v;
    v.highest = y_var(cd, i, r);
    std::vector<Term> terms{v.highest};
    Term cur = v.highest;
    for (const auto& [node, shift] : steps) {
        Term a = special_monomial(cd, SpecialKind::A, node, r + shift);
        a.y = a.y.inverse();
        cur = cur.mul(a);
        terms.push_back(cur);
    }
    v.body = Poly(std::move(terms));
    return v;
}

} // namespace

std::vector<int> qchar_catalog_nodes(const CartanData& cd) {
    const std::string& t = cd.label();
    if (t == "A1") return {1};
    if (t == "A2" || t == "B2") return {1, 2};
    if (t == "G2") return {2};
    throw std::invalid_argument("q-character catalog covers A1, A2, B2, G2");
}

QCharacter qchar_small_rep(const CartanData& cd, int i, int r) {
    const std::string& t = cd.label();
    if (t == "A1" && i == 1) return chain_rep(cd, 1, r, {{1, 1}});
    if (t == "A2" && i == 1) return chain_rep(cd, 1, r, {{1, 1}, {2, 2}});
    if (t == "A2" && i == 2) return chain_rep(cd, 2, r, {{2, 1}, {1, 2}});
    if (t == "B2" && i == 1)
        return chain_rep(cd, 1, r, {{1, 2}, {2, 4}, {2, 2}, {1, 4}});
    if (t == "B2" && i == 2) return chain_rep(cd, 2, r, {{2, 1}, {1, 3}, {2, 5}});
    if (t == "G2" && i == 2)
        return chain_rep(cd, 2, r, {{2, 1}, {1, 4}, {2, 7}, {2, 5}, {1, 8}, {2, 11}});
    throw std::invalid_argument("qchar_small_rep: no catalog entry for node " + std::to_string(i) +
                                " in type " + t);
}

QCharacter fm_complete(const CartanData& cd, const Term& m, size_t bound) {
    if (!m.coeff.is_one() || !m.wt.is_zero() || !m.psi.empty())
        throw std::invalid_argument("fm_complete: expected a plain dominant Y-monomial");
    for (const auto& f : m.y.factors())
        if (f.e < 0) throw std::invalid_argument("fm_complete: monomial is not dominant");

    auto key = [](const Term& t) {
        Term u = t;
        u.coeff = BigInt(1);
        return u.to_string();
    };
    std::map<std::string, Term> seen;
    std::vector<Term> work{m};
    seen.emplace(key(m), m);
    while (!work.empty()) {
        Term cur = work.back();
        work.pop_back();
        for (int i = 1; i <= cd.rank(); ++i) {
            const int di = cd.sym(i);
            std::vector<int> rs;
            for (const auto& f : cur.y.factors())
                if (f.node == i && f.e > 0) {
                    if (f.e != 1)
                        throw std::runtime_error(
                            "fm_complete: node content with exponent > 1 needs hand audit");
                    rs.push_back(f.r);
                }
            if (rs.empty()) continue;
            std::sort(rs.begin(), rs.end());
            for (size_t k = 1; k < rs.size(); ++k)
                if (rs[k] - rs[k - 1] != 2 * di)
                    throw std::runtime_error("fm_complete: node content is not a single string; "
                                             "entry needs hand audit");
            // flip the string from the top
            Term gen = cur;
            for (size_t t = rs.size(); t-- > 0;) {
                Term a = special_monomial(cd, SpecialKind::A, i, rs[t] + di);
                a.y = a.y.inverse();
                gen = gen.mul(a);
                if (seen.emplace(key(gen), gen).second) {
                    work.push_back(gen);
                    if (seen.size() > bound)
                        throw std::runtime_error("fm_complete: closure exceeded the bound");
                }
            }
        }
    }
    QCharacter v;
    v.highest = m;
    std::vector<Term> terms;
    terms.reserve(seen.size());
    for (auto& [k, t] : seen) terms.push_back(t);
    v.body = Poly(std::move(terms));
    return v;
}

TruncSeries tq_substitution(const CartanData& cd, const WeylWord& w, const QCharacter& V,
                            int order, QCache* cache) {
    if (!cd.is_reduced(w))
        throw std::invalid_argument("tq_substitution: word is not reduced");
    const WeylElt we = cd.elt_of(w);
    const WeylElt e = cd.identity();

    struct Image {
        std::optional<TruncSeries> pos;
        std::optional<TruncSeries> neg;
    };
    std::map<std::pair<int, int>, Image> images;
    auto ratio_part = [&](int i, int s) -> TruncSeries {
        Term psi = psi_extremal(cd, w, i, s);
        TruncSeries q = solve_Q(cd, w, i, order, cache).tau(s);
        TruncSeries qEmb(cd, e, q.anchor(), order, embed_lweight(cd, q.body()));
        return qEmb.mul_term(psi);
    };
    auto image_of = [&](int i, int s, int sign) -> const TruncSeries& {
        auto& img = images[{i, s}];
        if (!img.pos) {
            const int di = cd.sym(i);
            TruncSeries num = ratio_part(i, s - di);
            TruncSeries den = ratio_part(i, s + di);
            Term wwt = weight_term(cd, we.apply(cd.fundamental(i)));
            img.pos = num.mul(den.invert()).mul_term(wwt);
        }
        if (sign > 0) return *img.pos;
        if (!img.neg) img.neg = img.pos->invert();
        return *img.neg;
    };

    std::vector<TruncSeries> pieces;
    for (const auto& t : V.body.terms()) {
        if (!t.psi.empty() || !t.wt.is_zero())
            throw std::invalid_argument("tq_substitution: q-character must be a plain Y-polynomial");
        TruncSeries piece(cd, e, Weight::zero(cd.rank()), order, Poly::of(unit_term(cd)));
        for (const auto& f : t.y.factors()) {
            const TruncSeries& img = image_of(f.node, f.r, f.e > 0 ? 1 : -1);
            for (int c = 0; c < (f.e > 0 ? f.e : -f.e); ++c) piece = piece.mul(img);
        }
        Term coeff = unit_term(cd);
        coeff.coeff = t.coeff;
        pieces.push_back(piece.mul_term(coeff));
    }
    return sum_series(pieces);
}

VerifyReport verify_TQ(const CartanData& cd, int order, int maxLength, QCache* cache, int jobs) {
    struct Case {
        WeylWord w;
        int node;
    };
    std::vector<Case> cases;
    for (const auto& elt : cd.all_elements()) {
        WeylWord w = cd.reduced_word(elt);
        if (maxLength >= 0 && static_cast<int>(w.size()) > maxLength) continue;
        for (int i : qchar_catalog_nodes(cd)) cases.push_back({w, i});
    }
    std::sort(cases.begin(), cases.end(), [](const Case& a, const Case& b) {
        if (a.w.letters.size() != b.w.letters.size()) return a.w.letters.size() < b.w.letters.size();
        if (a.w.letters != b.w.letters) return a.w.letters < b.w.letters;
        return a.node < b.node;
    });
    VerifyReport report;
    report.cases.resize(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        QCache local;
        QCache* use = jobs > 1 ? &local : (cache ? cache : &local);
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= cases.size()) break;
            const Case& c = cases[k];
            CaseResult res;
            res.id = "w=" + c.w.to_string() + " V=L(Y" + std::to_string(c.node) + ")";
            res.w_word = c.w.to_string();
            res.node = c.node;
            try {
                QCharacter V = qchar_small_rep(cd, c.node, 0);
                TruncSeries lhs = tq_substitution(cd, c.w, V, order, use);
                // compare against the embedded q-character
                TruncSeries rhs(cd, cd.identity(), V.highest.ht_weight(cd), order,
                                embed_lweight(cd, V.body));
                SeriesDiff diff = compare_series(lhs, rhs, order);
                res.pass = diff.equal;
                res.max_height = diff.equal ? order : diff.window;
                res.witness = diff.witness;
            } catch (const std::exception& ex) {
                res.pass = false;
                res.witness = ex.what();
            }
            report.cases[k] = std::move(res);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return report;
}

VerifyReport verify_weyl_invariance(const CartanData& cd, const QCharacter& V, int order) {
    VerifyReport report;
    PiElement orig = diag_embed(cd, V.body, order);
    for (int i = 1; i <= cd.rank(); ++i) {
        WeylWord w;
        w.letters.push_back(i);
        CaseResult res;
        res.id = "Theta_" + std::to_string(i) + " on " + V.highest.to_string();
        res.node = i;
        res.pass = true;
        res.max_height = order;
        try {
            PiElement img = theta_apply(cd, w, orig);
            for (const auto& [v, s] : orig.components()) {
                SeriesDiff diff = compare_series(img.at(v), s, order);
                if (!diff.equal) {
                    res.pass = false;
                    res.witness = "component " + cd.reduced_word(v).to_string() + ": " + diff.witness;
                    break;
                }
            }
        } catch (const std::exception& ex) {
            res.pass = false;
            res.witness = ex.what();
        }
        report.cases.push_back(std::move(res));
    }
    return report;
}

} // namespace qweyl
