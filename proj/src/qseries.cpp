#include "qweyl/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace qweyl {

const TruncSeries* QCache::find(const Weight& orbitWeight, int order) const {
    auto it = memo_.find({orbitWeight, order});
    return it == memo_.end() ? nullptr : &it->second;
}

void QCache::put(const Weight& orbitWeight, int order, TruncSeries s) {
    memo_.emplace(std::make_pair(orbitWeight, order), std::move(s));
}

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// orbit representative under tau_{2d}: shift so the minimal spectral exponent
// lands in [0, 2d); returns the applied shift count k with rep = tau^{-2dk}(t)
int orbit_offset(const Term& t, int twoD) {
    int minR = 0;
    bool first = true;
    for (const auto& f : t.y.factors()) {
        if (first || f.r < minR) minR = f.r;
        first = false;
    }
    return floor_div(minR, twoD);
}

std::string mono_key(const Term& t) {
    Term u = t;
    u.coeff = BigInt(1);
    return u.to_string();
}

} // namespace

TruncSeries solve_Q(const CartanData& cd, const WeylWord& w, int i, int order, QCache* cache) {
    if (!cd.is_reduced(w))
        throw std::invalid_argument("solve_Q: word '" + w.to_string() + "' is not reduced");
    const Weight orbitWeight = cd.apply_word(w, cd.fundamental(i));
    if (cache)
        if (const TruncSeries* hit = cache->find(orbitWeight, order)) return *hit;

    const int di = cd.sym(i);
    const int twoD = 2 * di;
    const WeylElt e = cd.identity();

    TruncSeries img = theta_to_e(cd, w, Poly::of(y_var(cd, i, di)), order);
    Term lead = img.leading_term();
    if (!lead.coeff.is_one())
        throw std::logic_error("solve_Q: leading coefficient of Theta_w(Y) is not 1");
    Term leadInv = lead;
    leadInv.wt = -lead.wt;
    leadInv.y = lead.y.inverse();
    leadInv.psi = lead.psi.inverse();
    TruncSeries g = img.mul_term(leadInv); // anchor 0, leading 1

    std::vector<Poly> gSlice(order + 1), xSlice(order + 1);
    for (int h = 0; h <= order; ++h) gSlice[h] = g.slice(h);
    xSlice[0] = Poly::of(unit_term(cd));

    for (int h = 1; h <= order; ++h) {
        Poly rhs;
        for (int j = 1; j <= h; ++j)
            rhs = rhs + gSlice[j] * tau_shift(xSlice[h - j], twoD);
        // group by tau_{2d}-orbit
        struct OrbitData {
            Term rep;
            std::map<int, BigInt> coeffs;
        };
        std::map<std::string, OrbitData> orbits;
        for (const auto& t : rhs.terms()) {
            if (t.y.empty()) {
                throw std::logic_error("solve_Q: telescoping forced a pure-weight source term " +
                                       t.to_string() + " at height " + std::to_string(h));
            }
            int k = orbit_offset(t, twoD);
            Term rep = t.tau(-twoD * k);
            rep.coeff = BigInt(1);
            auto& od = orbits[mono_key(rep)];
            if (od.coeffs.empty()) od.rep = rep;
            od.coeffs[k] += t.coeff;
        }
        std::vector<Term> found;
        for (auto& [key, od] : orbits) {
            const int kmin = od.coeffs.begin()->first;
            const int kmax = od.coeffs.rbegin()->first;
            BigInt run;
            for (int k = kmin; k <= kmax; ++k) {
                auto it = od.coeffs.find(k);
                if (it != od.coeffs.end()) run += it->second;
                if (!run.is_zero() && k < kmax) {
                    Term t = od.rep.tau(twoD * k);
                    t.coeff = run;
                    found.push_back(std::move(t));
                }
                if (k == kmax && !run.is_zero())
                    throw std::logic_error("solve_Q: orbit sum does not close for " + key +
                                           " at height " + std::to_string(h) +
                                           " (truncation too small or inconsistent data)");
            }
        }
        // fix the pure-weight kernel: varpi(Q) = 1 at every positive height
        std::map<Weight, BigInt> wsum;
        for (const auto& t : found) wsum[t.varpi(cd)] += t.coeff;
        for (const auto& [mu, s] : wsum) {
            if (s.is_zero()) continue;
            Term t = weight_term(cd, mu);
            t.coeff = -s;
            found.push_back(std::move(t));
        }
        xSlice[h] = Poly(std::move(found));
    }

    Poly full;
    for (int h = 0; h <= order; ++h) full = full + xSlice[h];
    TruncSeries q(cd, e, Weight::zero(cd.rank()), order, std::move(full));

    // guard: the defining relation must hold through the truncation
    {
        TruncSeries residual = g.mul(q.tau(twoD)).sub(q);
        for (int ht : residual.heights())
            if (ht <= order)
                throw std::logic_error("solve_Q: defining relation fails at height " +
                                       std::to_string(ht));
    }

    if (cache) cache->put(orbitWeight, order, q);
    return q;
}

Term v_block(const CartanData& cd, int i, int r, int k) {
    Term t = unit_term(cd);
    for (int c = 0; c < k; ++c) {
        Term a = special_monomial(cd, SpecialKind::A, i, r - 2 * cd.sym(i) * c);
        a.y = a.y.inverse();
        t = t.mul(a);
    }
    return t;
}

TruncSeries lattice_sum_series(const CartanData& cd, const LatticeSum& ls, int shift, int order) {
    std::vector<Term> terms;
    std::vector<int> exps(ls.blocks.size(), 0);
    // depth-first enumeration over tuples with total height <= order
    std::function<void(size_t, int)> walk = [&](size_t pos, int used) {
        if (pos == ls.blocks.size()) {
            if (ls.admit(exps)) {
                Term t = unit_term(cd);
                for (size_t b = 0; b < ls.blocks.size(); ++b)
                    t = t.mul(v_block(cd, ls.blocks[b].first, ls.blocks[b].second + shift, exps[b]));
                terms.push_back(std::move(t));
            }
            return;
        }
        for (int k = 0; used + k <= order; ++k) {
            exps[pos] = k;
            walk(pos + 1, used + k);
        }
        exps[pos] = 0;
    };
    walk(0, 0);
    return TruncSeries(cd, cd.identity(), Weight::zero(cd.rank()), order, Poly(std::move(terms)));
}

std::vector<Weight> rank2_Q_catalog_weights(const CartanData& cd) {
    const std::string& t = cd.label();
    if (t == "A2") return {Weight({0, -1})};
    if (t == "B2") return {Weight({1, -2}), Weight({-1, 1}), Weight({-1, 0}), Weight({0, -1})};
    if (t == "G2") return {Weight({2, -3})};
    throw std::invalid_argument("rank2_Q_catalog covers A2, B2, G2 only");
}

LatticeSum rank2_Q_catalog(const CartanData& cd, const Weight& orbitWeight) {
    const std::string& t = cd.label();
    LatticeSum ls;
    if (t == "A2" && orbitWeight == Weight({0, -1})) {
        ls.blocks = {{2, -3}, {1, -2}};
        ls.admit = [](const std::vector<int>& x) { return x[1] <= x[0]; };
        return ls;
    }
    if (t == "B2" && orbitWeight == Weight({1, -2})) {
        ls.blocks = {{2, -4}, {1, -4}};
        ls.admit = [](const std::vector<int>& x) { return 2 * x[1] <= x[0]; };
        return ls;
    }
    if (t == "B2" && orbitWeight == Weight({-1, 1})) {
        ls.blocks = {{1, -4}, {1, -6}, {2, -2}};
        ls.admit = [](const std::vector<int>& x) {
            return x[2] <= std::min(2 * x[0], 2 * x[1] + 1);
        };
        return ls;
    }
    if (t == "B2" && orbitWeight == Weight({-1, 0})) {
        ls.blocks = {{1, -6}, {2, -4}, {1, -4}};
        ls.admit = [](const std::vector<int>& x) {
            return 2 * x[2] <= x[1] && x[1] <= 2 * x[0];
        };
        return ls;
    }
    if (t == "B2" && orbitWeight == Weight({0, -1})) {
        ls.blocks = {{2, -6}, {1, -6}, {1, -4}, {2, -2}};
        ls.admit = [](const std::vector<int>& x) {
            return 2 * x[1] <= x[0] && 2 * x[2] <= x[0] + 1 &&
                   x[3] <= std::min(1 + 2 * x[1], 2 * x[2]);
        };
        return ls;
    }
    if (t == "G2" && orbitWeight == Weight({2, -3})) {
        ls.blocks = {{2, -5}, {1, -6}};
        ls.admit = [](const std::vector<int>& x) { return 3 * x[1] <= x[0]; };
        return ls;
    }
    throw std::invalid_argument("rank2_Q_catalog: no entry for " + orbitWeight.to_string() +
                                " in type " + t);
}

TruncSeries script_Q(const CartanData& cd, const WeylWord& w, int i, int r, int order,
                     QCache* cache) {
    RationalChar chi = chi_extremal(cd, w, i);
    TruncSeries chiSer = expand_char(cd, chi, cd.identity(), order);
    Term psi = psi_extremal(cd, w, i, r);
    TruncSeries q = solve_Q(cd, w, i, order, cache).tau(r);
    TruncSeries qEmb(cd, cd.identity(), q.anchor(), order, embed_lweight(cd, q.body()));
    return chiSer.mul(qEmb).mul_term(psi);
}

std::pair<TruncSeries, TruncSeries> assemble_QQ_terms(const CartanData& cd, const WeylWord& w,
                                                      int i, int r, int order, QCache* cache) {
    if (!cd.is_reduced(w))
        throw std::invalid_argument("assemble_QQ_terms: word is not reduced");
    const int di = cd.sym(i);
    const WeylElt we = cd.elt_of(w);
    const Weight walpha = we.apply(cd.simple_root(i));
    const WeylWord wsWord = cd.reduced_word(we.compose(cd.simple_reflection(i)));

    TruncSeries qw_minus = script_Q(cd, w, i, r - di, order, cache);
    TruncSeries qw_plus = script_Q(cd, w, i, r + di, order, cache);
    TruncSeries qws_minus = script_Q(cd, wsWord, i, r - di, order, cache);
    TruncSeries qws_plus = script_Q(cd, wsWord, i, r + di, order, cache);

    Term minusWalpha = weight_term(cd, -walpha, -1); // -[-w(alpha_i)]
    TruncSeries lhs = sum_series(
        {qws_plus.mul(qw_minus), qws_minus.mul(qw_plus).mul_term(minusWalpha)});

    TruncSeries rhs(cd, cd.identity(), Weight::zero(cd.rank()), order,
                    Poly::of(unit_term(cd)));
    for (int j = 1; j <= cd.rank(); ++j) {
        if (j == i) continue;
        std::vector<int> offsets;
        switch (cd.cartan(i, j)) {
        case -1: offsets = {0}; break;
        case -2: offsets = {1, -1}; break;
        case -3: offsets = {2, 0, -2}; break;
        default: continue;
        }
        for (int off : offsets) rhs = rhs.mul(script_Q(cd, w, j, r + off, order, cache));
    }
    if (!cd.is_positive_root(walpha)) rhs = rhs.mul_term(minusWalpha);
    return {std::move(lhs), std::move(rhs)};
}

VerifyReport verify_QQ(const CartanData& cd, int order, int maxLength, QCache* cache, int jobs) {
    struct Case {
        WeylWord w;
        int i;
        int slack;
    };
    std::vector<Case> cases;
    for (const auto& elt : cd.all_elements()) {
        WeylWord w = cd.reduced_word(elt);
        if (maxLength >= 0 && static_cast<int>(w.size()) > maxLength) continue;
        for (int i = 1; i <= cd.rank(); ++i) {
            Weight walpha = elt.apply(cd.simple_root(i));
            auto habs = cd.q_plus_height(cd.is_positive_root(walpha) ? walpha : -walpha);
            cases.push_back({w, i, cd.is_positive_root(walpha) ? 0 : *habs});
        }
    }
    std::sort(cases.begin(), cases.end(), [](const Case& a, const Case& b) {
        if (a.w.letters.size() != b.w.letters.size()) return a.w.letters.size() < b.w.letters.size();
        if (a.w.letters != b.w.letters) return a.w.letters < b.w.letters;
        return a.i < b.i;
    });

    VerifyReport report;
    report.cases.resize(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        QCache local; // per-thread cache; the shared one is not synchronized
        QCache* use = jobs > 1 ? &local : (cache ? cache : &local);
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= cases.size()) break;
            const Case& c = cases[k];
            CaseResult res;
            res.id = "w=" + c.w.to_string() + " i=" + std::to_string(c.i);
            res.w_word = c.w.to_string();
            res.node = c.i;
            try {
                int workN = order + c.slack;
                auto [lhs, rhs] = assemble_QQ_terms(cd, c.w, c.i, 0, workN, use);
                SeriesDiff diff = compare_series(lhs, rhs, order + c.slack);
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

ShiftedCharReport shifted_qchar_report(const CartanData& cd, const WeylWord& w, int i, int r,
                                       int order, QCache* cache) {
    ShiftedCharReport rep{unit_term(cd), TruncSeries(), TruncSeries(), {}};
    rep.psi = psi_extremal(cd, w, i, r);
    RationalChar chi = chi_extremal(cd, w, i);
    rep.character = expand_char(cd, chi, cd.identity(), order);
    TruncSeries q = solve_Q(cd, w, i, order, cache).tau(r);
    rep.series = rep.character.mul(q);
    rep.coweight = cd.coweight_image(w, i);
    return rep;
}

TruncSeries sigma_iw(const CartanData& cd, const WeylWord& w, int i, int r, int order,
                     QCache* cache) {
    const WeylElt we = cd.elt_of(w);
    TruncSeries sig = sigma_series_in(cd, i, r, order, we);
    TruncSeries thetaSig = theta_word(cd, w, sig);
    WeylWord wsWord = cd.reduced_word(we.compose(cd.simple_reflection(i)));
    TruncSeries qws = solve_Q(cd, wsWord, i, order, cache).tau(r + 2 * cd.sym(i));
    return thetaSig.mul(qws.invert());
}

} // namespace qweyl
