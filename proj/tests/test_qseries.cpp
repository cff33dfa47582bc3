#include "doctest.h"

#include <stdexcept>

#include "qweyl/qseries.hpp"

using namespace qweyl;

namespace {

WeylWord word_for(const CartanData& cd, const Weight& target) {
    for (int i = 1; i <= cd.rank(); ++i)
        for (const auto& [word, wt] : cd.orbit_fundamental(i))
            if (wt == target) return word;
    throw std::runtime_error("weight not in any fundamental orbit");
}

int node_for(const CartanData& cd, const Weight& target) {
    for (int i = 1; i <= cd.rank(); ++i)
        for (const auto& [word, wt] : cd.orbit_fundamental(i))
            if (wt == target) return i;
    throw std::runtime_error("weight not in any fundamental orbit");
}

} // namespace

TEST_CASE("Q at the identity is 1") {
    for (const char* label : {"A1", "A2", "B2"}) {
        CartanData cd = CartanData::from_label(label);
        for (int i = 1; i <= cd.rank(); ++i) {
            TruncSeries q = solve_Q(cd, WeylWord{}, i, 5);
            CHECK(q.body() == Poly::of(unit_term(cd)));
        }
    }
}

TEST_CASE("Q at a simple reflection matches the sigma closed form") {
    for (const char* label : {"A1", "A2", "B2", "G2"}) {
        CartanData cd = CartanData::from_label(label);
        const int N = 6;
        for (int i = 1; i <= cd.rank(); ++i) {
            TruncSeries q = solve_Q(cd, WeylWord({i}), i, N);
            // Sigma^e_{i, -2 d_i} (1 - [-alpha_i])
            TruncSeries sig = sigma_series(cd, i, -2 * cd.sym(i), SigmaBranch::E, N, cd.identity());
            Poly oneMinus = Poly::of(unit_term(cd)) +
                            Poly::of(weight_term(cd, -cd.simple_root(i), -1));
            TruncSeries expect =
                sig.mul(TruncSeries(cd, cd.identity(), Weight::zero(cd.rank()), N, oneMinus));
            SeriesDiff diff = compare_series(q, expect, N);
            CHECK(diff.equal);
            if (!diff.equal) MESSAGE(label, " i=", i, ": ", diff.witness);
        }
    }
}

TEST_CASE("Q normalizations: leading term 1 and trivial varpi-image") {
    for (const char* label : {"A2", "B2"}) {
        CartanData cd = CartanData::from_label(label);
        const int N = 5;
        QCache cache;
        for (const auto& elt : cd.all_elements()) {
            WeylWord w = cd.reduced_word(elt);
            for (int i = 1; i <= cd.rank(); ++i) {
                TruncSeries q = solve_Q(cd, w, i, N, &cache);
                CHECK(q.leading_term().to_string() == "1");
                TruncSeries wimg = q.varpi();
                CHECK(wimg.body() == Poly::of(unit_term(cd)));
            }
        }
    }
}

TEST_CASE("Q is coset-invariant and the relation holds at shifted spectra") {
    CartanData b2 = CartanData::from_label("B2");
    const int N = 5;
    // two words for the same coset of W/W_1: s2 s1 and s2 s1 s2 (s2 fixes omega_1)
    WeylWord u({2, 1}), v({2, 1, 2});
    REQUIRE(b2.apply_word(u, b2.fundamental(1)) == b2.apply_word(v, b2.fundamental(1)));
    TruncSeries qu = solve_Q(b2, u, 1, N);
    TruncSeries qv = solve_Q(b2, v, 1, N);
    CHECK(compare_series(qu, qv, N).equal);
    TruncSeries q = solve_Q(b2, u, 1, N);
    TruncSeries img = theta_to_e(b2, u, Poly::of(y_var(b2, 1, 3 + b2.sym(1))), N);
    Term lead = img.leading_term();
    Term leadInv = lead;
    leadInv.wt = -lead.wt;
    leadInv.y = lead.y.inverse();
    leadInv.psi = lead.psi.inverse();
    TruncSeries g = img.mul_term(leadInv);
    TruncSeries residual = g.mul(q.tau(3 + 2 * b2.sym(1))).sub(q.tau(3));
    for (int h : residual.heights()) CHECK(h > N);
}

TEST_CASE("catalog sums match e_e(chi) * Q to height 8") {
    for (const char* label : {"A2", "B2", "G2"}) {
        CartanData cd = CartanData::from_label(label);
        const int N = 8;
        QCache cache;
        for (const Weight& wt : rank2_Q_catalog_weights(cd)) {
            WeylWord w = word_for(cd, wt);
            int i = node_for(cd, wt);
            TruncSeries lhs =
                expand_char(cd, chi_extremal(cd, w, i), cd.identity(), N)
                    .mul(solve_Q(cd, w, i, N, &cache));
            TruncSeries rhs = lattice_sum_series(cd, rank2_Q_catalog(cd, wt), 0, N);
            SeriesDiff diff = compare_series(lhs, rhs, N);
            CHECK(diff.equal);
            if (!diff.equal) MESSAGE(label, " ", wt.to_string(), ": ", diff.witness);
        }
    }
}

TEST_CASE("catalog expansion low heights by hand") {
    CartanData a2 = CartanData::from_label("A2");
    // A2 entry at height <= 1: 1 + A_{2,-3}^{-1}
    TruncSeries s = lattice_sum_series(a2, rank2_Q_catalog(a2, Weight({0, -1})), 0, 1);
    Term a = special_monomial(a2, SpecialKind::A, 2, -3);
    a.y = a.y.inverse();
    CHECK(s.body() == Poly::of(unit_term(a2)) + Poly::of(a));
    // any entry at order 0 is 1
    for (const char* label : {"A2", "B2", "G2"}) {
        CartanData cd = CartanData::from_label(label);
        for (const Weight& wt : rank2_Q_catalog_weights(cd))
            CHECK(lattice_sum_series(cd, rank2_Q_catalog(cd, wt), 0, 0).body() ==
                  Poly::of(unit_term(cd)));
    }
}

TEST_CASE("extended QQ holds for A1 at height 8") {
    CartanData a1 = CartanData::from_label("A1");
    QCache cache;
    VerifyReport rep = verify_QQ(a1, 8, -1, &cache);
    CHECK(rep.all_pass());
    for (const auto& c : rep.cases)
        if (!c.pass) MESSAGE(c.id, ": ", c.witness);
    CHECK(rep.cases.size() == 2);
}

TEST_CASE("extended QQ holds for A2 at height 6") {
    CartanData a2 = CartanData::from_label("A2");
    QCache cache;
    VerifyReport rep = verify_QQ(a2, 6, -1, &cache);
    CHECK(rep.all_pass());
    for (const auto& c : rep.cases)
        if (!c.pass) MESSAGE(c.id, ": ", c.witness);
    CHECK(rep.cases.size() == 12);
}

TEST_CASE("sl2 w=e case is the normalized Wronskian") {
    CartanData a1 = CartanData::from_label("A1");
    const int N = 8;
    auto [lhs, rhs] = assemble_QQ_terms(a1, WeylWord{}, 1, 0, N);
    CHECK(rhs.body() == Poly::of(unit_term(a1)));
    SeriesDiff diff = compare_series(lhs, rhs, N);
    CHECK(diff.equal);
}

TEST_CASE("defining relation in l-weight coordinates") {
    // E_e(Theta_w(Y_{i,q^r})) = [w(omega_i)] Psi_{w,r-d} Q_{w,r-d} / (Psi_{w,r+d} Q_{w,r+d})
    for (const char* label : {"A2", "B2"}) {
        CartanData cd = CartanData::from_label(label);
        const int N = 4;
        QCache cache;
        for (const auto& elt : cd.all_elements()) {
            WeylWord w = cd.reduced_word(elt);
            for (int i = 1; i <= cd.rank(); ++i) {
                const int di = cd.sym(i);
                TruncSeries img = theta_to_e(cd, w, Poly::of(y_var(cd, i, 0)), N);
                TruncSeries lhs(cd, cd.identity(), img.anchor(), N,
                                embed_lweight(cd, img.body()));
                auto part = [&](int s) {
                    TruncSeries q = solve_Q(cd, w, i, N, &cache).tau(s);
                    TruncSeries qe(cd, cd.identity(), q.anchor(), N, embed_lweight(cd, q.body()));
                    return qe.mul_term(psi_extremal(cd, w, i, s));
                };
                TruncSeries rhs = part(-di).mul(part(di).invert()).mul_term(
                    weight_term(cd, elt.apply(cd.fundamental(i))));
                SeriesDiff diff = compare_series(lhs, rhs, N);
                CHECK(diff.equal);
                if (!diff.equal) MESSAGE(label, " w=", w.to_string(), " i=", i, ": ", diff.witness);
            }
        }
    }
}

TEST_CASE("QQ right-hand side at the identity reduces to the neighbor script-Q") {
    CartanData a2 = CartanData::from_label("A2");
    const int N = 5;
    QCache cache;
    auto [lhs, rhs] = assemble_QQ_terms(a2, WeylWord{}, 1, 0, N, &cache);
    TruncSeries expect = script_Q(a2, WeylWord{}, 2, 0, N, &cache);
    CHECK(compare_series(rhs, expect, N).equal);
    CHECK(compare_series(lhs, expect, N).equal);
}

TEST_CASE("Sigma_{i,w} quotient identity") {
    // Lambda(S^{-1}) S / varpi(Lambda(S^{-1}) S) = Q_{w(omega_i)} * prod of
    // neighbor Q-inverses, S = Theta_w(Sigma_{i,a}) Q_{w s_i(omega_i), a q_i^2}^{-1}
    for (const char* label : {"A2", "B2"}) {
        CartanData cd = CartanData::from_label(label);
        const int N = 5;
        QCache cache;
        for (const auto& elt : cd.all_elements()) {
            WeylWord w = cd.reduced_word(elt);
            for (int i = 1; i <= cd.rank(); ++i) {
                TruncSeries s = sigma_iw(cd, w, i, 0, N, &cache);
                TruncSeries sInv = s.invert();
                Term lam = sInv.leading_term();
                TruncSeries num = s.mul_term(lam);
                TruncSeries lhs = num.mul(num.varpi().invert());

                TruncSeries rhs = solve_Q(cd, w, i, N, &cache);
                for (int j = 1; j <= cd.rank(); ++j) {
                    if (j == i) continue;
                    std::vector<int> offsets;
                    switch (cd.cartan(i, j)) {
                    case -1: offsets = {cd.sym(i)}; break;
                    case -2: offsets = {2, 0}; break;
                    case -3: offsets = {3, 1, -1}; break;
                    default: continue;
                    }
                    for (int off : offsets)
                        rhs = rhs.mul(solve_Q(cd, w, j, N, &cache).tau(off).invert());
                }
                SeriesDiff diff = compare_series(lhs, rhs, N);
                CHECK(diff.equal);
                if (!diff.equal) MESSAGE(label, " w=", w.to_string(), " i=", i, ": ", diff.witness);
            }
        }
    }
}

TEST_CASE("varpi of Theta_w(Sigma^{-1}) is 1 - [-w(alpha_i)]") {
    for (const char* label : {"A2", "B2"}) {
        CartanData cd = CartanData::from_label(label);
        const int N = 6;
        for (const auto& elt : cd.all_elements()) {
            WeylWord w = cd.reduced_word(elt);
            for (int i = 1; i <= cd.rank(); ++i) {
                TruncSeries sig = sigma_series_in(cd, i, 0, N, elt);
                TruncSeries img = theta_word(cd, w, sig.invert());
                TruncSeries lhs = img.varpi();
                Weight walpha = elt.apply(cd.simple_root(i));
                Poly expect =
                    Poly::of(unit_term(cd)) + Poly::of(weight_term(cd, -walpha, -1));
                Weight anchor = cd.is_positive_root(walpha) ? Weight::zero(cd.rank()) : -walpha;
                TruncSeries rhs(cd, cd.identity(), anchor, N, expect);
                SeriesDiff diff = compare_series(lhs, rhs, N);
                CHECK(diff.equal);
                if (!diff.equal) MESSAGE(label, " w=", w.to_string(), " i=", i, ": ", diff.witness);
            }
        }
    }
}

TEST_CASE("shifted character reports") {
    CartanData a2 = CartanData::from_label("A2");
    const int N = 6;
    // w = e: one-dimensional case
    ShiftedCharReport rep = shifted_qchar_report(a2, WeylWord{}, 1, 0, N);
    CHECK(rep.psi.to_string() == "Psi[1,0]^1");
    CHECK(rep.series.body() == Poly::of(unit_term(a2)));
    CHECK(rep.character.body() == Poly::of(unit_term(a2)));
    CHECK(rep.coweight[0] == Rat(1, 1));
    CHECK(rep.coweight[1] == Rat(0, 1));

    // w = s_i: PsiTilde * E_e(Sigma)
    for (const char* label : {"A1", "A2", "B2", "G2"}) {
        CartanData cd = CartanData::from_label(label);
        for (int i = 1; i <= cd.rank(); ++i) {
            ShiftedCharReport r = shifted_qchar_report(cd, WeylWord({i}), i, 0, N);
            CHECK(r.psi.to_string() ==
                  special_monomial(cd, SpecialKind::PsiTilde, i, -2 * cd.sym(i)).to_string());
            TruncSeries sig =
                sigma_series(cd, i, -2 * cd.sym(i), SigmaBranch::E, N, cd.identity());
            CHECK(compare_series(r.series, sig, N).equal);
        }
    }

    // all rank-2 w: the varpi-image of the series equals the character
    for (const char* label : {"A2", "B2"}) {
        CartanData cd = CartanData::from_label(label);
        QCache cache;
        for (const auto& elt : cd.all_elements()) {
            WeylWord w = cd.reduced_word(elt);
            for (int i = 1; i <= cd.rank(); ++i) {
                ShiftedCharReport r = shifted_qchar_report(cd, w, i, 0, N, &cache);
                SeriesDiff diff = compare_series(r.series.varpi(), r.character, N);
                CHECK(diff.equal);
                // coweight metadata: w(omega_i^vee)
                auto cw = cd.coweight_image(w, i);
                for (int k = 0; k < cd.rank(); ++k) CHECK(r.coweight[k] == cw[k]);
            }
        }
    }
}

TEST_CASE("solver failure reporting") {
    CartanData a2 = CartanData::from_label("A2");
    CHECK_THROWS(solve_Q(a2, WeylWord({1, 1}), 1, 3)); // non-reduced word
}
