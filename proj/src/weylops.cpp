#include "qweyl/weylops.hpp"

#include <stdexcept>

namespace qweyl {

namespace {

// T_i on one term (terms map to terms; the action is monomial)
Term chari_step(const CartanData& cd, int i, const Term& x) {
    if (!x.psi.empty())
        throw std::invalid_argument("chari_apply: input must be free of Psi-variables");
    Term r = x;
    for (const auto& f : x.y.factors()) {
        if (f.node != i) continue;
        // Y_{i,r} -> Y_{i,r} A_{i, r+d_i}^{-1}
        Term a = special_monomial(cd, SpecialKind::A, i, f.r + cd.sym(i));
        r.y = r.y * a.y.pow(-f.e);
    }
    return r;
}

// T'_i on one term; input must be free of Y-variables
Term tprime_step(const CartanData& cd, int i, const Term& x) {
    Term r;
    r.coeff = x.coeff;
    r.wt = x.wt - cd.simple_root(i) * x.wt.c[i - 1]; // [w] -> [s_i(w)]
    r.y = x.y;
    const int di = cd.sym(i);
    for (const auto& f : x.psi.factors()) {
        if (f.node != i) {
            r.psi.mul_var(f.node, f.r, f.e);
            continue;
        }
        // T'_i(Psi_{i,r}) = Psi_{i,r+2d_i}^{-1} * neighbor products
        r.psi.mul_var(i, f.r + 2 * di, -f.e);
        for (int j = 1; j <= cd.rank(); ++j) {
            switch (cd.cartan(i, j)) {
            case -1: r.psi.mul_var(j, f.r + di, f.e); break;
            case -2:
                r.psi.mul_var(j, f.r, f.e);
                r.psi.mul_var(j, f.r + 2, f.e);
                break;
            case -3:
                r.psi.mul_var(j, f.r - 1, f.e);
                r.psi.mul_var(j, f.r + 1, f.e);
                r.psi.mul_var(j, f.r + 3, f.e);
                break;
            default: break;
            }
        }
    }
    return r;
}

} // namespace

Term chari_apply(const CartanData& cd, const WeylWord& w, const Term& x) {
    Term r = x;
    for (size_t k = w.letters.size(); k-- > 0;) r = chari_step(cd, w.letters[k], r);
    return r;
}

Poly chari_apply(const CartanData& cd, const WeylWord& w, const Poly& x) {
    std::vector<Term> out;
    out.reserve(x.term_count());
    for (const auto& t : x.terms()) out.push_back(chari_apply(cd, w, t));
    return Poly(std::move(out));
}

Term extremal_Y(const CartanData& cd, const WeylWord& w, int i, int r) {
    if (!cd.is_reduced(w))
        throw std::invalid_argument("extremal_Y: word '" + w.to_string() + "' is not reduced");
    return chari_apply(cd, w, y_var(cd, i, r));
}

Term tprime_apply(const CartanData& cd, const WeylWord& w, const Term& x) {
    Term r = embed_lweight(cd, x);
    for (size_t k = w.letters.size(); k-- > 0;) r = tprime_step(cd, w.letters[k], r);
    return r;
}

Poly tprime_apply(const CartanData& cd, const WeylWord& w, const Poly& x) {
    std::vector<Term> out;
    out.reserve(x.term_count());
    for (const auto& t : x.terms()) out.push_back(tprime_apply(cd, w, t));
    return Poly(std::move(out));
}

namespace {

// greedy factorization of the node-k content of an extremal monomial into
// W_{k,b}-blocks, emitting Psi_{k,-b} per block
void substitute_w_blocks(const CartanData& cd, int k, ExpMap content, Term& out) {
    const int gap = cd.lacing_of(k) - cd.sym(k); // 1 or 2
    int guard = 0;
    while (!content.empty()) {
        if (++guard > 10000)
            throw std::logic_error("psi_extremal: W-block factorization did not terminate");
        const VarExp bottom = content.factors().front();
        const int sgn = bottom.e > 0 ? 1 : -1;
        const int b = bottom.r + gap; // block spans {b-gap, ..., b+gap} stepping by gap
        if (gap == 1) {
            content.mul_var(k, b - 1, -sgn);
            content.mul_var(k, b + 1, -sgn);
        } else {
            content.mul_var(k, b - 2, -sgn);
            content.mul_var(k, b, -sgn);
            content.mul_var(k, b + 2, -sgn);
        }
        // every removal must not overshoot: all remaining exponents keep
        // absolute value bounded by the original support
        for (const auto& f : content.factors()) {
            if (f.r < bottom.r)
                throw std::logic_error("psi_extremal: W-block factorization failed");
        }
        out.psi.mul_var(k, -b, sgn);
    }
}

} // namespace

Term psi_extremal(const CartanData& cd, const WeylWord& w, int i, int r, PsiMethod method) {
    if (!cd.is_reduced(w))
        throw std::invalid_argument("psi_extremal: word '" + w.to_string() + "' is not reduced");
    if (method == PsiMethod::Conjugated) {
        Poly start = Poly::of(psi_var(cd, i, r));
        Poly res = sigma_flip(tprime_apply(cd, w, sigma_flip(start)));
        if (res.term_count() != 1) throw std::logic_error("psi_extremal: non-monomial result");
        Term t = res.terms()[0];
        if (!t.coeff.is_one() || !t.wt.is_zero() || !t.y.empty())
            throw std::logic_error("psi_extremal: result is not a pure Psi-monomial");
        return t;
    }
    // substitution per the factorization of Y_{w(omega_i),1}
    Term m = extremal_Y(cd, w, i, 0);
    Term out = unit_term(cd);
    const int di = cd.sym(i);
    // collect per-node content
    for (int k = 1; k <= cd.rank(); ++k) {
        ExpMap content;
        for (const auto& f : m.y.factors())
            if (f.node == k) content.mul_var(k, f.r, f.e);
        if (content.empty()) continue;
        if (cd.cartan(k, i) < -1) {
            substitute_w_blocks(cd, k, content, out);
        } else if (cd.sym(k) == di) {
            for (const auto& f : content.factors()) out.psi.mul_var(k, -f.r, f.e);
        } else if (cd.cartan(i, k) == -2) {
            for (const auto& f : content.factors()) {
                out.psi.mul_var(k, -f.r + 1, f.e);
                out.psi.mul_var(k, -f.r - 1, f.e);
            }
        } else if (cd.cartan(i, k) == -3) {
            for (const auto& f : content.factors()) {
                out.psi.mul_var(k, -f.r + 2, f.e);
                out.psi.mul_var(k, -f.r, f.e);
                out.psi.mul_var(k, -f.r - 2, f.e);
            }
        } else {
            throw std::logic_error("psi_extremal: unreachable Cartan pattern");
        }
    }
    return out.tau(r);
}

BraidReport check_braid(const CartanData& cd, int i, int j, BraidAlphabet alphabet, int window) {
    if (i == j) throw std::invalid_argument("check_braid: need i != j");
    BraidReport rep;
    rep.order = cd.braid_order(i, j);
    WeylWord lhs, rhs;
    for (int k = 0; k < rep.order; ++k) {
        lhs.letters.push_back(k % 2 == 0 ? i : j);
        rhs.letters.push_back(k % 2 == 0 ? j : i);
    }
    auto check = [&](const Poly& gen, const std::string& name) {
        Poly a = alphabet == BraidAlphabet::Y ? chari_apply(cd, lhs, gen) : tprime_apply(cd, lhs, gen);
        Poly b = alphabet == BraidAlphabet::Y ? chari_apply(cd, rhs, gen) : tprime_apply(cd, rhs, gen);
        if (!(a == b)) {
            rep.pass = false;
            if (rep.counterexample.empty())
                rep.counterexample = name + ": " + a.to_string() + " != " + b.to_string();
        }
    };
    for (int k = 1; k <= cd.rank(); ++k) {
        for (int r = -window; r <= window; ++r) {
            if (alphabet == BraidAlphabet::Y) {
                check(Poly::of(y_var(cd, k, r)), "Y[" + std::to_string(k) + "," + std::to_string(r) + "]");
            } else {
                check(Poly::of(psi_var(cd, k, r)),
                      "Psi[" + std::to_string(k) + "," + std::to_string(r) + "]");
                check(Poly::of(y_var(cd, k, r)),
                      "Y[" + std::to_string(k) + "," + std::to_string(r) + "]");
            }
        }
        check(Poly::of(weight_term(cd, cd.fundamental(k))), "w" + cd.fundamental(k).to_string());
    }
    return rep;
}

} // namespace qweyl
