#pragma once

#include <string>

#include "qweyl/monomial.hpp"

namespace qweyl {

// Braid operators T_i on the Y-ring: T_i(Y_{i,r}) = Y_{i,r} A_{i,r+d_i}^{-1},
// other generators fixed. Words act letter by letter, rightmost first.
Poly chari_apply(const CartanData& cd, const WeylWord& w, const Poly& x);
Term chari_apply(const CartanData& cd, const WeylWord& w, const Term& x);

// Y_{w(omega_i),q^r} = T_w(Y_{i,q^r}); w must be reduced.
Term extremal_Y(const CartanData& cd, const WeylWord& w, int i, int r);

// The extension T'_i acting on Psi-variables and weight elements. Y-factors
// in the input are first rewritten through their Psi-embedding, so the output
// is free of Y-variables.
Poly tprime_apply(const CartanData& cd, const WeylWord& w, const Poly& x);
Term tprime_apply(const CartanData& cd, const WeylWord& w, const Term& x);

enum class PsiMethod { Substitution, Conjugated };

// The monomial l-weight Psi_{w(omega_i),q^r}; both methods must agree.
Term psi_extremal(const CartanData& cd, const WeylWord& w, int i, int r,
                  PsiMethod method = PsiMethod::Conjugated);

enum class BraidAlphabet { Y, Yprime };

struct BraidReport {
    bool pass = true;
    int order = 0;
    std::string counterexample; // empty when pass
};

// Checks the order-m(i,j) braid relation on all generators with spectral
// exponents in [-window, window].
BraidReport check_braid(const CartanData& cd, int i, int j, BraidAlphabet alphabet,
                        int window = 8);

} // namespace qweyl
