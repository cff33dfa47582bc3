#pragma once

#include <string>
#include <vector>

#include "qweyl/bigint.hpp"
#include "qweyl/cartan.hpp"

namespace qweyl {

// One variable factor: node index (1-based), spectral exponent r (a = q^r),
// and its integer exponent.
struct VarExp {
    int node;
    int r;
    int e;
    bool operator==(const VarExp& o) const { return node == o.node && r == o.r && e == o.e; }
};

// Sparse Laurent exponent vector, sorted by (node, r), no zero exponents.
class ExpMap {
public:
    ExpMap() = default;

    bool empty() const { return v_.empty(); }
    size_t size() const { return v_.size(); }
    const std::vector<VarExp>& factors() const { return v_; }

    void set(int node, int r, int e); // overwrites
    void mul_var(int node, int r, int e); // adds exponent
    int get(int node, int r) const;

    ExpMap operator*(const ExpMap& o) const;
    ExpMap pow(int k) const;     // raise every exponent
    ExpMap tau(int s) const;     // r -> r + s
    ExpMap flip_r() const;       // r -> -r
    ExpMap inverse() const { return pow(-1); }

    bool operator==(const ExpMap& o) const { return v_ == o.v_; }
    bool operator<(const ExpMap& o) const;

private:
    std::vector<VarExp> v_;
};

// coeff * [wt] * prod Y[node,r]^e * prod Psi[node,r]^e
struct Term {
    BigInt coeff;
    Weight wt;
    ExpMap y;
    ExpMap psi;

    // total weight: wt plus omega_i per Y- and Psi-exponent
    Weight varpi(const CartanData& cd) const;

    // grading weight of the completed-ring filtration: wt plus omega_i per
    // Y-exponent; Psi-exponents do not move the filtration (they sit in the
    // finite Laurent prefactor of the completion)
    Weight ht_weight(const CartanData& cd) const;

    Term mul(const Term& o) const;
    Term tau(int s) const;
    // same monomial part?
    bool same_mono(const Term& o) const { return wt == o.wt && y == o.y && psi == o.psi; }
    // monomial ordering: (weight part, yexp, psiexp)
    static bool mono_less(const Term& a, const Term& b);

    std::string to_string() const;
    std::string to_display() const; // spectral exponents rendered as q^r
};

Term make_term(const CartanData& cd, long long coeff, const Weight& wt,
               const std::vector<VarExp>& yexp, const std::vector<VarExp>& psiexp);
Term unit_term(const CartanData& cd);
Term weight_term(const CartanData& cd, const Weight& w, long long coeff = 1);
Term y_var(const CartanData& cd, int i, int r, int e = 1);
Term psi_var(const CartanData& cd, int i, int r, int e = 1);

enum class SpecialKind { A, W, U, PsiTilde };

// The distinguished monomials: A_{i,q^r}, W_{i,q^r}, U_{i,q^r}, PsiTilde_{i,q^r}.
Term special_monomial(const CartanData& cd, SpecialKind kind, int i, int r);

// Y_{i,a} -> [omega_i] Psi_{i,a q_i^{-1}} Psi_{i,a q_i}^{-1}, extended
// multiplicatively; the Psi- and weight parts of the input pass through.
Term embed_lweight(const CartanData& cd, const Term& t);

// Finite sum of terms in canonical form: monomials distinct and sorted,
// coefficients non-zero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Term> terms); // canonicalizes

    static Poly zero() { return Poly(); }
    static Poly of(const Term& t);

    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly mul_term(const Term& t) const;
    Poly pow(int k) const; // k >= 0

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string to_string() const;
    std::string to_display() const;

private:
    std::vector<Term> t_;
    void canonicalize();
};

Poly tau_shift(const Poly& p, int s);
Poly sigma_flip(const Poly& p); // Psi_{i,r} -> Psi_{i,-r}^{-1}, Y_{i,r} -> Y_{i,-r}, [w] fixed
Poly embed_lweight(const CartanData& cd, const Poly& p);

} // namespace qweyl
