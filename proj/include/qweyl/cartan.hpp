#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qweyl {

// Element of the weight lattice P, coordinates in the fundamental-weight basis.
struct Weight {
    std::vector<int> c;

    Weight() = default;
    explicit Weight(std::vector<int> coords) : c(std::move(coords)) {}
    static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }

    int rank() const { return static_cast<int>(c.size()); }
    bool is_zero() const;

    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    Weight operator*(int k) const;
    Weight& operator+=(const Weight& o);
    bool operator==(const Weight& o) const { return c == o.c; }
    bool operator!=(const Weight& o) const { return c != o.c; }
    bool operator<(const Weight& o) const { return c < o.c; } // lexicographic, for containers

    std::string to_string() const; // "[c1,...,cn]"
};

// Exact rational, used only for coweight coordinates.
struct Rat {
    long long num = 0;
    long long den = 1;
    Rat() = default;
    Rat(long long n, long long d);
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    std::string to_string() const;
};

// Weyl group element, canonicalized by its matrix action on the omega-basis.
// Column j holds the omega-coordinates of w(omega_j).
class WeylElt {
public:
    WeylElt() = default;
    static WeylElt identity(int n);

    int rank() const { return n_; }
    int at(int row, int col) const { return m_[row * n_ + col]; } // 0-based
    int& at(int row, int col) { return m_[row * n_ + col]; }

    Weight apply(const Weight& w) const;
    WeylElt compose(const WeylElt& o) const; // (*this) after o : x -> this(o(x))

    bool operator==(const WeylElt& o) const { return n_ == o.n_ && m_ == o.m_; }
    bool operator!=(const WeylElt& o) const { return !(*this == o); }
    bool operator<(const WeylElt& o) const { return m_ < o.m_; }

private:
    int n_ = 0;
    std::vector<int> m_;
};

// Word in simple reflections; letters are 1-based node indices.
struct WeylWord {
    std::vector<int> letters;
    WeylWord() = default;
    explicit WeylWord(std::vector<int> l) : letters(std::move(l)) {}
    size_t size() const { return letters.size(); }
    std::string to_string() const; // "s1 s2 s1", "e" when empty
    static WeylWord parse(const std::string& text); // accepts "s1 s2" or "1 2"
};

// Static root-system data of a finite-type Cartan matrix, plus Weyl-group
// combinatorics. Immutable after construction; all methods are const.
class CartanData {
public:
    static CartanData from_label(const std::string& label);
    static CartanData from_matrix(const std::vector<std::vector<int>>& cartan,
                                  std::string label = "custom");

    const std::string& label() const { return label_; }
    int rank() const { return n_; }
    int cartan(int i, int j) const { return C_[(i - 1) * n_ + (j - 1)]; } // 1-based
    int sym(int i) const { return d_[i - 1]; }                           // d_i
    int lacing() const { return lacing_; }                               // max over components
    int lacing_of(int i) const { return lacing_of_[i - 1]; }
    int dual_coxeter_of(int i) const { return hvee_of_[i - 1]; }
    int dh_vee_of(int i) const { return lacing_of(i) * dual_coxeter_of(i); }
    int bar(int i) const { return bar_[i - 1]; }

    Weight fundamental(int i) const;
    Weight simple_root(int i) const; // column i of C
    const std::vector<Weight>& positive_roots() const { return pos_roots_; }

    // mu = sum m_i alpha_i with integer m_i, if it exists
    std::optional<std::vector<int>> root_coords(const Weight& mu) const;
    // height of mu in Q^+; nullopt unless mu is a non-negative integer
    // combination of simple roots
    std::optional<int> q_plus_height(const Weight& mu) const;
    bool is_positive_root(const Weight& mu) const;
    bool is_root(const Weight& mu) const;

    // Weyl group
    WeylElt identity() const { return WeylElt::identity(n_); }
    WeylElt simple_reflection(int i) const;
    WeylElt elt_of(const WeylWord& w) const; // letters applied right-to-left
    int length(const WeylElt& w) const;
    bool is_reduced(const WeylWord& w) const;
    WeylWord reduced_word(const WeylElt& w) const;
    WeylElt inverse(const WeylElt& w) const;
    Weight apply_word(const WeylWord& w, const Weight& lambda) const;

    WeylWord longest_word() const;
    const std::vector<WeylElt>& all_elements() const; // cached; throws past cap

    // W-orbit of omega_i with minimal-length coset representatives, BFS order.
    std::vector<std::pair<WeylWord, Weight>> orbit_fundamental(int i) const;

    // w(omega_i^vee) in the fundamental-coweight basis
    std::vector<Rat> coweight_image(const WeylWord& w, int i) const;

    // braid order m(i,j) in {2,3,4,6}
    int braid_order(int i, int j) const;

private:
    std::string label_;
    int n_ = 0;
    std::vector<int> C_;         // row-major
    std::vector<int> d_;
    std::vector<int> lacing_of_; // per node: lacing of its component
    std::vector<int> hvee_of_;   // per node: dual Coxeter number of its component
    int lacing_ = 1;
    std::vector<int> bar_;
    std::vector<Weight> pos_roots_;
    std::vector<long long> adjC_; // adjugate of C, row-major
    long long detC_ = 1;
    // lazy group enumeration, shared across copies and safe to race on
    std::shared_ptr<std::once_flag> elements_once_ = std::make_shared<std::once_flag>();
    std::shared_ptr<std::vector<WeylElt>> elements_ = std::make_shared<std::vector<WeylElt>>();

    void derive();
};

} // namespace qweyl
