#include "qweyl/cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qweyl {

// ---------------------------------------------------------------- Weight

bool Weight::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

Weight Weight::operator+(const Weight& o) const {
    Weight r = *this;
    for (size_t k = 0; k < c.size(); ++k) r.c[k] += o.c[k];
    return r;
}

Weight Weight::operator-(const Weight& o) const {
    Weight r = *this;
    for (size_t k = 0; k < c.size(); ++k) r.c[k] -= o.c[k];
    return r;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

Weight Weight::operator*(int k) const {
    Weight r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

Weight& Weight::operator+=(const Weight& o) {
    for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
    return *this;
}

std::string Weight::to_string() const {
    std::string s = "[";
    for (size_t k = 0; k < c.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(c[k]);
    }
    return s + "]";
}

// ---------------------------------------------------------------- Rat

Rat::Rat(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

std::string Rat::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------- WeylElt

WeylElt WeylElt::identity(int n) {
    WeylElt e;
    e.n_ = n;
    e.m_.assign(static_cast<size_t>(n) * n, 0);
    for (int k = 0; k < n; ++k) e.at(k, k) = 1;
    return e;
}

Weight WeylElt::apply(const Weight& w) const {
    Weight r = Weight::zero(n_);
    for (int row = 0; row < n_; ++row) {
        long long acc = 0;
        for (int col = 0; col < n_; ++col) acc += static_cast<long long>(at(row, col)) * w.c[col];
        r.c[row] = static_cast<int>(acc);
    }
    return r;
}

WeylElt WeylElt::compose(const WeylElt& o) const {
    WeylElt r;
    r.n_ = n_;
    r.m_.assign(m_.size(), 0);
    for (int row = 0; row < n_; ++row)
        for (int k = 0; k < n_; ++k) {
            int a = at(row, k);
            if (!a) continue;
            for (int col = 0; col < n_; ++col) r.at(row, col) += a * o.at(k, col);
        }
    return r;
}

// ---------------------------------------------------------------- WeylWord

std::string WeylWord::to_string() const {
    if (letters.empty()) return "e";
    std::string s;
    for (size_t k = 0; k < letters.size(); ++k) {
        if (k) s += " ";
        s += "s" + std::to_string(letters[k]);
    }
    return s;
}

WeylWord WeylWord::parse(const std::string& text) {
    WeylWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "e") continue;
        if (!tok.empty() && (tok[0] == 's' || tok[0] == 'S')) tok = tok.substr(1);
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 1)
            throw std::invalid_argument("WeylWord::parse: bad token '" + tok + "'");
        w.letters.push_back(v);
    }
    return w;
}

// ---------------------------------------------------------------- CartanData

namespace {

std::vector<std::vector<int>> family_matrix(char fam, int n) {
    std::vector<std::vector<int>> C(n, std::vector<int>(n, 0));
    for (int k = 0; k < n; ++k) C[k][k] = 2;
    auto link = [&](int a, int b, int cab, int cba) {
        C[a][b] = cab;
        C[b][a] = cba;
    };
    switch (fam) {
    case 'A':
        for (int k = 0; k + 1 < n; ++k) link(k, k + 1, -1, -1);
        break;
    case 'B': // alpha_1 long ... alpha_n short; C_{n-1,n} = -1, C_{n,n-1} = -2
        if (n < 2) throw std::invalid_argument("B_n needs n >= 2");
        for (int k = 0; k + 1 < n; ++k) link(k, k + 1, -1, -1);
        C[n - 2][n - 1] = -1;
        C[n - 1][n - 2] = -2;
        break;
    case 'C':
        if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
        for (int k = 0; k + 1 < n; ++k) link(k, k + 1, -1, -1);
        C[n - 2][n - 1] = -2;
        C[n - 1][n - 2] = -1;
        break;
    case 'D':
        if (n < 4) throw std::invalid_argument("D_n needs n >= 4");
        for (int k = 0; k + 2 < n; ++k) link(k, k + 1, -1, -1);
        link(n - 3, n - 1, -1, -1);
        break;
    case 'E':
        if (n < 6 || n > 8) throw std::invalid_argument("E family has ranks 6..8");
        link(0, 2, -1, -1);
        link(1, 3, -1, -1);
        for (int k = 2; k + 1 < n; ++k) link(k, k + 1, -1, -1);
        break;
    case 'G':
        if (n != 2) throw std::invalid_argument("G family has rank 2 only");
        link(0, 1, -1, -3); // alpha_1 long, d_1 = 3
        break;
    case 'F':
        if (n != 4) throw std::invalid_argument("F family has rank 4 only");
        link(0, 1, -1, -1);
        link(1, 2, -2, -1); // alpha_1, alpha_2 long
        link(2, 3, -1, -1);
        break;
    default:
        throw std::invalid_argument(std::string("unknown family '") + fam + "'");
    }
    return C;
}

} // namespace

CartanData CartanData::from_label(const std::string& label) {
    // split on 'x' for products, e.g. "A1xA1"
    std::vector<std::string> parts;
    size_t start = 0;
    while (start < label.size()) {
        size_t pos = label.find('x', start);
        if (pos == std::string::npos) pos = label.size();
        parts.push_back(label.substr(start, pos - start));
        start = pos + 1;
    }
    std::vector<std::vector<std::vector<int>>> blocks;
    int total = 0;
    for (const auto& p : parts) {
        if (p.size() < 2) throw std::invalid_argument("bad type label '" + label + "'");
        char fam = static_cast<char>(std::toupper(p[0]));
        int rank = std::stoi(p.substr(1));
        if (rank < 1) throw std::invalid_argument("bad rank in label '" + label + "'");
        blocks.push_back(family_matrix(fam, rank));
        total += rank;
    }
    std::vector<std::vector<int>> C(total, std::vector<int>(total, 0));
    int off = 0;
    for (const auto& b : blocks) {
        int r = static_cast<int>(b.size());
        for (int a = 0; a < r; ++a)
            for (int c = 0; c < r; ++c) C[off + a][off + c] = b[a][c];
        off += r;
    }
    return from_matrix(C, label);
}

CartanData CartanData::from_matrix(const std::vector<std::vector<int>>& cartan, std::string label) {
    CartanData cd;
    cd.label_ = std::move(label);
    cd.n_ = static_cast<int>(cartan.size());
    if (cd.n_ == 0) throw std::invalid_argument("empty Cartan matrix");
    cd.C_.assign(static_cast<size_t>(cd.n_) * cd.n_, 0);
    for (int a = 0; a < cd.n_; ++a) {
        if (static_cast<int>(cartan[a].size()) != cd.n_)
            throw std::invalid_argument("Cartan matrix is not square");
        for (int b = 0; b < cd.n_; ++b) {
            int v = cartan[a][b];
            if (a == b && v != 2) throw std::invalid_argument("Cartan matrix needs 2 on the diagonal");
            if (a != b && (v > 0 || v < -3))
                throw std::invalid_argument("off-diagonal Cartan entries must lie in {0,-1,-2,-3}");
            if (a != b && ((v == 0) != (cartan[b][a] == 0)))
                throw std::invalid_argument("Cartan zero pattern must be symmetric");
            cd.C_[a * cd.n_ + b] = v;
        }
    }
    cd.derive();
    return cd;
}

void CartanData::derive() {
    const int n = n_;
    auto C = [&](int a, int b) { return C_[a * n + b]; };

    // connected components
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::queue<int> bfs;
        bfs.push(s);
        comp[s] = ncomp;
        while (!bfs.empty()) {
            int a = bfs.front();
            bfs.pop();
            for (int b = 0; b < n; ++b)
                if (b != a && C(a, b) != 0 && comp[b] < 0) {
                    comp[b] = ncomp;
                    bfs.push(b);
                }
        }
        ++ncomp;
    }

    // symmetrizers: d_a C_{a,b} = d_b C_{b,a}, scaled per component to
    // relatively prime positive integers
    std::vector<long long> dnum(n, 0), dden(n, 0);
    for (int s = 0; s < n; ++s) {
        if (dnum[s] != 0) continue;
        dnum[s] = 1;
        dden[s] = 1;
        std::queue<int> bfs;
        bfs.push(s);
        while (!bfs.empty()) {
            int a = bfs.front();
            bfs.pop();
            for (int b = 0; b < n; ++b) {
                if (b == a || C(a, b) == 0 || dnum[b] != 0) continue;
                // d_b = d_a * C_{a,b} / C_{b,a}
                long long num = dnum[a] * C(a, b);
                long long den = dden[a] * C(b, a);
                if (den < 0) { num = -num; den = -den; }
                long long g = std::gcd(num < 0 ? -num : num, den);
                dnum[b] = num / g;
                dden[b] = den / g;
                if (dnum[b] <= 0) throw std::invalid_argument("Cartan matrix is not symmetrizable");
                bfs.push(b);
            }
        }
    }
    d_.assign(n, 0);
    for (int compId = 0; compId < ncomp; ++compId) {
        long long lcmden = 1;
        for (int a = 0; a < n; ++a)
            if (comp[a] == compId) lcmden = std::lcm(lcmden, dden[a]);
        long long g = 0;
        for (int a = 0; a < n; ++a)
            if (comp[a] == compId) g = std::gcd(g, dnum[a] * (lcmden / dden[a]));
        for (int a = 0; a < n; ++a)
            if (comp[a] == compId) d_[a] = static_cast<int>(dnum[a] * (lcmden / dden[a]) / g);
    }
    // consistency: d_a C_{a,b} == d_b C_{b,a}
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (static_cast<long long>(d_[a]) * C(a, b) != static_cast<long long>(d_[b]) * C(b, a))
                throw std::invalid_argument("Cartan matrix is not symmetrizable");

    // finite type: the symmetrized matrix B = DC must be positive definite
    // (Sylvester with exact integer minors)
    {
        std::vector<std::vector<long long>> B(n, std::vector<long long>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) B[a][b] = static_cast<long long>(d_[a]) * C(a, b);
        // fraction-free Gaussian elimination, Bareiss
        long long prev = 1;
        for (int k = 0; k < n; ++k) {
            if (B[k][k] <= 0) throw std::invalid_argument("Cartan matrix is not of finite type");
            for (int a = k + 1; a < n; ++a)
                for (int b = k + 1; b < n; ++b)
                    B[a][b] = (B[a][b] * B[k][k] - B[a][k] * B[k][b]) / prev;
            prev = B[k][k];
        }
    }

    // lacing per component
    lacing_of_.assign(n, 1);
    std::vector<int> compLacing(ncomp, 1);
    for (int a = 0; a < n; ++a) compLacing[comp[a]] = std::max(compLacing[comp[a]], d_[a]);
    for (int a = 0; a < n; ++a) lacing_of_[a] = compLacing[comp[a]];
    lacing_ = *std::max_element(compLacing.begin(), compLacing.end());

    // adjugate and determinant of C (for root coordinates)
    {
        // det via Bareiss on a copy
        std::vector<std::vector<long long>> M(n, std::vector<long long>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) M[a][b] = C(a, b);
        auto det = [&](std::vector<std::vector<long long>> m) {
            long long prev = 1, sign = 1;
            int sz = static_cast<int>(m.size());
            for (int k = 0; k < sz; ++k) {
                if (m[k][k] == 0) {
                    int piv = -1;
                    for (int a = k + 1; a < sz; ++a)
                        if (m[a][k] != 0) { piv = a; break; }
                    if (piv < 0) return 0ll;
                    std::swap(m[k], m[piv]);
                    sign = -sign;
                }
                for (int a = k + 1; a < sz; ++a)
                    for (int b = k + 1; b < sz; ++b)
                        m[a][b] = (m[a][b] * m[k][k] - m[a][k] * m[k][b]) / prev;
                prev = m[k][k];
            }
            return sign * m[sz - 1][sz - 1];
        };
        detC_ = det(M);
        if (detC_ == 0) throw std::invalid_argument("singular Cartan matrix");
        adjC_.assign(static_cast<size_t>(n) * n, 0);
        if (n == 1) {
            adjC_[0] = 1;
        } else {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    std::vector<std::vector<long long>> minor;
                    for (int r = 0; r < n; ++r) {
                        if (r == b) continue;
                        std::vector<long long> row;
                        for (int c = 0; c < n; ++c)
                            if (c != a) row.push_back(C(r, c));
                        minor.push_back(std::move(row));
                    }
                    long long sgn = ((a + b) % 2 == 0) ? 1 : -1;
                    adjC_[a * n + b] = sgn * det(minor); // adj = transpose of cofactors
                }
        }
    }

    // positive roots by reflection closure of the simple roots
    {
        std::set<Weight> seen;
        std::queue<Weight> work;
        for (int i = 1; i <= n; ++i) {
            Weight a = simple_root(i);
            if (seen.insert(a).second) work.push(a);
            Weight na = -a;
            if (seen.insert(na).second) work.push(na);
        }
        while (!work.empty()) {
            Weight b = work.front();
            work.pop();
            for (int i = 1; i <= n; ++i) {
                Weight rb = b - simple_root(i) * b.c[i - 1];
                if (seen.insert(rb).second) work.push(rb);
            }
            if (seen.size() > 4096) throw std::invalid_argument("root system too large");
        }
        pos_roots_.clear();
        for (const auto& b : seen) {
            auto rc = root_coords(b);
            if (!rc) throw std::logic_error("root with non-integral root coordinates");
            bool nonneg = std::all_of(rc->begin(), rc->end(), [](int x) { return x >= 0; });
            bool nonpos = std::all_of(rc->begin(), rc->end(), [](int x) { return x <= 0; });
            if (!nonneg && !nonpos) throw std::logic_error("root neither positive nor negative");
            if (nonneg) pos_roots_.push_back(b);
        }
        std::sort(pos_roots_.begin(), pos_roots_.end());
    }

    // dual Coxeter number per component: 1 + (sum_i m_i d_i)/d over the
    // highest root theta = sum m_i alpha_i of the component
    hvee_of_.assign(n, 0);
    for (int compId = 0; compId < ncomp; ++compId) {
        int best = -1, bestHt = -1;
        for (size_t r = 0; r < pos_roots_.size(); ++r) {
            auto rc = *root_coords(pos_roots_[r]);
            bool inComp = false;
            int ht = 0;
            long long norm = 0; // (beta,beta)/2 = sum_a m_a d_a C(a,b) m_b / 2
            for (int a = 0; a < n; ++a) {
                if (rc[a] != 0 && comp[a] == compId) inComp = true;
                ht += rc[a];
                for (int b = 0; b < n; ++b)
                    norm += static_cast<long long>(rc[a]) * d_[a] * C(a, b) * rc[b];
            }
            norm /= 2;
            if (!inComp) continue;
            if (norm == compLacing[compId] && ht > bestHt) {
                bestHt = ht;
                best = static_cast<int>(r);
            }
        }
        if (best < 0) throw std::logic_error("no long root found in component");
        auto rc = *root_coords(pos_roots_[best]);
        long long acc = 0;
        for (int a = 0; a < n; ++a) acc += static_cast<long long>(rc[a]) * d_[a];
        if (acc % compLacing[compId] != 0) throw std::logic_error("dual Coxeter computation failed");
        int hv = 1 + static_cast<int>(acc / compLacing[compId]);
        for (int a = 0; a < n; ++a)
            if (comp[a] == compId) hvee_of_[a] = hv;
    }

    // bar involution from the longest element: w0(alpha_i) = -alpha_{bar(i)}
    bar_.assign(n, 0);
    WeylElt w0 = elt_of(longest_word());
    for (int i = 1; i <= n; ++i) {
        Weight img = -w0.apply(simple_root(i));
        int found = 0;
        for (int j = 1; j <= n; ++j)
            if (img == simple_root(j)) { found = j; break; }
        if (!found) throw std::logic_error("bar involution: w0(alpha_i) is not -alpha_j");
        bar_[i - 1] = found;
    }
}

Weight CartanData::fundamental(int i) const {
    Weight w = Weight::zero(n_);
    w.c[i - 1] = 1;
    return w;
}

Weight CartanData::simple_root(int i) const {
    Weight w = Weight::zero(n_);
    for (int row = 0; row < n_; ++row) w.c[row] = C_[row * n_ + (i - 1)];
    return w;
}

std::optional<std::vector<int>> CartanData::root_coords(const Weight& mu) const {
    // m = C^{-1} mu = adj(C) mu / det
    std::vector<int> m(n_);
    for (int a = 0; a < n_; ++a) {
        long long acc = 0;
        for (int b = 0; b < n_; ++b) acc += adjC_[a * n_ + b] * mu.c[b];
        if (acc % detC_ != 0) return std::nullopt;
        m[a] = static_cast<int>(acc / detC_);
    }
    return m;
}

std::optional<int> CartanData::q_plus_height(const Weight& mu) const {
    auto rc = root_coords(mu);
    if (!rc) return std::nullopt;
    int ht = 0;
    for (int x : *rc) {
        if (x < 0) return std::nullopt;
        ht += x;
    }
    return ht;
}

bool CartanData::is_positive_root(const Weight& mu) const {
    return std::binary_search(pos_roots_.begin(), pos_roots_.end(), mu);
}

bool CartanData::is_root(const Weight& mu) const {
    return is_positive_root(mu) || is_positive_root(-mu);
}

WeylElt CartanData::simple_reflection(int i) const {
    WeylElt s = identity();
    Weight alpha = simple_root(i);
    // s_i(omega_j) = omega_j - delta_{ij} alpha_i : adjust column i-1
    for (int row = 0; row < n_; ++row) s.at(row, i - 1) -= alpha.c[row];
    return s;
}

WeylElt CartanData::elt_of(const WeylWord& w) const {
    WeylElt r = identity();
    for (int letter : w.letters) {
        if (letter < 1 || letter > n_)
            throw std::invalid_argument("word letter out of range: s" + std::to_string(letter));
        r = r.compose(simple_reflection(letter));
    }
    return r;
}

int CartanData::length(const WeylElt& w) const {
    int l = 0;
    for (const auto& beta : pos_roots_) {
        Weight img = w.apply(beta);
        auto rc = root_coords(img);
        bool neg = rc && std::all_of(rc->begin(), rc->end(), [](int x) { return x <= 0; });
        if (neg) ++l;
    }
    return l;
}

bool CartanData::is_reduced(const WeylWord& w) const {
    return length(elt_of(w)) == static_cast<int>(w.letters.size());
}

WeylWord CartanData::reduced_word(const WeylElt& w) const {
    WeylWord out;
    WeylElt cur = w;
    WeylElt e = identity();
    while (cur != e) {
        int pick = 0;
        for (int i = 1; i <= n_; ++i) {
            Weight img = cur.apply(simple_root(i));
            auto rc = root_coords(img);
            if (rc && std::all_of(rc->begin(), rc->end(), [](int x) { return x <= 0; })) {
                pick = i;
                break;
            }
        }
        if (!pick) throw std::logic_error("reduced_word: no descent found");
        cur = cur.compose(simple_reflection(pick));
        out.letters.push_back(pick);
    }
    // letters were peeled from the right end of the word
    std::reverse(out.letters.begin(), out.letters.end());
    return out;
}

WeylElt CartanData::inverse(const WeylElt& w) const {
    WeylWord rw = reduced_word(w);
    std::reverse(rw.letters.begin(), rw.letters.end());
    return elt_of(rw);
}

Weight CartanData::apply_word(const WeylWord& w, const Weight& lambda) const {
    Weight r = lambda;
    for (size_t k = w.letters.size(); k-- > 0;) {
        int i = w.letters[k];
        if (i < 1 || i > n_)
            throw std::invalid_argument("word letter out of range: s" + std::to_string(i));
        r = r - simple_root(i) * r.c[i - 1];
    }
    return r;
}

WeylWord CartanData::longest_word() const {
    // greedy ascent from the identity
    WeylElt cur = identity();
    int l = 0;
    std::vector<int> collected;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 1; i <= n_; ++i) {
            WeylElt cand = cur.compose(simple_reflection(i));
            int cl = length(cand);
            if (cl == l + 1) {
                cur = cand;
                l = cl;
                collected.push_back(i);
                progress = true;
                break;
            }
        }
    }
    return WeylWord(collected);
}

const std::vector<WeylElt>& CartanData::all_elements() const {
    std::call_once(*elements_once_, [this]() {
        std::set<WeylElt> seen;
        std::queue<WeylElt> work;
        WeylElt e = identity();
        seen.insert(e);
        work.push(e);
        while (!work.empty()) {
            WeylElt w = work.front();
            work.pop();
            elements_->push_back(w);
            for (int i = 1; i <= n_; ++i) {
                WeylElt nx = w.compose(simple_reflection(i));
                if (seen.insert(nx).second) work.push(nx);
            }
            if (seen.size() > 200000)
                throw std::runtime_error("Weyl group too large to enumerate");
        }
    });
    return *elements_;
}

std::vector<std::pair<WeylWord, Weight>> CartanData::orbit_fundamental(int i) const {
    std::vector<std::pair<WeylWord, Weight>> out;
    std::set<Weight> seen;
    std::queue<std::pair<WeylWord, Weight>> work;
    work.push({WeylWord{}, fundamental(i)});
    seen.insert(fundamental(i));
    while (!work.empty()) {
        auto [word, wt] = work.front();
        work.pop();
        out.push_back({word, wt});
        for (int j = 1; j <= n_; ++j) {
            Weight img = wt - simple_root(j) * wt.c[j - 1];
            if (seen.insert(img).second) {
                WeylWord nw;
                nw.letters.push_back(j);
                nw.letters.insert(nw.letters.end(), word.letters.begin(), word.letters.end());
                work.push({nw, img});
            }
        }
    }
    return out;
}

std::vector<Rat> CartanData::coweight_image(const WeylWord& w, int i) const {
    Weight img = apply_word(w, fundamental(i));
    std::vector<Rat> out;
    out.reserve(n_);
    for (int k = 1; k <= n_; ++k)
        out.push_back(Rat(static_cast<long long>(img.c[k - 1]) * sym(k), sym(i)));
    return out;
}

int CartanData::braid_order(int i, int j) const {
    int p = cartan(i, j) * cartan(j, i);
    switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw std::logic_error("braid order undefined for this Cartan pair");
    }
}

} // namespace qweyl
