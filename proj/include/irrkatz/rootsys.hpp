#pragma once

#include <algorithm>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace irrkatz {

struct RootNode {
    bool is_tuple = true;
    IndexTuple t;       // for c_t
    int i = 0, j = 0, s = 0; // for c(i,j,s), 0-based

    /* c_t[j_0,...,j_p] or c(i,j,s), factor and slot 1-based */
    std::string label() const {
        if (is_tuple) {
            std::string out = "c_t[";
            for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + std::to_string(t[k] + 1);
            return out + "]";
        }
        return "c(" + std::to_string(i) + "," + std::to_string(j + 1) + "," + std::to_string(s + 1) + ")";
    }
};

/* basis C = {c_t} ∪ {c(i,j,s)} with its Gram matrix */
class RootBasis {
public:
    explicit RootBasis(ShapePtr shape) : shape_(std::move(shape)) {
        const LatticeShape& sh = *shape_;
        for (const auto& t : sh.tuples()) nodes_.push_back(RootNode{true, t, 0, 0, 0});
        tuple_count_ = static_cast<int>(nodes_.size());
        for (int i = 0; i < sh.points(); ++i)
            for (int j = 0; j < sh.factors(i); ++j)
                for (int s = 0; s + 1 < sh.length(i, j); ++s) nodes_.push_back(RootNode{false, {}, i, j, s});
        int n = size();
        int p = sh.points() - 1;
        gram_.assign(n, std::vector<long long>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gram_[a][b] = pair(nodes_[a], nodes_[b], p);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b && gram_[a][b] > 0)
                    throw InvalidInput("positive off-diagonal pairing between " + nodes_[a].label() + " and " +
                                       nodes_[b].label());
    }

    const LatticeShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    int tuple_count() const { return tuple_count_; }
    const RootNode& node(int k) const { return nodes_.at(k); }
    const std::vector<std::vector<long long>>& gram() const { return gram_; }

    int tuple_index(const IndexTuple& t) const {
        for (int k = 0; k < tuple_count_; ++k)
            if (nodes_[k].t == t) return k;
        throw InvalidInput("index tuple not in T(P)");
    }
    int chain_index(int i, int j, int s) const {
        for (int k = tuple_count_; k < size(); ++k)
            if (nodes_[k].i == i && nodes_[k].j == j && nodes_[k].s == s) return k;
        throw InvalidInput("chain node out of range");
    }

private:
    long long pair(const RootNode& a, const RootNode& b, int p) const {
        const LatticeShape& sh = *shape_;
        if (a.is_tuple && b.is_tuple) {
            long long v = -(p - 1);
            for (int i = 0; i <= p; ++i) {
                v += sh.weight(i, a.t[i], b.t[i]);
                if (a.t[i] == b.t[i]) ++v;
            }
            return v;
        }
        if (a.is_tuple != b.is_tuple) {
            const RootNode& t = a.is_tuple ? a : b;
            const RootNode& c = a.is_tuple ? b : a;
            return (t.t[c.i] == c.j && c.s == 0) ? -1 : 0;
        }
        if (a.i != b.i || a.j != b.j) return 0;
        if (a.s == b.s) return 2;
        return (a.s - b.s == 1 || b.s - a.s == 1) ? -1 : 0;
    }

    ShapePtr shape_;
    std::vector<RootNode> nodes_;
    int tuple_count_ = 0;
    std::vector<std::vector<long long>> gram_;
};

using BasisPtr = std::shared_ptr<const RootBasis>;
inline BasisPtr build_basis(ShapePtr shape) { return std::make_shared<const RootBasis>(std::move(shape)); }
inline BasisPtr build_basis(const LatticeShape& shape) { return build_basis(make_shape(shape)); }

struct RootVector {
    BasisPtr basis;
    std::vector<long long> coords;

    static RootVector zero(BasisPtr b) {
        int n = b->size();
        return RootVector{std::move(b), std::vector<long long>(n, 0)};
    }
    static RootVector unit(BasisPtr b, int k) {
        RootVector r = zero(std::move(b));
        r.coords.at(k) = 1;
        return r;
    }
    RootVector& operator+=(const RootVector& o) {
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] += o.coords[k];
        return *this;
    }
    friend RootVector operator+(RootVector a, const RootVector& b) { return a += b; }
    friend RootVector operator-(RootVector a, const RootVector& b) {
        for (std::size_t k = 0; k < a.coords.size(); ++k) a.coords[k] -= b.coords[k];
        return a;
    }
    friend RootVector operator*(long long m, RootVector a) {
        for (auto& c : a.coords) c *= m;
        return a;
    }
    friend bool operator==(const RootVector& a, const RootVector& b) { return a.coords == b.coords; }
    bool is_nonnegative() const {
        return std::all_of(coords.begin(), coords.end(), [](long long v) { return v >= 0; });
    }

    std::string str() const {
        std::string out;
        for (int k = 0; k < basis->size(); ++k) {
            long long v = coords[k];
            if (v == 0) continue;
            if (!out.empty()) out += v < 0 ? " - " : " + ";
            else if (v < 0) out += "-";
            long long a = v < 0 ? -v : v;
            if (a != 1) out += std::to_string(a) + "*";
            out += basis->node(k).label();
        }
        return out.empty() ? "0" : out;
    }
};

inline long long inner(const RootVector& a, const RootVector& b) {
    const auto& g = a.basis->gram();
    long long r = 0;
    for (std::size_t x = 0; x < a.coords.size(); ++x) {
        if (a.coords[x] == 0) continue;
        for (std::size_t y = 0; y < b.coords.size(); ++y) r += a.coords[x] * g[x][y] * b.coords[y];
    }
    return r;
}

/* σ_c(α) = α − ⟨c,α⟩ c */
inline RootVector reflect(const RootVector& a, int node) {
    const auto& g = a.basis->gram();
    if (g.at(node).at(node) != 2) throw InvalidInput("reflection needs ⟨c,c⟩ = 2");
    long long k = 0;
    for (std::size_t y = 0; y < a.coords.size(); ++y) k += g[node][y] * a.coords[y];
    RootVector r = a;
    r.coords[node] -= k;
    return r;
}

inline LatticeVector phi(const RootVector& a) {
    const RootBasis& B = *a.basis;
    const LatticeShape& sh = B.shape();
    LatticeVector out = LatticeVector::zero(B.shape_ptr());
    for (int k = 0; k < B.tuple_count(); ++k)
        for (int i = 0; i < sh.points(); ++i) out.at(i, B.node(k).t[i], 0) += a.coords[k];
    for (int k = B.tuple_count(); k < B.size(); ++k) {
        const RootNode& n = B.node(k);
        out.at(n.i, n.j, n.s) -= a.coords[k];
        out.at(n.i, n.j, n.s + 1) += a.coords[k];
    }
    return out;
}

inline RootVector canonical_lift(const BasisPtr& basis, const LatticeVector& a, const IndexTuple& tau) {
    const LatticeShape& sh = basis->shape();
    sh.check_tuple(tau);
    long long m = rank(a);
    int p = sh.points() - 1;
    RootVector r = RootVector::zero(basis);
    long long ctau = -static_cast<long long>(p) * m;
    for (int i = 0; i < sh.points(); ++i) {
        ctau += a.block_sum(i, tau[i]);
        for (int j = 0; j < sh.factors(i); ++j) {
            if (j == tau[i]) continue;
            IndexTuple t = tau;
            t[i] = j;
            r.coords[basis->tuple_index(t)] += a.block_sum(i, j);
        }
        for (int j = 0; j < sh.factors(i); ++j) {
            long long run = 0, b = a.block_sum(i, j);
            for (int s = 0; s + 1 < sh.length(i, j); ++s) {
                run += a.at(i, j, s);
                r.coords[basis->chain_index(i, j, s)] = b - run;
            }
        }
    }
    r.coords[basis->tuple_index(tau)] += ctau;
    return r;
}

inline long long idx(const BasisPtr& basis, const LatticeVector& a) {
    auto T = support_indices(a);
    IndexTuple tau = T.empty() ? basis->shape().tuples().front() : T.front();
    RootVector l = canonical_lift(basis, a, tau);
    return inner(l, l);
}
inline long long idx(const LatticeVector& a) { return idx(build_basis(a.shape_ptr()), a); }

/* nonzero coordinates connected in the Dynkin graph */
inline bool support_connected(const RootVector& a) {
    const auto& g = a.basis->gram();
    std::vector<int> supp;
    for (int k = 0; k < a.basis->size(); ++k)
        if (a.coords[k] != 0) supp.push_back(k);
    if (supp.empty()) return false;
    std::vector<bool> seen(a.basis->size(), false);
    std::vector<int> stack{supp.front()};
    seen[supp.front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++reached;
        for (int v : supp)
            if (!seen[v] && g[u][v] != 0) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return reached == supp.size();
}

/* Kac's fundamental set F: α ∈ Q⁺ − {0}, connected support, ⟨α, c⟩ ≤ 0 for every node */
inline bool in_fundamental_set(const RootVector& a) {
    if (!a.is_nonnegative() || !support_connected(a)) return false;
    for (int k = 0; k < a.basis->size(); ++k)
        if (inner(a, RootVector::unit(a.basis, k)) > 0) return false;
    return true;
}

/* F^Φ: nonnegative, chains nonincreasing, d(a;t) ≥ 0 for all t ∈ T(P) */
inline bool in_phi_fundamental_set(const LatticeVector& a) {
    if (!a.is_nonnegative() || a.is_zero()) return false;
    const LatticeShape& sh = a.shape();
    for (int i = 0; i < sh.points(); ++i)
        for (int j = 0; j < sh.factors(i); ++j)
            for (int s = 0; s + 1 < sh.length(i, j); ++s)
                if (a.at(i, j, s) < a.at(i, j, s + 1)) return false;
    for (const auto& t : sh.tuples())
        if (defect(a, t) < 0) return false;
    return true;
}

struct KernelReport {
    bool radical = true;  // every kernel vector pairs to zero with every node
    int kernel_rank = 0;
    int expected_rank = 0; // Π k_i − Σ k_i + p
    std::vector<RootVector> basis;
    bool ok() const { return radical && kernel_rank == expected_rank; }
};

inline KernelReport kernel_radical_check(const BasisPtr& basis) {
    const LatticeShape& sh = basis->shape();
    // matrix of Φ: one row per lattice slot
    std::vector<std::vector<Rat>> M;
    for (int i = 0; i < sh.points(); ++i)
        for (int j = 0; j < sh.factors(i); ++j)
            for (int s = 0; s < sh.length(i, j); ++s) {
                std::vector<Rat> row(basis->size());
                for (int k = 0; k < basis->size(); ++k) {
                    LatticeVector img = phi(RootVector::unit(basis, k));
                    row[k] = Rat(static_cast<long>(img.at(i, j, s)));
                }
                M.push_back(row);
            }
    int n = basis->size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(M.size()); ++c) {
        int piv = -1;
        for (int k = r; k < static_cast<int>(M.size()); ++k)
            if (!M[k][c].is_zero()) {
                piv = k;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[r], M[piv]);
        Rat inv = M[r][c].inverse();
        for (auto& v : M[r]) v *= inv;
        for (int k = 0; k < static_cast<int>(M.size()); ++k)
            if (k != r && !M[k][c].is_zero()) {
                Rat f = M[k][c];
                for (int x = 0; x < n; ++x) M[k][x] -= f * M[r][x];
            }
        pivot_col.push_back(c);
        ++r;
    }
    KernelReport rep;
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(n);
        v[f] = Rat(1);
        for (int k = 0; k < static_cast<int>(pivot_col.size()); ++k) v[pivot_col[k]] = -M[k][f];
        mpz_class den = 1;
        for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.den().get_mpz_t());
        RootVector rv = RootVector::zero(basis);
        for (int k = 0; k < n; ++k) rv.coords[k] = mpz_class(v[k].value() * den).get_si();
        rep.basis.push_back(rv);
    }
    rep.kernel_rank = static_cast<int>(rep.basis.size());
    long long prod = 1, sum = 0;
    for (int k : sh.factor_counts()) {
        prod *= k;
        sum += k;
    }
    rep.expected_rank = static_cast<int>(prod - sum + (sh.points() - 1));
    for (const auto& v : rep.basis)
        for (int k = 0; k < n; ++k)
            if (inner(v, RootVector::unit(basis, k)) != 0) rep.radical = false;
    return rep;
}

/* ---- Dynkin diagrams ---- */

using Multigraph = std::vector<std::vector<int>>; // edge multiplicities, zero diagonal

namespace detail {

inline Multigraph path_graph(int n) {
    Multigraph g(n, std::vector<int>(n, 0));
    for (int k = 0; k + 1 < n; ++k) g[k][k + 1] = g[k + 1][k] = 1;
    return g;
}
inline Multigraph cycle_graph(int n) {
    Multigraph g = path_graph(n);
    g[0][n - 1] = g[n - 1][0] = 1;
    return g;
}
/* a centre with arms of the given lengths */
inline Multigraph star_graph(const std::vector<int>& arms) {
    int n = 1;
    for (int a : arms) n += a;
    Multigraph g(n, std::vector<int>(n, 0));
    int next = 1;
    for (int a : arms) {
        int prev = 0;
        for (int k = 0; k < a; ++k) {
            g[prev][next] = g[next][prev] = 1;
            prev = next++;
        }
    }
    return g;
}
/* affine D_{n-1}: path with two forks at each end */
inline Multigraph affine_d_graph(int n) {
    if (n == 5) return star_graph({1, 1, 1, 1});
    Multigraph g = path_graph(n - 2);
    g.resize(n, std::vector<int>(n, 0));
    for (auto& row : g) row.resize(n, 0);
    g[0][n - 2] = g[n - 2][0] = 1;
    g[n - 3][n - 1] = g[n - 1][n - 3] = 1;
    return g;
}

inline std::vector<std::pair<std::string, Multigraph>> catalog(int n) {
    std::vector<std::pair<std::string, Multigraph>> c;
    c.emplace_back("A" + std::to_string(n), path_graph(n));
    if (n == 2) {
        Multigraph g(2, std::vector<int>(2, 0));
        g[0][1] = g[1][0] = 2;
        c.emplace_back("A1(1)", g);
    }
    if (n >= 3) c.emplace_back("A" + std::to_string(n - 1) + "(1)", cycle_graph(n));
    if (n >= 4) c.emplace_back("D" + std::to_string(n), star_graph({1, 1, n - 3}));
    if (n >= 5) c.emplace_back("D" + std::to_string(n - 1) + "(1)", affine_d_graph(n));
    if (n == 6) c.emplace_back("E6", star_graph({1, 2, 2}));
    if (n == 7) c.emplace_back("E7", star_graph({1, 2, 3}));
    if (n == 8) c.emplace_back("E8", star_graph({1, 2, 4}));
    if (n == 7) c.emplace_back("E6(1)", star_graph({2, 2, 2}));
    if (n == 8) c.emplace_back("E7(1)", star_graph({1, 3, 3}));
    if (n == 9) c.emplace_back("E8(1)", star_graph({1, 2, 5}));
    return c;
}

inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
    int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) return false;
    auto profile = [](const Multigraph& g, int v) {
        std::vector<int> p(g[v]);
        std::sort(p.begin(), p.end());
        return p;
    };
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> extend = [&](int v) {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[w] || profile(a, v) != profile(b, w)) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) ok = a[v][u] == b[w][map[u]];
            if (!ok) continue;
            map[v] = w;
            used[w] = true;
            if (extend(v + 1)) return true;
            used[w] = false;
        }
        map[v] = -1;
        return false;
    };
    return extend(0);
}

} // namespace detail

inline Multigraph dynkin_graph(const RootBasis& B) {
    int n = B.size();
    Multigraph g(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) g[a][b] = static_cast<int>(-B.gram()[a][b]);
    return g;
}

inline std::vector<std::vector<int>> components(const Multigraph& g) {
    int n = static_cast<int>(g.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = static_cast<int>(out.size()) - 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out.back().push_back(u);
            for (int v = 0; v < n; ++v)
                if (g[u][v] != 0 && comp[v] < 0) {
                    comp[v] = comp[s];
                    stack.push_back(v);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

/* catalog name of a connected multigraph, or "unrecognized" */
inline std::string classify_component(const Multigraph& g) {
    int n = static_cast<int>(g.size());
    if (n > 16) return "unrecognized";
    for (const auto& [name, cand] : detail::catalog(n))
        if (detail::isomorphic(g, cand)) return name;
    return "unrecognized";
}

struct Diagram {
    std::string label;
    std::string dot;
};

inline std::string to_dot(const RootBasis& B) {
    Multigraph g = dynkin_graph(B);
    std::ostringstream os;
    os << "graph dynkin {\n";
    for (int k = 0; k < B.size(); ++k) os << "  n" << k << " [label=\"" << B.node(k).label() << "\"];\n";
    for (int a = 0; a < B.size(); ++a)
        for (int b = a + 1; b < B.size(); ++b) {
            if (g[a][b] == 0) continue;
            os << "  n" << a << " -- n" << b;
            if (g[a][b] >= 2) os << " [label=\"" << g[a][b] << "\"]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

inline Diagram classify_diagram(const RootBasis& B) {
    Multigraph g = dynkin_graph(B);
    std::string label;
    for (const auto& comp : components(g)) {
        Multigraph sub(comp.size(), std::vector<int>(comp.size(), 0));
        for (std::size_t a = 0; a < comp.size(); ++a)
            for (std::size_t b = 0; b < comp.size(); ++b) sub[a][b] = g[comp[a]][comp[b]];
        if (!label.empty()) label += " + ";
        label += classify_component(sub);
    }
    return {label, to_dot(B)};
}

inline std::string cartan_ascii(const RootBasis& B) {
    std::size_t w = 1;
    for (int k = 0; k < B.size(); ++k) w = std::max(w, B.node(k).label().size());
    std::ostringstream os;
    os << std::setw(static_cast<int>(w)) << "";
    for (int k = 0; k < B.size(); ++k) os << ' ' << std::setw(4) << k;
    os << '\n';
    for (int a = 0; a < B.size(); ++a) {
        os << std::setw(static_cast<int>(w)) << std::left << B.node(a).label() << std::right;
        for (int b = 0; b < B.size(); ++b) os << ' ' << std::setw(4) << B.gram()[a][b];
        os << '\n';
    }
    return os.str();
}

} // namespace irrkatz
