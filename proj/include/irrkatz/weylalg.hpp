#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ratfunc.hpp"

namespace irrkatz {

/* Σ a_i(x) D^i in normal form, [x, D] = −1 */
class DiffOperator {
public:
    DiffOperator() = default;
    DiffOperator(RatFunc f) : a_{std::move(f)} { trim(); }
    DiffOperator(Rat c) : DiffOperator(RatFunc(std::move(c))) {}
    DiffOperator(int c) : DiffOperator(RatFunc(c)) {}
    explicit DiffOperator(std::vector<RatFunc> a) : a_(std::move(a)) { trim(); }

    static DiffOperator D() { return DiffOperator(std::vector<RatFunc>{RatFunc(), RatFunc(1)}); }
    static DiffOperator x() { return DiffOperator(RatFunc::x()); }

    /* -1 for the zero operator */
    int rank() const { return static_cast<int>(a_.size()) - 1; }
    bool is_zero() const { return a_.empty(); }
    const RatFunc& coeff(int i) const {
        static const RatFunc zero;
        return (i < 0 || i > rank()) ? zero : a_[i];
    }
    const std::vector<RatFunc>& coeffs() const { return a_; }
    bool has_polynomial_coefficients() const {
        return std::all_of(a_.begin(), a_.end(), [](const RatFunc& f) { return f.is_polynomial(); });
    }

    DiffOperator& operator+=(const DiffOperator& o) {
        if (o.a_.size() > a_.size()) a_.resize(o.a_.size());
        for (std::size_t i = 0; i < o.a_.size(); ++i) a_[i] += o.a_[i];
        trim();
        return *this;
    }
    DiffOperator& operator-=(const DiffOperator& o) {
        if (o.a_.size() > a_.size()) a_.resize(o.a_.size());
        for (std::size_t i = 0; i < o.a_.size(); ++i) a_[i] -= o.a_[i];
        trim();
        return *this;
    }
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
    DiffOperator operator-() const { return DiffOperator() - *this; }

    /* left multiplication by a function */
    friend DiffOperator operator*(const RatFunc& f, DiffOperator P) {
        for (auto& c : P.a_) c = f * c;
        P.trim();
        return P;
    }

    friend DiffOperator operator*(const DiffOperator& P, const DiffOperator& Q) {
        if (P.is_zero() || Q.is_zero()) return DiffOperator();
        int n = P.rank(), m = Q.rank();
        std::vector<RatFunc> r(n + m + 1);
        for (int j = 0; j <= m; ++j) {
            if (Q.a_[j].is_zero()) continue;
            // D^i b = Σ_k C(i,k) b^(k) D^(i−k)
            std::vector<RatFunc> der{Q.a_[j]};
            for (int k = 1; k <= n; ++k) der.push_back(der.back().derivative());
            for (int i = 0; i <= n; ++i) {
                if (P.a_[i].is_zero()) continue;
                Rat binom(1);
                for (int k = 0; k <= i; ++k) {
                    if (k > 0) binom = binom * Rat(i - k + 1) / Rat(k);
                    if (der[k].is_zero()) continue;
                    r[i - k + j] += P.a_[i] * (RatFunc(binom) * der[k]);
                }
            }
        }
        return DiffOperator(std::move(r));
    }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.a_ == b.a_; }

    /* canonical "(a_0) + (a_1)*D + (a_2)*D^2", zero terms omitted */
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = 0; i <= rank(); ++i) {
            if (a_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + a_[i].str() + ")";
            if (i == 1) out += "*D";
            if (i > 1) out += "*D^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }
    std::vector<RatFunc> a_;
};

inline DiffOperator power(const DiffOperator& P, int k) {
    DiffOperator r(1);
    for (int i = 0; i < k; ++i) r = r * P;
    return r;
}

/* θ-form exponential factor: Σ w_k (x−c)^{−k} at finite c, Σ w_k x^k at ∞ */
struct ExponentialFactor {
    Location point;
    std::map<int, Rat> coeffs; // order ≥ 1, nonzero values

    ExponentialFactor() = default;
    ExponentialFactor(Location p, std::map<int, Rat> c) : point(std::move(p)), coeffs(std::move(c)) {
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            if (it->first < 1) throw InvalidInput("exponential factor with constant or negative order");
            it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
        }
    }

    bool is_zero() const { return coeffs.empty(); }
    int order() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
    /* wt(0) = 0 */
    int weight() const { return -order(); }

    /* f with D ↦ D − f: w/(x−c), or w/x at ∞ */
    RatFunc drift() const {
        RatFunc f;
        for (const auto& [k, w] : coeffs) {
            if (point.is_infinity()) f += RatFunc(Poly::monomial(w, k - 1));
            else f += RatFunc(w) * RatFunc::power_at(point.value(), -k - 1);
        }
        return f;
    }

    ExponentialFactor operator-() const {
        ExponentialFactor r = *this;
        for (auto& kv : r.coeffs) kv.second = -kv.second;
        return r;
    }
    friend ExponentialFactor operator-(const ExponentialFactor& a, const ExponentialFactor& b) {
        if (!(a.point == b.point)) throw InvalidInput("exponential factors at different points");
        std::map<int, Rat> c = a.coeffs;
        for (const auto& [k, w] : b.coeffs) c[k] -= w;
        return ExponentialFactor(a.point, std::move(c));
    }
    friend bool operator==(const ExponentialFactor& a, const ExponentialFactor& b) {
        return a.point == b.point && a.coeffs == b.coeffs;
    }
    /* by order, then coefficients from the top */
    friend bool operator<(const ExponentialFactor& a, const ExponentialFactor& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        for (auto ia = a.coeffs.rbegin(), ib = b.coeffs.rbegin(); ia != a.coeffs.rend() && ib != b.coeffs.rend();
             ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return a.coeffs.size() < b.coeffs.size();
    }

    std::string str() const {
        if (coeffs.empty()) return "0";
        Poly p;
        for (const auto& [k, w] : coeffs) p += Poly::monomial(w, k);
        if (point.is_infinity()) return p.str("x");
        std::string var = point.value().is_zero() ? "x" : "(x - " + point.value().str() + ")";
        return p.str("1/" + var);
    }
};

/* D ↦ D − f */
inline DiffOperator substitute_d(const DiffOperator& P, const RatFunc& f) {
    DiffOperator step = DiffOperator::D() - DiffOperator(f);
    DiffOperator acc, pw(1);
    for (int i = 0; i <= P.rank(); ++i) {
        if (i > 0) pw = pw * step;
        if (!P.coeff(i).is_zero()) acc += P.coeff(i) * pw;
    }
    return acc;
}

/* the local operator at 0 representing P at `at`: a_i(z+c), or P^(∞) = Σ a_i(1/z)(−z²D)^i */
inline DiffOperator local_operator(const DiffOperator& P, const Location& at) {
    if (!at.is_infinity()) {
        std::vector<RatFunc> a;
        for (const auto& c : P.coeffs()) a.push_back(c.translate(at.value()));
        return DiffOperator(std::move(a));
    }
    DiffOperator m = DiffOperator(std::vector<RatFunc>{RatFunc(), RatFunc(Poly::monomial(Rat(-1), 2))});
    DiffOperator acc, pw(1);
    for (int i = 0; i <= P.rank(); ++i) {
        if (i > 0) pw = pw * m;
        if (!P.coeff(i).is_zero()) acc += P.coeff(i).reciprocal_argument() * pw;
    }
    return acc;
}

namespace detail {
inline int weight_at_zero(const DiffOperator& Q) {
    if (Q.is_zero()) throw InvalidInput("weight of the zero operator");
    int w = INT_MAX;
    for (int i = 0; i <= Q.rank(); ++i)
        if (!Q.coeff(i).is_zero()) w = std::min(w, Q.coeff(i).valuation(Rat(0)) - i);
    return w;
}
} // namespace detail

inline int weight(const DiffOperator& P, const Location& at) {
    return detail::weight_at_zero(local_operator(P, at));
}

inline DiffOperator homogeneous_part(const DiffOperator& P, const Location& at, int k) {
    std::vector<RatFunc> a;
    for (int i = 0; i <= P.rank(); ++i) {
        const RatFunc& f = P.coeff(i);
        if (f.is_zero()) {
            a.emplace_back();
            continue;
        }
        if (at.is_infinity()) {
            Rat c = f.reciprocal_argument().laurent_coeff(k - i);
            a.push_back(RatFunc(c) * RatFunc::power_at(Rat(0), i - k));
        } else {
            Rat c = f.translate(at.value()).laurent_coeff(k + i);
            a.push_back(RatFunc(c) * RatFunc::power_at(at.value(), k + i));
        }
    }
    return DiffOperator(std::move(a));
}

inline Poly char_poly(const DiffOperator& P, const Location& at) {
    DiffOperator Q = local_operator(P, at);
    int w = detail::weight_at_zero(Q);
    Poly C;
    for (int i = 0; i <= Q.rank(); ++i)
        C += Poly::falling_factorial(i) * Q.coeff(i).laurent_coeff(w + i);
    return C;
}

inline bool is_regular_singular(const DiffOperator& P, const Location& at) {
    return char_poly(P, at).degree() == P.rank();
}

struct NewtonPolygon {
    std::vector<std::pair<int, int>> vertices; // (i, j), i ascending
    std::vector<Rat> slopes;                    // between consecutive vertices

    /* exponential-factor slopes: 0 if a w = 0 part exists, then the edge slopes */
    std::vector<Rat> factor_slopes() const {
        std::vector<Rat> s;
        if (!vertices.empty() && vertices.front().first > 0) s.push_back(Rat(0));
        s.insert(s.end(), slopes.begin(), slopes.end());
        return s;
    }
    /* ∂-rank carried by the edge ending at vertex k+1 */
    int edge_length(std::size_t k) const { return vertices[k + 1].first - vertices[k].first; }
};

namespace detail {
inline std::vector<std::pair<int, int>> newton_points(const DiffOperator& Q) {
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= Q.rank(); ++i)
        if (!Q.coeff(i).is_zero()) pts.emplace_back(i, Q.coeff(i).valuation(Rat(0)) - i);
    return pts;
}

inline NewtonPolygon newton_polygon_at_zero(const DiffOperator& Q) {
    if (Q.is_zero()) throw InvalidInput("Newton polygon of the zero operator");
    auto pts = newton_points(Q);
    NewtonPolygon np;
    std::pair<int, int> cur = pts.front();
    for (const auto& p : pts)
        if (p.second < cur.second || (p.second == cur.second && p.first > cur.first)) cur = p;
    np.vertices.push_back(cur);
    while (cur.first < Q.rank()) {
        std::optional<Rat> best;
        std::pair<int, int> next{};
        for (const auto& p : pts) {
            if (p.first <= cur.first) continue;
            Rat s(p.second - cur.second, p.first - cur.first);
            if (!best || s < *best || (s == *best && p.first > next.first)) {
                best = s;
                next = p;
            }
        }
        np.slopes.push_back(*best);
        np.vertices.push_back(next);
        cur = next;
    }
    return np;
}
} // namespace detail

inline NewtonPolygon newton_polygon(const DiffOperator& P, const Location& at) {
    return detail::newton_polygon_at_zero(local_operator(P, at));
}

/* P = Σ (x−c)^i p_i(θ_c); at ∞ in z = 1/x with θ = z∂_z */
struct ThetaExpansion {
    Location point;
    std::map<int, Poly> terms;

    int lowest() const {
        if (terms.empty()) throw InvalidInput("empty theta expansion");
        return terms.begin()->first;
    }
    const Poly& at(int i) const {
        static const Poly zero;
        auto it = terms.find(i);
        return it == terms.end() ? zero : it->second;
    }
};

namespace detail {
inline ThetaExpansion theta_expand_at_zero(const DiffOperator& Q, const Location& label) {
    ThetaExpansion T{label, {}};
    for (int i = 0; i <= Q.rank(); ++i) {
        const RatFunc& f = Q.coeff(i);
        if (f.is_zero()) continue;
        if (!f.is_laurent_polynomial_at_zero())
            throw InvalidInput("theta expansion needs Laurent-polynomial coefficients");
        int shift = f.den().degree();
        Poly ff = Poly::falling_factorial(i);
        for (int a = 0; a <= f.num().degree(); ++a) {
            const Rat& c = f.num().coeff(a);
            if (c.is_zero()) continue;
            T.terms[a - shift - i] += ff * c;
        }
    }
    for (auto it = T.terms.begin(); it != T.terms.end();) it = it->second.is_zero() ? T.terms.erase(it) : std::next(it);
    return T;
}
} // namespace detail

inline ThetaExpansion theta_expand(const DiffOperator& P, const Location& at) {
    return detail::theta_expand_at_zero(local_operator(P, at), at);
}

/* Σ z^i p_i(z D) as an operator in z */
inline DiffOperator theta_reconstruct(const ThetaExpansion& T) {
    DiffOperator theta(std::vector<RatFunc>{RatFunc(), RatFunc::x()});
    DiffOperator acc;
    for (const auto& [i, p] : T.terms) {
        DiffOperator q, pw(1);
        for (int k = 0; k <= p.degree(); ++k) {
            if (k > 0) pw = pw * theta;
            q += RatFunc(p.coeff(k)) * pw;
        }
        acc += RatFunc::power_at(Rat(0), i) * q;
    }
    return acc;
}

inline DiffOperator prim(const DiffOperator& P) {
    if (P.is_zero()) throw InvalidInput("prim of the zero operator");
    Poly L(1);
    for (const auto& f : P.coeffs()) L = lcm(L, f.den());
    std::vector<Poly> polys;
    Poly g;
    for (const auto& f : P.coeffs()) {
        polys.push_back(f.num() * (L / f.den()));
        g = gcd(g, polys.back());
    }
    std::vector<RatFunc> a;
    Rat inv = (polys.back() / g).lead().inverse();
    for (const auto& p : polys) a.emplace_back((p / g) * inv);
    return DiffOperator(std::move(a));
}

inline int deg_of(const DiffOperator& P) {
    if (!P.has_polynomial_coefficients()) throw InvalidInput("deg of an operator with rational coefficients");
    int d = -1;
    for (const auto& f : P.coeffs()) d = std::max(d, f.num().degree());
    return d;
}

/* D ↦ D − λ/(x−c) */
inline DiffOperator ad_power(const DiffOperator& P, const Rat& c, const Rat& lambda) {
    return substitute_d(P, RatFunc(lambda) * RatFunc::power_at(c, -1));
}
inline DiffOperator ad_power(const DiffOperator& P, const Rat& c, const ParamExpr& lambda) {
    if (!lambda.is_constant()) throw InvalidInput("operator engine needs a rational exponent, got " + lambda.str());
    return ad_power(P, c, lambda.constant());
}

/* D ↦ D − f with f = w/(x−c), or w/x at ∞ */
inline DiffOperator ad_exp(const DiffOperator& P, const ExponentialFactor& w) {
    return substitute_d(P, w.drift());
}

namespace detail {
/* c[i][k]: coefficient of x^k D^i */
inline std::vector<std::vector<Rat>> polynomial_table(const DiffOperator& P) {
    if (!P.has_polynomial_coefficients())
        throw InvalidInput("Laplace transform needs polynomial coefficients");
    std::vector<std::vector<Rat>> c;
    for (const auto& f : P.coeffs()) c.push_back(f.num().coeffs());
    return c;
}

/* Σ s_{ik} D^k x^i in normal form */
inline DiffOperator normal_order_dx(const std::vector<std::vector<Rat>>& terms) {
    std::map<int, Poly> out;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t k = 0; k < terms[i].size(); ++k) {
            const Rat& s = terms[i][k];
            if (s.is_zero()) continue;
            // D^k x^i = Σ_j C(k,j) i!/(i−j)! x^(i−j) D^(k−j)
            Rat binom(1), fall(1);
            for (std::size_t j = 0; j <= std::min(i, k); ++j) {
                if (j > 0) {
                    binom = binom * Rat(static_cast<long>(k - j + 1)) / Rat(static_cast<long>(j));
                    fall = fall * Rat(static_cast<long>(i - j + 1));
                }
                out[static_cast<int>(k - j)] += Poly::monomial(s * binom * fall, static_cast<int>(i - j));
            }
        }
    int n = out.empty() ? -1 : out.rbegin()->first;
    std::vector<RatFunc> a(n + 1);
    for (auto& [d, p] : out) a[d] = RatFunc(p);
    return DiffOperator(std::move(a));
}
} // namespace detail

/* x ↦ −D, D ↦ x */
inline DiffOperator laplace(const DiffOperator& P) {
    auto c = detail::polynomial_table(P);
    // c_{ik} x^k D^i ↦ (−1)^k D^k x^i ; index terms[i][k]
    std::vector<std::vector<Rat>> terms(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t k = 0; k < c[i].size(); ++k)
            terms[i].push_back(k % 2 ? -c[i][k] : c[i][k]);
    return detail::normal_order_dx(terms);
}

/* x ↦ D, D ↦ −x */
inline DiffOperator laplace_inv(const DiffOperator& P) {
    auto c = detail::polynomial_table(P);
    std::vector<std::vector<Rat>> terms(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t k = 0; k < c[i].size(); ++k)
            terms[i].push_back(i % 2 ? -c[i][k] : c[i][k]);
    return detail::normal_order_dx(terms);
}

/* E(λ) = L ∘ Prim ∘ Ad(x^λ) ∘ L^{-1} ∘ Prim */
inline DiffOperator euler(const DiffOperator& P, const Rat& lambda) {
    return laplace(prim(ad_power(laplace_inv(prim(P)), Rat(0), lambda)));
}

/* ∞ followed by the rational roots of the leading coefficient of Prim(P), ascending */
inline std::vector<Location> singular_points(const DiffOperator& P) {
    DiffOperator Q = prim(P);
    std::vector<Location> pts{Location::infinity()};
    const Poly& lead = Q.coeff(Q.rank()).num();
    if (lead.degree() < 1) return pts;
    int found = 0;
    for (const auto& [r, m] : rational_roots(lead)) {
        pts.emplace_back(r);
        found += m;
    }
    if (found != lead.degree())
        throw IrrationalSingularPoint("leading coefficient " + lead.str() + " has non-rational roots");
    return pts;
}

} // namespace irrkatz
