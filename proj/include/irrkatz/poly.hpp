#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace irrkatz {

/* dense univariate polynomial over Q, ascending coefficients, trimmed */
class Poly {
public:
    Poly() = default;
    Poly(Rat c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    Poly(int c) : Poly(Rat(c)) {}
    explicit Poly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

    static Poly x() { return monomial(Rat(1), 1); }
    static Poly monomial(const Rat& a, int k) {
        std::vector<Rat> c(k + 1);
        c[k] = a;
        return Poly(std::move(c));
    }
    /* x − c */
    static Poly linear(const Rat& c) { return Poly(std::vector<Rat>{-c, Rat(1)}); }
    /* t(t−1)⋯(t−j+1) */
    static Poly falling_factorial(int j) {
        Poly p(1);
        for (int k = 0; k < j; ++k) p *= linear(Rat(k));
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Rat& coeff(int k) const {
        static const Rat zero;
        return (k < 0 || k > degree()) ? zero : c_[k];
    }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& lead() const { return coeff(degree()); }

    Rat operator()(const Rat& v) const {
        Rat r;
        for (int k = degree(); k >= 0; --k) r = r * v + c_[k];
        return r;
    }

    Poly derivative() const {
        std::vector<Rat> d;
        for (int k = 1; k <= degree(); ++k) d.push_back(c_[k] * Rat(k));
        return Poly(std::move(d));
    }

    /* q(y) = p(y + c) */
    Poly taylor_shift(const Rat& c) const {
        std::vector<Rat> a = c_;
        int n = degree();
        for (int i = 0; i < n; ++i)
            for (int k = n - 1; k >= i; --k) a[k] += c * a[k + 1];
        return Poly(std::move(a));
    }

    /* x^n p(1/x) */
    Poly reversed(int n) const {
        std::vector<Rat> r(std::max(n + 1, 0));
        for (int k = 0; k <= degree(); ++k) r.at(n - k) = c_[k];
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * lead().inverse();
    }

    /* order of vanishing at c; zero polynomial has none */
    int multiplicity_at(const Rat& c) const {
        if (is_zero()) throw InvalidInput("multiplicity of the zero polynomial");
        Poly s = taylor_shift(c);
        int k = 0;
        while (s.c_[k].is_zero()) ++k;
        return k;
    }
    int low_order() const {
        if (is_zero()) throw InvalidInput("order of the zero polynomial");
        int k = 0;
        while (c_[k].is_zero()) ++k;
        return k;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const { return *this * Rat(-1); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const Rat& r) {
        if (r.is_zero()) return Poly();
        for (auto& c : a.c_) c *= r;
        return a;
    }
    friend Poly operator*(const Rat& r, Poly a) { return std::move(a) * r; }

    /* quotient and remainder */
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw InvalidInput("polynomial division by zero");
        Poly r = a;
        int db = b.degree();
        if (r.degree() < db) return {Poly(), r};
        std::vector<Rat> q(r.degree() - db + 1);
        Rat inv = b.lead().inverse();
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            Rat f = r.lead() * inv;
            q[k] = f;
            for (int i = 0; i <= db; ++i) r.c_[i + k] -= f * b.c_[i];
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int k = a.degree(); k >= 0; --k)
            if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
        return false;
    }

    /* canonical text, highest power first, e.g. "x^2 - 1/2*x + 3" */
    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const Rat& a = c_[k];
            if (a.is_zero()) continue;
            Rat m = a.abs();
            if (first) out += a.sign() < 0 ? "-" : "";
            else out += a.sign() < 0 ? " - " : " + ";
            first = false;
            if (k == 0) {
                out += m.str();
                continue;
            }
            if (m != Rat(1)) out += m.str() + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

/* monic gcd; gcd(0,0) = 0 */
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return (a * b / gcd(a, b)).monic();
}

inline Poly power(const Poly& p, int k) {
    Poly r(1);
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

inline Poly squarefree_part(const Poly& p) {
    if (p.is_constant()) return p.is_zero() ? p : Poly(1);
    return (p / gcd(p, p.derivative())).monic();
}

namespace detail {

inline int sign_changes(const std::vector<Poly>& seq, const Rat& v) {
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        int s = q(v).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline void isolate_integer_roots(const Poly& g, const std::vector<Poly>& sturm, const mpz_class& lo,
                                  const mpz_class& hi, std::vector<mpz_class>& out) {
    // roots in (lo, hi]
    int n = sign_changes(sturm, Rat(lo)) - sign_changes(sturm, Rat(hi));
    if (n == 0) return;
    if (hi - lo == 1) {
        if (g(Rat(hi)).is_zero()) out.push_back(hi);
        return;
    }
    mpz_class mid;
    mpz_fdiv_q_2exp(mid.get_mpz_t(), mpz_class(lo + hi).get_mpz_t(), 1);
    isolate_integer_roots(g, sturm, lo, mid, out);
    isolate_integer_roots(g, sturm, mid, hi, out);
}

/* distinct rational roots of a squarefree polynomial */
inline std::vector<Rat> rational_roots_squarefree(Poly p) {
    std::vector<Rat> roots;
    if (p.degree() < 1) return roots;
    if (p.coeff(0).is_zero()) {
        roots.push_back(Rat(0));
        p = p / Poly::x();
    }
    int n = p.degree();
    if (n < 1) return roots;
    // integer coefficients h_k, then G(y) = L^{n-1} h(y/L) monic in Z[y]
    mpz_class den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
    std::vector<mpz_class> h;
    for (const auto& c : p.coeffs()) h.push_back(mpz_class(c.value() * den));
    mpz_class L = h[n];
    std::vector<Rat> gc(n + 1);
    gc[n] = Rat(1);
    for (int k = 0; k < n; ++k) {
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(n - 1 - k));
        gc[k] = Rat(mpz_class(h[k] * e));
    }
    Poly g(gc);
    mpz_class bound = 1;
    for (int k = 0; k < n; ++k) {
        mpz_class a = abs(gc[k].num());
        if (a + 1 > bound) bound = a + 1;
    }
    std::vector<Poly> sturm{g, g.derivative()};
    while (true) {
        Poly r = sturm[sturm.size() - 2] % sturm.back();
        if (r.is_zero()) break;
        sturm.push_back(-r);
    }
    std::vector<mpz_class> ys;
    isolate_integer_roots(g, sturm, mpz_class(-bound - 1), mpz_class(bound + 1), ys);
    for (const auto& y : ys) roots.push_back(Rat(mpq_class(y, L)));
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace detail

/* rational roots with multiplicities, ascending */
inline std::vector<std::pair<Rat, int>> rational_roots(const Poly& p) {
    if (p.is_zero()) throw InvalidInput("roots of the zero polynomial");
    std::vector<std::pair<Rat, int>> out;
    for (const auto& r : detail::rational_roots_squarefree(squarefree_part(p)))
        out.emplace_back(r, p.multiplicity_at(r));
    return out;
}

/* true iff p splits into rational linear factors */
inline bool splits_over_q(const Poly& p) {
    int total = 0;
    for (const auto& [r, m] : rational_roots(p)) total += m;
    return total == p.degree();
}

} // namespace irrkatz
