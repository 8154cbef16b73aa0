#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace irrkatz {

/* a point of P^1 over Q: finite rational c, or ∞ */
class Location {
public:
    Location() = default; // ∞
    Location(Rat c) : c_(std::move(c)) {}
    Location(int c) : c_(Rat(c)) {}
    static Location infinity() { return Location(); }

    bool is_infinity() const { return !c_.has_value(); }
    const Rat& value() const {
        if (!c_) throw InvalidInput("value of the point at infinity");
        return *c_;
    }
    std::string str() const { return c_ ? c_->str() : "inf"; }
    static Location parse(const std::string& s) {
        if (s == "inf" || s == "infinity") return infinity();
        return Location(Rat::parse(s));
    }

    friend bool operator==(const Location& a, const Location& b) { return a.c_ == b.c_; }
    /* ∞ first, then ascending */
    friend bool operator<(const Location& a, const Location& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
        return *a.c_ < *b.c_;
    }

private:
    std::optional<Rat> c_;
};

/* num/den with gcd 1 and monic den */
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(Rat c) : num_(std::move(c)), den_(1) {}
    RatFunc(int c) : RatFunc(Rat(c)) {}
    RatFunc(Poly p) : num_(std::move(p)), den_(1) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc x() { return RatFunc(Poly::x()); }
    /* (x − c)^k, k may be negative */
    static RatFunc power_at(const Rat& c, int k) {
        Poly b = power(Poly::linear(c), k < 0 ? -k : k);
        return k >= 0 ? RatFunc(b) : RatFunc(Poly(1), b);
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    Rat operator()(const Rat& v) const {
        Rat d = den_(v);
        if (d.is_zero()) throw InvalidInput("pole at evaluation point");
        return num_(v) / d;
    }

    /* v_c; the zero function has valuation INT_MAX */
    int valuation(const Rat& c) const {
        if (is_zero()) return INT_MAX;
        return num_.multiplicity_at(c) - den_.multiplicity_at(c);
    }
    int valuation(const Location& p) const {
        if (!p.is_infinity()) return valuation(p.value());
        if (is_zero()) return INT_MAX;
        return den_.degree() - num_.degree();
    }

    /* f(z + c) */
    RatFunc translate(const Rat& c) const { return RatFunc(num_.taylor_shift(c), den_.taylor_shift(c)); }

    /* f(1/z) */
    RatFunc reciprocal_argument() const {
        int dn = num_.degree(), dd = den_.degree();
        if (is_zero()) return *this;
        Poly n = num_.reversed(dn), d = den_.reversed(dd);
        if (dd >= dn) n *= Poly::monomial(Rat(1), dd - dn);
        else d *= Poly::monomial(Rat(1), dn - dd);
        return RatFunc(n, d);
    }

    /* denominator is a power of z, i.e. a Laurent polynomial at 0 */
    bool is_laurent_polynomial_at_zero() const {
        return den_ == Poly::monomial(Rat(1), den_.degree());
    }

    /* coefficient of z^k in the Laurent expansion at 0 */
    Rat laurent_coeff(int k) const {
        if (is_zero()) return Rat(0);
        int vn = num_.low_order(), vd = den_.low_order();
        int v = vn - vd;
        if (k < v) return Rat(0);
        int terms = k - v; // index into the power series of N1/D1
        // N1/D1 series coefficients up to `terms`
        std::vector<Rat> s(terms + 1);
        const Rat inv = den_.coeff(vd).inverse();
        for (int i = 0; i <= terms; ++i) {
            Rat acc = num_.coeff(vn + i);
            for (int j = 1; j <= i; ++j) acc -= den_.coeff(vd + j) * s[i - j];
            s[i] = acc * inv;
        }
        return s[terms];
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw InvalidInput("division by the zero function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw InvalidInput("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        if (den_.degree() > 0) {
            Poly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        Rat l = den_.lead();
        if (l != Rat(1)) {
            Rat inv = l.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
};

} // namespace irrkatz
