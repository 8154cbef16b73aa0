#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace irrkatz {

class Rat {
public:
    Rat() = default;
    Rat(int v) : v_(static_cast<long>(v)) {}
    Rat(long v) : v_(v) {}
    Rat(long num, long den) : v_(mpz_class(num), mpz_class(den == 0 ? 1 : den)) {
        if (den == 0) throw InvalidInput("zero denominator");
        v_.canonicalize();
    }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    explicit Rat(const mpz_class& z) : v_(z) {}

    /* "p" or "p/q", optional sign */
    static Rat parse(std::string_view s) {
        std::string t;
        for (char ch : s)
            if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
        if (t.empty()) throw InvalidInput("empty rational");
        std::size_t slash = t.find('/');
        auto check_int = [&](const std::string& part, bool allow_sign) {
            std::size_t k = 0;
            if (allow_sign && k < part.size() && (part[k] == '-' || part[k] == '+')) ++k;
            if (k == part.size()) throw InvalidInput("malformed rational '" + t + "'");
            for (; k < part.size(); ++k)
                if (!std::isdigit(static_cast<unsigned char>(part[k])))
                    throw InvalidInput("malformed rational '" + t + "'");
        };
        std::string num = t.substr(0, slash);
        check_int(num, true);
        if (num[0] == '+') num.erase(0, 1);
        mpq_class q;
        if (slash == std::string::npos) {
            q = mpq_class(mpz_class(num));
        } else {
            std::string den = t.substr(slash + 1);
            check_int(den, false);
            mpz_class d(den);
            if (d == 0) throw InvalidInput("zero denominator in '" + t + "'");
            q = mpq_class(mpz_class(num), d);
            q.canonicalize();
        }
        return Rat(q);
    }

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    Rat abs() const {
        mpq_class r;
        mpq_abs(r.get_mpq_t(), v_.get_mpq_t());
        return Rat(r);
    }
    Rat inverse() const {
        if (is_zero()) throw InvalidInput("division by zero");
        return Rat(mpq_class(1 / v_));
    }
    long to_long() const { return v_.get_num().get_si(); }
    std::string str() const { return v_.get_str(); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw InvalidInput("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

inline Rat floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return Rat(q);
}

/* constant + Σ coeff·name, affine in formal parameters */
class ParamExpr {
public:
    ParamExpr() = default;
    ParamExpr(Rat c) : constant_(std::move(c)) {}
    ParamExpr(int c) : constant_(c) {}
    ParamExpr(long c) : constant_(c) {}

    static ParamExpr param(const std::string& name, const Rat& coeff = Rat(1)) {
        ParamExpr e;
        if (!coeff.is_zero()) e.terms_[name] = coeff;
        return e;
    }

    /* sums of `<rat>`, `<rat>*<name>`, `<name>` */
    static ParamExpr parse(std::string_view s);

    const Rat& constant() const { return constant_; }
    const std::map<std::string, Rat>& terms() const { return terms_; }
    bool is_constant() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty() && constant_.is_zero(); }

    /* substitute values for some parameters */
    ParamExpr substitute(const std::map<std::string, Rat>& values) const {
        ParamExpr r(constant_);
        for (const auto& [n, c] : terms_) {
            auto it = values.find(n);
            if (it != values.end()) r.constant_ += c * it->second;
            else r.terms_[n] = c;
        }
        return r;
    }

    std::string str() const {
        std::string out;
        bool first = true;
        if (!constant_.is_zero() || terms_.empty()) {
            out = constant_.str();
            first = false;
        }
        for (const auto& [n, c] : terms_) {
            Rat a = c.abs();
            if (first) {
                if (c.sign() < 0) out += "-";
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            out += a.str() + "*" + n;
            first = false;
        }
        return out;
    }

    ParamExpr& operator+=(const ParamExpr& o) {
        constant_ += o.constant_;
        for (const auto& [n, c] : o.terms_) add_term(n, c);
        return *this;
    }
    ParamExpr& operator-=(const ParamExpr& o) {
        constant_ -= o.constant_;
        for (const auto& [n, c] : o.terms_) add_term(n, -c);
        return *this;
    }
    ParamExpr& operator*=(const Rat& r) {
        if (r.is_zero()) {
            terms_.clear();
            constant_ = Rat(0);
            return *this;
        }
        constant_ *= r;
        for (auto& kv : terms_) kv.second *= r;
        return *this;
    }
    friend ParamExpr operator+(ParamExpr a, const ParamExpr& b) { return a += b; }
    friend ParamExpr operator-(ParamExpr a, const ParamExpr& b) { return a -= b; }
    friend ParamExpr operator*(ParamExpr a, const Rat& r) { return a *= r; }
    friend ParamExpr operator*(const Rat& r, ParamExpr a) { return a *= r; }
    ParamExpr operator-() const { return *this * Rat(-1); }

    friend bool operator==(const ParamExpr& a, const ParamExpr& b) {
        return a.constant_ == b.constant_ && a.terms_ == b.terms_;
    }
    /* total order for canonical sorting (not a numeric comparison) */
    friend bool operator<(const ParamExpr& a, const ParamExpr& b) {
        if (a.terms_ != b.terms_) return a.terms_ < b.terms_;
        return a.constant_ < b.constant_;
    }

private:
    void add_term(const std::string& n, const Rat& c) {
        auto it = terms_.find(n);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(n, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Rat constant_;
    std::map<std::string, Rat> terms_;
};

inline ParamExpr ParamExpr::parse(std::string_view s) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto fail = [&](const std::string& msg) -> ParamExpr { throw ParseError(msg, i); };
    auto read_name = [&] {
        std::size_t b = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        return std::string(s.substr(b, i - b));
    };
    auto read_rat = [&] {
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i < s.size() && s[i] == '/') {
            ++i;
            std::size_t d = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (d == i) throw ParseError("expected denominator", i);
        }
        return Rat::parse(s.substr(b, i - b));
    };

    ParamExpr out;
    bool first = true;
    skip();
    if (i == s.size()) return fail("empty expression");
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            return fail("expected '+' or '-'");
        }
        if (i == s.size()) return fail("dangling sign");
        ParamExpr term;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            Rat r = read_rat();
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip();
                if (i == s.size() || !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                    return fail("expected parameter name");
                term = ParamExpr::param(read_name(), r);
            } else {
                term = ParamExpr(r);
            }
        } else if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
            term = ParamExpr::param(read_name());
        } else {
            return fail("unexpected character");
        }
        out += term * Rat(sign);
        first = false;
        skip();
    }
    return out;
}

/* generic convention: any parameter dependence is non-integer */
inline bool is_generically_integer(const ParamExpr& e) {
    return e.is_constant() && e.constant().is_integer();
}

/* λ_i − λ_j ∈ Z */
inline bool diff_in_integers(const ParamExpr& a, const ParamExpr& b) {
    return is_generically_integer(a - b);
}

/* λ_i − λ_j ∈ Z − {0}, the Oshima-hypothesis variant */
inline bool diff_in_nonzero_integers(const ParamExpr& a, const ParamExpr& b) {
    ParamExpr d = a - b;
    return is_generically_integer(d) && !d.is_zero();
}

} // namespace irrkatz
