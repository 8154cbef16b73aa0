#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "weylalg.hpp"

namespace irrkatz {

namespace detail {

/*
 * expr  := term (('+'|'-') term)*
 * term  := unary (('*'|'/') unary)*
 * unary := ('+'|'-') unary | power
 * power := atom ('^' INT)?
 * atom  := INT | 'x' | 'D' | NAME | '(' expr ')'
 * A/B is A·B^{-1} and needs a D-free, nonzero B.
 */
class OperatorParser {
public:
    OperatorParser(std::string_view s, const std::map<std::string, Rat>& params) : s_(s), params_(params) {}

    DiffOperator run() {
        skip();
        if (i_ == s_.size()) throw ParseError("empty operator expression", i_);
        DiffOperator r = expr();
        skip();
        if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
        return r;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    DiffOperator expr() {
        DiffOperator r = term();
        while (true) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }

    DiffOperator term() {
        DiffOperator r = unary();
        while (true) {
            if (eat('*')) {
                r = r * unary();
            } else if (eat('/')) {
                std::size_t at = i_;
                DiffOperator d = unary();
                if (d.rank() > 0) throw ParseError("division by an expression containing D", at);
                if (d.is_zero()) throw ParseError("division by zero", at);
                r = r * DiffOperator(RatFunc(1) / d.coeff(0));
            } else {
                return r;
            }
        }
    }

    DiffOperator unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return pow();
    }

    DiffOperator pow() {
        DiffOperator base = atom();
        if (!eat('^')) return base;
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) throw ParseError("exponent must be a nonnegative integer", b);
        if (i_ - b > 4) throw ParseError("exponent too large", b);
        return power(base, std::stoi(std::string(s_.substr(b, i_ - b))));
    }

    DiffOperator atom() {
        skip();
        if (i_ == s_.size()) throw ParseError("unexpected end of input", i_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            DiffOperator r = expr();
            if (!eat(')')) throw ParseError("expected ')'", i_);
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return DiffOperator(Rat::parse(s_.substr(b, i_ - b)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name(s_.substr(b, i_ - b));
            if (name == "x") return DiffOperator::x();
            if (name == "D") return DiffOperator::D();
            auto it = params_.find(name);
            if (it == params_.end()) throw ParseError("unknown symbol '" + name + "'", b);
            return DiffOperator(it->second);
        }
        throw ParseError(std::string("unexpected '") + c + "'", i_);
    }

    std::string_view s_;
    const std::map<std::string, Rat>& params_;
    std::size_t i_ = 0;
};

} // namespace detail

/* operator text in x, D and bound parameter names */
inline DiffOperator parse_operator(std::string_view text, const std::map<std::string, Rat>& params = {}) {
    return detail::OperatorParser(text, params).run();
}

} // namespace irrkatz
