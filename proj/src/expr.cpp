#include "bcov/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace bcov {

namespace {

class Parser {
public:
    Parser(const std::string& s, char var) : s_(s), var_(var) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression parse error at position " + std::to_string(pos_) +
                                    " in '" + s_ + "': " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RationalFunction expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        RationalFunction r = term();
        if (neg) r = -r;
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else break;
        }
        return r;
    }

    RationalFunction term() {
        RationalFunction r = factor();
        for (;;) {
            if (eat('*')) r = r * factor();
            else if (eat('/')) {
                RationalFunction d = factor();
                if (d.is_zero()) fail("division by zero");
                r = r / d;
            } else
                break;
        }
        return r;
    }

    RationalFunction factor() {
        RationalFunction base = atom();
        if (eat('^')) {
            const long e = integer_exponent();
            if (e < 0 && base.is_zero()) fail("zero to a negative power");
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }

    long integer_exponent() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    RationalFunction atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == var_) {
            ++pos_;
            return RationalFunction::variable();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
            return RationalFunction(Rational(digits));
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            fail(std::string("unknown symbol '") + c + "' (variable is '" + var_ + "')");
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    char var_;
    size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_expr(const std::string& text, char var) {
    return Parser(text, var).parse();
}

}  // namespace bcov
