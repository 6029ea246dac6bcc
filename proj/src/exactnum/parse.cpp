#include "cubalg/exactnum/parse.hpp"

#include <cctype>

namespace cubalg {

ParseError::ParseError(ErrorKind kind, std::size_t offset, const std::string& msg)
    : Error(kind, "exactnum", msg + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

class Parser {
public:
    Parser(std::string_view text, const TablePtr& table) : s_(text), table_(table) {}

    Fraction run() {
        Fraction out = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ErrorKind::Syntax, pos_, "syntax error: " + msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Integer uint_literal() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail(pos_ < s_.size() ? "expected digits" : "unexpected end of input");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    Fraction expr() {
        Fraction acc = term();
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Fraction term() {
        Fraction acc = factor();
        while (true) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Fraction d = factor();
                if (d.is_zero()) throw ParseError(ErrorKind::DivisionByZero, at, "division by zero");
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    Fraction factor() {
        if (accept('-')) return -factor();
        Fraction b = base();
        if (accept('^')) {
            Integer e = uint_literal();
            if (e > 64) fail("exponent too large");
            b = b.pow(static_cast<int>(e.get_si()));
        }
        return b;
    }

    Fraction base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Fraction inner = expr();
            if (!accept(')')) fail(pos_ < s_.size() ? "expected ')'" : "unexpected end of input");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational value(uint_literal());
            // "p/q" binds as a single rational only when digits follow the slash directly.
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                Integer den = uint_literal();
                if (den == 0) throw ParseError(ErrorKind::DivisionByZero, pos_, "zero denominator");
                value = make_rational(value.get_num(), den);
            }
            return Fraction(table_, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto idx = table_->index_of(name);
            if (!idx) throw ParseError(ErrorKind::UnknownSymbol, start, "unknown symbol '" + name + "'");
            return Fraction(MultiPoly::symbol(table_, *idx));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const TablePtr& table_;
    std::size_t pos_ = 0;
};

}  // namespace

Fraction parse_expr(std::string_view text, const TablePtr& table) { return Parser(text, table).run(); }

MultiPoly parse_poly(std::string_view text, const TablePtr& table) {
    Fraction f = parse_expr(text, table);
    if (!f.is_polynomial())
        throw Error(ErrorKind::DisallowedDenominator, "exactnum", "expected a polynomial, got " + f.to_string());
    return f.num();
}

}  // namespace cubalg
