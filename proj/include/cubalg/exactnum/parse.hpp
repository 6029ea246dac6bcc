#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cubalg/error.hpp"
#include "cubalg/exactnum/fraction.hpp"

namespace cubalg {

/// Syntax or symbol error carrying the byte offset into the parsed text.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t offset, const std::string& msg);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Parses the expression grammar
///   expr = term {("+"|"-") term}; term = factor {("*"|"/") factor};
///   factor = base ["^" uint]; base = rational | symbol | "(" expr ")"; rational = int ["/" uint]
/// A leading "-" is accepted in front of any factor.
Fraction parse_expr(std::string_view text, const TablePtr& table);

/// Same as parse_expr but insists on a polynomial result.
MultiPoly parse_poly(std::string_view text, const TablePtr& table);

}  // namespace cubalg
