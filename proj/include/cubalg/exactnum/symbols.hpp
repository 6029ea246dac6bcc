#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubalg/exactnum/rational.hpp"

namespace cubalg {

inline constexpr std::size_t kMaxSymbols = 32;

/// Dense exponent vector indexed by symbol position in the owning table.
using Exponents = std::array<std::uint8_t, kMaxSymbols>;

/// A linear polynomial c0 + sum ci*si, used to declare allowed denominator atoms such as (x-a).
struct LinearForm {
    std::vector<std::pair<int, Rational>> coefficients;  // (symbol index, coefficient), sorted by index
    Rational constant;

    bool operator==(const LinearForm&) const = default;
};

/// Which irreducible factors may appear in a fraction denominator.
struct DenominatorPolicy {
    bool any_symbol = true;           // every bare symbol may be a denominator atom
    std::vector<std::string> symbols; // consulted when any_symbol is false
    bool any_linear = false;          // any polynomial linear in its lowest symbol
    std::vector<std::string> atoms;   // explicit linear atoms, e.g. "x-a"
};

/// Ordered list of symbol names shared by all polynomials that interoperate.
class SymbolTable {
public:
    static std::shared_ptr<const SymbolTable> make(std::vector<std::string> names,
                                                   DenominatorPolicy policy = {},
                                                   std::optional<std::string> imaginary = std::nullopt);

    std::size_t size() const { return names_.size(); }
    const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(const std::string& name) const;
    int require(const std::string& name) const;

    /// Index of the symbol reduced by i^2 -> -1, or -1.
    int imaginary() const { return imaginary_; }

    const DenominatorPolicy& policy() const { return policy_; }
    bool symbol_atom_allowed(int index) const;
    const std::vector<LinearForm>& declared_atoms() const { return declared_; }

    bool compatible(const SymbolTable& other) const;

private:
    SymbolTable() = default;
    std::vector<std::string> names_;
    DenominatorPolicy policy_;
    std::vector<LinearForm> declared_;
    int imaginary_ = -1;
};

using TablePtr = std::shared_ptr<const SymbolTable>;

}  // namespace cubalg
