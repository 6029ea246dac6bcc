#include "cubalg/exactnum/symbols.hpp"

#include <algorithm>
#include <cctype>

#include "cubalg/error.hpp"

namespace cubalg {

namespace {

// Parses a declared atom such as "x-a" or "n+1/2" into a linear form.
LinearForm parse_linear(const std::string& text, const std::vector<std::string>& names) {
    LinearForm form;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    while (true) {
        skip();
        if (pos >= text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        }
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        Rational coef = 1;
        bool has_number = pos > start;
        if (has_number) coef = parse_rational(text.substr(start, pos - start));
        skip();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
        }
        start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        std::string sym = text.substr(start, pos - start);
        if (!sym.empty() && std::isdigit(static_cast<unsigned char>(sym[0])))
            throw Error(ErrorKind::Syntax, "exactnum", "bad atom '" + text + "'");
        if (sym.empty()) {
            if (!has_number) throw Error(ErrorKind::Syntax, "exactnum", "bad atom '" + text + "'");
            form.constant += sign * coef;
            continue;
        }
        auto it = std::find(names.begin(), names.end(), sym);
        if (it == names.end()) throw Error(ErrorKind::UnknownSymbol, "exactnum", "atom uses unknown symbol '" + sym + "'");
        int idx = static_cast<int>(it - names.begin());
        form.coefficients.emplace_back(idx, sign * coef);
    }
    std::sort(form.coefficients.begin(), form.coefficients.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    if (form.coefficients.empty()) throw Error(ErrorKind::Syntax, "exactnum", "constant atom '" + text + "'");
    // Normalize so the lowest-index symbol has coefficient one.
    Rational lead = form.coefficients.front().second;
    for (auto& [idx, c] : form.coefficients) c /= lead;
    form.constant /= lead;
    return form;
}

}  // namespace

std::shared_ptr<const SymbolTable> SymbolTable::make(std::vector<std::string> names, DenominatorPolicy policy,
                                                     std::optional<std::string> imaginary) {
    if (names.size() > kMaxSymbols)
        throw Error(ErrorKind::InvalidArgument, "exactnum", "too many symbols (limit " + std::to_string(kMaxSymbols) + ")");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw Error(ErrorKind::InvalidArgument, "exactnum", "duplicate symbol '" + names[i] + "'");
    auto table = std::shared_ptr<SymbolTable>(new SymbolTable());
    table->names_ = std::move(names);
    table->policy_ = std::move(policy);
    for (const auto& atom : table->policy_.atoms) table->declared_.push_back(parse_linear(atom, table->names_));
    if (imaginary) table->imaginary_ = table->require(*imaginary);
    return table;
}

std::optional<int> SymbolTable::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

int SymbolTable::require(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) throw Error(ErrorKind::UnknownSymbol, "exactnum", "unknown symbol '" + name + "'");
    return *idx;
}

bool SymbolTable::symbol_atom_allowed(int index) const {
    if (index == imaginary_) return false;
    if (policy_.any_symbol || policy_.any_linear) return true;
    return std::find(policy_.symbols.begin(), policy_.symbols.end(), name(index)) != policy_.symbols.end();
}

bool SymbolTable::compatible(const SymbolTable& other) const {
    return this == &other || (names_ == other.names_ && imaginary_ == other.imaginary_);
}

}  // namespace cubalg
