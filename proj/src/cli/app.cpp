#include "cubalg/cli/app.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "cubalg/algebra/casimir.hpp"
#include "cubalg/exactnum/parse.hpp"
#include "cubalg/repcheck/fock.hpp"
#include "cubalg/spectrum/catalog.hpp"
#include "cubalg/weylop/q5.hpp"
#include "json.hpp"

namespace cubalg::cli {

using json = nlohmann::ordered_json;

ConfigError::ConfigError(int line, std::size_t offset, const std::string& msg)
    : Error(ErrorKind::Syntax, "cli",
            (line > 0 ? "config line " + std::to_string(line) + ": " : std::string()) + msg),
      line_(line),
      offset_(offset) {}

CubicAlgebraSpec RunConfig::algebra() const { return spec ? *spec : q5_spec(); }

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

template <class T>
T parse_number(const std::string& value, int line, const std::string& key) {
    std::istringstream in(value);
    T out{};
    in >> out;
    if (!in || !(in >> std::ws).eof()) throw ConfigError(line, 0, "bad value for '" + key + "': " + value);
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig base) {
    RunConfig cfg = std::move(base);
    std::istringstream in(text);
    std::string raw, section;
    int line_no = 0;
    std::optional<CubicAlgebraSpec> spec;
    bool preset_q5 = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, 0, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "algebra" && section != "spectrum" && section != "numeric")
                throw ConfigError(line_no, 0, "unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, 0, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(line_no, 0, "key '" + key + "' outside a section");

        if (section == "algebra") {
            if (key == "preset") {
                if (value != "q5") throw ConfigError(line_no, 0, "unknown preset '" + value + "'");
                preset_q5 = true;
                continue;
            }
            std::size_t idx = CubicAlgebraSpec::kNames.size();
            for (std::size_t i = 0; i < CubicAlgebraSpec::kNames.size(); ++i)
                if (key == CubicAlgebraSpec::kNames[i]) idx = i;
            if (idx == CubicAlgebraSpec::kNames.size()) throw ConfigError(line_no, 0, "unknown constant '" + key + "'");
            if (!spec) spec.emplace();
            try {
                (*spec)[idx] = parse_expr(value, algebra_table());
            } catch (const ParseError& e) {
                throw ConfigError(line_no, e.offset(), "in '" + key + "': " + e.what());
            } catch (const Error& e) {
                throw ConfigError(line_no, 0, "in '" + key + "': " + e.what());
            }
        } else if (section == "spectrum") {
            if (key == "p_max") cfg.p_max = parse_number<int>(value, line_no, key);
            else if (key == "repcheck_p_max") cfg.repcheck_p_max = parse_number<int>(value, line_no, key);
            else if (key == "repcheck_samples") cfg.repcheck_samples = parse_number<int>(value, line_no, key);
            else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(value, line_no, key);
            else throw ConfigError(line_no, 0, "unknown key '" + key + "' in [spectrum]");
        } else {
            if (key == "a") cfg.numeric.a = parse_number<double>(value, line_no, key);
            else if (key == "grid") cfg.numeric.grid = parse_number<int>(value, line_no, key);
            else if (key == "cutoff") cfg.numeric.cutoff = parse_number<double>(value, line_no, key);
            else if (key == "outer_factor") cfg.numeric.outer_factor = parse_number<double>(value, line_no, key);
            else if (key == "tol") cfg.numeric.tol = parse_number<double>(value, line_no, key);
            else if (key == "compare_tol") cfg.compare_tol = parse_number<double>(value, line_no, key);
            else throw ConfigError(line_no, 0, "unknown key '" + key + "' in [numeric]");
        }
    }
    if (preset_q5 && spec) throw ConfigError(0, 0, "[algebra] gives both a preset and explicit constants");
    if (preset_q5) {
        cfg.preset = "q5";
        cfg.spec.reset();
    } else if (spec) {
        cfg.preset.clear();
        cfg.spec = std::move(spec);
    }
    if (cfg.p_max < 0 || cfg.repcheck_p_max < 0 || cfg.repcheck_samples < 0)
        throw ConfigError(0, 0, "p_max, repcheck_p_max and repcheck_samples must be nonnegative");
    if (cfg.numeric.a <= 0 || cfg.numeric.grid < 3 || cfg.numeric.tol <= 0 || cfg.numeric.outer_factor <= 1)
        throw ConfigError(0, 0, "numeric options out of range");
    return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, 0, "cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"verify-q5", "derive", "spectrum", "repcheck",
                                                "numeric",   "compare", "all"};
    return names;
}

namespace {

json error_json(const Error& e) {
    return json{{"kind", to_string(e.kind())}, {"module", e.module()}, {"message", e.what()}};
}

/// Shared state of one run; expensive pieces are built on first use.
class Session {
public:
    explicit Session(const RunConfig& cfg) : cfg_(cfg), spec_(cfg.algebra()) {}

    const Catalog& catalog() {
        if (!catalog_) catalog_ = enumerate_catalog(spec_, cfg_.p_max);
        return *catalog_;
    }
    const std::vector<Level>& levels() {
        if (!levels_) levels_ = q5_levels(cfg_.numeric);
        return *levels_;
    }
    void fail(const std::string& what) { failures.push_back(what); }

    json verify_q5();
    json derive();
    json spectrum();
    json repcheck();
    json numeric();
    json compare();

    std::string verify_q5_csv(const json& j);
    std::string derive_csv(const json& j);
    std::string spectrum_csv(const json& j);
    std::string repcheck_csv(const json& j);
    std::string numeric_csv(const json& j);
    std::string compare_csv(const json& j);

    std::vector<std::string> failures;

private:
    const RunConfig& cfg_;
    CubicAlgebraSpec spec_;
    std::optional<Catalog> catalog_;
    std::optional<std::vector<Level>> levels_;
};

json Session::verify_q5() {
    Q5Operators q = build_q5_verified();
    CubicAlgebraSpec s = q5_spec();
    DiffOp one = DiffOp::identity(q.H.table());
    auto op = [&](const Fraction& f) { return energy_operator(f, q.H); };
    DiffOp A2 = q.A * q.A;

    json checks = json::array();
    auto check = [&](const std::string& name, bool ok) {
        checks.push_back({{"check", name}, {"pass", ok}});
        if (!ok) fail("verify-q5: " + name);
    };
    check("[H,A] = 0", commutator(q.H, q.A).is_zero());
    check("[H,B] = 0", commutator(q.H, q.B).is_zero());
    DiffOp ac = op(s.alpha) * A2 + op(s.beta) * anticommutator(q.A, q.B) + op(s.gamma) * q.A + op(s.delta) * q.B +
                op(s.epsilon);
    check("[A,C] matches the structure constants", commutator(q.A, q.C) == ac);
    DiffOp bc = op(s.mu) * A2 * q.A + op(s.nu) * A2 - op(s.beta) * q.B * q.B -
                op(s.alpha) * anticommutator(q.A, q.B) + op(s.xi) * q.A - op(s.gamma) * q.B + op(s.zeta);
    check("[B,C] matches the structure constants", commutator(q.B, q.C) == bc);
    DiffOp K = casimir_operator(casimir_coefficients(s), q);
    check("K = k(H)", K == op(s.k));

    std::vector<DiffOp> basis{A2 * q.A, A2 * q.H, q.H * q.H * q.H, A2, q.H * q.A, q.H * q.H, q.A, q.H, one};
    const char* labels[] = {"A^3", "A^2 H", "H^3", "A^2", "H A", "H^2", "A", "H", "1"};
    json bc_coef = json::array();
    auto c = express_in_basis(commutator(q.B, q.C), basis);
    for (std::size_t i = 0; i < c.size(); ++i) bc_coef.push_back({{"term", labels[i]}, {"value", c[i].to_string()}});
    auto ac_coef = express_in_basis(commutator(q.A, q.C), {q.B});

    return json{{"orientation", q.sign == AngularSign::XPyMinusYPx ? "x*Py - y*Px" : "y*Px - x*Py"},
                {"checks", checks},
                {"ac_coefficient_of_B", ac_coef[0].to_string()},
                {"bc_coefficients", bc_coef}};
}

json Session::derive() {
    json out;
    out["case"] = spec_.realization_case();
    json constants;
    for (std::size_t i = 0; i < CubicAlgebraSpec::kNames.size(); ++i)
        constants[CubicAlgebraSpec::kNames[i]] = spec_[i].to_string();
    out["constants"] = constants;

    CasimirExpression derived = casimir_coefficients(spec_);
    CasimirExpression quoted = closed_form_casimir(spec_);
    json cas = json::array();
    for (std::size_t i = 0; i < derived.coef.size(); ++i)
        cas.push_back({{"term", CasimirExpression::kBasis[i]},
                       {"value", derived.coef[i].to_string()},
                       {"closed_form_agrees", derived.coef[i] == quoted.coef[i]}});
    out["casimir"] = cas;
    if (!(derived == quoted)) fail("derive: Casimir coefficients disagree with the closed form");

    try {
        StructureFunction sf = derive_structure_function(spec_, derived);
        out["realization"] = {{"A", sf.realization.A.to_string()},
                              {"b", sf.realization.b.to_string()},
                              {"rho", sf.realization.rho.to_string()}};
        out["phi"] = {{"expression", sf.phi.to_string()}, {"degree", sf.degree}};
        UBranches u = u_branches(sf);
        json ub = json::array();
        for (const auto& b : u.branches) ub.push_back(b.to_string());
        out["u_branches"] = ub;
        out["u_fallback"] = u.fallback;

        if (cfg_.is_q5()) {
            // Places where the derivation departs from the commonly quoted forms.
            const TablePtr& t = phi_table();
            int x = t->require("x"), uu = t->require("u"), E = t->require("E");
            Fraction lead = sf.phi;
            for (int k = 0; k < sf.degree; ++k) lead = lead.derivative(x);
            lead = lead.scaled(Rational(1) / Rational(24));
            Fraction zero(t, 0);
            Fraction constant = sf.phi.substitute(x, zero).substitute(uu, zero).substitute(E, zero);
            json deltas = json::array();
            auto delta = [&](const std::string& what, const std::string& quoted_form, const Fraction& value) {
                Fraction q = parse_expr(quoted_form, t);
                deltas.push_back({{"quantity", what},
                                  {"quoted", q.to_string()},
                                  {"derived", value.to_string()},
                                  {"agrees", q == value}});
            };
            delta("leading coefficient of Phi in x", "-4*h^8/a^4", lead);
            delta("Phi at x = u = E = 0", "-15/4*h^6/a^4", constant);
            for (const auto& f : catalog().families)
                if (f.energy == parse_expr("-h^2*p/(2*a^2)", t))
                    delta("Phi on the family E = -h^2 p/(2 a^2)", "4*h^6/a^4*x*(p+1-x)*(p-1-x)*(p-2-x)", f.phi);
            out["deltas"] = deltas;
        }
    } catch (const Error& e) {
        out["error"] = error_json(e);
        fail(std::string("derive: ") + e.what());
    }
    return out;
}

json Session::spectrum() {
    const Catalog& c = catalog();
    json out;
    out["p_max"] = c.p_max;
    json ub = json::array();
    for (const auto& b : c.u.branches) ub.push_back(b.to_string());
    out["u_branches"] = ub;
    out["u_fallback"] = c.u.fallback;
    json fams = json::array();
    for (const auto& f : c.families) {
        json roots = json::array();
        for (const auto& r : f.phi_roots) roots.push_back({{"root", r.value.to_string()}, {"multiplicity", r.multiplicity}});
        json verdicts = json::array();
        for (const auto& [p, v] : f.unitarity) {
            json row{{"p", p}, {"pass", v.pass}};
            if (!v.pass) row["first_failing_x"] = v.first_failing_x;
            verdicts.push_back(row);
        }
        fams.push_back({{"u_branch", f.u_branch.to_string()},
                        {"energy", f.energy.to_string()},
                        {"phi", f.phi.to_string()},
                        {"phi_scale", f.phi_scale.to_string()},
                        {"phi_roots", roots},
                        {"unitary_for_all_p", f.unitary_for_all_p()},
                        {"passing_p", f.passing_p()},
                        {"verdicts", verdicts}});
    }
    out["families"] = fams;
    json fb = json::array();
    for (const auto& f : c.fallback) {
        json energies = json::array();
        for (const auto& [p, es] : f.energies) energies.push_back({{"p", p}, {"energies", es}});
        fb.push_back({{"u_branch", f.u_branch.to_string()}, {"residual", f.residual.to_string()}, {"energies", energies}});
    }
    out["fallback"] = fb;
    return out;
}

json Session::repcheck() {
    const Catalog& c = catalog();
    CasimirExpression casimir = casimir_coefficients(spec_);
    std::mt19937_64 rng(cfg_.seed);
    std::uniform_int_distribution<int> num(1, 9), den(1, 5);
    std::vector<std::pair<Rational, Rational>> points{{Rational(1), Rational(1)}};
    for (int i = 0; i < cfg_.repcheck_samples; ++i) {
        Rational h = make_rational(num(rng), den(rng));
        Rational a = make_rational(num(rng), den(rng));
        points.emplace_back(h, a);
    }
    constexpr double kTol = 1e-10;

    json rows = json::array();
    int checked = 0;
    for (const auto& f : c.families) {
        for (int p : f.passing_p()) {
            if (p > cfg_.repcheck_p_max) break;
            for (const auto& [h, a] : points) {
                std::map<std::string, Rational> at{{"p", Rational(p)}, {"h", h}, {"a", a}};
                Rational E = f.energy.evaluate(at);
                at["E"] = E;
                Rational u = f.u_branch.evaluate(at);
                bool unit_scale = h == 1 && a == 1;
                try {
                    FockData d = fock_data(c.structure, E, u, h, a, p);
                    NumericConstants k = evaluate_constants(spec_, casimir, E, h, a);
                    std::vector<Residual> res = verify_relations(triangular_gauge(d), k);
                    for (const Residual& r : verify_relations(symmetric_gauge(d), k)) res.push_back(r);
                    for (const Residual& r : res) {
                        bool ok = r.gauge == Gauge::TriangularExact
                                      ? r.exact_zero
                                      : (unit_scale ? r.max_residual <= kTol : r.relative_residual <= kTol);
                        rows.push_back({{"family", f.energy.to_string()},
                                        {"p", p},
                                        {"h", to_string(h)},
                                        {"a", to_string(a)},
                                        {"gauge", to_string(r.gauge)},
                                        {"relation", r.relation},
                                        {"max_residual", r.max_residual},
                                        {"relative_residual", r.relative_residual},
                                        {"pass", ok}});
                        if (!ok)
                            fail("repcheck: " + r.relation + " for E = " + f.energy.to_string() +
                                 " at p = " + std::to_string(p));
                    }
                    ++checked;
                } catch (const Error& e) {
                    rows.push_back({{"family", f.energy.to_string()},
                                    {"p", p},
                                    {"h", to_string(h)},
                                    {"a", to_string(a)},
                                    {"error", error_json(e)}});
                    fail(std::string("repcheck: ") + e.what());
                }
            }
        }
    }
    return json{{"points", checked}, {"tolerance", kTol}, {"residuals", rows}};
}

json Session::numeric() {
    json levels = json::array();
    for (const Level& l : this->levels()) levels.push_back({{"energy", l.energy}, {"origin", l.origin}});
    const NumericOptions& o = cfg_.numeric;
    return json{{"a", o.a}, {"grid", o.grid}, {"cutoff", o.cutoff}, {"levels", levels}};
}

json Session::compare() {
    ComparisonReport r = cubalg::compare(catalog(), levels(), cfg_.numeric.a, cfg_.numeric.cutoff, cfg_.compare_tol);
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"family", row.family},
                        {"p", row.p},
                        {"predicted", row.predicted},
                        {"nearest", row.nearest},
                        {"deviation", row.deviation},
                        {"representable", row.representable},
                        {"matched", row.matched}});
    if (!r.pass) fail("compare: predicted energies do not match the numeric levels");
    return json{{"tolerance", cfg_.compare_tol}, {"pass", r.pass}, {"comparison", rows}, {"unmatched", r.unmatched}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string cell(const json& v) {
    if (v.is_string()) return csv_field(v.get<std::string>());
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

std::string table(const json& rows, const std::vector<std::string>& columns) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ",";
            if (row.contains(columns[i])) out += cell(row[columns[i]]);
        }
        out += "\n";
    }
    return out;
}

std::string Session::verify_q5_csv(const json& j) { return table(j["checks"], {"check", "pass"}); }

std::string Session::derive_csv(const json& j) {
    json rows = json::array();
    for (const auto& c : j["casimir"]) rows.push_back({{"quantity", "casimir " + c["term"].get<std::string>()}, {"value", c["value"]}});
    if (j.contains("phi")) rows.push_back({{"quantity", "phi"}, {"value", j["phi"]["expression"]}});
    if (j.contains("deltas"))
        for (const auto& d : j["deltas"])
            rows.push_back({{"quantity", d["quantity"]}, {"value", d["derived"]}, {"quoted", d["quoted"]}});
    return table(rows, {"quantity", "value", "quoted"});
}

std::string Session::spectrum_csv(const json& j) {
    json rows = json::array();
    for (const auto& f : j["families"]) {
        std::string passing;
        for (const auto& p : f["passing_p"]) passing += (passing.empty() ? "" : " ") + p.dump();
        rows.push_back({{"u_branch", f["u_branch"]},
                        {"energy", f["energy"]},
                        {"phi", f["phi"]},
                        {"unitary_for_all_p", f["unitary_for_all_p"]},
                        {"passing_p", passing}});
    }
    return table(rows, {"u_branch", "energy", "phi", "unitary_for_all_p", "passing_p"});
}

std::string Session::repcheck_csv(const json& j) {
    return table(j["residuals"], {"family", "p", "h", "a", "gauge", "relation", "max_residual", "relative_residual", "pass"});
}

std::string Session::numeric_csv(const json& j) { return table(j["levels"], {"energy", "origin"}); }

std::string Session::compare_csv(const json&) {
    ComparisonReport r = cubalg::compare(catalog(), levels(), cfg_.numeric.a, cfg_.numeric.cutoff, cfg_.compare_tol);
    return comparison_csv(r, levels());
}

}  // namespace

RunResult run(const std::string& subcommand, const RunConfig& cfg) {
    bool known = false;
    for (const auto& s : subcommands()) known = known || s == subcommand;
    if (!known) throw ConfigError(0, 0, "unknown subcommand '" + subcommand + "'");
    bool q5_only = subcommand == "verify-q5" || subcommand == "numeric" || subcommand == "compare";
    if (q5_only && !cfg.is_q5()) throw ConfigError(0, 0, subcommand + " needs the q5 preset");

    Session s(cfg);
    using Section = std::pair<json (Session::*)(), std::string (Session::*)(const json&)>;
    const std::map<std::string, Section> sections{
        {"verify-q5", {&Session::verify_q5, &Session::verify_q5_csv}},
        {"derive", {&Session::derive, &Session::derive_csv}},
        {"spectrum", {&Session::spectrum, &Session::spectrum_csv}},
        {"repcheck", {&Session::repcheck, &Session::repcheck_csv}},
        {"numeric", {&Session::numeric, &Session::numeric_csv}},
        {"compare", {&Session::compare, &Session::compare_csv}},
    };
    std::vector<std::string> order;
    if (subcommand == "all") {
        for (const char* name : {"verify-q5", "derive", "spectrum", "repcheck", "numeric", "compare"})
            if (cfg.is_q5() || (std::string(name) != "verify-q5" && std::string(name) != "numeric" &&
                                std::string(name) != "compare"))
                order.emplace_back(name);
    } else {
        order.push_back(subcommand);
    }

    json doc;
    doc["preset"] = cfg.is_q5() ? "q5" : "custom";
    std::string csv;
    for (const auto& name : order) {
        const Section& sec = sections.at(name);
        json j;
        try {
            j = (s.*sec.first)();
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            j = json{{"error", error_json(e)}};
            s.fail(name + ": " + e.what());
        }
        if (cfg.format == Format::Csv) {
            if (order.size() > 1) csv += "# " + name + "\n";
            csv += j.contains("error") && j.size() == 1 ? "error," + csv_field(j["error"]["message"].get<std::string>()) + "\n"
                                                        : (s.*sec.second)(j);
        }
        doc[name] = std::move(j);
    }
    doc["failures"] = s.failures;
    doc["status"] = s.failures.empty() ? "pass" : "fail";

    RunResult r;
    r.failures = s.failures;
    r.exit_code = s.failures.empty() ? 0 : 1;
    r.output = cfg.format == Format::Json ? doc.dump(2) + "\n" : csv;
    return r;
}

}  // namespace cubalg::cli
