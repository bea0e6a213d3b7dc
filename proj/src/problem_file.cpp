// SPDX-License-Identifier: MIT
#include "tsvar/problem_file.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "tsvar/report.hpp"

namespace tsvar {

namespace {

// ---------------------------------------------------------------------------
// Minimal TOML reader covering the problem-file schema: sections (one
// optional dot level), bare keys, strings, numbers, booleans and (nested,
// possibly multi-line) arrays. Full TOML is deliberately out of scope.
// ---------------------------------------------------------------------------

struct TomlValue {
    enum class Type { String, Number, Boolean, Array };
    Type type = Type::Number;
    std::string str;
    double num = 0.0;
    bool is_integer = false;
    bool boolean = false;
    std::vector<TomlValue> array;
    std::size_t line = 0;
};

struct TomlTable {
    std::string name;
    std::size_t line = 0;
    std::map<std::string, TomlValue> entries;
};

struct TomlDoc {
    std::vector<TomlTable> tables;  // in file order; front() is the root

    TomlTable* find(const std::string& name) {
        for (TomlTable& t : tables) {
            if (t.name == name) return &t;
        }
        return nullptr;
    }
};

class TomlScanner {
public:
    TomlScanner(const std::string& text, std::string origin)
        : text_(text), origin_(std::move(origin)) {}

    TomlDoc parse() {
        TomlDoc doc;
        doc.tables.push_back(TomlTable{"", 1, {}});
        std::size_t current = 0;
        while (true) {
            skip_blank();
            if (pos_ >= text_.size()) break;
            if (text_[pos_] == '[') {
                const std::size_t at = line_;
                std::string name = parse_section_header();
                for (const TomlTable& t : doc.tables) {
                    if (t.name == name) {
                        fail("duplicate section [" + name + "]");
                    }
                }
                doc.tables.push_back(TomlTable{name, at, {}});
                current = doc.tables.size() - 1;
                continue;
            }
            auto [key, value] = parse_key_value();
            TomlTable& table = doc.tables[current];
            if (table.entries.count(key) != 0) {
                fail("duplicate key '" + key + "'" + section_suffix(table.name));
            }
            table.entries.emplace(std::move(key), std::move(value));
        }
        return doc;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ProblemFileError(origin_ + ":" + std::to_string(line_) + ": " +
                               message);
    }

private:
    static std::string section_suffix(const std::string& name) {
        return name.empty() ? std::string() : " in [" + name + "]";
    }

    void skip_inline_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
            ++pos_;
        }
    }

    void skip_comment() {
        if (pos_ < text_.size() && text_[pos_] == '#') {
            while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        }
    }

    /// Skip whitespace, comments and newlines.
    void skip_blank() {
        while (pos_ < text_.size()) {
            skip_inline_ws();
            skip_comment();
            if (pos_ < text_.size() && text_[pos_] == '\n') {
                ++pos_;
                ++line_;
                continue;
            }
            if (pos_ < text_.size() && text_[pos_] == '\r') {
                ++pos_;
                continue;
            }
            break;
        }
    }

    void expect_line_end() {
        skip_inline_ws();
        skip_comment();
        if (pos_ >= text_.size()) return;
        if (text_[pos_] == '\r') ++pos_;
        if (pos_ < text_.size() && text_[pos_] != '\n') {
            fail(std::string("unexpected character '") + text_[pos_] +
                 "' after value");
        }
    }

    std::string parse_section_header() {
        ++pos_;  // consume '['
        std::string name;
        int dots = 0;
        while (pos_ < text_.size() && text_[pos_] != ']' && text_[pos_] != '\n') {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                c == '-' || c == '.') {
                if (c == '.') ++dots;
                name += c;
                ++pos_;
            } else if (c == ' ' || c == '\t') {
                ++pos_;
            } else {
                fail(std::string("bad character '") + c + "' in section header");
            }
        }
        if (pos_ >= text_.size() || text_[pos_] != ']') {
            fail("unterminated section header");
        }
        ++pos_;
        if (name.empty() || dots > 1 || name.front() == '.' || name.back() == '.') {
            fail("bad section name '" + name + "'");
        }
        expect_line_end();
        return name;
    }

    std::pair<std::string, TomlValue> parse_key_value() {
        std::string key;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                c == '-') {
                key += c;
                ++pos_;
            } else {
                break;
            }
        }
        if (key.empty()) {
            fail(std::string("expected a key, found '") + text_[pos_] + "'");
        }
        skip_inline_ws();
        if (pos_ >= text_.size() || text_[pos_] != '=') {
            fail("expected '=' after key '" + key + "'");
        }
        ++pos_;
        skip_inline_ws();
        TomlValue value = parse_value();
        expect_line_end();
        return {std::move(key), std::move(value)};
    }

    TomlValue parse_value() {
        skip_blank_inside_array();
        if (pos_ >= text_.size()) fail("missing value");
        const char c = text_[pos_];
        if (c == '"') return parse_string();
        if (c == '[') return parse_array();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_boolean();
        return parse_number();
    }

    /// Inside arrays, newlines and comments are plain separators.
    void skip_blank_inside_array() {
        while (pos_ < text_.size()) {
            skip_inline_ws();
            skip_comment();
            if (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
                if (text_[pos_] == '\n') ++line_;
                ++pos_;
                continue;
            }
            break;
        }
    }

    TomlValue parse_string() {
        TomlValue v;
        v.type = TomlValue::Type::String;
        v.line = line_;
        ++pos_;  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            char c = text_[pos_];
            if (c == '\n') fail("unterminated string");
            if (c == '\\' && pos_ + 1 < text_.size()) {
                const char esc = text_[pos_ + 1];
                if (esc == '"' || esc == '\\') {
                    v.str += esc;
                    pos_ += 2;
                    continue;
                }
                if (esc == 'n') { v.str += '\n'; pos_ += 2; continue; }
                if (esc == 't') { v.str += '\t'; pos_ += 2; continue; }
                fail(std::string("unsupported escape '\\") + esc + "'");
            }
            v.str += c;
            ++pos_;
        }
        if (pos_ >= text_.size()) fail("unterminated string");
        ++pos_;  // closing quote
        return v;
    }

    TomlValue parse_boolean() {
        TomlValue v;
        v.type = TomlValue::Type::Boolean;
        v.line = line_;
        std::string word;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            word += text_[pos_++];
        }
        if (word == "true") v.boolean = true;
        else if (word == "false") v.boolean = false;
        else fail("expected a value, found '" + word + "'");
        return v;
    }

    TomlValue parse_number() {
        TomlValue v;
        v.type = TomlValue::Type::Number;
        v.line = line_;
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            ++pos_;
        }
        bool seen_digit = false, seen_dot = false, seen_exp = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                seen_digit = true;
                ++pos_;
            } else if (c == '.' && !seen_dot && !seen_exp) {
                seen_dot = true;
                ++pos_;
            } else if ((c == 'e' || c == 'E') && seen_digit && !seen_exp) {
                seen_exp = true;
                ++pos_;
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                    ++pos_;
                }
            } else if (c == '_') {
                ++pos_;  // TOML digit separator
            } else {
                break;
            }
        }
        std::string token = text_.substr(start, pos_ - start);
        std::string cleaned;
        for (char c : token) {
            if (c != '_') cleaned += c;
        }
        if (!seen_digit) fail("malformed number '" + token + "'");
        char* end = nullptr;
        v.num = std::strtod(cleaned.c_str(), &end);
        if (end != cleaned.c_str() + cleaned.size()) {
            fail("malformed number '" + token + "'");
        }
        v.is_integer = !seen_dot && !seen_exp;
        return v;
    }

    TomlValue parse_array() {
        TomlValue v;
        v.type = TomlValue::Type::Array;
        v.line = line_;
        ++pos_;  // '['
        while (true) {
            skip_blank_inside_array();
            if (pos_ >= text_.size()) fail("unterminated array");
            if (text_[pos_] == ']') {
                ++pos_;
                return v;
            }
            v.array.push_back(parse_value());
            skip_blank_inside_array();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < text_.size() && text_[pos_] == ']') {
                ++pos_;
                return v;
            }
            fail("expected ',' or ']' in array");
        }
    }

    const std::string& text_;
    std::string origin_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

// ---------------------------------------------------------------------------
// Schema mapping
// ---------------------------------------------------------------------------

class FileBuilder {
public:
    FileBuilder(TomlDoc doc, std::string origin)
        : doc_(std::move(doc)), origin_(std::move(origin)) {}

    ProblemFileData build() {
        check_known_sections();
        const long schema = need_integer(root(), "schema", "");
        if (schema != 1) {
            fail(root().line, "", "unsupported schema " + std::to_string(schema));
        }

        TimeScale scale = build_scale();
        const TomlTable& prob = need_table("problem");
        const std::string flavor_text = need_string(prob, "flavor", "problem");
        Flavor flavor;
        if (flavor_text == "nabla") flavor = Flavor::Nabla;
        else if (flavor_text == "delta") flavor = Flavor::Delta;
        else fail(prob.line, "problem", "flavor must be \"nabla\" or \"delta\"");

        const long n = need_integer(prob, "n", "problem");
        if (n < 1) fail(prob.line, "problem", "n must be a positive integer");
        const std::string lag_src = need_string(prob, "lagrangian", "problem");
        Lagrangian L = [&] {
            try {
                return Lagrangian::parse(lag_src, static_cast<std::size_t>(n));
            } catch (const Error& e) {
                fail(entry(prob, "lagrangian").line, "problem",
                     std::string("bad lagrangian: ") + e.what());
            }
        }();
        const double a = need_number(prob, "a", "problem");
        const double b = need_number(prob, "b", "problem");
        const Vec A = need_vec(prob, "A", "problem", static_cast<std::size_t>(n));
        const Vec B = need_vec(prob, "B", "problem", static_cast<std::size_t>(n));

        std::string canonical = L.expression().text();
        VariationalProblem problem = [&] {
            try {
                return VariationalProblem(std::move(scale), a, b, std::move(L),
                                          A, B, flavor);
            } catch (const Error& e) {
                fail(prob.line, "problem", e.what());
            }
        }();

        ProblemFileData data{schema,
                             std::move(problem),
                             std::move(canonical),
                             std::nullopt,
                             {},
                             {},
                             std::nullopt,
                             ToleranceSpec{}};
        build_symmetry(data);
        build_tolerances(data);
        build_trajectories(data);
        build_search(data);
        return data;
    }

private:
    [[noreturn]] void fail(std::size_t line, const std::string& section,
                           const std::string& message) const {
        std::string where = origin_ + ":" + std::to_string(line) + ": ";
        if (!section.empty()) where += "[" + section + "] ";
        throw ProblemFileError(where + message);
    }

    const TomlTable& root() const { return doc_.tables.front(); }

    const TomlTable& need_table(const std::string& name) {
        TomlTable* t = doc_.find(name);
        if (t == nullptr) {
            throw ProblemFileError(origin_ + ": missing required section [" +
                                   name + "]");
        }
        return *t;
    }

    const TomlValue& entry(const TomlTable& t, const std::string& key) const {
        auto it = t.entries.find(key);
        if (it == t.entries.end()) {
            fail(t.line, t.name, "missing key '" + key + "'");
        }
        return it->second;
    }

    bool has(const TomlTable& t, const std::string& key) const {
        return t.entries.count(key) != 0;
    }

    std::string need_string(const TomlTable& t, const std::string& key,
                            const std::string& section) const {
        const TomlValue& v = entry(t, key);
        if (v.type != TomlValue::Type::String) {
            fail(v.line, section, "'" + key + "' must be a string");
        }
        return v.str;
    }

    double need_number(const TomlTable& t, const std::string& key,
                       const std::string& section) const {
        const TomlValue& v = entry(t, key);
        if (v.type != TomlValue::Type::Number) {
            fail(v.line, section, "'" + key + "' must be a number");
        }
        return v.num;
    }

    long need_integer(const TomlTable& t, const std::string& key,
                      const std::string& section) const {
        const TomlValue& v = entry(t, key);
        if (v.type != TomlValue::Type::Number || !v.is_integer) {
            fail(v.line, section, "'" + key + "' must be an integer");
        }
        return static_cast<long>(v.num);
    }

    std::vector<double> numbers_in(const TomlValue& v, const std::string& section,
                                   const std::string& context) const {
        if (v.type != TomlValue::Type::Array) {
            fail(v.line, section, context + " must be an array of numbers");
        }
        std::vector<double> out;
        out.reserve(v.array.size());
        for (const TomlValue& e : v.array) {
            if (e.type != TomlValue::Type::Number) {
                fail(e.line, section, context + " must contain only numbers");
            }
            out.push_back(e.num);
        }
        return out;
    }

    /// Accepts a bare number (dimension 1) or an array of n numbers.
    Vec need_vec(const TomlTable& t, const std::string& key,
                 const std::string& section, std::size_t n) const {
        const TomlValue& v = entry(t, key);
        if (v.type == TomlValue::Type::Number) {
            if (n != 1) {
                fail(v.line, section,
                     "'" + key + "' must be an array of " + std::to_string(n) +
                         " numbers");
            }
            return Vec{v.num};
        }
        std::vector<double> nums = numbers_in(v, section, "'" + key + "'");
        if (nums.size() != n) {
            fail(v.line, section,
                 "'" + key + "' must have " + std::to_string(n) + " entries, got " +
                     std::to_string(nums.size()));
        }
        return nums;
    }

    /// A list of samples: for n = 1 a flat number list, otherwise a list of
    /// n-element arrays.
    std::vector<Vec> need_samples(const TomlValue& v, const std::string& section,
                                  std::size_t n, const std::string& context) const {
        if (v.type != TomlValue::Type::Array) {
            fail(v.line, section, context + " must be an array");
        }
        std::vector<Vec> out;
        out.reserve(v.array.size());
        for (const TomlValue& e : v.array) {
            if (e.type == TomlValue::Type::Number) {
                if (n != 1) {
                    fail(e.line, section,
                         context + " entries must be arrays of " +
                             std::to_string(n) + " numbers");
                }
                out.push_back(Vec{e.num});
            } else if (e.type == TomlValue::Type::Array) {
                std::vector<double> nums = numbers_in(e, section, context);
                if (nums.size() != n) {
                    fail(e.line, section,
                         context + " entries must have " + std::to_string(n) +
                             " components");
                }
                out.push_back(std::move(nums));
            } else {
                fail(e.line, section, context + " entries must be numeric");
            }
        }
        return out;
    }

    void check_known_keys(const TomlTable& t,
                          std::initializer_list<const char*> known) const {
        for (const auto& [key, value] : t.entries) {
            bool ok = false;
            for (const char* k : known) {
                if (key == k) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                fail(value.line, t.name, "unknown key '" + key + "'");
            }
        }
    }

    void check_known_sections() const {
        for (const TomlTable& t : doc_.tables) {
            if (t.name.empty() || t.name == "timescale" || t.name == "problem" ||
                t.name == "symmetry" || t.name == "search" ||
                t.name == "tolerances" ||
                t.name.rfind("trajectory.", 0) == 0) {
                continue;
            }
            fail(t.line, "", "unknown section [" + t.name + "]");
        }
    }

    TimeScale build_scale() {
        const TomlTable& ts = need_table("timescale");
        const std::string kind = need_string(ts, "kind", "timescale");
        try {
            if (kind == "finite") {
                check_known_keys(ts, {"kind", "points"});
                std::vector<double> pts =
                    numbers_in(entry(ts, "points"), "timescale", "'points'");
                return TimeScale::from_points(pts);
            }
            if (kind == "uniform") {
                check_known_keys(ts, {"kind", "a", "b", "h"});
                return TimeScale::uniform(need_number(ts, "a", "timescale"),
                                          need_number(ts, "b", "timescale"),
                                          need_number(ts, "h", "timescale"));
            }
            if (kind == "qscale") {
                check_known_keys(ts, {"kind", "q", "kmin", "kmax"});
                return TimeScale::qscale(
                    need_number(ts, "q", "timescale"),
                    static_cast<int>(need_integer(ts, "kmin", "timescale")),
                    static_cast<int>(need_integer(ts, "kmax", "timescale")));
            }
        } catch (const ProblemFileError&) {
            throw;
        } catch (const Error& e) {
            fail(ts.line, "timescale", e.what());
        }
        fail(entry(ts, "kind").line, "timescale",
             "kind must be \"finite\", \"uniform\" or \"qscale\"");
    }

    void build_symmetry(ProblemFileData& data) {
        TomlTable* sym = doc_.find("symmetry");
        if (sym == nullptr) return;
        check_known_keys(*sym, {"tau", "xi"});
        const std::size_t n = data.problem.dim();
        const std::string tau_src = need_string(*sym, "tau", "symmetry");
        std::vector<std::string> xi_srcs;
        const TomlValue& xi = entry(*sym, "xi");
        if (xi.type == TomlValue::Type::String) {
            if (n != 1) {
                fail(xi.line, "symmetry",
                     "'xi' must be an array of " + std::to_string(n) +
                         " expressions");
            }
            xi_srcs.push_back(xi.str);
        } else if (xi.type == TomlValue::Type::Array) {
            for (const TomlValue& e : xi.array) {
                if (e.type != TomlValue::Type::String) {
                    fail(e.line, "symmetry", "'xi' entries must be strings");
                }
                xi_srcs.push_back(e.str);
            }
        } else {
            fail(xi.line, "symmetry", "'xi' must be a string or array of strings");
        }
        try {
            data.symmetry = SymmetryGenerators::parse(tau_src, xi_srcs, n);
        } catch (const Error& e) {
            fail(sym->line, "symmetry", e.what());
        }
        data.symmetry_texts.push_back(data.symmetry->tau.text());
        for (const Expression& x : data.symmetry->xi) {
            data.symmetry_texts.push_back(x.text());
        }
    }

    void build_tolerances(ProblemFileData& data) {
        TomlTable* tol = doc_.find("tolerances");
        if (tol == nullptr) return;
        check_known_keys(*tol, {"constancy", "boundary"});
        if (has(*tol, "constancy")) {
            data.tolerances.constancy = need_number(*tol, "constancy", "tolerances");
        }
        if (has(*tol, "boundary")) {
            data.tolerances.boundary = need_number(*tol, "boundary", "tolerances");
        }
        if (data.tolerances.constancy <= 0.0 || data.tolerances.boundary <= 0.0) {
            fail(tol->line, "tolerances", "tolerances must be positive");
        }
    }

    void build_trajectories(ProblemFileData& data) {
        const TimeScale& window = data.problem.window();
        const std::size_t n = data.problem.dim();
        for (const TomlTable& t : doc_.tables) {
            if (t.name.rfind("trajectory.", 0) != 0) continue;
            const std::string name = t.name.substr(11);
            if (name.empty()) fail(t.line, t.name, "trajectory needs a name");
            check_known_keys(t, {"values", "derivs", "anchor"});
            if (has(t, "values") == has(t, "derivs")) {
                fail(t.line, t.name, "provide exactly one of 'values' or 'derivs'");
            }
            try {
                if (has(t, "values")) {
                    std::vector<Vec> samples =
                        need_samples(entry(t, "values"), t.name, n, "'values'");
                    if (samples.size() != window.size()) {
                        fail(entry(t, "values").line, t.name,
                             "expected " + std::to_string(window.size()) +
                                 " samples on [a, b], got " +
                                 std::to_string(samples.size()));
                    }
                    data.trajectories.push_back(
                        TrajectorySpec{name, GridFunction(window, std::move(samples))});
                } else {
                    std::vector<Vec> derivs =
                        need_samples(entry(t, "derivs"), t.name, n, "'derivs'");
                    Vec anchor = has(t, "anchor")
                                     ? need_vec(t, "anchor", t.name, n)
                                     : data.problem.boundary_a();
                    data.trajectories.push_back(TrajectorySpec{
                        name, reconstruct(window, anchor, derivs)});
                }
            } catch (const ProblemFileError&) {
                throw;
            } catch (const Error& e) {
                fail(t.line, t.name, e.what());
            }
        }
    }

    void build_search(ProblemFileData& data) {
        TomlTable* s = doc_.find("search");
        if (s == nullptr) return;
        check_known_keys(*s, {"alphabet", "cap", "boundary_tol"});
        SearchSpec spec;
        const std::size_t n = data.problem.dim();
        const TomlValue& alpha = entry(*s, "alphabet");
        if (alpha.type != TomlValue::Type::Array || alpha.array.empty()) {
            fail(alpha.line, "search", "'alphabet' must be a non-empty array");
        }
        if (alpha.array.front().type == TomlValue::Type::Number) {
            if (n != 1) {
                fail(alpha.line, "search",
                     "'alphabet' must list one value set per component");
            }
            spec.alphabet.per_component.push_back(
                numbers_in(alpha, "search", "'alphabet'"));
        } else {
            for (const TomlValue& e : alpha.array) {
                spec.alphabet.per_component.push_back(
                    numbers_in(e, "search", "'alphabet'"));
            }
            if (spec.alphabet.per_component.size() != n) {
                fail(alpha.line, "search",
                     "'alphabet' must list " + std::to_string(n) +
                         " value sets, got " +
                         std::to_string(spec.alphabet.per_component.size()));
            }
        }
        if (has(*s, "cap")) {
            const long cap = need_integer(*s, "cap", "search");
            if (cap < 1) fail(s->line, "search", "'cap' must be positive");
            spec.cap = static_cast<unsigned long long>(cap);
        }
        if (has(*s, "boundary_tol")) {
            spec.boundary_tol = need_number(*s, "boundary_tol", "search");
            if (spec.boundary_tol < 0.0) {
                fail(s->line, "search", "'boundary_tol' must be non-negative");
            }
        }
        data.search = std::move(spec);
    }

    TomlDoc doc_;
    std::string origin_;
};

void append_number(double x, std::string& out) { out += format_double(x); }

void append_number_list(const std::vector<double>& xs, std::string& out) {
    out += '[';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) out += ", ";
        append_number(xs[i], out);
    }
    out += ']';
}

void append_vec(const Vec& v, std::string& out) {
    if (v.size() == 1) {
        append_number(v[0], out);
    } else {
        append_number_list(v, out);
    }
}

void append_samples(const GridFunction& f, std::string& out) {
    out += '[';
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i != 0) out += ", ";
        append_vec(f.value(i), out);
    }
    out += ']';
}

}  // namespace

ProblemFileData parse_problem_file(const std::string& text,
                                   const std::string& origin) {
    TomlScanner scanner(text, origin);
    return FileBuilder(scanner.parse(), origin).build();
}

ProblemFileData load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ProblemFileError(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_file(buf.str(), path);
}

std::string write_dual_problem_file(const ProblemFileData& data) {
    const VariationalProblem dual = dual_problem(data.problem);
    std::string out;
    out += "schema = 1\n\n";

    out += "[timescale]\nkind = \"finite\"\npoints = ";
    append_number_list(dual.scale().points(), out);
    out += "\n\n";

    out += "[problem]\n";
    out += std::string("flavor = \"") + flavor_name(dual.flavor()) + "\"\n";
    out += "n = " + std::to_string(dual.dim()) + "\n";
    out += "lagrangian = \"" + dual.lagrangian().expression().text() + "\"\n";
    out += "a = ";
    append_number(dual.a(), out);
    out += "\nb = ";
    append_number(dual.b(), out);
    out += "\nA = ";
    append_number_list(dual.boundary_a(), out);
    out += "\nB = ";
    append_number_list(dual.boundary_b(), out);
    out += "\n";

    if (data.symmetry.has_value()) {
        const SymmetryGenerators transported = dual_generators(*data.symmetry);
        out += "\n[symmetry]\ntau = \"" + transported.tau.text() + "\"\nxi = [";
        for (std::size_t i = 0; i < transported.xi.size(); ++i) {
            if (i != 0) out += ", ";
            out += "\"" + transported.xi[i].text() + "\"";
        }
        out += "]\n";
    }

    for (const TrajectorySpec& spec : data.trajectories) {
        out += "\n[trajectory." + spec.name + "]\nvalues = ";
        append_samples(dual_function(spec.values), out);
        out += "\n";
    }

    if (data.search.has_value()) {
        out += "\n[search]\nalphabet = ";
        if (data.search->alphabet.per_component.size() == 1) {
            append_number_list(data.search->alphabet.per_component.front(), out);
        } else {
            out += '[';
            for (std::size_t i = 0; i < data.search->alphabet.per_component.size();
                 ++i) {
                if (i != 0) out += ", ";
                append_number_list(data.search->alphabet.per_component[i], out);
            }
            out += ']';
        }
        out += "\ncap = " + std::to_string(data.search->cap) + "\n";
        out += "boundary_tol = ";
        append_number(data.search->boundary_tol, out);
        out += "\n";
    }

    out += "\n[tolerances]\nconstancy = ";
    append_number(data.tolerances.constancy, out);
    out += "\nboundary = ";
    append_number(data.tolerances.boundary, out);
    out += "\n";
    return out;
}

}  // namespace tsvar
