#pragma once

// Text front end: the state mini-language, run configuration files and
// deterministic CSV / JSON output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "zak/conventions.hpp"
#include "zak/line_state.hpp"
#include "zak/units.hpp"

#ifndef ZAK_VERSION
#define ZAK_VERSION "0.0.0"
#endif

namespace zak {

inline const char* version() { return ZAK_VERSION; }

// ---------------------------------------------------------------------------
// state specifications
//
//   gaussian:center=C,width=W,boost=B        (absolute units)
//   basis:l=L,m=M[,conv=a|b|c]
//   file:path.csv                            (columns x,re,im; uniform x)
//   super:w1*SPEC+w2*SPEC+...                (real weights; renormalized)

class StateSpecError : public std::invalid_argument {
public:
    enum class Code { UnknownForm = 1, MalformedParameters = 2, NotNormalizable = 3 };
    StateSpecError(Code c, const std::string& what) : std::invalid_argument(what), code_(c) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v))
        throw StateSpecError(StateSpecError::Code::MalformedParameters, "malformed number for " + what + ": '" + text + "'");
    return v;
}

inline long parse_integer(const std::string& text, const std::string& what) {
    const double v = parse_number(text, what);
    if (v != std::floor(v)) throw StateSpecError(StateSpecError::Code::MalformedParameters, what + " must be an integer");
    return long(v);
}

inline std::map<std::string, std::string> parse_keyvals(const std::string& body, const std::string& form) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw StateSpecError(StateSpecError::Code::MalformedParameters, form + ": expected key=value, got '" + item + "'");
        const std::string k = trim(item.substr(0, eq));
        if (kv.count(k)) throw StateSpecError(StateSpecError::Code::MalformedParameters, form + ": duplicate key '" + k + "'");
        kv[k] = trim(item.substr(eq + 1));
    }
    return kv;
}

inline void require_keys(const std::map<std::string, std::string>& kv, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional, const std::string& form) {
    for (const auto& k : required)
        if (!kv.count(k)) throw StateSpecError(StateSpecError::Code::MalformedParameters, form + ": missing '" + k + "'");
    for (const auto& [k, v] : kv) {
        const bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                           std::find(optional.begin(), optional.end(), k) != optional.end();
        if (!known) throw StateSpecError(StateSpecError::Code::MalformedParameters, form + ": unknown key '" + k + "'");
    }
}

/// Top-level split of "w*SPEC+w*SPEC": a '+' separates terms only when a
/// weight and '*' follow it.
inline std::vector<std::string> split_terms(const std::string& s) {
    static const std::regex term_start(R"(^\s*[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?\s*\*)");
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '+' || i == 0) continue;
        const char prev = s[i - 1];
        if (prev == 'e' || prev == 'E') continue; // exponent sign
        if (std::regex_search(s.substr(i + 1), term_start)) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

inline LineState read_sampled_csv(const std::string& path, const UnitsConfig& u) {
    std::ifstream in(path);
    if (!in) throw StateSpecError(StateSpecError::Code::MalformedParameters, "file: cannot open '" + path + "'");
    std::string line;
    std::getline(in, line);
    if (trim(line) != "x,re,im")
        throw StateSpecError(StateSpecError::Code::MalformedParameters, "file: header must be 'x,re,im'");
    std::vector<double> xs;
    std::vector<cplx> vs;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw StateSpecError(StateSpecError::Code::MalformedParameters, "file: malformed row '" + line + "'");
        xs.push_back(parse_number(a, "x"));
        vs.emplace_back(parse_number(b, "re"), parse_number(c, "im"));
    }
    if (xs.size() < 4) throw StateSpecError(StateSpecError::Code::MalformedParameters, "file: need at least 4 samples");
    const double dx = (xs.back() - xs.front()) / double(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (xs.front() + dx * double(i))) > 1e-9 * std::max(1.0, std::abs(dx) * double(xs.size())))
            throw StateSpecError(StateSpecError::Code::MalformedParameters, "file: x samples must be uniformly spaced");
    if (!(dx > 0.0)) throw StateSpecError(StateSpecError::Code::MalformedParameters, "file: x must increase");
    if (LineState::trapezoid_norm2(vs, dx) <= 0.0)
        throw StateSpecError(StateSpecError::Code::NotNormalizable, "file: samples have zero norm");
    return LineState::sampled(xs.front(), dx, std::move(vs), u);
}

} // namespace detail

/// Parses a state specification; `basis` states use `conv` unless they name
/// their own convention.
inline LineState parse_state_spec(const std::string& text, Convention conv = Convention::A, const UnitsConfig& u = {}) {
    const std::string t = detail::trim(text);
    const auto colon = t.find(':');
    if (colon == std::string::npos)
        throw StateSpecError(StateSpecError::Code::UnknownForm, "state spec needs 'form:parameters', got '" + t + "'");
    const std::string form = t.substr(0, colon), body = t.substr(colon + 1);
    if (form == "gaussian") {
        const auto kv = detail::parse_keyvals(body, form);
        detail::require_keys(kv, {"width"}, {"center", "boost"}, form);
        const double width = detail::parse_number(kv.at("width"), "width");
        const double center = kv.count("center") ? detail::parse_number(kv.at("center"), "center") : 0.0;
        const double boost = kv.count("boost") ? detail::parse_number(kv.at("boost"), "boost") : 0.0;
        if (!(width > 0.0)) throw StateSpecError(StateSpecError::Code::NotNormalizable, "gaussian: width must be positive");
        return LineState::gaussian(center, width, boost, u);
    }
    if (form == "basis") {
        const auto kv = detail::parse_keyvals(body, form);
        detail::require_keys(kv, {"l", "m"}, {"conv"}, form);
        Convention c = conv;
        if (kv.count("conv")) {
            try {
                c = parse_convention(kv.at("conv"));
            } catch (const std::invalid_argument& e) {
                throw StateSpecError(StateSpecError::Code::MalformedParameters, e.what());
            }
        }
        return LineState::basis(c, detail::parse_integer(kv.at("l"), "l"), detail::parse_integer(kv.at("m"), "m"), u);
    }
    if (form == "file") return detail::read_sampled_csv(detail::trim(body), u);
    if (form == "super") {
        std::vector<std::pair<cplx, LineState>> parts;
        for (const auto& term : detail::split_terms(body)) {
            const auto star = term.find('*');
            if (star == std::string::npos)
                throw StateSpecError(StateSpecError::Code::MalformedParameters, "super: term '" + term + "' lacks 'weight*'");
            const double w = detail::parse_number(term.substr(0, star), "weight");
            parts.emplace_back(w, parse_state_spec(term.substr(star + 1), conv, u));
        }
        try {
            return LineState::superposition(std::move(parts));
        } catch (const std::invalid_argument& e) {
            throw StateSpecError(StateSpecError::Code::NotNormalizable, e.what());
        }
    }
    throw StateSpecError(StateSpecError::Code::UnknownForm, "unknown state form '" + form + "'");
}

/// Unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// run configuration: flat "key = value" lines under [section] headers

struct RunConfig {
    UnitsConfig units{};
    Convention convention = Convention::A;
    std::uint64_t seed = 20240611;
    int grid_alpha = 64, grid_beta = 64;
    int window = 64;
    std::string output_dir = ".";
    std::map<std::string, double> tolerances; ///< per-check overrides, keyed by check name

    std::string serialize() const {
        std::ostringstream o;
        o.precision(17);
        o << "[units]\nhbar = " << units.hbar() << "\nx0 = " << units.x0() << "\n\n";
        o << "[run]\nconvention = " << to_char(convention) << "\nseed = " << seed << "\ngrid = " << grid_alpha << "x"
          << grid_beta << "\nwindow = " << window << "\noutput_dir = " << output_dir << "\n";
        if (!tolerances.empty()) {
            o << "\n[tolerances]\n";
            for (const auto& [k, v] : tolerances) o << k << " = " << v << "\n";
        }
        return o.str();
    }

    static RunConfig parse(const std::string& text) {
        RunConfig c;
        std::istringstream in(text);
        std::string line, section;
        double hbar = c.units.hbar(), x0 = c.units.x0();
        int lineno = 0;
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + msg);
        };
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail("unterminated section header");
                section = detail::trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail("expected key = value");
            const std::string k = detail::trim(line.substr(0, eq)), v = detail::trim(line.substr(eq + 1));
            auto num = [&] {
                try {
                    return detail::parse_number(v, k);
                } catch (const StateSpecError& e) {
                    fail(e.what());
                }
                return 0.0;
            };
            if (section == "units") {
                if (k == "hbar") hbar = num();
                else if (k == "x0") x0 = num();
                else fail("unknown units key '" + k + "'");
            } else if (section == "run") {
                if (k == "convention") c.convention = parse_convention(v);
                else if (k == "seed") c.seed = std::stoull(v);
                else if (k == "grid") {
                    const auto x = v.find('x');
                    if (x == std::string::npos) fail("grid must be NxM");
                    c.grid_alpha = std::stoi(v.substr(0, x));
                    c.grid_beta = std::stoi(v.substr(x + 1));
                } else if (k == "window") c.window = std::stoi(v);
                else if (k == "output_dir") c.output_dir = v;
                else fail("unknown run key '" + k + "'");
            } else if (section == "tolerances") {
                const double t = num();
                if (!(t >= 0.0)) fail("tolerances must be non-negative");
                c.tolerances[k] = t;
            } else {
                fail("key outside a known section");
            }
        }
        if (c.grid_alpha < 2 || c.grid_beta < 2) throw std::invalid_argument("config: grid must be at least 2x2");
        if (c.window < 6) throw std::invalid_argument("config: window must be at least 6");
        c.units = UnitsConfig(hbar, x0);
        return c;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }
};

// ---------------------------------------------------------------------------
// output

/// Shortest round-trip decimal form, identical across runs.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) : out_(path), ncols_(columns.size()) {
        if (!out_) throw IoError("cannot write '" + path + "'");
        for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        if (values.size() != ncols_) throw std::logic_error("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }

private:
    std::ofstream out_;
    std::size_t ncols_;
};

inline nlohmann::ordered_json units_json(const UnitsConfig& u) {
    return {{"hbar", u.hbar()}, {"x0", u.x0()}, {"p0", u.p0()}};
}

inline void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

/// "<path>.json" next to a data file.
inline std::string sidecar_path(const std::string& data_path) {
    const auto dot = data_path.rfind('.');
    const auto slash = data_path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return data_path + ".json";
    return data_path.substr(0, dot) + ".json";
}

} // namespace zak
