// zak: command-line front end for the periodic and discrete Zak bases.

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zak/zak.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { Ok = 0, CheckFailed = 1, Usage = 2, Convergence = 3 };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::string config_path;
    std::string units;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

zak::RunConfig resolve_config(const Globals& g) {
    zak::RunConfig cfg = g.config_path.empty() ? zak::RunConfig{} : zak::RunConfig::load(g.config_path);
    if (g.seed_given) cfg.seed = g.seed;
    if (!g.units.empty()) {
        double hbar = cfg.units.hbar(), x0 = cfg.units.x0();
        std::stringstream ss(g.units);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("--units expects key=value, got '" + item + "'");
            const std::string k = zak::detail::trim(item.substr(0, eq));
            const double v = zak::detail::parse_number(item.substr(eq + 1), k);
            if (k == "x0") x0 = v;
            else if (k == "hbar") hbar = v;
            else throw UsageError("--units: unknown key '" + k + "' (p0 is derived from hbar and x0)");
        }
        cfg.units = zak::UnitsConfig(hbar, x0);
    }
    return cfg;
}

std::pair<int, int> parse_pair(const std::string& text, char sep, const std::string& what) {
    const auto at = text.find(sep);
    if (at == std::string::npos) throw UsageError(what + " must look like N" + sep + "M");
    const long a = zak::detail::parse_integer(text.substr(0, at), what);
    const long b = zak::detail::parse_integer(text.substr(at + 1), what);
    if (a < 1 || b < 1) throw UsageError(what + " entries must be positive");
    return {int(a), int(b)};
}

/// Centred index range with n entries: [-(n/2), n - 1 - n/2].
std::pair<long, long> centred_range(int n) { return {-(n / 2), n - 1 - n / 2}; }

json sidecar(const std::string& command, zak::Convention c, const zak::UnitsConfig& u) {
    return {{"tool", "zak"}, {"version", zak::version()}, {"command", command},
            {"convention", std::string(1, zak::to_char(c))}, {"units", zak::units_json(u)}};
}

void print_row_table(const std::vector<zak::CheckRow>& rows) {
    std::size_t wn = 4, wi = 8;
    for (const auto& r : rows) {
        wn = std::max(wn, r.name.size());
        wi = std::max(wi, r.identity.size());
    }
    std::printf("%-*s  %-*s  %12s  %10s  %s\n", int(wn), "name", int(wi), "identity", "max residual", "tolerance", "result");
    for (const auto& r : rows)
        std::printf("%-*s  %-*s  %12.3e  %10.1e  %s\n", int(wn), r.name.c_str(), int(wi), r.identity.c_str(), r.residual,
                    r.tolerance, r.pass() ? "PASS" : "FAIL");
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

} // namespace

namespace cmd {

int chi(zak::Convention c, double alpha, double beta) {
    const zak::cplx v = zak::chi(c, alpha, beta);
    std::printf("%s,%s\n", zak::fmt(v.real()).c_str(), zak::fmt(v.imag()).c_str());
    return Ok;
}

int kernel(const zak::RunConfig& cfg, zak::Convention c, double lo, double hi, int samples, const std::string& out) {
    const auto table = zak::kernel_table(c, lo, hi, samples);
    if (out.empty()) {
        std::printf("gamma,lambda,mu\n");
        for (const auto& s : table)
            std::printf("%s,%s,%s\n", zak::fmt(s.gamma).c_str(), zak::fmt(s.lambda).c_str(), zak::fmt(s.mu).c_str());
        return Ok;
    }
    zak::CsvWriter w(out, {"gamma", "lambda", "mu"});
    for (const auto& s : table) w.row({s.gamma, s.lambda, s.mu});
    json j = sidecar("kernel", c, cfg.units);
    j["gamma_range"] = {lo, hi};
    j["samples"] = samples;
    zak::write_json(zak::sidecar_path(out), j);
    return Ok;
}

int transform(const zak::RunConfig& cfg, zak::Convention c, const std::string& spec, int na, int nb, const std::string& out) {
    const zak::LineState s = zak::parse_state_spec(spec, c, cfg.units);
    const zak::TorusField f = zak::zak_forward(s, c, na, nb);
    zak::CsvWriter w(out, {"alpha", "beta", "re", "im"});
    for (int i = 0; i < f.n_alpha; ++i)
        for (int k = 0; k < f.n_beta; ++k) w.row({f.alpha(i), f.beta(k), f.at(i, k).real(), f.at(i, k).imag()});
    json j = sidecar("transform", c, cfg.units);
    j["state"] = spec;
    j["grid"] = {{"n_alpha", na}, {"n_beta", nb}, {"placement", "cell centres of [-pi,pi)^2"}};
    j["truncation_k"] = f.truncation_k < 0 ? json("accelerated") : json(f.truncation_k);
    j["norm_squared"] = f.norm_squared();
    zak::write_json(zak::sidecar_path(out), j);
    return Ok;
}

zak::DiscreteZakCoeffs window_coeffs(const zak::LineState& s, zak::Convention c, int nl, int nm) {
    const auto [l_lo, l_hi] = centred_range(nl);
    const auto [m_lo, m_hi] = centred_range(nm);
    return zak::coeffs_extract(s, c, l_lo, l_hi, m_lo, m_hi);
}

json window_json(const zak::DiscreteZakCoeffs& d) {
    return {{"l", {d.l_lo, d.l_hi}}, {"m", {d.m_lo, d.m_hi}}};
}

int coeffs(const zak::RunConfig& cfg, zak::Convention c, const std::string& spec, int nl, int nm, const std::string& out) {
    const zak::LineState s = zak::parse_state_spec(spec, c, cfg.units);
    const auto d = window_coeffs(s, c, nl, nm);
    zak::CsvWriter w(out, {"l", "m", "re", "im"});
    for (long l = d.l_lo; l <= d.l_hi; ++l)
        for (long m = d.m_lo; m <= d.m_hi; ++m) w.row({double(l), double(m), d.at(l, m).real(), d.at(l, m).imag()});
    json j = sidecar("coeffs", c, cfg.units);
    j["state"] = spec;
    j["window"] = window_json(d);
    j["weight"] = d.weight();
    zak::write_json(zak::sidecar_path(out), j);
    return Ok;
}

std::string contours_path(const std::string& out) {
    const std::string side = zak::sidecar_path(out);
    return side.substr(0, side.size() - 5) + ".contours.json";
}

int wigner(const zak::RunConfig& cfg, zak::Convention c, long l, long m, const zak::Window2D& win, int nx, int np,
           const std::string& out, bool contours) {
    const zak::WignerMap map = zak::wigner_map(c, l, m, win, nx, np);
    zak::CsvWriter w(out, {"x_over_x0", "p_over_p0", "w"});
    for (std::size_t i = 0; i < map.x_grid.size(); ++i)
        for (std::size_t k = 0; k < map.p_grid.size(); ++k) w.row({map.x_grid[i], map.p_grid[k], map.at(i, k)});
    json j = sidecar("wigner", c, cfg.units);
    j["l"] = l;
    j["m"] = m;
    j["window"] = {{"x_over_x0", {win.x_lo, win.x_hi}}, {"p_over_p0", {win.p_lo, win.p_hi}}};
    j["resolution"] = {nx, np};
    j["min"] = map.min();
    j["max"] = map.max();
    zak::write_json(zak::sidecar_path(out), j);
    if (contours) {
        json levels = json::array();
        for (double level : map.contour_levels) {
            json lines = json::array();
            for (const auto& s : zak::contour_segments(map, level))
                lines.push_back(json::array({json::array({s.from[0], s.from[1]}), json::array({s.to[0], s.to[1]})}));
            levels.push_back({{"level", level}, {"polylines", lines}});
        }
        json cj = sidecar("wigner --contours", c, cfg.units);
        cj["levels"] = levels;
        zak::write_json(contours_path(out), cj);
    }
    return Ok;
}

int qubits(const zak::RunConfig& cfg, zak::Convention c, const std::string& spec, int nl, int nm, const std::string& out) {
    const zak::LineState s = zak::parse_state_spec(spec, c, cfg.units);
    const auto d = window_coeffs(s, c, nl, nm);
    const auto e = zak::pauli_expectations(d);
    const auto rho = zak::assemble_rho(e);
    const auto rep = zak::entanglement_verdict(rho);
    json j = sidecar("qubits", c, cfg.units);
    j["state"] = spec;
    j["window"] = window_json(d);
    j["a_vec"] = e.a_vec;
    j["b_vec"] = e.b_vec;
    j["T"] = e.T;
    json re = json::array(), im = json::array();
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) {
            re.push_back(rho.rho(r, k).real());
            im.push_back(rho.rho(r, k).imag());
        }
    j["rho"] = {{"re", re}, {"im", im}};
    j["min_pt_eigenvalue"] = rep.min_pt_eigenvalue;
    j["min_eigenvalue"] = rep.min_eigenvalue;
    j["verdict"] = zak::to_string(rep.verdict);
    j["leakage"] = e.leakage;
    zak::write_json(out, j);
    std::printf("verdict: %s (min partial-transpose eigenvalue %.12g)\n", zak::to_string(rep.verdict).c_str(),
                rep.min_pt_eigenvalue);
    return Ok;
}

int verify_operators(const zak::RunConfig& cfg, zak::Convention c, int n) {
    if (n < 6) throw UsageError("--window must be at least 6");
    const auto w = zak::OperatorWindow::centred(n);
    zak::CheckContext ctx{cfg.seed, cfg.tolerances};
    std::vector<zak::CheckRow> rows;
    int k = 0;
    for (const auto& r : zak::commutation_residuals(w)) {
        const std::string name = "operators.commutation." + std::to_string(++k);
        rows.push_back({name, r.identity, r.residual, ctx.tol(name, 0.0)});
    }
    k = 0;
    for (const auto& r : zak::pauli_algebra_check(w)) {
        const std::string name = "operators.pauli." + std::to_string(++k);
        rows.push_back({name, r.identity, r.residual, ctx.tol(name, 0.0)});
    }
    std::printf("convention %c, window %dx%d (interior rows only)\n", zak::to_char(c), n, n);
    print_row_table(rows);
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const zak::CheckRow& r) { return r.pass(); });
    return ok ? Ok : CheckFailed;
}

int verify(const zak::RunConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(cfg.output_dir)) throw zak::IoError("output directory '" + cfg.output_dir + "' does not exist");
    const zak::CheckContext ctx{cfg.seed, cfg.tolerances};
    const auto& checks = zak::all_checks();
    std::vector<std::future<zak::CriterionReport>> jobs;
    for (std::size_t i = 0; i < checks.size(); ++i)
        jobs.push_back(std::async(std::launch::async, [&, i] { return zak::run_check(checks[i], ctx, int(i) + 1); }));
    std::vector<zak::CriterionReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());

    std::vector<zak::CheckRow> rows;
    for (const auto& r : reports) rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    std::sort(rows.begin(), rows.end(), [](const zak::CheckRow& a, const zak::CheckRow& b) { return a.name < b.name; });

    std::printf("seed %llu\n", static_cast<unsigned long long>(cfg.seed));
    print_row_table(rows);
    std::printf("\n");
    bool ok = true;
    for (const auto& r : reports) {
        std::printf("criterion %2d  %-52s %s\n", r.number, r.title.c_str(), r.pass() ? "PASS" : "FAIL");
        ok = ok && r.pass();
    }

    const std::string csv = (fs::path(cfg.output_dir) / "verify.csv").string();
    std::ofstream out(csv);
    if (!out) throw zak::IoError("cannot write '" + csv + "'");
    out << "name,identity,max_residual,tolerance,result\n";
    for (const auto& r : rows)
        out << r.name << "," << csv_quote(r.identity) << "," << zak::fmt(r.residual) << "," << zak::fmt(r.tolerance) << ","
            << (r.pass() ? "PASS" : "FAIL") << "\n";
    json j = sidecar("verify", cfg.convention, cfg.units);
    j["seed"] = cfg.seed;
    j["checks"] = rows.size();
    j["failed"] = std::count_if(rows.begin(), rows.end(), [](const zak::CheckRow& r) { return !r.pass(); });
    zak::write_json(zak::sidecar_path(csv), j);
    return ok ? Ok : CheckFailed;
}

} // namespace cmd

int main(int argc, char** argv) {
    CLI::App app{"Periodic and discrete Zak bases: transforms, Wigner maps, torus operators, qubits"};
    app.set_version_flag("--version", std::string(zak::version()));
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "Run configuration file");
    app.add_option("--seed", g.seed, "Seed for random test points")->each([&](const std::string&) { g.seed_given = true; });
    app.add_option("--units", g.units, "Units, e.g. x0=2.5 or hbar=1,x0=2.5 (p0 = 2 pi hbar/x0)");

    std::string conv = "a", spec, out, window_lm = "8,8", grid = "64x64", window_w, res = "201x201";
    double alpha = 0, beta = 0, gmin = -8 * zak::pi, gmax = 8 * zak::pi;
    int samples = 1601, op_window = 64;
    long l = 0, m = 0;
    bool contours = false;
    auto conv_opt = [&](CLI::App* s) {
        s->add_option("--convention", conv, "Phase convention a, b or c")->check(CLI::IsMember({"a", "b", "c", "A", "B", "C"}));
    };

    auto* chi = app.add_subcommand("chi", "Evaluate the phase function chi(alpha, beta)");
    conv_opt(chi);
    chi->add_option("--alpha", alpha)->required();
    chi->add_option("--beta", beta)->required();

    auto* kernel = app.add_subcommand("kernel", "Tabulate lambda and mu");
    conv_opt(kernel);
    kernel->add_option("--gamma-min", gmin);
    kernel->add_option("--gamma-max", gmax);
    kernel->add_option("--samples", samples)->check(CLI::Range(2, 10000000));
    kernel->add_option("--out", out, "CSV file (default: stdout)");

    auto* transform = app.add_subcommand("transform", "Sample the Zak transform on the torus");
    conv_opt(transform);
    transform->add_option("--state", spec)->required();
    transform->add_option("--grid", grid, "NxM cell-centre grid");
    transform->add_option("--out", out)->required();

    auto* coeffs = app.add_subcommand("coeffs", "Discrete Zak coefficients on a centred window");
    conv_opt(coeffs);
    coeffs->add_option("--state", spec)->required();
    coeffs->add_option("--window", window_lm, "L,M: numbers of l and m values");
    coeffs->add_option("--out", out)->required();

    auto* wig = app.add_subcommand("wigner", "Wigner function map of |l,m>");
    conv_opt(wig);
    wig->add_option("--l", l);
    wig->add_option("--m", m);
    wig->add_option("--window", window_w, "X0,X1,P0,P1 in units of x0 and p0")->required();
    wig->add_option("--res", res, "NxM samples");
    wig->add_option("--out", out)->required();
    wig->add_flag("--contours", contours, "Also write level 0 and 1 contours");

    auto* qb = app.add_subcommand("qubits", "Two-qubit state read off the coefficients");
    conv_opt(qb);
    qb->add_option("--state", spec)->required();
    qb->add_option("--window", window_lm, "L,M: numbers of l and m values");
    qb->add_option("--out", out)->required();

    auto* vops = app.add_subcommand("verify-operators", "Residuals of the torus operator identities");
    conv_opt(vops);
    vops->add_option("--window", op_window, "Window size N (N x N)");

    auto* ver = app.add_subcommand("verify", "Run every acceptance check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        const zak::RunConfig cfg = resolve_config(g);
        const zak::Convention c =
            std::any_of(app.get_subcommands().begin(), app.get_subcommands().end(),
                        [](CLI::App* s) { return s->count("--convention") > 0; })
                ? zak::parse_convention(conv)
                : cfg.convention;
        if (chi->parsed()) return cmd::chi(c, alpha, beta);
        if (kernel->parsed()) return cmd::kernel(cfg, c, gmin, gmax, samples, out);
        if (transform->parsed()) {
            const auto [na, nb] = parse_pair(grid, 'x', "--grid");
            return cmd::transform(cfg, c, spec, na, nb, out);
        }
        if (coeffs->parsed()) {
            const auto [nl, nm] = parse_pair(window_lm, ',', "--window");
            return cmd::coeffs(cfg, c, spec, nl, nm, out);
        }
        if (wig->parsed()) {
            std::vector<double> v;
            std::stringstream ss(window_w);
            std::string item;
            while (std::getline(ss, item, ',')) v.push_back(zak::detail::parse_number(item, "--window"));
            if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2])) throw UsageError("--window must be X0,X1,P0,P1 with X0<X1, P0<P1");
            const auto [nx, np] = parse_pair(res, 'x', "--res");
            return cmd::wigner(cfg, c, l, m, {v[0], v[1], v[2], v[3]}, nx, np, out, contours);
        }
        if (qb->parsed()) {
            const auto [nl, nm] = parse_pair(window_lm, ',', "--window");
            return cmd::qubits(cfg, c, spec, nl, nm, out);
        }
        if (vops->parsed()) return cmd::verify_operators(cfg, c, op_window);
        if (ver->parsed()) return cmd::verify(cfg);
    } catch (const zak::ConvergenceError& e) {
        std::fprintf(stderr, "zak: numerical convergence failure: %s\n", e.what());
        return Convergence;
    } catch (const zak::StateSpecError& e) {
        std::fprintf(stderr, "zak: state spec error %d: %s\n", int(e.code()), e.what());
        return Usage;
    } catch (const zak::IoError& e) {
        std::fprintf(stderr, "zak: filesystem error: %s\n", e.what());
        return Usage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "zak: %s\n", e.what());
        return Usage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "zak: %s\n", e.what());
        return Usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "zak: %s\n", e.what());
        return Convergence;
    }
    return Usage;
}
