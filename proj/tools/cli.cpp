#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eisenstein/bilinear.hpp"
#include "eisenstein/congruence_roots.hpp"
#include "eisenstein/large_sieve.hpp"
#include "eisenstein/poisson.hpp"
#include "eisenstein/sieve_sums.hpp"
#include "eisenstein/smooth_window.hpp"

namespace eis::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<double> x, dmax, M, N, y, pmax;
    std::optional<u64> d;
    double delta = 0.2;
    double tol = 1e-6;
    u64 trials = 50;
    u64 kmax = 1u << 16;
    u64 seed = 42;
    std::optional<u64> grid;
    std::string out;
    std::string format = "json";
    std::string convention = "corrected";
    bool timings = false;
    bool with_T = false;
};

u64 to_count(double v, const char* flag) {
    if (!std::isfinite(v) || v < 1 || v != std::floor(v) || v > 9.007199254740992e15)
        throw UsageError(std::string("--") + flag + " must be a positive integer (got " + std::to_string(v) + ")");
    return static_cast<u64>(v);
}

std::string num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string num(u64 v) { return std::to_string(v); }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::string s;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) s += ',';
                s += cells[i];
            }
            s += "\r\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        return s;
    }
};

struct Result {
    json body = json::object();
    Table table;
    bool within_tolerance = true;
};

ThreeAdicConvention parse_convention(const std::string& s) {
    return s == "uniform" ? ThreeAdicConvention::uniform : ThreeAdicConvention::corrected;
}

// 10, 100, ... up to top, then top itself if it is not a power of ten.
std::vector<u64> decades(u64 first, u64 top) {
    std::vector<u64> out;
    for (u64 v = first; v <= top; v *= 10) out.push_back(v);
    if (out.empty() || out.back() != top) out.push_back(top);
    return out;
}

Result cmd_theorem(const Options& o, json& config) {
    const u64 x = to_count(o.x.value_or(1e6), "x");
    const u64 pmax = to_count(o.pmax.value_or(1e6), "pmax");
    if (pmax < 5) throw UsageError("--pmax must be at least 5");
    config["x"] = x;
    config["pmax"] = pmax;
    auto table = build_table(x);
    auto Hc = singular_series_H(pmax, ThreeAdicConvention::corrected);
    auto Hp = singular_series_H(pmax, ThreeAdicConvention::uniform);
    auto grid = x >= 10 ? decades(10, x) : std::vector<u64>{x};
    auto rows = theorem_convergence(table, grid, Hc.H);
    auto cal = calibrate_kappa(table, x);

    Result r;
    r.body["kappa_calibration"] = {{"candidates", cal.candidates}, {"residuals", cal.residuals}, {"chosen", cal.chosen}};
    r.body["H"] = {{"corrected", Hc.H}, {"uniform", Hp.H}};
    r.table.header = {"x", "A", "S", "H", "ratio"};
    json jrows = json::array();
    for (const auto& t : rows) {
        const double ratio_uniform = t.A > 0 ? t.S / (Hp.H * t.A) : 0.0;
        jrows.push_back({{"x", t.x}, {"A", t.A}, {"S", t.S}, {"H", t.H}, {"ratio", t.ratio}, {"ratio_uniform", ratio_uniform}});
        r.table.rows.push_back({num(t.x), num(t.A), num(t.S), num(t.H), num(t.ratio)});
        if (!std::isfinite(t.ratio) || !(t.ratio > 0)) r.within_tolerance = false;
    }
    r.body["rows"] = jrows;
    return r;
}

Result cmd_remainders(const Options& o, json& config) {
    const u64 x = to_count(o.x.value_or(1e5), "x");
    const u64 D = o.dmax ? to_count(*o.dmax, "dmax") : std::max<u64>(1, isqrt(x));
    const u64 grid = o.grid.value_or(32);
    if (grid == 0) throw UsageError("--grid must be positive");
    const auto conv = parse_convention(o.convention);
    config["x"] = x;
    config["dmax"] = D;
    config["grid"] = grid;
    config["convention"] = to_string(conv);
    config["with_T"] = o.with_T;
    auto table = build_table(x);
    auto rep = remainder_R(table, x, D, grid, conv);

    Result r;
    r.body["R"] = rep.R;
    r.body["ratio"] = rep.ratio;
    r.body["y_at_sup"] = rep.y_at_sup;
    json sup = json::array();
    for (std::size_t j = 0; j < rep.y_grid.size(); ++j) sup.push_back({{"y", rep.y_grid[j]}, {"sum_abs_r", rep.abs_sums[j]}});
    r.body["grid"] = sup;
    if (o.with_T) {
        if (auto w = t_window(x, D)) {
            auto scan = T_scan(table, x, D);
            r.body["T"] = {{"z_lo", w->first}, {"z_hi", w->second}, {"max", scan.value}, {"z_at_max", scan.z_at_max}};
        } else {
            r.body["T"] = nullptr;
        }
    }
    r.table.header = {"d", "A_d", "M_d", "r_d"};
    json jrows = json::array();
    for (const auto& row : rep.rows) {
        jrows.push_back({{"d", row.d}, {"A_d", row.A_d}, {"M_d", row.M_d}, {"r_d", row.r_d}});
        r.table.rows.push_back({num(row.d), num(row.A_d), num(row.M_d), num(row.r_d)});
    }
    r.body["rows"] = jrows;
    return r;
}

Result cmd_spacing(const Options& o, json& config) {
    const u64 D = to_count(o.dmax.value_or(1000), "dmax");
    config["dmax"] = D;
    auto s = spacing_min_gap(D);
    Result r;
    r.table.header = {"D", "points", "min_gap", "scaled"};
    if (s) {
        r.body["points"] = s->points;
        r.body["min_gap"] = s->min_gap;
        r.body["scaled"] = s->scaled;
        r.table.rows.push_back({num(D), num(static_cast<u64>(s->points)), num(s->min_gap), num(s->scaled)});
    } else {
        r.body["points"] = 0;
        r.body["min_gap"] = nullptr;
        r.body["scaled"] = nullptr;
    }
    return r;
}

Result cmd_poisson(const Options& o, json& config) {
    const u64 x = to_count(o.x.value_or(1e4), "x");
    const double y = o.y.value_or(transition_width(static_cast<double>(x), 2.0));
    config["x"] = x;
    config["y"] = y;
    config["tol"] = o.tol;
    config["kmax"] = o.kmax;
    SmoothWindow w(static_cast<double>(x), y);
    std::vector<u64> ds;
    if (o.d) {
        ds.push_back(*o.d);
        config["d"] = *o.d;
    } else {
        const u64 dmax = to_count(o.dmax.value_or(50), "dmax");
        config["dmax"] = dmax;
        for (u64 d = 1; d <= dmax; d += 2)
            if (rho(4 * d) > 0) ds.push_back(d);
    }
    Result r;
    r.table.header = {"d", "K", "residual"};
    json jrows = json::array();
    for (u64 d : ds) {
        auto p = poisson_residual(d, w, o.tol, 32, o.kmax);
        jrows.push_back({{"d", d}, {"K", p.K}, {"residual", p.residual}, {"lhs", p.lhs}, {"rhs", p.rhs},
                         {"converged", p.converged}, {"quadrature_error", p.quad_error}});
        r.table.rows.push_back({num(d), num(p.K), num(p.residual)});
        if (!p.converged || p.residual >= o.tol) r.within_tolerance = false;
    }
    r.body["rows"] = jrows;
    return r;
}

Result cmd_large_sieve(const Options& o, json& config) {
    const u64 Dmax = to_count(o.dmax.value_or(1000), "dmax");
    const u64 Nmax = to_count(o.N.value_or(1000), "N");
    if (o.trials == 0) throw UsageError("--trials must be positive");
    config["dmax"] = Dmax;
    config["N"] = Nmax;
    config["trials"] = o.trials;
    config["seed"] = o.seed;
    config["generator"] = "mt19937_64, trial t seeded with seed + t";
    Result r;
    r.table.header = {"D", "N", "ratio"};
    json jrows = json::array();
    for (u64 D : decades(std::min<u64>(100, Dmax), Dmax)) {
        for (u64 N : decades(std::min<u64>(100, Nmax), Nmax)) {
            auto rep = large_sieve_ratio(D, N, o.trials, o.seed);
            jrows.push_back({{"D", D}, {"N", N}, {"ratio", rep.max.l2}, {"l1_ratio", rep.max.l1},
                             {"rho_h_ratio", rep.max.rho_h}});
            r.table.rows.push_back({num(D), num(N), num(rep.max.l2)});
        }
    }
    r.body["rows"] = jrows;
    return r;
}

Result cmd_bilinear(const Options& o, json& config) {
    const u64 Nmax = to_count(o.N.value_or(1e4), "N");
    if (!(o.delta > 0) || !(o.delta < 1)) throw UsageError("--delta must lie in (0, 1)");
    std::optional<u64> Mfixed;
    if (o.M) Mfixed = to_count(*o.M, "M");
    config["N"] = Nmax;
    if (Mfixed)
        config["M"] = *Mfixed;
    else
        config["delta"] = o.delta;
    auto Ns = decades(std::min<u64>(1000, Nmax), Nmax);
    auto M_of = [&](u64 N) {
        return Mfixed ? *Mfixed
                      : std::max<u64>(1, static_cast<u64>(std::llround(std::pow(static_cast<double>(N), o.delta))));
    };
    u64 need = 0;
    for (u64 N : Ns) need = std::max(need, 4 * M_of(N) * N);
    auto table = build_table(need);

    Result r;
    r.table.header = {"N", "M", "B1_over_MN"};
    json jrows = json::array();
    for (u64 N : Ns) {
        const u64 M = M_of(N);
        auto rep = bilinear_B(M, N, 2 * M, 2 * N, table);
        json row = {{"N", N}, {"M", M}, {"B1_over_MN", rep.b1_over_MN}, {"B1", rep.b1},
                    {"B1_coprime", rep.b1_coprime}, {"B1_coprime_eisenstein", rep.b1_coprime_eis},
                    {"B2", rep.b2}, {"B3", rep.b3}};
        row["B3_pairs"] = rep.b3_pairs ? json(*rep.b3_pairs) : json(nullptr);
        row["degenerate_pairs"] = rep.degenerate ? json(*rep.degenerate) : json(nullptr);
        jrows.push_back(row);
        r.table.rows.push_back({num(N), num(M), num(rep.b1_over_MN)});
        const double scale = std::max(1.0, std::abs(rep.b1_coprime));
        if (std::abs(rep.b1_coprime - rep.b1_coprime_eis) > 1e-9 * scale) r.within_tolerance = false;
    }
    r.body["delta_convention"] = "integer b1*a2 - a1*b2";
    r.body["rows"] = jrows;
    return r;
}

Result cmd_euler(const Options& o, json& config) {
    const u64 pmax = to_count(o.pmax.value_or(1e6), "pmax");
    if (pmax < 5) throw UsageError("--pmax must be at least 5");
    config["pmax"] = pmax;
    Result r;
    r.table.header = {"p_max", "convention", "H", "H_raw", "limit", "tail_bound"};
    json jrows = json::array();
    for (auto conv : {ThreeAdicConvention::corrected, ThreeAdicConvention::uniform}) {
        auto s = singular_series_H(pmax, conv);
        jrows.push_back({{"convention", to_string(conv)}, {"H", s.H}, {"H_raw", s.H_raw}, {"limit", s.limit},
                         {"tail_bound", s.tail_bound}});
        r.table.rows.push_back({num(pmax), to_string(conv), num(s.H), num(s.H_raw), num(s.limit), num(s.tail_bound)});
    }
    r.body["rows"] = jrows;
    return r;
}

Result cmd_roots(const Options& o, json& config) {
    if (!o.d || *o.d == 0) throw UsageError("roots requires --d >= 1");
    const u64 d = *o.d;
    config["d"] = d;
    auto rs = roots_mod(d);
    Result r;
    r.body["d"] = d;
    r.body["rho"] = rs.rho();
    r.body["roots"] = rs.roots;
    r.table.header = {"d", "root", "r", "s"};
    json reps = json::array();
    for (u64 v : rs.roots) {
        std::vector<std::string> row = {num(d), num(v), "", ""};
        if (d % 2 == 1) {
            try {
                auto rep = root_to_rep(d, v);
                reps.push_back({{"root", v}, {"r", rep.r}, {"s", rep.s}});
                row[2] = std::to_string(rep.r);
                row[3] = std::to_string(rep.s);
            } catch (const not_found_error&) {
                // non-primitive roots (3 | d) have no primitive representation
            }
        }
        r.table.rows.push_back(row);
    }
    r.body["representations"] = reps;
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical experiments for primes of the form l^2 - l m + m^2 with prime trace", kToolName};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Report path (default: standard output)");
        sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--timings", o.timings, "Embed wall-clock timing in the report");
    };
    auto opt_x = [&](CLI::App* sub, const char* help) { sub->add_option("--x", o.x, help); };

    auto* theorem = app.add_subcommand("theorem", "S(x), A(x), H and S/(H A) on a decade grid up to x");
    opt_x(theorem, "Largest x (default 1e6)");
    theorem->add_option("--pmax", o.pmax, "Euler product truncation (default 1e6)");
    common(theorem);

    auto* remainders = app.add_subcommand("remainders", "r_d = A_d - M_d and R(x; D)");
    opt_x(remainders, "x (default 1e5)");
    remainders->add_option("--dmax", o.dmax, "D (default floor(sqrt(x)))");
    remainders->add_option("--grid", o.grid, "Points in the geometric y-grid (default 32)");
    remainders->add_option("--convention", o.convention, "Main term at moduli divisible by 3")
        ->check(CLI::IsMember({"corrected", "uniform"}));
    remainders->add_flag("--with-T", o.with_T, "Also scan the bilinear remainder T over its z-window");
    common(remainders);

    auto* spacing = app.add_subcommand("spacing", "Minimal gap between v/d, 4D < d <= 9D");
    spacing->add_option("--dmax", o.dmax, "D (default 1000)");
    common(spacing);

    auto* poisson = app.add_subcommand("poisson", "Poisson summation residuals for A_d(f)");
    opt_x(poisson, "x (default 1e4)");
    poisson->add_option("--y", o.y, "Transition width (default min(x^{3/4} 2^{1/4}, x/2))");
    poisson->add_option("--d", o.d, "Single modulus");
    poisson->add_option("--dmax", o.dmax, "All odd d <= dmax with roots mod 4d (default 50)");
    poisson->add_option("--tol", o.tol, "Residual threshold for exit code 2 (default 1e-6)");
    poisson->add_option("--kmax", o.kmax, "Largest frequency before giving up (default 65536)");
    common(poisson);

    auto* sieve = app.add_subcommand("large-sieve", "Large-sieve ratios over a decade grid of D and N");
    sieve->add_option("--dmax", o.dmax, "Largest D (default 1000)");
    sieve->add_option("--N", o.N, "Largest N (default 1000)");
    sieve->add_option("--trials", o.trials, "Random trials per cell (default 50)");
    sieve->add_option("--seed", o.seed, "Base seed (default 42)");
    common(sieve);

    auto* bilinear = app.add_subcommand("bilinear", "B1(M, N)/(MN) decay and the Z[w] forms");
    bilinear->add_option("--N", o.N, "Largest N (default 1e4)");
    bilinear->add_option("--M", o.M, "Fixed M (default N^delta)");
    bilinear->add_option("--delta", o.delta, "Exponent in M = N^delta (default 0.2)");
    common(bilinear);

    auto* euler = app.add_subcommand("euler", "Singular series H under both 3-adic conventions");
    euler->add_option("--pmax", o.pmax, "Truncation (default 1e6)");
    common(euler);

    auto* roots = app.add_subcommand("roots", "Roots of v^2 + 3 mod d and their representations");
    roots->add_option("--d", o.d, "Modulus")->required();
    common(roots);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    json config = json::object();
    config["format"] = o.format;
    if (!o.out.empty()) config["out"] = o.out;

    Result result;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        static const std::map<std::string, std::function<Result(const Options&, json&)>> handlers = {
            {"theorem", cmd_theorem},   {"remainders", cmd_remainders},   {"spacing", cmd_spacing},
            {"poisson", cmd_poisson},   {"large-sieve", cmd_large_sieve}, {"bilinear", cmd_bilinear},
            {"euler", cmd_euler},       {"roots", cmd_roots},
        };
        result = handlers.at(name)(o, config);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << sub->help();
        return kUsage;
    } catch (const capacity_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json report = json::object();
    report["tool"] = kToolName;
    report["version"] = kVersion;
    report["subcommand"] = name;
    report["config"] = config;
    report["kappa"] = kKappa;
    report["within_tolerance"] = result.within_tolerance;
    for (auto& [k, v] : result.body.items()) report[k] = v;
    if (o.timings) report["timing_s"] = seconds;
    err << name << ": " << seconds << " s\n";

    try {
        if (o.format == "csv") {
            std::string text = result.table.render();
            if (o.out.empty()) {
                out << text;
            } else {
                write_file(o.out, text);
                write_file(o.out + ".manifest.json", report.dump(2) + "\n");
            }
        } else {
            std::string text = report.dump(2) + "\n";
            if (o.out.empty())
                out << text;
            else
                write_file(o.out, text);
        }
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return result.within_tolerance ? kOk : kTolerance;
}

}  // namespace eis::cli
