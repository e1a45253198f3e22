// qdl: third-moment statistics of qudit Clifford orbits.
//
// Subcommands:
//   tables   reproduce the reference tables (primitive roots, tilde_g^2,
//            exact-design sets) as CSV
//   sigma    dump the Sigma(d) catalog as CSV
//   moments  closed-form moment summary of one orbit or ensemble
//   sweep    grids of (d, n, k) for the main figures of merit
//   design   exact/approximate 3-design recipes
//   verify   oracle-vs-analytic verification suites
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include "qdl/designs.hpp"
#include "qdl/moments.hpp"
#include "qdl/verify.hpp"

#include <atomic>
#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

int env_threads() {
    const char* raw = std::getenv("QDL_THREADS");
    if (!raw) return 1;
    const int v = std::atoi(raw);
    return v > 0 ? v : 1;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto dash = tok.find('-', 1);
        if (dash != std::string::npos) {
            const int lo = std::stoi(tok.substr(0, dash));
            const int hi = std::stoi(tok.substr(dash + 1));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else if (!tok.empty()) {
            out.push_back(std::stoi(tok));
        }
    }
    return out;
}

std::vector<qdl::CubicFunction> parse_spec(const std::string& text, int d) {
    std::vector<qdl::CubicFunction> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string factor;
    while (std::getline(ss, factor, ';')) {
        std::vector<int> c;
        std::stringstream fs(factor);
        std::string tok;
        while (std::getline(fs, tok, ',')) c.push_back(std::stoi(tok));
        qdl::CubicFunction f;
        f.d = d;
        if (d == 3) {
            if (c.size() != 2) throw CLI::ValidationError("--spec", "d=3 factors are c3,c2 with c3 in Z_9");
            f.c3 = c[0];
            f.c2 = c[1];
        } else {
            if (c.size() != 4) throw CLI::ValidationError("--spec", "factors are c3,c2,c1,c0");
            f.c3 = c[0];
            f.c2 = c[1];
            f.c1 = c[2];
            f.c0 = c[3];
        }
        f.validate();
        out.push_back(f);
    }
    return out;
}

void print_moment_summary(const qdl::MomentSummary& s, const std::optional<qdl::Rational>& kappa_exact,
                          bool as_csv) {
    if (as_csv) {
        std::cout << "d,n,phi3,qnorm_lower,qnorm_upper,qnorm_exact,dev_lower,dev_upper,"
                     "shadow_lower,shadow_upper,kappa_ns_exact\n";
        std::cout << s.d << ',' << s.n << ',' << fmt(s.phi3) << ',' << fmt(s.qnorm_lower) << ','
                  << fmt(s.qnorm_upper) << ',' << (s.qnorm_exact ? 1 : 0) << ',' << fmt(s.dev_lower) << ','
                  << fmt(s.dev_upper) << ',' << fmt(s.shadow_lower) << ',' << fmt(s.shadow_upper) << ','
                  << (kappa_exact ? kappa_exact->str() : "") << '\n';
        return;
    }
    std::cout << "d=" << s.d << "\nn=" << s.n << "\nD=" << fmt(s.D) << "\nphi3=" << fmt(s.phi3) << '\n';
    std::cout << "qnorm_lower=" << fmt(s.qnorm_lower) << "\nqnorm_upper=" << fmt(s.qnorm_upper)
              << "\nqnorm_exact=" << (s.qnorm_exact ? "yes" : "no") << '\n';
    std::cout << "dev_lower=" << fmt(s.dev_lower) << "\ndev_upper=" << fmt(s.dev_upper)
              << "\ndev_exact=" << (s.dev_exact ? "yes" : "no") << '\n';
    std::cout << "shadow_lower=" << fmt(s.shadow_lower) << "\nshadow_upper=" << fmt(s.shadow_upper) << '\n';
    if (kappa_exact) std::cout << "kappa_ns=" << kappa_exact->str() << '\n';
    if (!s.spectrum.empty()) {
        std::cout << "spectrum=";
        for (std::size_t i = 0; i < s.spectrum.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << fmt(s.spectrum[i].value) << 'x' << fmt(s.spectrum[i].multiplicity);
        }
        std::cout << '\n';
    }
}

// ---------------------------------------------------------------------------
// tables

int cmd_tables(const std::string& which) {
    if (which == "nu") {
        std::cout << "d,nu\n";
        for (int d = 3; d < 100; ++d)
            if (qdl::is_prime(d)) std::cout << d << ',' << qdl::primitive_element(d) << '\n';
        return 0;
    }
    if (which == "tgd") {
        std::cout << "d,tgd_squared\n";
        for (int d = 7; d <= 1000; ++d)
            if (qdl::is_prime(d) && d % 3 == 1) {
                const qdl::TildeG tg = qdl::tilde_g(d);
                std::cout << d << ',' << tg.s * tg.s << '\n';
            }
        return 0;
    }
    if (which == "exact3design") {
        std::cout << "d,cardinality,elements\n";
        for (int d = 7; d <= 1000; ++d) {
            if (!qdl::is_prime(d) || d % 3 != 1) continue;
            const qdl::SSet s = qdl::s_set(d);
            std::cout << d << ',';
            if (s.all_but_two) std::cout << "inf,N\\{2}";
            else {
                std::cout << s.elements.size() << ',';
                for (std::size_t i = 0; i < s.elements.size(); ++i) {
                    if (i) std::cout << ' ';
                    std::cout << s.elements[i];
                }
            }
            std::cout << '\n';
        }
        return 0;
    }
    std::cerr << "unknown table: " << which << '\n';
    return 2;
}

// ---------------------------------------------------------------------------
// sigma

int cmd_sigma(int d) {
    const qdl::SigmaCatalog cat(d);
    std::cout << "id_y,parity,sym,ns,iso,def,v1,v2,v3,cubic_exponent\n";
    for (const auto& t : cat.all()) {
        std::cout << t.id.y << ',' << t.id.cls << ',' << (t.sym ? 1 : 0) << ',' << (t.ns() ? 1 : 0) << ','
                  << (t.iso() ? 1 : 0) << ',' << (t.defect ? 1 : 0) << ',' << t.v[0] << ',' << t.v[1] << ','
                  << t.v[2] << ',';
        if (t.sym) std::cout << "";
        else std::cout << t.cubic_exponent;
        std::cout << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// moments

int cmd_moments(int d, int n, const std::string& spec_text, bool csv) {
    qdl::MagicStateSpec spec;
    spec.d = d;
    spec.n = n;
    spec.factors = parse_spec(spec_text, d);
    spec.validate();
    const qdl::KappaProfile prof = spec.k() == 0 ? qdl::stabilizer_profile(d, n) : qdl::kappa_profile(spec);
    std::optional<qdl::MagicContext> magic;
    if (spec.k() >= 1) magic = qdl::MagicContext{spec.k(), false};
    qdl::MomentSummary s = spec.k() == 0 ? qdl::stab_moment_spectrum(n, d) : qdl::moment_summary(prof, magic);
    std::optional<qdl::Rational> kappa_exact;
    if (spec.k() == 0) kappa_exact = qdl::Rational(1);
    else if (d % 3 != 1) kappa_exact = qdl::Rational(qdl::big_pow(2, spec.k()), qdl::big_pow(d, spec.k()));
    print_moment_summary(s, kappa_exact, csv);
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
    std::string quantity = "phi3";
    std::string family = "stabilizer";
    int j = 0;
    double K = 1;
    std::vector<int> ds, ns, ks;
};

std::string sweep_row(const SweepConfig& cfg, int d, int n, int k) {
    std::ostringstream row;
    row << d << ',' << n << ',' << k << ',';
    const bool prime_ok = qdl::is_prime(d) && d != 2;
    if (!prime_ok || k > n || (cfg.family != "stabilizer" && k < 1) ||
        ((cfg.family == "balanced" || cfg.family == "magic-j") && d % 3 != 1)) {
        row << ",,unsupported";
        return row.str();
    }
    qdl::KappaProfile prof;
    std::optional<qdl::MagicContext> magic;
    if (cfg.family == "stabilizer") {
        prof = qdl::stabilizer_profile(d, n);
    } else if (cfg.family == "canonical-magic" || cfg.family == "magic-j") {
        qdl::MagicStateSpec spec;
        spec.d = d;
        spec.n = n;
        qdl::CubicFunction f = qdl::CubicFunction::canonical(d);
        if (cfg.family == "magic-j")
            f.c3 = qdl::FieldContext::get(d).field().pow(qdl::FieldContext::get(d).field().nu(), cfg.j);
        for (int i = 0; i < k; ++i) spec.factors.push_back(f);
        prof = qdl::kappa_profile(spec);
        magic = qdl::MagicContext{k, false};
    } else if (cfg.family == "balanced") {
        prof = qdl::kappa_profile(qdl::balanced_ensemble(d, n, k));
        magic = qdl::MagicContext{k, true};
    } else {
        row << ",,unsupported";
        return row.str();
    }

    if (cfg.quantity == "phi3") {
        row << fmt(qdl::frame_potential3(prof)) << ",,ok";
    } else if (cfg.quantity == "qnorm") {
        const qdl::MomentNormBounds b = qdl::moment_norm_bounds(prof);
        row << fmt(b.lower) << ',' << fmt(b.upper) << ',' << (b.exact ? "exact" : "ok");
    } else if (cfg.quantity == "shadow-stab-K") {
        const double D = std::pow(static_cast<double>(d), n);
        if (cfg.K < 1 || cfg.K > D / d) {
            row << ",,unsupported";
        } else {
            row << fmt(qdl::shadow_norm_orbit_stab_observable(prof, cfg.K).value) << ",,ok";
        }
    } else if (cfg.quantity == "shadow-ensemble") {
        const auto [lo, hi] = qdl::shadow_norm_ensemble_bounds(prof, magic);
        row << fmt(lo) << ',' << fmt(hi) << ",ok";
    } else {
        row << ",,unsupported";
    }
    return row.str();
}

int cmd_sweep(const SweepConfig& cfg) {
    std::vector<std::tuple<int, int, int>> grid;
    for (int d : cfg.ds)
        for (int n : cfg.ns)
            for (int k : (cfg.ks.empty() ? std::vector<int>{0} : cfg.ks)) grid.emplace_back(d, n, k);
    std::vector<std::string> rows(grid.size());
    const int threads = std::min<int>(env_threads(), static_cast<int>(grid.size()) > 0 ? static_cast<int>(grid.size()) : 1);
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            rows[i] = sweep_row(cfg, std::get<0>(grid[i]), std::get<1>(grid[i]), std::get<2>(grid[i]));
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                    rows[i] = sweep_row(cfg, std::get<0>(grid[i]), std::get<1>(grid[i]), std::get<2>(grid[i]));
            });
        for (auto& th : pool) th.join();
    }
    std::cout << "d,n,k,value,value2,status\n";
    for (const auto& row : rows) std::cout << row << '\n';
    return 0;
}

void load_config_file(const std::string& path, SweepConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "quantity") cfg.quantity = value;
        else if (key == "family") cfg.family = value;
        else if (key == "j") cfg.j = std::stoi(value);
        else if (key == "K") cfg.K = std::stod(value);
        else if (key == "d") cfg.ds = parse_int_list(value);
        else if (key == "n") cfg.ns = parse_int_list(value);
        else if (key == "k") cfg.ks = parse_int_list(value);
    }
}

// ---------------------------------------------------------------------------
// design

void print_recipe(const qdl::DesignRecipe& r) {
    std::cout << "d=" << r.d << "\nn=" << r.n << "\ncertification=" << (r.exact ? "exact" : "approximate") << '\n';
    std::cout << "orbits=" << r.orbit_count() << '\n';
    for (std::size_t i = 0; i < r.orbits.size(); ++i) {
        const auto& o = r.orbits[i];
        std::cout << "orbit" << i << ".weight=" << fmt(o.weight);
        if (o.exact_weight) std::cout << " (" << o.exact_weight->str() << ")";
        std::cout << '\n';
        std::cout << "orbit" << i << ".fiducial=";
        if (o.fiducial.k() == 0) std::cout << "stabilizer";
        else
            for (int f = 0; f < o.fiducial.k(); ++f) {
                if (f) std::cout << ';';
                const auto& fn = o.fiducial.factors[f];
                std::cout << fn.c3 << ',' << fn.c2 << ',' << fn.c1 << ',' << fn.c0;
            }
        std::cout << '\n';
    }
    if (!r.exact) {
        std::cout << "phi3_minus_1=" << fmt(r.phi3_minus_1) << '\n';
        std::cout << "qnorm_upper=" << fmt(r.qnorm_upper) << '\n';
        std::cout << "dev_upper=" << fmt(r.dev_upper) << '\n';
        std::cout << "shadow_upper=" << fmt(r.shadow_upper) << '\n';
    }
}

int cmd_design(int d, int n, int k, bool table_s, int dmax) {
    if (table_s) {
        std::cout << "d,cardinality,elements\n";
        for (int p = 7; p <= dmax; ++p) {
            if (!qdl::is_prime(p) || p % 3 != 1) continue;
            const qdl::SSet s = qdl::s_set(p);
            std::cout << p << ',';
            if (s.all_but_two) std::cout << "inf,N\\{2}";
            else {
                std::cout << s.elements.size() << ',';
                for (std::size_t i = 0; i < s.elements.size(); ++i) {
                    if (i) std::cout << ' ';
                    std::cout << s.elements[i];
                }
            }
            std::cout << '\n';
        }
        return 0;
    }
    if (d % 3 == 1) {
        if (k <= 0) k = qdl::k_star(d, n);
        const auto recipe = qdl::exact_design_balanced(d, n, k);
        if (recipe) {
            print_recipe(*recipe);
            return 0;
        }
        // fall back to a two-orbit accurate design at the requested k
        const auto ens = qdl::balanced_ensemble(d, n, std::min(k, n));
        const auto approx = qdl::two_orbit_accurate_design(ens, qdl::MagicContext{std::min(k, n), true});
        print_recipe(approx);
        return 0;
    }
    const auto recipe = qdl::exact_design_d2mod3(d, n, k > 0 ? k : 1);
    if (recipe) {
        print_recipe(*recipe);
        return 0;
    }
    std::cout << "no exact design from this construction (d=" << d << ", n=" << n << ", k=" << k << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite) {
    const auto results = qdl::run_suite(suite);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  max_residual=" << fmt(r.residual);
        if (r.tolerance > 0) std::cout << " (tol " << fmt(r.tolerance) << ")";
        if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
        std::cout << '\n';
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"third-moment statistics of qudit Clifford orbits"};
    app.require_subcommand(1);

    std::string table_name = "nu";
    auto* tables = app.add_subcommand("tables", "reproduce reference tables as CSV");
    tables->add_option("which", table_name, "nu, tgd, or exact3design")->required();

    int sigma_d = 5;
    auto* sigma = app.add_subcommand("sigma", "dump the Sigma(d) catalog as CSV");
    sigma->add_option("--d", sigma_d, "odd prime local dimension")->required();

    int mom_d = 5, mom_n = 1;
    std::string mom_spec;
    bool mom_csv = false;
    auto* moments = app.add_subcommand("moments", "moment summary of one orbit");
    moments->add_option("--d", mom_d)->required();
    moments->add_option("--n", mom_n)->required();
    moments->add_option("--spec", mom_spec, "cubic factors c3,c2,c1,c0;... (empty = stabilizer orbit)");
    moments->add_flag("--csv", mom_csv, "emit a CSV row instead of key=value lines");

    SweepConfig sweep_cfg;
    std::string sweep_d, sweep_n, sweep_k, sweep_config_path;
    auto* sweep = app.add_subcommand("sweep", "grid sweep of a figure of merit");
    sweep->add_option("--quantity", sweep_cfg.quantity, "phi3, qnorm, shadow-stab-K, shadow-ensemble");
    sweep->add_option("--family", sweep_cfg.family, "stabilizer, canonical-magic, magic-j, balanced");
    sweep->add_option("--j", sweep_cfg.j, "cubic-character class for magic-j");
    sweep->add_option("--K", sweep_cfg.K, "stabilizer-projector rank for shadow-stab-K");
    sweep->add_option("--d", sweep_d, "comma list or a-b ranges");
    sweep->add_option("--n", sweep_n, "comma list or a-b ranges");
    sweep->add_option("--k", sweep_k, "comma list or a-b ranges");
    sweep->add_option("--config", sweep_config_path, "key=value config file");

    int design_d = 7, design_n = 1, design_k = 0, design_dmax = 1000;
    bool design_table = false;
    auto* design = app.add_subcommand("design", "3-design recipes");
    design->add_option("--d", design_d);
    design->add_option("--n", design_n);
    design->add_option("--k", design_k, "T-gate count (default: k*(d,n))");
    design->add_flag("--table-s", design_table, "emit the exact-design table as CSV");
    design->add_option("--dmax", design_dmax, "largest d for --table-s");

    std::string verify_suite = "all";
    auto* verify = app.add_subcommand("verify", "run oracle-vs-analytic suites");
    verify->add_option("--suite", verify_suite, "gram, stab-moment, kappa-magic, spectra, shadow, counts, designs, all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (tables->parsed()) return cmd_tables(table_name);
        if (sigma->parsed()) return cmd_sigma(sigma_d);
        if (moments->parsed()) return cmd_moments(mom_d, mom_n, mom_spec, mom_csv);
        if (sweep->parsed()) {
            if (!sweep_config_path.empty()) load_config_file(sweep_config_path, sweep_cfg);
            if (!sweep_d.empty()) sweep_cfg.ds = parse_int_list(sweep_d);
            if (!sweep_n.empty()) sweep_cfg.ns = parse_int_list(sweep_n);
            if (!sweep_k.empty()) sweep_cfg.ks = parse_int_list(sweep_k);
            if (sweep_cfg.ds.empty() || sweep_cfg.ns.empty()) {
                std::cerr << "sweep: need --d and --n (or a config file)\n";
                return 2;
            }
            return cmd_sweep(sweep_cfg);
        }
        if (design->parsed()) return cmd_design(design_d, design_n, design_k, design_table, design_dmax);
        if (verify->parsed()) return cmd_verify(verify_suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
