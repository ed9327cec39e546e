// Command-line surface over the stripe-energy library: constants, stripe
// sweeps, optimization, grid-set evaluation and decomposition, stripe
// distances, cube classification, brute-force minimization, verification.
//
// Exit codes: 0 success, 1 usage, 2 precondition violation, 3 tolerance
// not achieved, 4 verification check failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "stripe/distance.hpp"
#include "stripe/grid.hpp"
#include "stripe/kernel.hpp"
#include "stripe/multidim.hpp"
#include "stripe/onedim.hpp"
#include "stripe/verify.hpp"

using nlohmann::json;
using namespace stripe;

namespace {

struct RunConfig {
    int d = 1;
    double alpha = 0.0;
    double tau = 0.0;
    double L = 8.0;
    int n = 8;
    double l = 4.0;
    double eta = 1.0;
    double delta = 0.05;
    double M = 1.0;
    double rho = 0.5;
    double tol = 1e-12;
    double table_tol = 1e-3;
    double R = 0.0;
    std::uint64_t seed = 20240517;
    std::string format = "csv";
    std::string out;
    std::string tier = "fast";
};

// flat key=value config file; command-line flags override
void load_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "d") c.d = std::stoi(val);
        else if (key == "alpha") c.alpha = std::stod(val);
        else if (key == "tau") c.tau = std::stod(val);
        else if (key == "L") c.L = std::stod(val);
        else if (key == "n") c.n = std::stoi(val);
        else if (key == "l") c.l = std::stod(val);
        else if (key == "eta") c.eta = std::stod(val);
        else if (key == "delta") c.delta = std::stod(val);
        else if (key == "M") c.M = std::stod(val);
        else if (key == "rho") c.rho = std::stod(val);
        else if (key == "tol") c.tol = std::stod(val);
        else if (key == "table_tol") c.table_tol = std::stod(val);
        else if (key == "R") c.R = std::stod(val);
        else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "format") c.format = val;
        else if (key == "tier") c.tier = val;
        else throw CLI::ValidationError("config", "unknown config key " + key);
    }
}

class Output {
  public:
    Output(const RunConfig& c, std::string command) : cfg_(c) {
        header_["command"] = std::move(command);
        header_["d"] = c.d;
        header_["alpha"] = c.alpha;
        header_["tau"] = c.tau;
        header_["seed"] = c.seed;
    }
    void echo(const std::string& key, double v) { header_[key] = v; }
    void echo(const std::string& key, const std::string& v) { header_[key] = v; }
    void scalar(const std::string& key, double v) { scalars_.emplace_back(key, v); }
    void table(std::vector<std::string> columns) { columns_ = std::move(columns); }
    void row(std::vector<double> r) { rows_.push_back(std::move(r)); }

    void write(std::ostream& os) const {
        if (cfg_.format == "json") {
            json j;
            j["header"] = header_;
            for (const auto& [k, v] : scalars_) j["values"][k] = v;
            if (!columns_.empty()) {
                j["columns"] = columns_;
                j["rows"] = rows_;
            }
            os << j.dump(2) << "\n";
            return;
        }
        os.precision(17);
        for (const auto& [k, v] : header_.items()) {
            os << "# " << k << "=" << (v.is_string() ? v.get<std::string>()
                                                     : json(v).dump())
               << "\n";
        }
        for (const auto& [k, v] : scalars_) os << k << "," << v << "\n";
        if (!columns_.empty()) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                os << (i ? "," : "") << columns_[i];
            }
            os << "\n";
            for (const auto& r : rows_) {
                for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
                os << "\n";
            }
        }
    }

    void emit() const {
        if (cfg_.out.empty()) {
            write(std::cout);
        } else {
            std::ofstream f(cfg_.out);
            write(f);
        }
    }

  private:
    const RunConfig& cfg_;
    json header_ = json::object();
    std::vector<std::pair<std::string, double>> scalars_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

GridSet load_set(const std::string& path, RunConfig& cfg, bool alpha_flag,
                 bool tau_flag) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file " + path);
    auto loaded = load_gridset(in);
    cfg.d = loaded.set.dim();
    cfg.L = loaded.set.period();
    cfg.n = loaded.set.cells_per_side();
    // the file's kernel parameters apply unless overridden on the command line
    if (!alpha_flag) cfg.alpha = loaded.alpha;
    if (!tau_flag) cfg.tau = loaded.tau;
    return loaded.set;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stripe pattern energy toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--d", cfg.d, "dimension");
    app.add_option("--alpha", cfg.alpha, "kernel exponent parameter, < 1");
    app.add_option("--tau", cfg.tau, "kernel regularization, >= 0");
    app.add_option("--L", cfg.L, "torus period");
    app.add_option("--n", cfg.n, "cells per side");
    app.add_option("--l", cfg.l, "cube side for localization");
    app.add_option("--eta", cfg.eta, "minimal interface gap");
    app.add_option("--delta", cfg.delta, "distance threshold");
    app.add_option("--M", cfg.M, "localized energy threshold");
    app.add_option("--rho", cfg.rho, "dilation radius");
    app.add_option("--tol", cfg.tol, "series/quadrature tolerance");
    app.add_option("--table-tol", cfg.table_tol, "cell table tail tolerance");
    app.add_option("--R", cfg.R, "image radius (0 = automatic)");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output path (default stdout)");

    auto* c_const = app.add_subcommand("constants", "kernel constants and J_c");

    auto* c_sweep = app.add_subcommand("sweep-h", "stripe energy over an h grid");
    double h_min = 0.5, h_max = 8.0;
    int h_count = 33;
    c_sweep->add_option("--h-min", h_min);
    c_sweep->add_option("--h-max", h_max);
    c_sweep->add_option("--h-count", h_count);

    auto* c_opt = app.add_subcommand("optimal", "optimal stripe width and energy");

    std::string set_path;
    auto* c_eval = app.add_subcommand("eval", "energy of a grid set");
    c_eval->add_option("set", set_path, "grid set file")->required();
    auto* c_dec = app.add_subcommand("decompose", "slice decomposition of a grid set");
    c_dec->add_option("set", set_path, "grid set file")->required();
    auto* c_dist = app.add_subcommand("distance", "distance to stripe families");
    c_dist->add_option("set", set_path, "grid set file")->required();
    std::vector<int> cube_corner;
    int cube_extent = 0;
    c_dist->add_option("--corner", cube_corner, "cube corner cell indices");
    c_dist->add_option("--extent", cube_extent, "cube size in cells (0 = whole torus)");
    auto* c_cls = app.add_subcommand("classify", "cube classification of a grid set");
    c_cls->add_option("set", set_path, "grid set file")->required();

    auto* c_min = app.add_subcommand("minimize1d", "brute-force 1D minimization");
    int grid_n = 32, max_b = 4;
    c_min->add_option("--grid-n", grid_n);
    c_min->add_option("--max-boundaries", max_b);

    auto* c_ver = app.add_subcommand("verify", "run the named check suite");
    c_ver->add_option("--tier", cfg.tier, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    // global options may follow the subcommand name
    for (auto* sc : {c_const, c_sweep, c_opt, c_eval, c_dec, c_dist, c_cls, c_min, c_ver}) {
        sc->fallthrough();
    }

    // config file first, flags override: CLI11 only touches fields whose
    // flags were actually passed, so loading the file before parsing merges
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(argv[i + 1], cfg);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    const bool alpha_flag = app.count("--alpha") > 0;
    const bool tau_flag = app.count("--tau") > 0;

    try {
        if (*c_const) {
            const auto P = make_params(cfg.d, cfg.alpha, cfg.tau);
            const auto K = constants(P, cfg.tol);
            Output out(cfg, "constants");
            out.scalar("c1", K.c1);
            out.scalar("c2", K.c2);
            out.scalar("c3", K.c3);
            out.scalar("j_c", K.j_c);
            out.emit();
        } else if (*c_sweep) {
            const auto P = make_params(cfg.d, cfg.alpha, cfg.tau);
            Output out(cfg, "sweep-h");
            out.table({"h", "e"});
            for (int i = 0; i < h_count; ++i) {
                const double h =
                    h_count == 1 ? h_min
                                 : h_min * std::pow(h_max / h_min,
                                                    i / static_cast<double>(h_count - 1));
                out.row({h, stripe_energy(P, h, cfg.tol)});
            }
            out.emit();
        } else if (*c_opt) {
            const auto P = make_params(cfg.d, cfg.alpha, cfg.tau);
            const auto ow = optimal_width(P);
            Output out(cfg, "optimal");
            out.scalar("h_star", ow.h_star);
            out.scalar("c_star", ow.c_star);
            out.scalar("multistart_spread", ow.multistart_spread);
            out.emit();
        } else if (*c_eval || *c_dec) {
            const auto set = load_set(set_path, cfg, alpha_flag, tau_flag);
            const auto P = make_params(cfg.d, cfg.alpha, cfg.tau);
            const auto table = build_kernel_table(P, cfg.L, cfg.n, cfg.R, cfg.table_tol);
            Output out(cfg, *c_eval ? "eval" : "decompose");
            auto eb = functional_energy(P, set, table);
            for (int a = 0; a < cfg.d; ++a) {
                out.scalar("per1_dir" + std::to_string(a + 1), eb.per1_dir[a]);
            }
            out.scalar("kernel_perimeter", eb.kernel_perimeter);
            out.scalar("exchange", eb.exchange);
            out.scalar("total", eb.total);
            if (*c_dec) {
                decomposition_terms(P, set, table, eb);
                for (int a = 0; a < cfg.d; ++a) {
                    const auto sfx = std::to_string(a + 1);
                    out.scalar("r_sum" + sfx, eb.r_sum[a]);
                    out.scalar("v_sum" + sfx, eb.v_sum[a]);
                    out.scalar("w_sum" + sfx, eb.w_sum[a]);
                }
                out.scalar("decomposition_total", eb.decomposition_total());
                out.scalar("gap", eb.total - eb.decomposition_total());
            }
            out.emit();
        } else if (*c_dist) {
            const auto set = load_set(set_path, cfg, alpha_flag, tau_flag);
            Cube Q;
            Q.extent = cube_extent > 0 ? cube_extent : cfg.n;
            Q.corner = cube_corner.empty() ? std::vector<int>(cfg.d, 0) : cube_corner;
            if (static_cast<int>(Q.corner.size()) != cfg.d) {
                throw std::invalid_argument("distance: corner needs d indices");
            }
            Output out(cfg, "distance");
            out.echo("extent", Q.extent);
            for (int a = 0; a < cfg.d; ++a) {
                out.scalar("D" + std::to_string(a + 1),
                           distance_to_stripes_dir(set, Q, a, cfg.eta));
            }
            const auto best = distance_to_stripes(set, Q, cfg.eta);
            out.scalar("D", best.value);
            out.scalar("argmin_direction", best.direction + 1);
            out.emit();
        } else if (*c_cls) {
            const auto set = load_set(set_path, cfg, alpha_flag, tau_flag);
            const auto P = make_params(cfg.d, cfg.alpha, cfg.tau);
            const auto table = build_kernel_table(P, cfg.L, cfg.n, cfg.R, cfg.table_tol);
            const auto res =
                classify_cubes(P, set, table, cfg.l, cfg.eta, cfg.delta, cfg.M, cfg.rho);
            Output out(cfg, "classify");
            out.echo("extent", res.extent);
            out.scalar("a0_below_M", static_cast<double>(res.a0_below_M));
            out.table({"center_flat", "label"});
            for (std::size_t z = 0; z < res.labels.size(); ++z) {
                out.row({static_cast<double>(z), static_cast<double>(res.labels[z])});
            }
            out.emit();
        } else if (*c_min) {
            const auto P = make_params(cfg.d, cfg.alpha, cfg.tau);
            const auto res = brute_force_min_1d(P, cfg.L, grid_n, max_b);
            Output out(cfg, "minimize1d");
            out.scalar("energy", res.energy);
            out.scalar("boundary_count", res.best.perimeter());
            out.table({"boundary"});
            for (double b : res.best.boundaries) out.row({b});
            out.emit();
            std::cerr << "trace: best energy per boundary count\n";
            for (const auto& tr : res.trace) {
                std::cerr << "  m=" << tr.boundary_count << " candidates=" << tr.candidates
                          << " best=" << tr.best_energy << "\n";
            }
        } else if (*c_ver) {
            VerifyConfig vc;
            vc.tier = cfg.tier;
            vc.seed = cfg.seed;
            const auto reports = run_suite(vc);
            if (cfg.out.empty()) {
                serialize_reports(std::cout, reports);
            } else {
                std::ofstream f(cfg.out);
                serialize_reports(f, reports);
            }
            for (const auto& r : reports) {
                std::cerr << r.name << ": " << (r.pass ? "ok" : "FAIL") << " ("
                          << r.runtime_sec << "s)\n";
            }
            if (!all_pass(reports)) return 4;
        }
    } catch (const ToleranceError& e) {
        std::cerr << "tolerance error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
