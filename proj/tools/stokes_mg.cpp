// stokes_mg: reproduce the iteration tables, run single solves, inspect symbols.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "smg/analysis.hpp"
#include "smg/harness.hpp"

namespace {

using namespace smg;

constexpr int kUsage = 1;
constexpr int kNotConverged = 2;

struct SolveArgs {
    int t = 5;
    std::string cycle = "tgm";
    int pre = 0, post = 1;
    double omega_pre = 0.6, omega_post = 0.8;
    double alpha = 2.0 / 3.0;
    double tol = 1e-6;
    int max_iter = 200;
    std::string smoother = "jacobi";
    std::string config;
    std::string dump_matrix;
    bool show_hierarchy = false, history = false, force = false;
};

// values from the config file fill every flag the user did not pass
void apply_config(CLI::App& sub, SolveArgs& a) {
    if (a.config.empty()) return;
    const auto kv = read_config_file(a.config);
    auto given = [&](const std::string& flag) { return sub.count("--" + flag) > 0; };
    for (const auto& [k, v] : kv) {
        std::string key = k;
        for (auto& c : key)
            if (c == '_') c = '-';
        if (given(key)) continue;
        if (key == "t") a.t = std::stoi(v);
        else if (key == "cycle") a.cycle = v;
        else if (key == "pre") a.pre = std::stoi(v);
        else if (key == "post") a.post = std::stoi(v);
        else if (key == "omega-pre") a.omega_pre = std::stod(v);
        else if (key == "omega-post") a.omega_post = std::stod(v);
        else if (key == "alpha") a.alpha = std::stod(v);
        else if (key == "tol") a.tol = std::stod(v);
        else if (key == "max-iter") a.max_iter = std::stoi(v);
        else if (key == "smoother") a.smoother = v;
        else throw std::invalid_argument("unknown config key '" + k + "'");
    }
}

// outside these ranges a run needs --force
void check_admissible(const CycleConfig& c) {
    const double abound = alpha_bound({stokes_fA(), stokes_fAy()}, 64);
    if (c.alpha > abound + 1e-12)
        throw std::invalid_argument("alpha exceeds the Jacobi bound " + std::to_string(abound) + " (use --force)");
    for (double w : {c.omega_pre, c.omega_post})
        if (w >= 2.0) throw std::invalid_argument("relaxation weight must be below 2 (use --force)");
}

int run_reproduce(int table, const std::string& out) {
    const auto cols = table_columns(table);
    std::ofstream csv;
    if (!out.empty()) {
        csv.open(out);
        if (!csv) throw std::invalid_argument("cannot write " + out);
        csv << csv_header() << '\n';
    }
    const auto rows = run_table(table, [](const RunRow& r) {
        std::fprintf(stderr, "  %s t=%d: %d iterations\n", r.label.c_str(), r.t, r.iterations);
    });
    // rows are printed column by column once every cell has run
    std::cout << csv_header() << '\n';
    bool all_converged = true;
    for (const auto& col : rows)
        for (const auto& r : col) {
            all_converged = all_converged && r.converged;
            const std::string line = csv_row(r);
            std::cout << line << (r.converged ? "" : "  # not converged") << '\n';
            if (csv) csv << line << '\n';
        }

    std::cout << "\n| column | t | ours | reference | diff | within tol |\n|---|---|---|---|---|---|\n";
    int within = 0, total = 0;
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (int k = 0; k < 4; ++k) {
            const int ours = rows[c][k].iterations, ref = cols[c].reference[k];
            const bool ok = rows[c][k].converged && std::abs(ours - ref) <= cols[c].tolerance;
            within += ok;
            ++total;
            std::printf("| %s | %d | %d | %d | %+d | %s |\n", cols[c].label.c_str(), k + 5, ours, ref, ours - ref,
                        ok ? "yes" : "no");
        }
    std::printf("\n%d of %d cells within tolerance\n", within, total);
    return all_converged ? 0 : kNotConverged;
}

int run_solve(CLI::App& sub, SolveArgs& a) {
    apply_config(sub, a);
    CycleConfig cfg;
    cfg.cycle = parse_cycle(a.cycle);
    cfg.smoother = parse_smoother(a.smoother);
    cfg.pre = a.pre;
    cfg.post = a.post;
    cfg.omega_pre = a.omega_pre;
    cfg.omega_post = a.omega_post;
    cfg.alpha = a.alpha;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;
    validate(cfg);
    if (!a.force) check_admissible(cfg);
    if (a.t < 1 || a.t > 12) throw std::invalid_argument("t must lie in 1..12");

    const SaddleSystem sys = assemble_stokes(partial_dim(a.t));
    if (!a.dump_matrix.empty()) {
        std::ofstream f(a.dump_matrix);
        if (!f) throw std::invalid_argument("cannot write " + a.dump_matrix);
        f << "% " << sys.size() << ' ' << sys.size() << '\n' << to_coordinate_text(sys.global());
    }
    const Rhs rhs = build_rhs(sys);
    const auto t0 = std::chrono::steady_clock::now();
    const Hierarchy h(sys, cfg);
    const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (a.show_hierarchy) std::cout << h.describe() << '\n';
    const ConvergenceReport rep = solve(h, rhs.b);

    if (a.history) {
        std::cout << "iteration,relres,relres_original\n";
        for (std::size_t k = 0; k < rep.residual_history.size(); ++k)
            std::printf("%zu,%.6e,%.6e\n", k + 1, rep.residual_history[k], rep.original_history[k]);
        std::cout << '\n';
    }
    RunRow r;
    r.t = a.t;
    r.N = sys.size();
    r.cfg = cfg;
    r.iterations = rep.iterations;
    r.final_relres = rep.final_relres();
    r.seconds = rep.seconds + setup;
    r.converged = rep.converged;
    std::cout << csv_header() << '\n' << csv_row(r) << '\n';
    std::printf("relative error vs manufactured solution: %.3e\n", (rep.x - rhs.x_true).norm() / rhs.x_true.norm());
    if (!rep.converged) {
        std::fprintf(stderr, "not converged after %d iterations\n", rep.iterations);
        return kNotConverged;
    }
    return 0;
}

std::string sample_csv(const std::function<double(double, double)>& f, int grid) {
    std::ostringstream os;
    os.precision(10);
    os << "theta1,theta2,value\n";
    const double h = 2.0 * std::numbers::pi / grid;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double v;
            try {
                v = f(h * i, h * j);
            } catch (const singular_point&) {
                continue;
            }
            os << h * i << ',' << h * j << ',' << v << '\n';
        }
    return os.str();
}

int run_analyze(const std::string& name, int grid, const std::string& out, const std::string& symbol_out) {
    if (grid < 4) throw std::invalid_argument("grid must be at least 4");
    const double alpha = 2.0 / 3.0;
    std::string csv;
    if (name == "fA" || name == "fChat") {
        const TrigPoly f = name == "fA" ? stokes_fA() : f_chat(alpha);
        const auto rep = check_zero_structure(f, grid);
        std::cout << zero_report_markdown(name, rep);
        std::printf("| sup norm | %.10g |\n", sup_norm(f, grid));
        if (name == "fChat") std::printf("| constant coefficient | %.12g |\n", f.coeff({0, 0})(0, 0).real());
        if (!symbol_out.empty()) std::ofstream(symbol_out) << to_text(f);
        csv = sample_csv([&](double a, double b) { return eig_at(f, {a, b})(0); }, grid);
    } else if (name == "fS") {
        const SchurSymbol s;
        double a1 = 0, a2 = 0;
        const double sup = sup_norm([&](double a, double b) { return Eigen::MatrixXcd::Constant(1, 1, s(a, b)); }, grid,
                                    &a1, &a2);
        std::printf("## Schur symbol fS\n\n| quantity | value |\n|---|---|\n| sup on grid | %.12g |\n"
                    "| argmax | (%.6g, %.6g) |\n| singular point | (0, 0) |\n",
                    sup, a1, a2);
        csv = sample_csv([&](double a, double b) { return s(a, b); }, grid);
    } else if (name == "p4") {
        const TrigPoly f = stokes_fA();
        const TrigPoly p = p4();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f(0.0, 0.0));
        const auto rep = check_projector(p, f, {0.0, 0.0}, es.eigenvectors().col(0), grid);
        std::cout << projector_report_markdown("p4 with fA", rep);
        if (!symbol_out.empty()) std::ofstream(symbol_out) << to_text(p);
        csv = sample_csv([&](double a, double b) { return projector_symbol(p, {a, b}).trace().real(); }, grid);
    } else {
        throw std::invalid_argument("unknown symbol '" + name + "' (expected fA, fChat, fS or p4)");
    }
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::invalid_argument("cannot write " + out);
        f << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multigrid solver for the block Toeplitz Stokes saddle-point system"};
    app.require_subcommand(1);

    int table = 1;
    std::string out;
    auto* rep = app.add_subcommand("reproduce", "run the parameter grid of one iteration table");
    rep->add_option("--table", table, "table id")->required()->check(CLI::Range(1, 4));
    rep->add_option("--out", out, "write CSV rows here");

    SolveArgs sa;
    auto* sol = app.add_subcommand("solve", "one solve at n = 2^t + 1");
    sol->add_option("--t", sa.t, "partial dimension exponent");
    sol->add_option("--cycle", sa.cycle, "tgm | v | w");
    sol->add_option("--pre", sa.pre, "pre-smoothing steps");
    sol->add_option("--post", sa.post, "post-smoothing steps");
    sol->add_option("--omega-pre", sa.omega_pre);
    sol->add_option("--omega-post", sa.omega_post);
    sol->add_option("--alpha", sa.alpha, "transformation parameter");
    sol->add_option("--tol", sa.tol, "relative residual tolerance");
    sol->add_option("--max-iter", sa.max_iter);
    sol->add_option("--smoother", sa.smoother, "jacobi | vanka");
    sol->add_option("--config", sa.config, "key = value file; flags override it");
    sol->add_option("--dump-matrix", sa.dump_matrix, "write the system matrix in coordinate format");
    sol->add_flag("--show-hierarchy", sa.show_hierarchy);
    sol->add_flag("--history", sa.history, "print the residual history");
    sol->add_flag("--force", sa.force, "skip the admissible-range checks");

    std::string sym;
    int grid = 64;
    std::string symbol_out;
    auto* an = app.add_subcommand("analyze", "symbol diagnostics");
    an->add_option("--symbol", sym, "fA | fChat | fS | p4")->required();
    an->add_option("--grid", grid, "sampling grid per variable");
    an->add_option("--out", out, "write sampled values as CSV");
    an->add_option("--save-symbol", symbol_out, "write the symbol coefficients in text form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    try {
        if (rep->parsed()) return run_reproduce(table, out);
        if (sol->parsed()) return run_solve(*sol, sa);
        return run_analyze(sym, grid, out, symbol_out);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
}
