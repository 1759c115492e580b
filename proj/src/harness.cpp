#include "smg/harness.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smg {

namespace {

CycleConfig make(CycleKind c, int pre, int post, double wpre, double wpost, SmootherKind s = SmootherKind::jacobi) {
    CycleConfig cfg;
    cfg.cycle = c;
    cfg.pre = pre;
    cfg.post = post;
    cfg.omega_pre = wpre;
    cfg.omega_post = wpost;
    cfg.smoother = s;
    return cfg;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<TableColumn> table_columns(int table) {
    using C = CycleKind;
    switch (table) {
    case 1:
        return {{1, "omega_post=2/5", make(C::tgm, 0, 1, 0.6, 0.4), {38, 36, 35, 35}, 2},
                {1, "omega_post=3/5", make(C::tgm, 0, 1, 0.6, 0.6), {23, 22, 20, 19}, 2},
                {1, "omega_post=4/5", make(C::tgm, 0, 1, 0.6, 0.8), {17, 16, 15, 15}, 2}};
    case 2:
        return {{2, "TGM(0,1)", make(C::tgm, 0, 1, 0.6, 0.8), {17, 16, 15, 15}, 2},
                {2, "TGM(1,0)", make(C::tgm, 1, 0, 0.6, 0.8), {20, 19, 18, 17}, 2},
                {2, "TGM(1,1)", make(C::tgm, 1, 1, 0.6, 0.8), {16, 16, 15, 14}, 2},
                {2, "TGM(2,2)", make(C::tgm, 2, 2, 0.6, 0.8), {15, 15, 14, 13}, 2}};
    case 3:
        return {{3, "TGM", make(C::tgm, 2, 2, 0.6, 0.8), {15, 15, 14, 13}, 2},
                {3, "W-cycle", make(C::w, 2, 2, 0.6, 0.8), {15, 15, 14, 13}, 2},
                {3, "V-cycle", make(C::v, 2, 2, 0.6, 0.8), {15, 15, 15, 16}, 2}};
    case 4:
        return {{4, "V Vanka", make(C::v, 2, 2, 1.0, 1.0, SmootherKind::vanka), {10, 12, 12, 11}, 3},
                {4, "V Jacobi", make(C::v, 2, 2, 0.6, 0.8), {15, 15, 15, 16}, 2}};
    default:
        throw std::invalid_argument("table must be 1, 2, 3 or 4");
    }
}

RunRow run_case(int t, const CycleConfig& cfg, int table, const std::string& label) {
    const SaddleSystem sys = assemble_stokes(partial_dim(t));
    const Rhs rhs = build_rhs(sys);
    const ConvergenceReport rep = solve(sys, rhs.b, cfg);
    RunRow r;
    r.table = table;
    r.t = t;
    r.N = sys.size();
    r.label = label;
    r.cfg = cfg;
    r.iterations = rep.iterations;
    r.final_relres = rep.final_relres();
    r.seconds = rep.seconds + rep.setup_seconds;
    r.converged = rep.converged;
    return r;
}

std::vector<std::vector<RunRow>> run_table(int table, const std::function<void(const RunRow&)>& progress) {
    return run_columns(table_columns(table), progress);
}

std::vector<std::vector<RunRow>> run_columns(const std::vector<TableColumn>& cols,
                                             const std::function<void(const RunRow&)>& progress) {
    std::vector<std::vector<RunRow>> rows(cols.size(), std::vector<RunRow>(4));
    for (int t = 5; t <= 8; ++t) {
        const SaddleSystem sys = assemble_stokes(partial_dim(t));
        const Rhs rhs = build_rhs(sys);
        std::vector<std::pair<Hierarchy, double>> built;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const CycleConfig& cfg = cols[c].cfg;
            const Hierarchy* base = nullptr;
            double setup = 0.0;
            for (const auto& [h, s] : built)
                if (Hierarchy::same_setup(h.config(), cfg)) {
                    base = &h;
                    setup = s;
                }
            if (!base) {
                const auto t0 = std::chrono::steady_clock::now();
                Hierarchy h(sys, cfg);
                setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                built.emplace_back(std::move(h), setup);
                base = &built.back().first;
            }
            const ConvergenceReport rep = solve(base->with_config(cfg), rhs.b);
            RunRow& r = rows[c][t - 5];
            r.table = cols[c].table;
            r.t = t;
            r.N = sys.size();
            r.label = cols[c].label;
            r.cfg = cfg;
            r.iterations = rep.iterations;
            r.final_relres = rep.final_relres();
            r.seconds = rep.seconds + setup;
            r.converged = rep.converged;
            if (progress) progress(r);
        }
    }
    return rows;
}

std::string csv_header() {
    return "table,t,N,cycle,pre,post,omega_pre,omega_post,smoother,iterations,final_relres,seconds";
}

std::string csv_row(const RunRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%d,%ld,%s,%d,%d,%.6g,%.6g,%s,%d,%.6e,%.3f", r.table, r.t, r.N,
                  to_string(r.cfg.cycle).c_str(), r.cfg.pre, r.cfg.post, r.cfg.omega_pre, r.cfg.omega_post,
                  to_string(r.cfg.smoother).c_str(), r.iterations, r.final_relres, r.seconds);
    return buf;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing '='");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string to_coordinate_text(const Sparse& a) {
    std::ostringstream os;
    os.precision(17);
    for (int r = 0; r < a.outerSize(); ++r)
        for (Sparse::InnerIterator it(a, r); it; ++it) os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    return os.str();
}

}  // namespace smg
