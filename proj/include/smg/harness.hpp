#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "smg/multigrid.hpp"

namespace smg {

// One column of a published iteration table, t = 5..8.
struct TableColumn {
    int table;
    std::string label;
    CycleConfig cfg;
    std::array<int, 4> reference;
    int tolerance;
};

std::vector<TableColumn> table_columns(int table);

struct RunRow {
    int table = 0;
    int t = 0;
    long N = 0;
    std::string label;
    CycleConfig cfg;
    int iterations = 0;
    double final_relres = 0.0;
    double seconds = 0.0;
    bool converged = false;
};

inline int partial_dim(int t) { return (1 << t) + 1; }
RunRow run_case(int t, const CycleConfig& cfg, int table = 0, const std::string& label = "");

// all cells of a table, rows[column][t - 5]; hierarchies are shared between columns whose
// configurations differ only in smoothing, and each row's seconds include the setup it used
std::vector<std::vector<RunRow>> run_table(int table, const std::function<void(const RunRow&)>& progress = {});
// same for an arbitrary list of columns, e.g. several tables at once
std::vector<std::vector<RunRow>> run_columns(const std::vector<TableColumn>& cols,
                                             const std::function<void(const RunRow&)>& progress = {});

std::string csv_header();
std::string csv_row(const RunRow& r);

// "key = value" lines; '#' starts a comment
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

// coordinate text format "i j value", 1-based
std::string to_coordinate_text(const Sparse& a);

}  // namespace smg
