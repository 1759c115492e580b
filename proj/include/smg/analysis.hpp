#pragma once

#include <array>
#include <string>
#include <vector>

#include "smg/multigrid.hpp"

namespace smg {

struct ZeroStructureReport {
    std::vector<std::array<double, 2>> zeros;  // grid points where lambda_min vanishes
    int eigen_index = 0;                       // index (ascending) of the vanishing eigenvalue function
    double order = 0.0;                        // fitted exponent of lambda_min(theta0 + t e) ~ c t^p
    double min_away = 0.0;                     // min lambda_min over the grid away from the zeros
    bool found() const { return !zeros.empty(); }
};

ZeroStructureReport check_zero_structure(const TrigPoly& f, int grid_n = 64);

struct ProjectorReport {
    double positivity_min = 0.0;     // min over grid of lambda_min(sum_xi p(xi)^H p(xi))
    double preservation = 0.0;       // ||s(theta0) q - q||
    // near theta0: ||(I - s) v||^2 / lambda_min(f) with v the eigenvector of lambda_min(f)
    double ratio_max = 0.0;
    bool ratio_bounded = false;      // sampled ratios do not grow as the radius shrinks
    // the eigenvalue form (1 - lambda_max(s)) / lambda_min(f); s is a projector, so this stays ~0
    double eigen_ratio_max = 0.0;
    bool positive() const { return positivity_min > 1e-12; }
};

// s(theta) = p(theta) (sum_{xi in Omega(theta)} p(xi)^H p(xi))^-1 p(theta)^H
Eigen::MatrixXcd projector_symbol(const TrigPoly& p, const std::vector<double>& theta);
ProjectorReport check_projector(const TrigPoly& p, const TrigPoly& f, const std::vector<double>& theta0,
                                const Eigen::VectorXcd& q, int grid_n = 64);
// max over the grid of ||s^2 - s|| for a univariate p
double idempotency_residual(const TrigPoly& p, int grid_n = 64);

struct GrowthRow {
    int n;
    double lambda_min, lambda_max, kappa;
};
std::vector<GrowthRow> growth_report(const TrigPoly& f, const std::vector<int>& n_list, long cap = 20000);

struct DegreeRow {
    int level, n;
    int row_At, row_B, row_C;
};
std::vector<DegreeRow> coarse_degree_report(const Hierarchy& h);
// true when every level from `from` on has the same per-row counts
bool bandwidth_stable(const std::vector<DegreeRow>& rows, int from = 2);

// markdown + csv renderings used by the CLI
std::string zero_report_markdown(const std::string& name, const ZeroStructureReport& r);
std::string projector_report_markdown(const std::string& name, const ProjectorReport& r);

}  // namespace smg
