#pragma once

#include <memory>
#include <string>
#include <vector>

#include "smg/smoothers.hpp"
#include "smg/stokes.hpp"

namespace smg {

enum class CycleKind { tgm, v, w };
enum class SmootherKind { jacobi, vanka };

CycleKind parse_cycle(const std::string& s);
SmootherKind parse_smoother(const std::string& s);
std::string to_string(CycleKind c);
std::string to_string(SmootherKind s);

struct CycleConfig {
    CycleKind cycle = CycleKind::tgm;
    int pre = 0, post = 1;
    double omega_pre = 0.6, omega_post = 0.8;
    double alpha = 2.0 / 3.0;
    double tol = 1e-6;
    int max_iter = 200;
    int min_coarse_n = 3;
    SmootherKind smoother = SmootherKind::jacobi;

    int gamma() const { return cycle == CycleKind::w ? 2 : 1; }
};

// throws std::invalid_argument on an inconsistent configuration
void validate(const CycleConfig& c);

// --- parameter bounds -------------------------------------------------------

// 2 / max_j ||f||_inf / a0^(j,j) over the given Hermitian symbols
double alpha_bound(const std::vector<TrigPoly>& fs, int grid_n = 64);
double default_alpha(const std::vector<TrigPoly>& fs, int grid_n = 64);
// 2 min{ 2a - a^2 ratio_A, a0_C / sup_S }
double omega_bound_formula(double alpha, double ratio_A, double a0_C, double sup_S);

struct OmegaBound {
    double ratio_A, a0_C, sup_S, first, second, bound;
};
// evaluates the formula with the Stokes symbols
OmegaBound omega_bound_stokes(double alpha, int grid_n = 64);

// --- transformation ------------------------------------------------------------

// C + B (2a D^-1 - a^2 D^-1 At D^-1) B^T with D = diag(At)
Sparse build_chat(const Sparse& At, const Sparse& B, const Sparse& C, double alpha);
// explicit L A U = [[At, (I - a At D^-1) B^T], [-B (I - a D^-1 At), Chat]]
Sparse build_ahat(const Sparse& At, const Sparse& B, const Sparse& Chat, double alpha);
Sparse lau_L(const Sparse& At, const Sparse& B, double alpha);
Sparse lau_U(const Sparse& At, const Sparse& B, double alpha);

// P_A (one velocity field) and P_C at partial dimension n
Sparse prolongation_velocity(int n);
Sparse prolongation_pressure(int n);

// 1 / lambda_max(D^-1 At) by a fixed number of power steps
double estimate_alpha(const Sparse& At, int steps = 20);

class CoarseSolver;
class Hierarchy;

struct Level {
    int n = 0;
    bool transformed = true;
    double alpha = 0.0;
    Sparse At, B, C;       // saddle form [[At, B^T], [B, -C]]
    Sparse A;              // assembled saddle matrix
    Sparse Chat, Ahat;     // transformed blocks (jacobi mode)
    Vec dinv_At, dinv_hat;
    Sparse P, PT;          // prolongation from the next coarser level (empty at the coarsest)
    std::shared_ptr<VankaSmoother> vanka;
    std::shared_ptr<CoarseSolver> direct;

    long nv() const { return At.rows(); }
    long np() const { return C.rows(); }
    long size() const { return At.rows() + C.rows(); }
    Vec apply_L(const Vec& r) const;
    Vec apply_U(const Vec& y) const;
};

// one 3SP step: coarse saddle blocks from level data and prolongations
struct CoarseBlocks {
    Sparse At, B, C;
};
CoarseBlocks coarsen_3sp(const Sparse& At, const Sparse& B, const Sparse& C, double alpha, const Sparse& PA,
                         const Sparse& PC);
// coarse saddle matrix as one product R [[At, B^T], [-B, C]] P with
// R = S Pr^T [[I, 0], [a B D^-1, I]], P = [[I, -a D^-1 B^T], [0, I]] Pr, S = diag(I, -I)
Sparse composite_coarse(const Sparse& At, const Sparse& B, const Sparse& C, double alpha, const Sparse& PA,
                        const Sparse& PC);
// ||A{l+1} - composite|| / ||A{l+1}|| (Frobenius) for level l of a transformed hierarchy
double composite_discrepancy(const Hierarchy& h, std::size_t l);
// Galerkin coarsening of the untransformed saddle matrix
CoarseBlocks coarsen_plain(const Sparse& At, const Sparse& B, const Sparse& C, const Sparse& PA, const Sparse& PC);

class Hierarchy {
  public:
    Hierarchy(const SaddleSystem& sys, const CycleConfig& cfg);

    std::size_t depth() const { return levels_.size(); }
    const Level& level(std::size_t l) const { return levels_[l]; }
    const CycleConfig& config() const { return cfg_; }

    // one outer iteration on the top level system (transformed or not)
    void cycle(const Vec& rhs, Vec& y) const;
    // approximate inverse of the saddle matrix of level l
    Vec solve_saddle(std::size_t l, const Vec& rhs) const;

    std::string describe() const;

    // same levels, different smoothing parameters; the setup fields of cfg must match
    Hierarchy with_config(const CycleConfig& cfg) const;
    static bool same_setup(const CycleConfig& a, const CycleConfig& b);

  private:
    Hierarchy() = default;
    void build(const SaddleSystem& sys);
    void finalize_level(Level& lev) const;
    void cycle_at(std::size_t l, const Vec& rhs, Vec& y) const;
    void smooth(const Level& lev, const Vec& rhs, Vec& y, int nu, double omega) const;

    CycleConfig cfg_;
    std::vector<Level> levels_;
};

struct ConvergenceReport {
    int iterations = 0;
    bool converged = false;
    double seconds = 0.0;
    double setup_seconds = 0.0;
    std::vector<double> residual_history;   // monitored residual, relative
    std::vector<double> original_history;   // ||b - A x|| / ||b|| with x = U y
    Vec x;
    double final_relres() const { return residual_history.empty() ? 1.0 : residual_history.back(); }
};

ConvergenceReport solve(const Hierarchy& h, const Vec& b);
ConvergenceReport solve(const SaddleSystem& sys, const Vec& b, const CycleConfig& cfg);

// dense TGM error propagation matrix on the transformed top level
Eigen::MatrixXd tgm_iteration_matrix(const Hierarchy& h, long cap = 20000);
double spectral_radius_power(const Eigen::MatrixXd& M, int iters = 400);

}  // namespace smg
