#include "smg/multigrid.hpp"

#include <chrono>
#include <cctype>
#include <climits>
#include <cstdio>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "smg/kernels.hpp"

namespace smg {

namespace {
std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}
}  // namespace

CycleKind parse_cycle(const std::string& name) {
    const std::string s = lower(name);
    if (s == "tgm") return CycleKind::tgm;
    if (s == "v") return CycleKind::v;
    if (s == "w") return CycleKind::w;
    throw std::invalid_argument("unknown cycle '" + name + "'");
}

SmootherKind parse_smoother(const std::string& name) {
    const std::string s = lower(name);
    if (s == "jacobi") return SmootherKind::jacobi;
    if (s == "vanka") return SmootherKind::vanka;
    throw std::invalid_argument("unknown smoother '" + name + "'");
}

std::string to_string(CycleKind c) {
    switch (c) {
    case CycleKind::tgm: return "tgm";
    case CycleKind::v: return "v";
    case CycleKind::w: return "w";
    }
    return "?";
}

std::string to_string(SmootherKind s) { return s == SmootherKind::jacobi ? "jacobi" : "vanka"; }

void validate(const CycleConfig& c) {
    if (c.pre < 0 || c.post < 0) throw std::invalid_argument("smoothing steps must be non-negative");
    if (c.pre + c.post < 1) throw std::invalid_argument("at least one smoothing step is required");
    if (c.pre > 0 && !(c.omega_pre > 0.0)) throw std::invalid_argument("omega_pre must be positive");
    if (c.post > 0 && !(c.omega_post > 0.0)) throw std::invalid_argument("omega_post must be positive");
    if (!(c.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(c.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (c.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (c.min_coarse_n < 1) throw std::invalid_argument("min_coarse_n must be at least 1");
}

// ---------------------------------------------------------------------------

double alpha_bound(const std::vector<TrigPoly>& fs, int grid_n) {
    double worst = 0.0;
    for (const auto& f : fs) {
        if (!f.is_hermitian(1e-12)) throw std::invalid_argument("alpha_bound: symbol is not Hermitian");
        const Eigen::MatrixXcd a0 = f.coeff(MultiIndex(f.levels(), 0));
        const double sup = sup_norm(f, grid_n);
        for (int j = 0; j < f.rows(); ++j) {
            const double d = a0(j, j).real();
            if (!(d > 0.0)) throw std::invalid_argument("alpha_bound: non-positive diagonal coefficient");
            worst = std::max(worst, sup / d);
        }
    }
    return 2.0 / worst;
}

double default_alpha(const std::vector<TrigPoly>& fs, int grid_n) { return alpha_bound(fs, grid_n) / 2.0; }

double omega_bound_formula(double alpha, double ratio_A, double a0_C, double sup_S) {
    return 2.0 * std::min(2.0 * alpha - alpha * alpha * ratio_A, a0_C / sup_S);
}

OmegaBound omega_bound_stokes(double alpha, int grid_n) {
    OmegaBound ob{};
    ob.ratio_A = 2.0 / alpha_bound({stokes_fA(), stokes_fAy()}, grid_n);
    ob.a0_C = f_chat(alpha).coeff({0, 0})(0, 0).real();
    const SchurSymbol fs;
    ob.sup_S = sup_norm([&fs](double a, double b) { return Eigen::MatrixXcd::Constant(1, 1, fs(a, b)); }, grid_n);
    ob.first = 2.0 * alpha - alpha * alpha * ob.ratio_A;
    ob.second = ob.a0_C / ob.sup_S;
    ob.bound = omega_bound_formula(alpha, ob.ratio_A, ob.a0_C, ob.sup_S);
    return ob;
}

// ---------------------------------------------------------------------------

namespace {

Sparse blkdiag(const Sparse& a, const Sparse& b) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(a.nonZeros() + b.nonZeros());
    for (int r = 0; r < a.outerSize(); ++r)
        for (Sparse::InnerIterator it(a, r); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    for (int r = 0; r < b.outerSize(); ++r)
        for (Sparse::InnerIterator it(b, r); it; ++it)
            t.emplace_back(a.rows() + it.row(), a.cols() + it.col(), it.value());
    Sparse m(a.rows() + b.rows(), a.cols() + b.cols());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Sparse block2(const Sparse& a11, const Sparse& a12, const Sparse& a21, const Sparse& a22) {
    std::vector<Eigen::Triplet<double>> t;
    auto put = [&t](const Sparse& a, long r0, long c0) {
        for (int r = 0; r < a.outerSize(); ++r)
            for (Sparse::InnerIterator it(a, r); it; ++it)
                t.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()), it.value());
    };
    put(a11, 0, 0);
    put(a12, 0, a11.cols());
    put(a21, a11.rows(), 0);
    put(a22, a11.rows(), a11.cols());
    Sparse m(a11.rows() + a21.rows(), a11.cols() + a12.cols());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Sparse compressed(Sparse m) {
    m.prune(0.0);
    m.makeCompressed();
    return m;
}

}  // namespace

Sparse build_chat(const Sparse& At, const Sparse& B, const Sparse& C, double alpha) {
    const Vec dinv = inverse_diagonal(At);
    Sparse G = B * dinv.asDiagonal();
    Sparse GT = G.transpose();
    Sparse BT = B.transpose();
    Sparse AGT = At * GT;
    Sparse chat = C + 2.0 * alpha * Sparse(G * BT) - alpha * alpha * Sparse(G * AGT);
    return compressed(chat);
}

Sparse build_ahat(const Sparse& At, const Sparse& B, const Sparse& Chat, double alpha) {
    const Vec dinv = inverse_diagonal(At);
    Sparse G = B * dinv.asDiagonal();
    Sparse Bt = B - alpha * Sparse(G * At);
    Sparse BtT = Bt.transpose();
    Sparse mBt = -Bt;
    return compressed(block2(At, BtT, mBt, Chat));
}

Sparse lau_L(const Sparse& At, const Sparse& B, double alpha) {
    const Vec dinv = inverse_diagonal(At);
    Sparse G = alpha * Sparse(B * dinv.asDiagonal());
    Sparse Z(At.rows(), B.rows());
    return compressed(block2(speye(At.rows()), Z, G, Sparse(-speye(B.rows()))));
}

Sparse lau_U(const Sparse& At, const Sparse& B, double alpha) {
    const Vec dinv = inverse_diagonal(At);
    Sparse DBT = -alpha * Sparse(dinv.asDiagonal() * Sparse(B.transpose()));
    Sparse Z(B.rows(), At.cols());
    return compressed(block2(speye(At.rows()), DBT, Z, speye(B.rows())));
}

Sparse prolongation_velocity(int n) {
    if (coarse_dim(n) < 1) throw dimension_error("prolongation: degenerate coarse size");
    const std::vector<int> dims{n, n};
    return compressed(Sparse(toeplitz_sparse(p4(), dims) * cutting_matrix(dims, 4)));
}

Sparse prolongation_pressure(int n) {
    if (coarse_dim(n) < 1) throw dimension_error("prolongation: degenerate coarse size");
    const std::vector<int> dims{n, n};
    return compressed(Sparse(toeplitz_sparse(p_bilinear_scalar(), dims) * cutting_matrix(dims, 1)));
}

double estimate_alpha(const Sparse& At, int steps) {
    const Vec dinv = inverse_diagonal(At);
    const Vec s = dinv.cwiseSqrt();
    Vec v(At.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
    v.normalize();
    double lam = 0.0;
    for (int k = 0; k < steps; ++k) {
        Vec w = s.cwiseProduct(kernels::spmv(At, Vec(s.cwiseProduct(v))));
        lam = v.dot(w);
        v = w / w.norm();
    }
    return 1.0 / lam;
}

CoarseBlocks coarsen_3sp(const Sparse& At, const Sparse& B, const Sparse& C, double alpha, const Sparse& PA,
                         const Sparse& PC) {
    const Vec dinv = inverse_diagonal(At);
    Sparse G = B * dinv.asDiagonal();
    Sparse Bt = B - alpha * Sparse(G * At);
    Sparse PAT = PA.transpose(), PCT = PC.transpose();
    CoarseBlocks out;
    out.At = compressed(galerkin_triple(PAT, At, PA));
    out.B = compressed(galerkin_triple(PCT, Bt, PA));
    out.C = compressed(galerkin_triple(PCT, build_chat(At, B, C, alpha), PC));
    return out;
}

Sparse composite_coarse(const Sparse& At, const Sparse& B, const Sparse& C, double alpha, const Sparse& PA,
                        const Sparse& PC) {
    const long nv = At.rows(), np = B.rows();
    const Vec dinv = inverse_diagonal(At);
    const Sparse lower = block2(speye(nv), Sparse(nv, np), Sparse(alpha * Sparse(B * dinv.asDiagonal())), speye(np));
    const Sparse upper = lau_U(At, B, alpha);
    const Sparse flipped = block2(At, Sparse(B.transpose()), Sparse(-B), C);
    const Sparse Pr = blkdiag(PA, PC);
    const Sparse S = blkdiag(speye(PA.cols()), Sparse(-speye(PC.cols())));
    const Sparse R = S * Sparse(Pr.transpose()) * lower;
    return compressed(Sparse(R * flipped * upper * Pr));
}

double composite_discrepancy(const Hierarchy& h, std::size_t l) {
    if (l + 1 >= h.depth()) throw std::invalid_argument("composite_discrepancy: no coarser level");
    const Level& f = h.level(l);
    const Level& c = h.level(l + 1);
    if (!f.transformed) throw std::invalid_argument("composite_discrepancy: hierarchy is not transformed");
    const Sparse PA = f.P.topLeftCorner(f.nv(), c.nv());
    const Sparse PC = f.P.bottomRightCorner(f.np(), c.np());
    const Sparse comp = composite_coarse(f.At, f.B, f.C, f.alpha, PA, PC);
    return Sparse(c.A - comp).norm() / c.A.norm();
}

CoarseBlocks coarsen_plain(const Sparse& At, const Sparse& B, const Sparse& C, const Sparse& PA, const Sparse& PC) {
    Sparse PAT = PA.transpose(), PCT = PC.transpose();
    CoarseBlocks out;
    out.At = compressed(galerkin_triple(PAT, At, PA));
    out.B = compressed(galerkin_triple(PCT, B, PA));
    out.C = compressed(galerkin_triple(PCT, C, PC));
    return out;
}

Vec Level::apply_L(const Vec& r) const {
    Vec out(r.size());
    out.head(nv()) = r.head(nv());
    Vec t = dinv_At.cwiseProduct(r.head(nv()));
    out.tail(np()) = alpha * kernels::spmv(B, t) - r.tail(np());
    return out;
}

Vec Level::apply_U(const Vec& y) const {
    Vec out(y.size());
    Vec t = B.transpose() * y.tail(np());
    out.head(nv()) = y.head(nv()) - alpha * dinv_At.cwiseProduct(t);
    out.tail(np()) = y.tail(np());
    return out;
}

// ---------------------------------------------------------------------------

class CoarseSolver {
  public:
    explicit CoarseSolver(const Sparse& A) {
        const long n = A.rows();
        if (n <= 3000) {
            dense_.compute(Eigen::MatrixXd(A));
            kind_ = 0;
            return;
        }
        Eigen::SparseMatrix<double> a = A;
        ldlt_.compute(a);
        if (ldlt_.info() == Eigen::Success) {
            kind_ = 1;
            // accept the factorization only if it reproduces the operator
            Vec probe = Vec::Ones(n);
            Vec x = ldlt_.solve(probe);
            if (x.allFinite() && (A * x - probe).norm() <= 1e-8 * probe.norm()) return;
        }
        lu_.analyzePattern(a);
        lu_.factorize(a);
        if (lu_.info() != Eigen::Success) throw std::runtime_error("coarse solve: factorization failed");
        kind_ = 2;
    }

    Vec solve(const Vec& b) const {
        switch (kind_) {
        case 0: return dense_.solve(b);
        case 1: return ldlt_.solve(b);
        default: return lu_.solve(b);
        }
    }

  private:
    int kind_ = 0;
    Eigen::PartialPivLU<Eigen::MatrixXd> dense_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

Hierarchy::Hierarchy(const SaddleSystem& sys, const CycleConfig& cfg) : cfg_(cfg) {
    validate(cfg_);
    build(sys);
}

bool Hierarchy::same_setup(const CycleConfig& a, const CycleConfig& b) {
    const bool two_a = a.cycle == CycleKind::tgm, two_b = b.cycle == CycleKind::tgm;
    return two_a == two_b && a.smoother == b.smoother && a.alpha == b.alpha && a.min_coarse_n == b.min_coarse_n;
}

Hierarchy Hierarchy::with_config(const CycleConfig& cfg) const {
    validate(cfg);
    if (!same_setup(cfg_, cfg)) throw std::invalid_argument("with_config: configuration needs a different setup");
    Hierarchy h;
    h.cfg_ = cfg;
    h.levels_ = levels_;
    return h;
}

void Hierarchy::build(const SaddleSystem& sys) {
    const bool transformed = cfg_.smoother == SmootherKind::jacobi;
    const std::size_t max_levels = cfg_.cycle == CycleKind::tgm ? 2 : static_cast<std::size_t>(INT_MAX);
    Level top;
    top.n = sys.n;
    top.transformed = transformed;
    top.At = compressed(sys.At);
    top.B = compressed(sys.B);
    top.C = compressed(sys.C);
    top.alpha = cfg_.alpha;
    levels_.push_back(std::move(top));
    while (levels_.size() < max_levels && coarse_dim(levels_.back().n) >= cfg_.min_coarse_n) {
        Level& cur = levels_.back();
        const Sparse pa1 = prolongation_velocity(cur.n);
        const Sparse PA = blkdiag(pa1, pa1);
        const Sparse PC = prolongation_pressure(cur.n);
        cur.P = compressed(blkdiag(PA, PC));
        cur.PT = compressed(Sparse(cur.P.transpose()));
        CoarseBlocks cb = transformed ? coarsen_3sp(cur.At, cur.B, cur.C, cur.alpha, PA, PC)
                                      : coarsen_plain(cur.At, cur.B, cur.C, PA, PC);
        Level next;
        next.n = coarse_dim(cur.n);
        next.transformed = transformed;
        next.At = std::move(cb.At);
        next.B = std::move(cb.B);
        next.C = std::move(cb.C);
        next.alpha = transformed ? estimate_alpha(next.At) : 0.0;
        levels_.push_back(std::move(next));
    }
    if (levels_.size() < 2) throw std::invalid_argument("hierarchy: problem too small to coarsen");
    for (auto& lev : levels_) finalize_level(lev);
    levels_.back().direct = std::make_shared<CoarseSolver>(levels_.back().A);
}

void Hierarchy::finalize_level(Level& lev) const {
    lev.A = compressed(saddle_matrix(lev.At, lev.B, lev.C));
    lev.dinv_At = inverse_diagonal(lev.At);
    if (lev.transformed) {
        lev.Chat = build_chat(lev.At, lev.B, lev.C, lev.alpha);
        lev.Ahat = build_ahat(lev.At, lev.B, lev.Chat, lev.alpha);
        lev.dinv_hat = inverse_diagonal(lev.Ahat);
    } else {
        if (&lev != &levels_.back()) lev.vanka = std::make_shared<VankaSmoother>(lev.At, lev.B, lev.C);
    }
}

void Hierarchy::smooth(const Level& lev, const Vec& rhs, Vec& y, int nu, double omega) const {
    if (nu <= 0) return;
    if (lev.transformed)
        jacobi_apply(lev.Ahat, lev.dinv_hat, omega, rhs, y, nu);
    else
        lev.vanka->apply(lev.A, rhs, y, nu);
}

void Hierarchy::cycle_at(std::size_t l, const Vec& rhs, Vec& y) const {
    const Level& lev = levels_[l];
    const Sparse& M = lev.transformed ? lev.Ahat : lev.A;
    smooth(lev, rhs, y, cfg_.pre, cfg_.omega_pre);
    const Vec r = kernels::residual(M, y, rhs);
    Vec rc = kernels::spmv(lev.PT, r);
    if (lev.transformed) rc.tail(levels_[l + 1].np()) *= -1.0;
    const Vec e = solve_saddle(l + 1, rc);
    y += kernels::spmv(lev.P, e);
    smooth(lev, rhs, y, cfg_.post, cfg_.omega_post);
}

Vec Hierarchy::solve_saddle(std::size_t l, const Vec& rhs) const {
    const Level& lev = levels_[l];
    if (l + 1 == levels_.size()) return lev.direct->solve(rhs);
    const Vec bh = lev.transformed ? lev.apply_L(rhs) : rhs;
    Vec z = Vec::Zero(lev.size());
    for (int g = 0; g < cfg_.gamma(); ++g) cycle_at(l, bh, z);
    return lev.transformed ? lev.apply_U(z) : z;
}

void Hierarchy::cycle(const Vec& rhs, Vec& y) const { cycle_at(0, rhs, y); }

std::string Hierarchy::describe() const {
    std::ostringstream os;
    os << "level      n     size    nnz(At)     nnz(B)  nnz(Chat)  row(At)  row(B) row(Chat)    alpha   omega\n";
    char buf[256];
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        const Level& v = levels_[l];
        const Sparse& c = v.transformed ? v.Chat : v.C;
        std::snprintf(buf, sizeof buf, "%5zu %6d %8ld %10ld %10ld %10ld %8d %7d %9d %8.5f %7.4f\n", l, v.n, v.size(),
                      static_cast<long>(v.At.nonZeros()), static_cast<long>(v.B.nonZeros()),
                      static_cast<long>(c.nonZeros()), max_row_nnz(v.At, 1e-14), max_row_nnz(v.B, 1e-14),
                      max_row_nnz(c, 1e-14), v.alpha, cfg_.omega_post);
        os << buf;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

ConvergenceReport solve(const Hierarchy& h, const Vec& b) {
    const auto t0 = std::chrono::steady_clock::now();
    const Level& top = h.level(0);
    const CycleConfig& cfg = h.config();
    const Vec bh = top.transformed ? top.apply_L(b) : b;
    const double nbh = bh.norm(), nb = b.norm();
    Vec y = Vec::Zero(top.size());
    ConvergenceReport rep;
    if (nbh == 0.0) {
        rep.converged = true;
        rep.x = y;
        return rep;
    }
    const Sparse& M = top.transformed ? top.Ahat : top.A;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        h.cycle(bh, y);
        const double rel = kernels::residual(M, y, bh).norm() / nbh;
        const Vec x = top.transformed ? top.apply_U(y) : y;
        rep.residual_history.push_back(rel);
        rep.original_history.push_back(kernels::residual(top.A, x, b).norm() / nb);
        rep.iterations = it;
        if (!std::isfinite(rel)) break;
        if (rel < cfg.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.x = top.transformed ? top.apply_U(y) : y;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ConvergenceReport solve(const SaddleSystem& sys, const Vec& b, const CycleConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Hierarchy h(sys, cfg);
    const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ConvergenceReport rep = solve(h, b);
    rep.setup_seconds = setup;
    return rep;
}

Eigen::MatrixXd tgm_iteration_matrix(const Hierarchy& h, long cap) {
    const Level& top = h.level(0);
    if (!top.transformed) throw std::invalid_argument("tgm_iteration_matrix: requires the transformed system");
    if (top.size() > cap) throw size_cap_exceeded("tgm_iteration_matrix: size cap exceeded");
    const CycleConfig& cfg = h.config();
    const Eigen::MatrixXd A = Eigen::MatrixXd(top.Ahat);
    const Eigen::MatrixXd P = Eigen::MatrixXd(top.P);
    const long N = A.rows();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
    const Eigen::MatrixXd Ac = P.transpose() * A * P;
    const Eigen::MatrixXd cgc = I - P * Ac.partialPivLu().solve(P.transpose() * A);
    const Eigen::MatrixXd DA = top.dinv_hat.asDiagonal() * A;
    const Eigen::MatrixXd Spre = I - cfg.omega_pre * DA, Spost = I - cfg.omega_post * DA;
    Eigen::MatrixXd M = cgc;
    for (int k = 0; k < cfg.pre; ++k) M = M * Spre;
    for (int k = 0; k < cfg.post; ++k) M = Spost * M;
    return M;
}

double spectral_radius_power(const Eigen::MatrixXd& M, int iters) {
    Vec v(M.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
    v.normalize();
    // average growth over the second half of the run to damp oscillation from complex pairs
    double logsum = 0.0;
    int counted = 0;
    for (int k = 0; k < iters; ++k) {
        Vec w = M * v;
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        if (k >= iters / 2) {
            logsum += std::log(nw);
            ++counted;
        }
        v = w / nw;
    }
    return std::exp(logsum / counted);
}

}  // namespace smg
