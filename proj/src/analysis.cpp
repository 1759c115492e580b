#include "smg/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace smg {

namespace {

constexpr double pi = std::numbers::pi;

double lambda_min(const TrigPoly& f, double t1, double t2) {
    Eigen::MatrixXcd m = f(t1, t2);
    if (m.size() == 1) return m(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double wrap_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
}

}  // namespace

ZeroStructureReport check_zero_structure(const TrigPoly& f, int grid_n) {
    if (f.levels() != 2 || !f.is_hermitian(1e-12)) throw std::invalid_argument("check_zero_structure: need a Hermitian bivariate symbol");
    const double h = 2.0 * pi / grid_n;
    std::vector<double> lm(static_cast<std::size_t>(grid_n) * grid_n);
    double scale = 0.0;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            const double v = lambda_min(f, h * i, h * j);
            lm[i * grid_n + j] = v;
            scale = std::max(scale, std::abs(v));
        }
    ZeroStructureReport rep;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            if (lm[i * grid_n + j] <= 1e-12 * std::max(scale, 1.0)) rep.zeros.push_back({h * i, h * j});
    rep.min_away = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            bool near = false;
            for (const auto& z : rep.zeros)
                near = near || (wrap_dist(h * i, z[0]) < 2.5 * h && wrap_dist(h * j, z[1]) < 2.5 * h);
            if (!near) rep.min_away = std::min(rep.min_away, lm[i * grid_n + j]);
        }
    if (!rep.found()) return rep;

    // least-squares slope of log lambda_min against log t along the two axes and the diagonal
    const auto z = rep.zeros.front();
    const double dirs[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {M_SQRT1_2, M_SQRT1_2}};
    double slope_sum = 0.0;
    for (const auto& d : dirs) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const double v = lambda_min(f, z[0] + t * d[0], z[1] + t * d[1]);
            const double x = std::log(t), y = std::log(std::max(v, 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        slope_sum += (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    rep.order = slope_sum / 3.0;
    return rep;
}

Eigen::MatrixXcd projector_symbol(const TrigPoly& p, const std::vector<double>& theta) {
    const int d = p.levels();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(p.cols(), p.cols());
    for (int mask = 0; mask < (1 << d); ++mask) {
        std::vector<double> xi(theta);
        for (int l = 0; l < d; ++l)
            if (mask & (1 << l)) xi[l] += pi;
        const Eigen::MatrixXcd pm = p(xi);
        sum += pm.adjoint() * pm;
    }
    const Eigen::MatrixXcd pt = p(theta);
    return pt * sum.partialPivLu().solve(pt.adjoint());
}

ProjectorReport check_projector(const TrigPoly& p, const TrigPoly& f, const std::vector<double>& theta0,
                                const Eigen::VectorXcd& q, int grid_n) {
    if (p.rows() != f.rows() || p.levels() != f.levels()) throw dimension_error("check_projector: incompatible symbols");
    const int d = p.levels();
    ProjectorReport rep;
    rep.positivity_min = std::numeric_limits<double>::infinity();
    const double h = 2.0 * pi / grid_n;
    const long total = static_cast<long>(std::pow(grid_n, d));
    for (long lin = 0; lin < total; ++lin) {
        std::vector<double> th(d);
        long r = lin;
        for (int l = d - 1; l >= 0; --l) {
            th[l] = h * static_cast<double>(r % grid_n);
            r /= grid_n;
        }
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(p.cols(), p.cols());
        for (int mask = 0; mask < (1 << d); ++mask) {
            std::vector<double> xi(th);
            for (int l = 0; l < d; ++l)
                if (mask & (1 << l)) xi[l] += pi;
            const Eigen::MatrixXcd pm = p(xi);
            sum += pm.adjoint() * pm;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (sum + sum.adjoint()), Eigen::EigenvaluesOnly);
        rep.positivity_min = std::min(rep.positivity_min, es.eigenvalues()(0));
    }
    if (!(rep.positivity_min > 1e-12)) {
        rep.preservation = std::numeric_limits<double>::infinity();
        rep.ratio_max = std::numeric_limits<double>::infinity();
        rep.eigen_ratio_max = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.preservation = (projector_symbol(p, theta0) * q - q).norm();

    // ray approaches from 8 directions
    std::vector<double> by_radius;
    for (double rad : {1e-1, 1e-2, 1e-3, 1e-4}) {
        double worst = 0.0;
        for (int k = 0; k < 8; ++k) {
            std::vector<double> th(theta0);
            const double ang = 2.0 * pi * k / 8.0 + 0.1;
            th[0] += rad * std::cos(ang);
            if (d > 1) th[1] += rad * std::sin(ang);
            const Eigen::MatrixXcd fm = f(th);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ef(0.5 * (fm + fm.adjoint()));
            const double lmin = ef.eigenvalues()(0);
            const Eigen::VectorXcd v = ef.eigenvectors().col(0);
            const Eigen::MatrixXcd s = projector_symbol(p, th);
            const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(s.rows(), s.cols());
            const double res = ((I - s) * v).squaredNorm();
            worst = std::max(worst, res / lmin);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
            rep.eigen_ratio_max = std::max(rep.eigen_ratio_max, std::abs(1.0 - es.eigenvalues().maxCoeff()) / lmin);
        }
        by_radius.push_back(worst);
        rep.ratio_max = std::max(rep.ratio_max, worst);
    }
    rep.ratio_bounded = std::isfinite(rep.ratio_max) && by_radius.back() <= 1.5 * by_radius[by_radius.size() - 2] + 1e-8;
    return rep;
}

double idempotency_residual(const TrigPoly& p, int grid_n) {
    double worst = 0.0;
    const double h = 2.0 * pi / grid_n;
    for (int i = 0; i < grid_n; ++i) {
        const Eigen::MatrixXcd s = projector_symbol(p, {h * i});
        worst = std::max(worst, (s * s - s).cwiseAbs().maxCoeff());
    }
    return worst;
}

std::vector<GrowthRow> growth_report(const TrigPoly& f, const std::vector<int>& n_list, long cap) {
    std::vector<GrowthRow> rows;
    for (int n : n_list) {
        const std::vector<int> dims(f.levels(), n);
        const Eigen::MatrixXcd T = StructuredOperator(Kind::toeplitz, f, dims).dense(cap);
        Eigen::VectorXd ev;
        if (f.has_real_coefficients()) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.real(), Eigen::EigenvaluesOnly);
            ev = es.eigenvalues();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T, Eigen::EigenvaluesOnly);
            ev = es.eigenvalues();
        }
        rows.push_back({n, ev(0), ev(ev.size() - 1), ev(ev.size() - 1) / ev(0)});
    }
    return rows;
}

std::vector<DegreeRow> coarse_degree_report(const Hierarchy& h) {
    std::vector<DegreeRow> rows;
    for (std::size_t l = 0; l < h.depth(); ++l) {
        const Level& v = h.level(l);
        const Sparse& c = v.transformed ? v.Chat : v.C;
        auto rel = [](const Sparse& m) {
            double mx = 0.0;
            for (int k = 0; k < m.nonZeros(); ++k) mx = std::max(mx, std::abs(m.valuePtr()[k]));
            return 1e-13 * mx;
        };
        rows.push_back({static_cast<int>(l), v.n, max_row_nnz(v.At, rel(v.At)), max_row_nnz(v.B, rel(v.B)),
                        max_row_nnz(c, rel(c))});
    }
    return rows;
}

bool bandwidth_stable(const std::vector<DegreeRow>& rows, int from) {
    if (static_cast<int>(rows.size()) <= from + 1) return true;
    for (std::size_t l = from + 1; l < rows.size(); ++l) {
        const auto& a = rows[from];
        const auto& b = rows[l];
        if (a.row_At != b.row_At || a.row_B != b.row_B || a.row_C != b.row_C) return false;
    }
    return true;
}

std::string zero_report_markdown(const std::string& name, const ZeroStructureReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << "## zero structure: " << name << "\n\n| quantity | value |\n|---|---|\n";
    os << "| zeros found | " << r.zeros.size() << " |\n";
    for (const auto& z : r.zeros) os << "| zero at | (" << z[0] << ", " << z[1] << ") |\n";
    os << "| eigenvalue index | " << r.eigen_index + 1 << " |\n";
    os << "| order | " << std::round(r.order * 10.0) / 10.0 << " |\n";
    os << "| min lambda_min away from zeros | " << r.min_away << " |\n";
    return os.str();
}

std::string projector_report_markdown(const std::string& name, const ProjectorReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << "## projector: " << name << "\n\n| quantity | value |\n|---|---|\n";
    os << "| positivity min | " << r.positivity_min << " |\n";
    os << "| preservation residual | " << r.preservation << " |\n";
    os << "| ratio max | " << r.ratio_max << " |\n";
    os << "| ratio bounded | " << (r.ratio_bounded ? "yes" : "no") << " |\n";
    os << "| eigenvalue-form ratio max | " << r.eigen_ratio_max << " |\n";
    return os.str();
}

}  // namespace smg
