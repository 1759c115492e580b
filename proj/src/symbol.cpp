#include "smg/symbol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace smg {

namespace {

const cplx I1(0.0, 1.0);

void check_same_shape(const TrigPoly& f, const TrigPoly& g, const char* what) {
    if (f.levels() != g.levels() || f.rows() != g.rows() || f.cols() != g.cols())
        throw dimension_error(std::string(what) + ": shape mismatch");
}

// scalar bivariate polynomial from (k1, k2, coefficient) triples
TrigPoly scalar2(std::initializer_list<std::tuple<int, int, double>> terms, double s = 1.0) {
    TrigPoly f(2, 1, 1);
    for (const auto& [a, b, c] : terms) f.add_entry({a, b}, 0, 0, s * c);
    return f;
}

TrigPoly scalar1(std::initializer_list<std::pair<int, cplx>> terms) {
    TrigPoly f(1, 1, 1);
    for (const auto& [k, c] : terms) f.add_entry({k}, 0, 0, c);
    return f;
}

TrigPoly stack_rows(const std::vector<TrigPoly>& parts) {
    TrigPoly out(parts.front().levels(), static_cast<int>(parts.size()), 1);
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (const auto& [k, c] : parts[r].coefficients()) out.add_entry(k, static_cast<int>(r), 0, c(0, 0));
    return out;
}

}  // namespace

TrigPoly::TrigPoly(int d, int rows, int cols) : d_(d), rows_(rows), cols_(cols) {
    if (d <= 0 || rows <= 0 || cols <= 0) throw dimension_error("TrigPoly: non-positive dimension");
}

TrigPoly TrigPoly::constant(int d, const Eigen::MatrixXcd& c) {
    TrigPoly f(d, static_cast<int>(c.rows()), static_cast<int>(c.cols()));
    f.add_coeff(MultiIndex(d, 0), c);
    return f;
}

TrigPoly TrigPoly::identity(int d, int s) { return constant(d, Eigen::MatrixXcd::Identity(s, s)); }

TrigPoly TrigPoly::monomial(const MultiIndex& k, cplx c) {
    TrigPoly f(static_cast<int>(k.size()), 1, 1);
    f.add_entry(k, 0, 0, c);
    return f;
}

Eigen::MatrixXcd TrigPoly::coeff(const MultiIndex& k) const {
    auto it = coef_.find(k);
    if (it == coef_.end()) return Eigen::MatrixXcd::Zero(rows_, cols_);
    return it->second;
}

void TrigPoly::add_coeff(const MultiIndex& k, const Eigen::MatrixXcd& c) {
    if (static_cast<int>(k.size()) != d_) throw dimension_error("add_coeff: index length");
    if (c.rows() != rows_ || c.cols() != cols_) throw dimension_error("add_coeff: block shape");
    auto it = coef_.find(k);
    if (it == coef_.end())
        coef_.emplace(k, c);
    else
        it->second += c;
}

void TrigPoly::add_entry(const MultiIndex& k, int r, int c, cplx v) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows_, cols_);
    m(r, c) = v;
    add_coeff(k, m);
}

std::vector<int> TrigPoly::degree() const {
    std::vector<int> deg(d_, 0);
    for (const auto& [k, c] : coef_)
        for (int j = 0; j < d_; ++j) deg[j] = std::max(deg[j], std::abs(k[j]));
    return deg;
}

bool TrigPoly::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (const auto& [k, c] : coef_) {
        MultiIndex mk(k);
        for (auto& v : mk) v = -v;
        if ((coeff(mk).adjoint() - c).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

bool TrigPoly::has_real_coefficients(double tol) const {
    for (const auto& [k, c] : coef_)
        if (c.imag().cwiseAbs().maxCoeff() > tol) return false;
    return true;
}

Eigen::MatrixXcd TrigPoly::operator()(const std::vector<double>& theta) const {
    if (static_cast<int>(theta.size()) != d_) throw dimension_error("evaluate: wrong number of variables");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows_, cols_);
    for (const auto& [k, c] : coef_) {
        double ph = 0.0;
        for (int j = 0; j < d_; ++j) ph += k[j] * theta[j];
        out += std::polar(1.0, ph) * c;
    }
    return out;
}

TrigPoly TrigPoly::entry(int r, int c) const {
    TrigPoly out(d_, 1, 1);
    for (const auto& [k, m] : coef_)
        if (m(r, c) != cplx(0.0)) out.add_entry(k, 0, 0, m(r, c));
    return out;
}

TrigPoly TrigPoly::pruned(double tol) const {
    TrigPoly out(d_, rows_, cols_);
    for (const auto& [k, c] : coef_)
        if (c.cwiseAbs().maxCoeff() > tol) out.coef_.emplace(k, c);
    return out;
}

TrigPoly add(const TrigPoly& f, const TrigPoly& g) {
    check_same_shape(f, g, "add");
    TrigPoly out = f;
    for (const auto& [k, c] : g.coefficients()) out.add_coeff(k, c);
    return out;
}

TrigPoly scale(const TrigPoly& f, cplx s) {
    TrigPoly out(f.levels(), f.rows(), f.cols());
    for (const auto& [k, c] : f.coefficients()) out.add_coeff(k, s * c);
    return out;
}

TrigPoly adjoint(const TrigPoly& f) {
    TrigPoly out(f.levels(), f.cols(), f.rows());
    for (const auto& [k, c] : f.coefficients()) {
        MultiIndex mk(k);
        for (auto& v : mk) v = -v;
        out.add_coeff(mk, c.adjoint());
    }
    return out;
}

TrigPoly multiply(const TrigPoly& f, const TrigPoly& g) {
    if (f.levels() != g.levels() || f.cols() != g.rows()) throw dimension_error("multiply: shape mismatch");
    TrigPoly out(f.levels(), f.rows(), g.cols());
    for (const auto& [kf, cf] : f.coefficients())
        for (const auto& [kg, cg] : g.coefficients()) {
            MultiIndex k(kf);
            for (std::size_t j = 0; j < k.size(); ++j) k[j] += kg[j];
            out.add_coeff(k, cf * cg);
        }
    return out.pruned(0.0);
}

TrigPoly tensor(const TrigPoly& f, const TrigPoly& g) {
    TrigPoly out(f.levels() + g.levels(), f.rows() * g.rows(), f.cols() * g.cols());
    for (const auto& [kf, cf] : f.coefficients())
        for (const auto& [kg, cg] : g.coefficients()) {
            MultiIndex k(kf);
            k.insert(k.end(), kg.begin(), kg.end());
            Eigen::MatrixXcd kr(cf.rows() * cg.rows(), cf.cols() * cg.cols());
            for (Eigen::Index i = 0; i < cf.rows(); ++i)
                for (Eigen::Index j = 0; j < cf.cols(); ++j)
                    kr.block(i * cg.rows(), j * cg.cols(), cg.rows(), cg.cols()) = cf(i, j) * cg;
            out.add_coeff(k, kr);
        }
    return out;
}

TrigPoly permute_vars(const TrigPoly& f, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != f.levels()) throw dimension_error("permute_vars: length");
    TrigPoly out(f.levels(), f.rows(), f.cols());
    for (const auto& [k, c] : f.coefficients()) {
        MultiIndex nk(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) nk[j] = k[perm[j]];
        out.add_coeff(nk, c);
    }
    return out;
}

TrigPoly swap_vars(const TrigPoly& f) { return permute_vars(f, {1, 0}); }

TrigPoly reflect(const TrigPoly& f) {
    TrigPoly out(f.levels(), f.rows(), f.cols());
    for (const auto& [k, c] : f.coefficients()) {
        MultiIndex mk(k);
        for (auto& v : mk) v = -v;
        out.add_coeff(mk, c);
    }
    return out;
}

TrigPoly permute_components(const TrigPoly& f, const std::vector<int>& rows, const std::vector<int>& cols) {
    TrigPoly out(f.levels(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (const auto& [k, c] : f.coefficients()) {
        Eigen::MatrixXcd m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = c(rows[i], cols[j]);
        out.add_coeff(k, m);
    }
    return out;
}

TrigPoly block(const std::vector<std::vector<const TrigPoly*>>& blocks, const std::vector<int>& row_sizes,
               const std::vector<int>& col_sizes, int d) {
    int nr = 0, nc = 0;
    for (int r : row_sizes) nr += r;
    for (int c : col_sizes) nc += c;
    TrigPoly out(d, nr, nc);
    int r0 = 0;
    for (std::size_t bi = 0; bi < row_sizes.size(); ++bi) {
        int c0 = 0;
        for (std::size_t bj = 0; bj < col_sizes.size(); ++bj) {
            const TrigPoly* b = blocks[bi][bj];
            if (b) {
                if (b->rows() != row_sizes[bi] || b->cols() != col_sizes[bj] || b->levels() != d)
                    throw dimension_error("block: inconsistent block shape");
                for (const auto& [k, c] : b->coefficients()) {
                    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nr, nc);
                    m.block(r0, c0, c.rows(), c.cols()) = c;
                    out.add_coeff(k, m);
                }
            }
            c0 += col_sizes[bj];
        }
        r0 += row_sizes[bi];
    }
    return out;
}

Eigen::VectorXd eig_at(const TrigPoly& f, const std::vector<double>& theta) {
    if (!f.is_hermitian(1e-12)) throw std::invalid_argument("eig_at: symbol is not Hermitian");
    Eigen::MatrixXcd m = f(theta);
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double sup_norm(const TrigPoly& f, int grid_n) {
    if (f.levels() == 2)
        return sup_norm([&f](double a, double b) { return f(a, b); }, grid_n);
    if (grid_n < 8) throw std::invalid_argument("sup_norm: grid too coarse");
    double best = 0.0;
    const double h = 2.0 * std::numbers::pi / grid_n;
    std::vector<int> idx(f.levels(), 0);
    while (true) {
        std::vector<double> th(f.levels());
        for (int j = 0; j < f.levels(); ++j) th[j] = h * idx[j];
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f(th));
        best = std::max(best, svd.singularValues()(0));
        int j = f.levels() - 1;
        while (j >= 0 && ++idx[j] == grid_n) idx[j--] = 0;
        if (j < 0) break;
    }
    return best;
}

double sup_norm(const std::function<Eigen::MatrixXcd(double, double)>& f, int grid_n, double* arg1,
                double* arg2) {
    if (grid_n < 8) throw std::invalid_argument("sup_norm: grid too coarse");
    double best = -1.0;
    const double h = 2.0 * std::numbers::pi / grid_n;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            Eigen::MatrixXcd m;
            try {
                m = f(h * i, h * j);
            } catch (const singular_point&) {
                continue;
            }
            double v = m.size() == 1 ? std::abs(m(0, 0)) : Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
            if (v > best) {
                best = v;
                if (arg1) *arg1 = h * i;
                if (arg2) *arg2 = h * j;
            }
        }
    return std::max(best, 0.0);
}

TrigPoly stokes_fA() {
    using T = std::vector<std::pair<int, int>>;
    // entries of the bracket, all scaled by -1/3; diagonal is -8
    const T one_m1{{0, 0}, {-1, 0}}, one_p1{{0, 0}, {1, 0}};
    const T one_m2{{0, 0}, {0, -1}}, one_p2{{0, 0}, {0, 1}};
    auto phi = [](int s1, int s2) { return T{{0, 0}, {s1, 0}, {0, s2}, {s1, s2}}; };
    const T* pattern[4][4] = {};
    T p03 = phi(-1, -1), p12 = phi(1, -1), p21 = phi(-1, 1), p30 = phi(1, 1);
    pattern[0][1] = &one_m1;
    pattern[0][2] = &one_m2;
    pattern[0][3] = &p03;
    pattern[1][0] = &one_p1;
    pattern[1][2] = &p12;
    pattern[1][3] = &one_m2;
    pattern[2][0] = &one_p2;
    pattern[2][1] = &p21;
    pattern[2][3] = &one_m1;
    pattern[3][0] = &p30;
    pattern[3][1] = &one_p2;
    pattern[3][2] = &one_p1;
    TrigPoly f(2, 4, 4);
    for (int r = 0; r < 4; ++r) {
        f.add_entry({0, 0}, r, r, 8.0 / 3.0);
        for (int c = 0; c < 4; ++c)
            if (pattern[r][c])
                for (auto [a, b] : *pattern[r][c]) f.add_entry({a, b}, r, c, -1.0 / 3.0);
    }
    return f;
}

TrigPoly stokes_fAy() { return swap_vars(stokes_fA()); }

TrigPoly h_symbol() {
    TrigPoly h(1, 2, 2);
    h.add_entry({0}, 0, 0, 1.0);
    h.add_entry({0}, 1, 1, 1.0);
    h.add_entry({0}, 0, 1, 1.0);
    h.add_entry({-1}, 0, 1, 1.0);
    h.add_entry({0}, 1, 0, 1.0);
    h.add_entry({1}, 1, 0, 1.0);
    return h;
}

TrigPoly stokes_fBx() {
    // -i sin(t1), i sin(t1), cos terms written through exponentials
    const TrigPoly msin1 = scalar2({{1, 0, -0.5}, {-1, 0, 0.5}});
    const TrigPoly psin1 = scalar2({{1, 0, 0.5}, {-1, 0, -0.5}});
    const TrigPoly one_2cos2 = scalar2({{0, 0, 1.0}, {0, 1, 1.0}, {0, -1, 1.0}});
    const TrigPoly one_m_e1 = scalar2({{0, 0, 1.0}, {1, 0, -1.0}});
    const TrigPoly five_cos2 = scalar2({{0, 0, 5.0}, {0, 1, 0.5}, {0, -1, 0.5}});
    const TrigPoly one_p_e2 = scalar2({{0, 0, 1.0}, {0, 1, 1.0}});
    return stack_rows({scale(multiply(msin1, one_2cos2), 1.0 / 48.0),
                       scale(multiply(one_m_e1, five_cos2), 1.0 / 24.0),
                       scale(multiply(psin1, one_p_e2), 1.0 / 8.0),
                       scale(multiply(one_m_e1, one_p_e2), 1.0 / 8.0)});
}

TrigPoly stokes_fBy() {
    const TrigPoly msin2 = scalar2({{0, 1, -0.5}, {0, -1, 0.5}});
    const TrigPoly one_2cos1 = scalar2({{0, 0, 1.0}, {1, 0, 1.0}, {-1, 0, 1.0}});
    const TrigPoly one_p_e1 = scalar2({{0, 0, 1.0}, {1, 0, 1.0}});
    const TrigPoly five_cos1 = scalar2({{0, 0, 5.0}, {1, 0, 0.5}, {-1, 0, 0.5}});
    const TrigPoly one_m_e2 = scalar2({{0, 0, 1.0}, {0, 1, -1.0}});
    return stack_rows({scale(multiply(one_2cos1, msin2), 1.0 / 48.0),
                       scale(multiply(one_p_e1, msin2), 1.0 / 8.0),
                       scale(multiply(five_cos1, one_m_e2), 1.0 / 24.0),
                       scale(multiply(one_p_e1, one_m_e2), 1.0 / 8.0)});
}

TrigPoly p2() {
    TrigPoly p(1, 2, 2);
    p.add_entry({0}, 0, 0, 1.0);
    p.add_entry({-1}, 0, 0, 1.0);
    p.add_entry({1}, 0, 1, 1.0);
    p.add_entry({0}, 0, 1, 1.0);
    p.add_entry({-1}, 1, 0, 2.0);
    p.add_entry({0}, 1, 1, 2.0);
    return p;
}

TrigPoly p4() { return tensor(p2(), p2()); }

TrigPoly p_bilinear_scalar() {
    const TrigPoly q = scalar1({{-1, 1.0}, {0, 2.0}, {1, 1.0}});
    return tensor(q, q);
}

TrigPoly g_z(double alpha, const TrigPoly& fA) {
    if (!(alpha > 0.0)) throw std::invalid_argument("g_z: alpha must be positive");
    const Eigen::MatrixXcd a0 = fA.coeff(MultiIndex(fA.levels(), 0));
    Eigen::MatrixXcd dinv = Eigen::MatrixXcd::Zero(fA.rows(), fA.rows());
    for (int j = 0; j < fA.rows(); ++j) {
        if (!(a0(j, j).real() > 0.0)) throw std::invalid_argument("g_z: non-positive diagonal coefficient");
        dinv(j, j) = 1.0 / a0(j, j).real();
    }
    TrigPoly left = TrigPoly::constant(fA.levels(), dinv);
    TrigPoly quad = multiply(multiply(left, fA), left);
    return add(TrigPoly::constant(fA.levels(), 2.0 * alpha * dinv), scale(quad, -alpha * alpha));
}

TrigPoly f_chat(double alpha) {
    const TrigPoly bx = stokes_fBx(), by = stokes_fBy();
    TrigPoly cx = multiply(multiply(adjoint(bx), g_z(alpha, stokes_fA())), bx);
    TrigPoly cy = multiply(multiply(adjoint(by), g_z(alpha, stokes_fAy())), by);
    return add(cx, cy).pruned(1e-17);
}

TrigPoly f_global() {
    const TrigPoly a = stokes_fA(), ay = stokes_fAy(), bx = stokes_fBx(), by = stokes_fBy();
    const TrigPoly bxh = adjoint(bx), byh = adjoint(by);
    return block({{&a, nullptr, &bx}, {nullptr, &ay, &by}, {&bxh, &byh, nullptr}}, {4, 4, 1}, {4, 4, 1}, 2);
}

SchurSymbol::SchurSymbol() : fA(stokes_fA()), fAy(stokes_fAy()), fBx(stokes_fBx()), fBy(stokes_fBy()) {}

double SchurSymbol::operator()(double t1, double t2) const {
    const double c1 = std::cos(t1), c2 = std::cos(t2);
    if (std::abs(1.0 - c1) < 1e-15 && std::abs(1.0 - c2) < 1e-15)
        throw singular_point("f_S: fA is singular at the origin");
    Eigen::MatrixXcd ax = fA(t1, t2), ay = fAy(t1, t2);
    Eigen::VectorXcd bx = fBx(t1, t2).col(0), by = fBy(t1, t2).col(0);
    cplx v = bx.dot(ax.ldlt().solve(bx)) + by.dot(ay.ldlt().solve(by));
    return v.real();
}

std::array<cplx, 4> eig_fA_closed_form(double t1, double t2) {
    const cplx pre = std::exp(-I1 * (t1 + t2) / 2.0);
    auto fac = [](double t, double sgn) { return std::exp(I1 * t) + sgn * std::exp(I1 * t / 2.0) + 1.0; };
    return {3.0 - pre * fac(t1, 1) * fac(t2, 1) / 3.0, 3.0 - pre * fac(t1, -1) * fac(t2, -1) / 3.0,
            3.0 + pre * fac(t2, -1) * fac(t1, 1) / 3.0, 3.0 + pre * fac(t1, -1) * fac(t2, 1) / 3.0};
}

std::string to_text(const TrigPoly& f) {
    std::ostringstream os;
    os.precision(17);
    os << f.levels() << ' ' << f.rows() << ' ' << f.cols() << '\n';
    for (const auto& [k, c] : f.coefficients())
        for (int r = 0; r < f.rows(); ++r)
            for (int j = 0; j < f.cols(); ++j) {
                if (c(r, j) == cplx(0.0)) continue;
                for (int v : k) os << v << ' ';
                os << r + 1 << ' ' << j + 1 << ' ' << c(r, j).real() << ' ' << c(r, j).imag() << '\n';
            }
    return os.str();
}

TrigPoly from_text(const std::string& s) {
    std::istringstream is(s);
    int d, r, c;
    if (!(is >> d >> r >> c)) throw std::invalid_argument("from_text: bad header");
    TrigPoly f(d, r, c);
    while (true) {
        MultiIndex k(d);
        int row, col;
        double re, im;
        if (!(is >> k[0])) break;
        for (int j = 1; j < d; ++j) is >> k[j];
        if (!(is >> row >> col >> re >> im)) throw std::invalid_argument("from_text: truncated line");
        if (row < 1 || row > r || col < 1 || col > c) throw std::invalid_argument("from_text: entry out of range");
        f.add_entry(k, row - 1, col - 1, cplx(re, im));
    }
    return f;
}

}  // namespace smg
