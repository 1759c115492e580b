#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace smg {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

class dimension_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Matrix-valued trigonometric polynomial in d variables,
//   f(theta) = sum_k c_k exp(i <k, theta>),  c_k in C^{rows x cols}.
class TrigPoly {
  public:
    TrigPoly() = default;
    TrigPoly(int d, int rows, int cols);

    static TrigPoly constant(int d, const Eigen::MatrixXcd& c);
    static TrigPoly identity(int d, int s);
    static TrigPoly zero(int d, int rows, int cols) { return TrigPoly(d, rows, cols); }
    // scalar monomial c * exp(i <k, theta>)
    static TrigPoly monomial(const MultiIndex& k, cplx c);

    int levels() const { return d_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::map<MultiIndex, Eigen::MatrixXcd>& coefficients() const { return coef_; }

    // returns the zero matrix outside the support
    Eigen::MatrixXcd coeff(const MultiIndex& k) const;
    void add_coeff(const MultiIndex& k, const Eigen::MatrixXcd& c);
    void add_entry(const MultiIndex& k, int r, int c, cplx v);

    std::vector<int> degree() const;
    bool is_hermitian(double tol = 1e-14) const;
    bool has_real_coefficients(double tol = 1e-14) const;

    Eigen::MatrixXcd operator()(const std::vector<double>& theta) const;
    Eigen::MatrixXcd operator()(double t1, double t2) const { return (*this)({t1, t2}); }

    // entry (r, c) as a scalar polynomial
    TrigPoly entry(int r, int c) const;
    // drop coefficients with max-abs below tol
    TrigPoly pruned(double tol = 1e-15) const;

  private:
    int d_ = 0, rows_ = 0, cols_ = 0;
    std::map<MultiIndex, Eigen::MatrixXcd> coef_;
};

TrigPoly add(const TrigPoly& f, const TrigPoly& g);
TrigPoly scale(const TrigPoly& f, cplx c);
TrigPoly adjoint(const TrigPoly& f);
TrigPoly multiply(const TrigPoly& f, const TrigPoly& g);
// f(theta_1..theta_df) (x) g(theta_{df+1}..): Kronecker product, variables concatenated
TrigPoly tensor(const TrigPoly& f, const TrigPoly& g);
// new variable j is old variable perm[j]: result(theta) = f(theta') with theta'_{perm[j]} = theta_j
TrigPoly permute_vars(const TrigPoly& f, const std::vector<int>& perm);
// f(theta_2, theta_1) for bivariate f
TrigPoly swap_vars(const TrigPoly& f);
// f(-theta)
TrigPoly reflect(const TrigPoly& f);
// result(i, j) = f(rows[i], cols[j])
TrigPoly permute_components(const TrigPoly& f, const std::vector<int>& rows, const std::vector<int>& cols);
// block matrix of polynomials, empty entries mean zero blocks of the row/col sizes
TrigPoly block(const std::vector<std::vector<const TrigPoly*>>& blocks,
               const std::vector<int>& row_sizes, const std::vector<int>& col_sizes, int d);

Eigen::VectorXd eig_at(const TrigPoly& f, const std::vector<double>& theta);
double sup_norm(const TrigPoly& f, int grid_n);
double sup_norm(const std::function<Eigen::MatrixXcd(double, double)>& f, int grid_n,
                double* arg1 = nullptr, double* arg2 = nullptr);

// Stokes Q1-iso-Q2/Q1 symbols
TrigPoly stokes_fA();
TrigPoly stokes_fAy();
TrigPoly stokes_fBx();
TrigPoly stokes_fBy();
TrigPoly h_symbol();
TrigPoly p2();
TrigPoly p4();
TrigPoly p_bilinear_scalar();
TrigPoly g_z(double alpha, const TrigPoly& fA);
TrigPoly f_chat(double alpha);
TrigPoly f_global();

class singular_point : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// f_S = fBx^H fAx^{-1} fBx + fBy^H fAy^{-1} fBy, evaluation only
struct SchurSymbol {
    TrigPoly fA, fAy, fBx, fBy;
    SchurSymbol();
    double operator()(double t1, double t2) const;
};

std::array<cplx, 4> eig_fA_closed_form(double t1, double t2);

// text format: header "d s1 s2", then "k1 .. kd row col re im" per nonzero entry
std::string to_text(const TrigPoly& f);
TrigPoly from_text(const std::string& s);

}  // namespace smg
