#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "smg/symbol.hpp"

namespace smg {

using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

enum class Kind { toeplitz, circulant };

// Multilevel block Toeplitz / circulant operator T_n(f) or C_n(f).
// Point multi-indices are ordered lexicographically with the first level slowest,
// and the s1 x s2 block of a point is stored contiguously.
class StructuredOperator {
  public:
    StructuredOperator(Kind kind, TrigPoly symbol, std::vector<int> n);

    Kind kind() const { return kind_; }
    const TrigPoly& symbol() const { return f_; }
    const std::vector<int>& dims() const { return n_; }
    long points() const { return points_; }
    long rows() const { return points_ * f_.rows(); }
    long cols() const { return points_ * f_.cols(); }

    CVec matvec(const CVec& x) const;
    Eigen::MatrixXcd dense(long cap = 20000) const;
    // requires real Fourier coefficients
    Sparse sparse() const;

  private:
    CVec matvec_banded(const CVec& x) const;
    CVec matvec_fft(const CVec& x) const;

    Kind kind_;
    TrigPoly f_;
    std::vector<int> n_;
    long points_;
};

class size_cap_exceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

inline Eigen::MatrixXcd materialize_dense(const StructuredOperator& op, long cap = 20000) { return op.dense(cap); }
Sparse toeplitz_sparse(const TrigPoly& f, const std::vector<int>& n);
Sparse circulant_sparse(const TrigPoly& f, const std::vector<int>& n);

// S_n(f)(theta_k) at theta_k = 2 pi k / n, k lexicographic with k_1 slowest
std::vector<Eigen::MatrixXcd> circulant_eigenblocks(const TrigPoly& f, const std::vector<int>& n);
// multilevel unitary Fourier matrix F (x) I_s with column k = exp(-i <j, theta_k>) / sqrt(N),
// so that C_n(f) = F diag(eigenblocks) F^H
Eigen::MatrixXcd fourier_matrix(const std::vector<int>& n, int s);

// Cutting matrix K_{n,k}: column j picks 1-based position 2(j+1).
// k = (n-1)/2 for odd n, n/2 for even n.
int coarse_dim(int n);
Sparse cutting_matrix(int n);
// (K (x) K (x) ...) (x) I_s
Sparse cutting_matrix(const std::vector<int>& n, int s);
Vec cut(const Vec& x, const std::vector<int>& n, int s);
Vec embed(const Vec& y, const std::vector<int>& n, int s);

// separated layout (component-major, c*m + i) <-> interleaved layout (point-major, i*s + c)
Vec block_permute(const Vec& x, int s);
Vec block_unpermute(const Vec& x, int s);
Sparse block_permutation(long m, int s);

Sparse kron(const Sparse& a, const Sparse& b);
Sparse speye(long n);
Sparse galerkin_triple(const Sparse& R, const Sparse& M, const Sparse& P);
// max number of stored nonzeros in a row (explicit zeros below tol are ignored)
int max_row_nnz(const Sparse& a, double tol = 0.0);

}  // namespace smg
