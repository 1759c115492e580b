#pragma once

#include <unordered_map>
#include <vector>

#include "smg/structured.hpp"

namespace smg {

// nu damped Jacobi sweeps x <- x + omega D^-1 (b - M x)
void jacobi_apply(const Sparse& M, double omega, const Vec& b, Vec& x, int nu);
void jacobi_apply(const Sparse& M, const Vec& dinv, double omega, const Vec& b, Vec& x, int nu);
Vec inverse_diagonal(const Sparse& M);

// Multiplicative Vanka smoother on [[A, B^T], [B, -C]]. One patch per pressure
// unknown: the velocities coupled through its row of B plus the pressure itself.
class VankaSmoother {
  public:
    VankaSmoother(const Sparse& A, const Sparse& B, const Sparse& C);

    // nu lexicographic sweeps on the assembled saddle matrix K
    void apply(const Sparse& K, const Vec& b, Vec& x, int nu) const;

    std::size_t patches() const { return patch_.size(); }
    std::size_t distinct_blocks() const { return lu_.size(); }
    const std::vector<int>& patch(std::size_t j) const { return patch_[j]; }

  private:
    long nv_;
    std::vector<std::vector<int>> patch_;   // global indices, pressure last
    std::vector<int> block_of_;             // index into lu_
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

}  // namespace smg
