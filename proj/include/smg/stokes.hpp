#pragma once

#include "smg/structured.hpp"

namespace smg {

// Saddle-point system [[At, B^T], [B, -C]] built from the Stokes symbols.
// Unknowns are stored as [u_x | u_y | p], each velocity field in the
// point-interleaved layout of T_n(fA) (4 components per point).
struct SaddleSystem {
    int n = 0;
    Sparse Ax, Ay;   // 4n^2 x 4n^2
    Sparse BxT, ByT; // 4n^2 x n^2, blocks T_n(fBx), T_n(fBy)
    Sparse At;       // blkdiag(Ax, Ay)
    Sparse B;        // n^2 x 8n^2
    Sparse C;        // n^2 x n^2 (zero)

    long velocity_size() const { return At.rows(); }
    long pressure_size() const { return C.rows(); }
    long size() const { return At.rows() + C.rows(); }
    Sparse global() const;
};

SaddleSystem assemble_stokes(int n);

Sparse saddle_matrix(const Sparse& At, const Sparse& B, const Sparse& C);

// [At u + B^T p; B u - C p]
Vec apply_global(const SaddleSystem& sys, const Vec& x);

// component-major layout over the nine fields (c * n^2 + i) <-> internal storage
Vec separated_to_internal(const Vec& x, int n);
Vec internal_to_separated(const Vec& x, int n);

struct Rhs {
    Vec x_true, b;
};
// samples sin(4t) + cos(6t) + 1 at 9n^2 points of [0, pi] in component-major order
Rhs build_rhs(const SaddleSystem& sys);

}  // namespace smg
