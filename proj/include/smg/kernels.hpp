#pragma once

#include "smg/structured.hpp"

// Row-parallel CSR kernels. The *_serial variants are the reference
// implementations the OpenMP versions are tested and benchmarked against.
namespace smg::kernels {

void spmv_serial(const Sparse& a, const double* x, double* y);
void spmv(const Sparse& a, const double* x, double* y);

// r = b - A x
void residual_serial(const Sparse& a, const double* x, const double* b, double* r);
void residual(const Sparse& a, const double* x, const double* b, double* r);

// x <- x + omega * dinv .* (b - A x); work has the length of x
void jacobi_sweep_serial(const Sparse& a, const double* dinv, double omega, const double* b, double* x, double* work);
void jacobi_sweep(const Sparse& a, const double* dinv, double omega, const double* b, double* x, double* work);

double dot(const double* x, const double* y, long n);
double norm2(const double* x, long n);

inline Vec spmv(const Sparse& a, const Vec& x) {
    Vec y(a.rows());
    spmv(a, x.data(), y.data());
    return y;
}

inline Vec residual(const Sparse& a, const Vec& x, const Vec& b) {
    Vec r(a.rows());
    residual(a, x.data(), b.data(), r.data());
    return r;
}

}  // namespace smg::kernels
