#include "smg/kernels.hpp"

#include <cmath>

namespace smg::kernels {

namespace {

inline double row_dot(const Sparse& a, long r, const double* x) {
    const int* outer = a.outerIndexPtr();
    const int* inner = a.innerIndexPtr();
    const double* val = a.valuePtr();
    const int* nnz = a.innerNonZeroPtr();
    const int start = outer[r];
    const int stop = nnz ? start + nnz[r] : outer[r + 1];
    double s = 0.0;
    for (int p = start; p < stop; ++p) s += val[p] * x[inner[p]];
    return s;
}

}  // namespace

void spmv_serial(const Sparse& a, const double* x, double* y) {
    const long n = a.rows();
    for (long r = 0; r < n; ++r) y[r] = row_dot(a, r, x);
}

void spmv(const Sparse& a, const double* x, double* y) {
    const long n = a.rows();
#pragma omp parallel for schedule(static)
    for (long r = 0; r < n; ++r) y[r] = row_dot(a, r, x);
}

void residual_serial(const Sparse& a, const double* x, const double* b, double* r) {
    const long n = a.rows();
    for (long i = 0; i < n; ++i) r[i] = b[i] - row_dot(a, i, x);
}

void residual(const Sparse& a, const double* x, const double* b, double* r) {
    const long n = a.rows();
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) r[i] = b[i] - row_dot(a, i, x);
}

void jacobi_sweep_serial(const Sparse& a, const double* dinv, double omega, const double* b, double* x,
                         double* work) {
    const long n = a.rows();
    for (long i = 0; i < n; ++i) work[i] = b[i] - row_dot(a, i, x);
    for (long i = 0; i < n; ++i) x[i] += omega * dinv[i] * work[i];
}

void jacobi_sweep(const Sparse& a, const double* dinv, double omega, const double* b, double* x, double* work) {
    const long n = a.rows();
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (long i = 0; i < n; ++i) work[i] = b[i] - row_dot(a, i, x);
#pragma omp for schedule(static)
        for (long i = 0; i < n; ++i) x[i] += omega * dinv[i] * work[i];
    }
}

double dot(const double* x, const double* y, long n) {
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (long i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double norm2(const double* x, long n) { return std::sqrt(dot(x, x, n)); }

}  // namespace smg::kernels
