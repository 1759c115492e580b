#include "smg/stokes.hpp"

#include <cmath>
#include <numbers>

#include "smg/kernels.hpp"

namespace smg {

namespace {

void append_block(std::vector<Eigen::Triplet<double>>& t, const Sparse& a, long r0, long c0, double s = 1.0) {
    for (int r = 0; r < a.outerSize(); ++r)
        for (Sparse::InnerIterator it(a, r); it; ++it)
            t.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()), s * it.value());
}

}  // namespace

Sparse saddle_matrix(const Sparse& At, const Sparse& B, const Sparse& C) {
    const long nv = At.rows(), np = C.rows();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(At.nonZeros() + 2 * B.nonZeros() + C.nonZeros());
    append_block(t, At, 0, 0);
    Sparse BT = B.transpose();
    append_block(t, BT, 0, nv);
    append_block(t, B, nv, 0);
    append_block(t, C, nv, nv, -1.0);
    Sparse m(nv + np, nv + np);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Sparse SaddleSystem::global() const { return saddle_matrix(At, B, C); }

SaddleSystem assemble_stokes(int n) {
    if (n < 3) throw std::invalid_argument("assemble_stokes: n must be at least 3");
    SaddleSystem s;
    s.n = n;
    const std::vector<int> dims{n, n};
    s.Ax = toeplitz_sparse(stokes_fA(), dims);
    s.Ay = toeplitz_sparse(stokes_fAy(), dims);
    s.BxT = toeplitz_sparse(stokes_fBx(), dims);
    s.ByT = toeplitz_sparse(stokes_fBy(), dims);
    const long nv = 4L * n * n, np = static_cast<long>(n) * n;

    std::vector<Eigen::Triplet<double>> t;
    append_block(t, s.Ax, 0, 0);
    append_block(t, s.Ay, nv, nv);
    s.At.resize(2 * nv, 2 * nv);
    s.At.setFromTriplets(t.begin(), t.end());

    t.clear();
    Sparse bx = s.BxT.transpose(), by = s.ByT.transpose();
    append_block(t, bx, 0, 0);
    append_block(t, by, 0, nv);
    s.B.resize(np, 2 * nv);
    s.B.setFromTriplets(t.begin(), t.end());

    s.C.resize(np, np);
    return s;
}

Vec apply_global(const SaddleSystem& sys, const Vec& x) {
    if (x.size() != sys.size()) throw dimension_error("apply_global: shape mismatch");
    const long nv = sys.velocity_size(), np = sys.pressure_size();
    Vec y(sys.size());
    y.head(nv) = kernels::spmv(sys.At, Vec(x.head(nv)));
    y.head(nv) += sys.B.transpose() * x.tail(np);
    y.tail(np) = kernels::spmv(sys.B, Vec(x.head(nv))) - sys.C * x.tail(np);
    return y;
}

Vec separated_to_internal(const Vec& x, int n) {
    const long m = static_cast<long>(n) * n;
    if (x.size() != 9 * m) throw dimension_error("separated_to_internal: shape mismatch");
    Vec y(x.size());
    y.segment(0, 4 * m) = block_permute(x.segment(0, 4 * m), 4);
    y.segment(4 * m, 4 * m) = block_permute(x.segment(4 * m, 4 * m), 4);
    y.tail(m) = x.tail(m);
    return y;
}

Vec internal_to_separated(const Vec& x, int n) {
    const long m = static_cast<long>(n) * n;
    if (x.size() != 9 * m) throw dimension_error("internal_to_separated: shape mismatch");
    Vec y(x.size());
    y.segment(0, 4 * m) = block_unpermute(x.segment(0, 4 * m), 4);
    y.segment(4 * m, 4 * m) = block_unpermute(x.segment(4 * m, 4 * m), 4);
    y.tail(m) = x.tail(m);
    return y;
}

Rhs build_rhs(const SaddleSystem& sys) {
    const long N = sys.size();
    Vec samp(N);
    for (long j = 0; j < N; ++j) {
        const double t = std::numbers::pi * static_cast<double>(j) / static_cast<double>(N - 1);
        samp(j) = std::sin(4.0 * t) + std::cos(6.0 * t) + 1.0;
    }
    Rhs r;
    r.x_true = separated_to_internal(samp, sys.n);
    r.b = apply_global(sys, r.x_true);
    return r;
}

}  // namespace smg
