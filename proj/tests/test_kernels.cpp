#include <doctest.h>

#include "smg/kernels.hpp"
#include "smg/stokes.hpp"

using namespace smg;

TEST_CASE("parallel kernels match the serial reference") {
    const SaddleSystem sys = assemble_stokes(17);
    const Sparse A = sys.global();
    const Vec x = Vec::Random(A.cols()), b = Vec::Random(A.rows());

    Vec y1(A.rows()), y2(A.rows());
    kernels::spmv_serial(A, x.data(), y1.data());
    kernels::spmv(A, x.data(), y2.data());
    CHECK((y1 - y2).norm() == 0.0);
    CHECK((y1 - A * x).norm() <= 1e-13 * y1.norm());

    kernels::residual_serial(A, x.data(), b.data(), y1.data());
    kernels::residual(A, x.data(), b.data(), y2.data());
    CHECK((y1 - y2).norm() == 0.0);
    CHECK((y1 - (b - A * x)).norm() <= 1e-13 * y1.norm());

    Vec dinv(A.rows());
    for (int i = 0; i < A.rows(); ++i) dinv(i) = A.coeff(i, i) != 0.0 ? 1.0 / A.coeff(i, i) : 1.0;
    Vec xa = x, xb = x, w(A.rows());
    kernels::jacobi_sweep_serial(A, dinv.data(), 0.7, b.data(), xa.data(), w.data());
    kernels::jacobi_sweep(A, dinv.data(), 0.7, b.data(), xb.data(), w.data());
    CHECK((xa - xb).norm() == 0.0);
    const Vec ref = x + 0.7 * dinv.cwiseProduct(b - A * x);
    CHECK((xa - ref).norm() <= 1e-13 * ref.norm());
}

TEST_CASE("reductions") {
    Vec a(4), b(4);
    a << 1, 2, 3, 4;
    b << 4, 3, 2, 1;
    CHECK(kernels::dot(a.data(), b.data(), 4) == doctest::Approx(20.0));
    CHECK(kernels::norm2(a.data(), 4) == doctest::Approx(std::sqrt(30.0)));
    CHECK(kernels::dot(a.data(), b.data(), 0) == 0.0);
}
