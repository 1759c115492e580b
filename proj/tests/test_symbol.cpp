#include <doctest.h>

#include <algorithm>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "smg/symbol.hpp"
#include "test_util.hpp"

using namespace smg;
using testutil::max_abs;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("fA at the origin") {
    const Eigen::MatrixXcd a = stokes_fA()(0.0, 0.0);
    CHECK(max_abs(a - a.adjoint()) < 1e-15);
    for (int i = 0; i < 4; ++i) CHECK(a(i, i).real() == doctest::Approx(8.0 / 3.0));
    for (int i = 0; i < 4; ++i) {
        std::vector<double> row;
        for (int j = 0; j < 4; ++j) row.push_back(a(i, j).real());
        std::sort(row.begin(), row.end());
        CHECK(row[0] == doctest::Approx(-4.0 / 3.0));
        CHECK(row[1] == doctest::Approx(-2.0 / 3.0));
        CHECK(row[2] == doctest::Approx(-2.0 / 3.0));
        CHECK(row[3] == doctest::Approx(8.0 / 3.0));
    }
    const Eigen::VectorXd ev = eig_at(stokes_fA(), {0.0, 0.0});
    CHECK(std::abs(ev(0)) < 1e-14);
    CHECK(max_abs(a * Eigen::VectorXcd::Ones(4)) < 1e-14);
}

TEST_CASE("fA constant coefficient and factorization through h") {
    const TrigPoly fA = stokes_fA();
    const Eigen::MatrixXcd c0 = fA.coeff({0, 0});
    for (int i = 0; i < 4; ++i) CHECK(c0(i, i).real() == doctest::Approx(8.0 / 3.0));
    // the level-2 variable drives the outer Kronecker factor
    const TrigPoly hh = swap_vars(tensor(h_symbol(), h_symbol()));
    const TrigPoly rebuilt = add(scale(TrigPoly::identity(2, 4), 3.0), scale(hh, -1.0 / 3.0));
    std::mt19937 rng(7);
    for (int k = 0; k < 16; ++k) {
        const auto th = testutil::random_theta(rng, 2);
        CHECK(max_abs(fA(th) - rebuilt(th)) < 1e-13);
        const Eigen::MatrixXcd direct =
            3.0 * Eigen::MatrixXcd::Identity(4, 4) -
            (1.0 / 3.0) * Eigen::kroneckerProduct(h_symbol()({th[1]}), h_symbol()({th[0]})).eval();
        CHECK(max_abs(fA(th) - direct) < 1e-13);
    }
    CHECK(fA.is_hermitian());
    CHECK(fA.has_real_coefficients());
}

TEST_CASE("zero polynomial and trivial algebra") {
    const TrigPoly z = TrigPoly::zero(2, 3, 2);
    CHECK(max_abs(z(0.4, -1.1)) == 0.0);
    CHECK(z(0.4, -1.1).rows() == 3);

    std::mt19937 rng(11);
    const TrigPoly f = testutil::random_symbol(rng, 2, 3, 2, 2, 6);
    CHECK(add(f, scale(f, -1.0)).pruned().coefficients().empty());
    const TrigPoly ff = adjoint(adjoint(f));
    for (const auto& [k, c] : f.coefficients()) CHECK(max_abs(ff.coeff(k) - c) == 0.0);
    CHECK(max_abs(multiply(f, TrigPoly::identity(2, 2))(0.3, 0.2) - f(0.3, 0.2)) < 1e-14);
}

TEST_CASE("B symbols vanish at the origin") {
    CHECK(max_abs(stokes_fBx()(0.0, 0.0)) < 1e-15);
    CHECK(max_abs(stokes_fBy()(0.0, 0.0)) < 1e-15);
    const Eigen::MatrixXcd bh = adjoint(stokes_fBx())(0.0, 0.0);
    CHECK(bh.rows() == 1);
    CHECK(bh.cols() == 4);
    CHECK(max_abs(bh) < 1e-15);
}

TEST_CASE("fBx at (pi, 0)") {
    // (1/24)(1 - e^{i pi})(5 + 1)
    const Eigen::MatrixXcd b = stokes_fBx()(pi, 0.0);
    CHECK(std::abs(b(1, 0) - cplx(0.5, 0.0)) < 1e-14);
}

TEST_CASE("fBy against the variable-swapped fBx") {
    // the printed formulas give the swap of components 2 and 3 with the sign of one of them flipped
    std::mt19937 rng(3);
    for (int k = 0; k < 16; ++k) {
        const auto th = testutil::random_theta(rng, 2);
        const Eigen::MatrixXcd by = stokes_fBy()(th);
        const Eigen::MatrixXcd bx = stokes_fBx()(th[1], th[0]);
        CHECK(std::abs(by(0, 0) - bx(0, 0)) < 1e-13);
        CHECK(std::abs(by(3, 0) - bx(3, 0)) < 1e-13);
        CHECK(std::abs(by(1, 0) + bx(2, 0)) < 1e-13);
        CHECK(std::abs(by(2, 0) - bx(1, 0)) < 1e-13);
    }
}

TEST_CASE("multiply is a homomorphism under evaluation") {
    std::mt19937 rng(5);
    const TrigPoly pp = multiply(p2(), adjoint(p2()));
    for (int k = 0; k < 16; ++k) {
        const auto th = testutil::random_theta(rng, 1);
        const Eigen::MatrixXcd ref = p2()(th) * p2()(th).adjoint();
        CHECK(max_abs(pp(th) - ref) < 1e-13);
    }
    for (int trial = 0; trial < 10; ++trial) {
        const TrigPoly f = testutil::random_symbol(rng, 2, 2, 3, 2, 5);
        const TrigPoly g = testutil::random_symbol(rng, 2, 3, 2, 1, 4);
        const TrigPoly fg = multiply(f, g);
        for (int k = 0; k < 5; ++k) {
            const auto th = testutil::random_theta(rng, 2);
            const Eigen::MatrixXcd ref = f(th) * g(th);
            CHECK(max_abs(fg(th) - ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
        }
        const TrigPoly herm = multiply(f, adjoint(f));
        CHECK(herm.is_hermitian(1e-13));
    }
}

TEST_CASE("multiply rejects incompatible sizes") {
    CHECK_THROWS_AS(multiply(stokes_fA(), stokes_fA().entry(0, 0)), dimension_error);
    CHECK_THROWS_AS(add(stokes_fA(), stokes_fBx()), dimension_error);
    CHECK_THROWS_AS(multiply(p2(), stokes_fA()), dimension_error);
}

TEST_CASE("tensor products") {
    const TrigPoly one = TrigPoly::constant(1, Eigen::MatrixXcd::Ones(1, 1));
    const TrigPoly g = p2();
    const TrigPoly lifted = tensor(one, g);
    CHECK(lifted.levels() == 2);
    CHECK(max_abs(lifted(0.9, -0.4) - g({-0.4})) < 1e-15);

    const Eigen::MatrixXcd at0 = tensor(p2(), p2())(0.0, 0.0);
    CHECK(max_abs(at0 - 4.0 * Eigen::MatrixXcd::Ones(4, 4)) < 1e-14);
    CHECK(max_abs(p2()({0.0}) - 2.0 * Eigen::MatrixXcd::Ones(2, 2)) < 1e-15);

    const TrigPoly c = testutil::cos_symbol(2.0, 1.0);
    CHECK(std::abs(tensor(c, c)(pi, pi)(0, 0)) < 1e-14);
    CHECK(p_bilinear_scalar()(0.0, 0.0)(0, 0).real() == doctest::Approx(16.0));
}

TEST_CASE("eig_at and sup_norm") {
    CHECK(eig_at(TrigPoly::identity(2, 3), {0.2, 0.1}).isApproxToConstant(1.0));
    CHECK_THROWS_AS(eig_at(p2(), {0.3}), std::invalid_argument);
    CHECK(sup_norm(TrigPoly::constant(2, -2.5 * Eigen::MatrixXcd::Identity(3, 3)), 8) == doctest::Approx(2.5));
    const double s = sup_norm(stokes_fA(), 64);
    CHECK(s <= 4.0 + 1e-12);
    CHECK(s == doctest::Approx(4.0).epsilon(1e-12));

    const Eigen::VectorXd ev = eig_at(stokes_fA(), {pi, pi});
    CHECK(std::any_of(ev.data(), ev.data() + 4, [](double v) { return std::abs(v - 8.0 / 3.0) < 1e-12; }));
}

TEST_CASE("transfer symbols") {
    const Eigen::Vector2cd e2(1.0, 1.0);
    CHECK(max_abs(p2()({0.0}) * e2 - 4.0 * e2) < 1e-14);
    CHECK(max_abs(p2()({pi}) * e2) < 1e-14);
    CHECK(p4().rows() == 4);
    CHECK(p4().levels() == 2);
}

TEST_CASE("f_chat") {
    const TrigPoly fc = f_chat(2.0 / 3.0);
    CHECK(fc.rows() == 1);
    CHECK(fc.is_hermitian(1e-14));
    CHECK(std::abs(fc(0.0, 0.0)(0, 0)) < 1e-14);
    // frozen from the explicit multiply fBx^H g fBx + fBy^H g fBy
    CHECK(fc.coeff({0, 0})(0, 0).real() == doctest::Approx(0.115984881365741).epsilon(1e-12));
    CHECK_THROWS_AS(g_z(0.0, stokes_fA()), std::invalid_argument);

    const TrigPoly gx = g_z(2.0 / 3.0, stokes_fA());
    const TrigPoly gy = g_z(2.0 / 3.0, stokes_fAy());
    const TrigPoly manual = add(multiply(multiply(adjoint(stokes_fBx()), gx), stokes_fBx()),
                                multiply(multiply(adjoint(stokes_fBy()), gy), stokes_fBy()));
    std::mt19937 rng(1);
    for (int k = 0; k < 8; ++k) {
        const auto th = testutil::random_theta(rng, 2);
        CHECK(max_abs(manual(th) - fc(th)) < 1e-13);
    }
}

TEST_CASE("f_global blocks") {
    const TrigPoly g = f_global();
    CHECK(g.rows() == 9);
    CHECK(g.is_hermitian(1e-14));
    const Eigen::MatrixXcd v = g(0.7, 0.2);
    CHECK(max_abs(v.block(0, 0, 4, 4) - stokes_fA()(0.7, 0.2)) < 1e-15);
    CHECK(max_abs(v.block(4, 4, 4, 4) - stokes_fAy()(0.7, 0.2)) < 1e-15);
    CHECK(max_abs(v.block(0, 8, 4, 1) - stokes_fBx()(0.7, 0.2)) < 1e-15);
    CHECK(max_abs(v.block(4, 8, 4, 1) - stokes_fBy()(0.7, 0.2)) < 1e-15);
    CHECK(max_abs(v.block(0, 4, 4, 4)) == 0.0);
    CHECK(std::abs(v(8, 8)) == 0.0);
}

TEST_CASE("closed-form eigenvalues of fA") {
    const auto at0 = eig_fA_closed_form(0.0, 0.0);
    const auto atpi = eig_fA_closed_form(pi, pi);
    CHECK(std::abs(at0[0]) < 1e-14);
    CHECK(std::abs(atpi[0] - 8.0 / 3.0) < 1e-14);
    std::mt19937 rng(2024);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto th = testutil::random_theta(rng, 2);
        const auto cf = eig_fA_closed_form(th[0], th[1]);
        std::vector<double> re;
        for (const auto& z : cf) re.push_back(z.real());
        std::sort(re.begin(), re.end());
        const Eigen::VectorXd ev = eig_at(stokes_fA(), th);
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(re[i] - ev(i)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("lambda_1 of fA is non-negative with a single zero of order two") {
    const TrigPoly fA = stokes_fA();
    const int g = 128;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            const double v = eig_at(fA, {2 * pi * i / g, 2 * pi * j / g})(0);
            CHECK(v >= -1e-13);
            if (i != 0 || j != 0) CHECK(v > 1e-6);
        }
    for (double t : {1e-2, 1e-3}) {
        CHECK(eig_at(fA, {t, 0.0})(0) / (t * t) == doctest::Approx(0.25).epsilon(0.05));
        CHECK(eig_at(fA, {0.0, t})(0) / (t * t) == doctest::Approx(0.25).epsilon(0.05));
    }
}

TEST_CASE("Schur symbol") {
    const SchurSymbol s;
    CHECK_THROWS_AS(s(0.0, 0.0), singular_point);
    CHECK(s(0.3, 1.2) > 0.0);
    double a1 = -1, a2 = -1;
    const double sup =
        sup_norm([&](double x, double y) { return Eigen::MatrixXcd::Constant(1, 1, s(x, y)); }, 16, &a1, &a2);
    CHECK(sup > 0.0);
    CHECK(a1 >= 0.0);
    CHECK(a2 >= 0.0);
}

TEST_CASE("text round trip") {
    for (const TrigPoly& f : {stokes_fA(), stokes_fBx(), f_chat(0.5), p2()}) {
        const TrigPoly g = from_text(to_text(f));
        CHECK(g.levels() == f.levels());
        CHECK(g.rows() == f.rows());
        CHECK(g.cols() == f.cols());
        for (const auto& [k, c] : f.coefficients()) CHECK(max_abs(g.coeff(k) - c) == 0.0);
    }
    CHECK_THROWS(from_text("2 1"));
    CHECK_THROWS(from_text("1 1 1\n0 2 1 1.0 0.0\n"));
}

TEST_CASE("variable and component permutations") {
    std::mt19937 rng(9);
    const TrigPoly f = testutil::random_symbol(rng, 2, 2, 2, 2, 5);
    CHECK(max_abs(swap_vars(f)(0.3, -0.8) - f(-0.8, 0.3)) < 1e-14);
    CHECK(max_abs(reflect(f)(0.3, -0.8) - f(-0.3, 0.8)) < 1e-14);
    const TrigPoly p = permute_components(f, {1, 0}, {0, 1});
    CHECK(max_abs(p(0.1, 0.2).row(0) - f(0.1, 0.2).row(1)) < 1e-15);
}
