#include "smg/structured.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/KroneckerProduct>

namespace smg {

namespace {

long prod(const std::vector<int>& n) {
    long p = 1;
    for (int v : n) p *= v;
    return p;
}

// linear index -> multi-index (first level slowest)
void unravel(long lin, const std::vector<int>& n, std::vector<int>& idx) {
    for (int j = static_cast<int>(n.size()) - 1; j >= 0; --j) {
        idx[j] = static_cast<int>(lin % n[j]);
        lin /= n[j];
    }
}

long ravel(const std::vector<int>& idx, const std::vector<int>& n) {
    long lin = 0;
    for (std::size_t j = 0; j < n.size(); ++j) lin = lin * n[j] + idx[j];
    return lin;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

// In-place unscaled DFT along every level of data laid out as [point][component].
// sign = +1 computes sum_j x_j exp(+i <j, theta_m>), sign = -1 the conjugate transform.
void dft_levels(std::vector<cplx>& data, const std::vector<int>& n, int s, int sign) {
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    const long pts = prod(n);
    long stride = 1;
    for (int lev = static_cast<int>(n.size()) - 1; lev >= 0; --lev) {
        const int len = n[lev];
        std::vector<cplx> in(len), out(len);
        for (long base = 0; base < pts; ++base) {
            if ((base / stride) % len != 0) continue;
            for (int c = 0; c < s; ++c) {
                for (int t = 0; t < len; ++t) in[t] = data[(base + t * stride) * s + c];
                if (sign < 0)
                    fft.fwd(out, in);
                else {
                    fft.inv(out, in);
                }
                for (int t = 0; t < len; ++t) data[(base + t * stride) * s + c] = out[t];
            }
        }
        stride *= len;
    }
}

}  // namespace

StructuredOperator::StructuredOperator(Kind kind, TrigPoly symbol, std::vector<int> n)
    : kind_(kind), f_(std::move(symbol)), n_(std::move(n)), points_(prod(n_)) {
    if (static_cast<int>(n_.size()) != f_.levels()) throw dimension_error("StructuredOperator: level mismatch");
    for (int v : n_)
        if (v < 1) throw dimension_error("StructuredOperator: non-positive partial dimension");
}

CVec StructuredOperator::matvec(const CVec& x) const {
    if (x.size() != cols()) throw dimension_error("matvec: shape mismatch");
    return kind_ == Kind::toeplitz ? matvec_banded(x) : matvec_fft(x);
}

CVec StructuredOperator::matvec_banded(const CVec& x) const {
    const int s1 = f_.rows(), s2 = f_.cols(), d = f_.levels();
    CVec y = CVec::Zero(rows());
    std::vector<int> i(d), j(d);
    for (long li = 0; li < points_; ++li) {
        unravel(li, n_, i);
        for (const auto& [k, c] : f_.coefficients()) {
            bool inside = true;
            for (int l = 0; l < d && inside; ++l) {
                j[l] = i[l] - k[l];
                inside = j[l] >= 0 && j[l] < n_[l];
            }
            if (!inside) continue;
            y.segment(li * s1, s1) += c * x.segment(ravel(j, n_) * s2, s2);
        }
    }
    return y;
}

CVec StructuredOperator::matvec_fft(const CVec& x) const {
    const int s1 = f_.rows(), s2 = f_.cols();
    std::vector<cplx> xs(x.data(), x.data() + x.size());
    dft_levels(xs, n_, s2, +1);
    std::vector<cplx> ys(rows());
    const auto blocks = circulant_eigenblocks(f_, n_);
    for (long m = 0; m < points_; ++m) {
        Eigen::Map<const CVec> xm(xs.data() + m * s2, s2);
        Eigen::Map<CVec> ym(ys.data() + m * s1, s1);
        ym = blocks[m] * xm;
    }
    dft_levels(ys, n_, s1, -1);
    CVec y(rows());
    for (long t = 0; t < rows(); ++t) y(t) = ys[t] / static_cast<double>(points_);
    return y;
}

Eigen::MatrixXcd StructuredOperator::dense(long cap) const {
    if (rows() > cap || cols() > cap) throw size_cap_exceeded("materialize_dense: size cap exceeded");
    const int s1 = f_.rows(), s2 = f_.cols(), d = f_.levels();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows(), cols());
    std::vector<int> i(d), j(d);
    for (long li = 0; li < points_; ++li) {
        unravel(li, n_, i);
        for (const auto& [k, c] : f_.coefficients()) {
            bool inside = true;
            for (int l = 0; l < d && inside; ++l) {
                j[l] = i[l] - k[l];
                if (kind_ == Kind::circulant)
                    j[l] = mod(j[l], n_[l]);
                else
                    inside = j[l] >= 0 && j[l] < n_[l];
            }
            if (!inside) continue;
            m.block(li * s1, ravel(j, n_) * s2, s1, s2) += c;
        }
    }
    return m;
}

Sparse StructuredOperator::sparse() const {
    if (!f_.has_real_coefficients(1e-14)) throw std::invalid_argument("sparse: symbol has complex coefficients");
    const int s1 = f_.rows(), s2 = f_.cols(), d = f_.levels();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(points_) * f_.coefficients().size() * s1 * s2);
    std::vector<int> i(d), j(d);
    for (long li = 0; li < points_; ++li) {
        unravel(li, n_, i);
        for (const auto& [k, c] : f_.coefficients()) {
            bool inside = true;
            for (int l = 0; l < d && inside; ++l) {
                j[l] = i[l] - k[l];
                if (kind_ == Kind::circulant)
                    j[l] = mod(j[l], n_[l]);
                else
                    inside = j[l] >= 0 && j[l] < n_[l];
            }
            if (!inside) continue;
            const long lj = ravel(j, n_);
            for (int r = 0; r < s1; ++r)
                for (int q = 0; q < s2; ++q)
                    if (c(r, q).real() != 0.0)
                        trip.emplace_back(static_cast<int>(li * s1 + r), static_cast<int>(lj * s2 + q), c(r, q).real());
        }
    }
    Sparse a(rows(), cols());
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

Sparse toeplitz_sparse(const TrigPoly& f, const std::vector<int>& n) {
    return StructuredOperator(Kind::toeplitz, f, n).sparse();
}

Sparse circulant_sparse(const TrigPoly& f, const std::vector<int>& n) {
    return StructuredOperator(Kind::circulant, f, n).sparse();
}

std::vector<Eigen::MatrixXcd> circulant_eigenblocks(const TrigPoly& f, const std::vector<int>& n) {
    if (static_cast<int>(n.size()) != f.levels()) throw dimension_error("circulant_eigenblocks: level mismatch");
    const long pts = prod(n);
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(pts);
    std::vector<int> k(n.size());
    std::vector<double> th(n.size());
    for (long lk = 0; lk < pts; ++lk) {
        unravel(lk, n, k);
        for (std::size_t l = 0; l < n.size(); ++l) th[l] = 2.0 * std::numbers::pi * k[l] / n[l];
        out.push_back(f(th));
    }
    return out;
}

Eigen::MatrixXcd fourier_matrix(const std::vector<int>& n, int s) {
    const long pts = prod(n);
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(pts * s, pts * s);
    std::vector<int> j(n.size()), k(n.size());
    const double scl = 1.0 / std::sqrt(static_cast<double>(pts));
    for (long lj = 0; lj < pts; ++lj) {
        unravel(lj, n, j);
        for (long lk = 0; lk < pts; ++lk) {
            unravel(lk, n, k);
            double ph = 0.0;
            for (std::size_t l = 0; l < n.size(); ++l) ph -= 2.0 * std::numbers::pi * j[l] * k[l] / n[l];
            const cplx v = std::polar(scl, ph);
            for (int c = 0; c < s; ++c) F(lj * s + c, lk * s + c) = v;
        }
    }
    return F;
}

int coarse_dim(int n) { return n % 2 ? (n - 1) / 2 : n / 2; }

Sparse cutting_matrix(int n) {
    const int k = coarse_dim(n);
    if (k < 1) throw dimension_error("cutting_matrix: degenerate coarse size");
    Sparse K(n, k);
    std::vector<Eigen::Triplet<double>> t;
    for (int j = 0; j < k; ++j) t.emplace_back(2 * j + 1, j, 1.0);
    K.setFromTriplets(t.begin(), t.end());
    return K;
}

Sparse cutting_matrix(const std::vector<int>& n, int s) {
    Sparse K = cutting_matrix(n.front());
    for (std::size_t l = 1; l < n.size(); ++l) K = kron(K, cutting_matrix(n[l]));
    return s == 1 ? K : kron(K, speye(s));
}

Vec cut(const Vec& x, const std::vector<int>& n, int s) {
    if (x.size() != prod(n) * s) throw dimension_error("cut: shape mismatch");
    return cutting_matrix(n, s).transpose() * x;
}

Vec embed(const Vec& y, const std::vector<int>& n, int s) {
    Sparse K = cutting_matrix(n, s);
    if (y.size() != K.cols()) throw dimension_error("embed: shape mismatch");
    return K * y;
}

Vec block_permute(const Vec& x, int s) {
    if (s < 1 || x.size() % s) throw dimension_error("block_permute: length not divisible by block size");
    const long m = x.size() / s;
    Vec y(x.size());
    for (int c = 0; c < s; ++c)
        for (long i = 0; i < m; ++i) y(i * s + c) = x(c * m + i);
    return y;
}

Vec block_unpermute(const Vec& x, int s) {
    if (s < 1 || x.size() % s) throw dimension_error("block_unpermute: length not divisible by block size");
    const long m = x.size() / s;
    Vec y(x.size());
    for (int c = 0; c < s; ++c)
        for (long i = 0; i < m; ++i) y(c * m + i) = x(i * s + c);
    return y;
}

Sparse block_permutation(long m, int s) {
    Sparse P(m * s, m * s);
    std::vector<Eigen::Triplet<double>> t;
    for (int c = 0; c < s; ++c)
        for (long i = 0; i < m; ++i) t.emplace_back(static_cast<int>(i * s + c), static_cast<int>(c * m + i), 1.0);
    P.setFromTriplets(t.begin(), t.end());
    return P;
}

Sparse kron(const Sparse& a, const Sparse& b) {
    Sparse out = Eigen::kroneckerProduct(a, b);
    return out;
}

Sparse speye(long n) {
    Sparse I(n, n);
    I.setIdentity();
    return I;
}

Sparse galerkin_triple(const Sparse& R, const Sparse& M, const Sparse& P) {
    if (R.cols() != M.rows() || M.cols() != P.rows()) throw dimension_error("galerkin_triple: shape mismatch");
    Sparse MP = M * P;
    Sparse out = R * MP;
    out.prune(0.0);
    return out;
}

int max_row_nnz(const Sparse& a, double tol) {
    int best = 0;
    for (int r = 0; r < a.outerSize(); ++r) {
        int cnt = 0;
        for (Sparse::InnerIterator it(a, r); it; ++it)
            if (std::abs(it.value()) > tol) ++cnt;
        best = std::max(best, cnt);
    }
    return best;
}

}  // namespace smg
