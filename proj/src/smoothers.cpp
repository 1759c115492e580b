#include "smg/smoothers.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "smg/kernels.hpp"

namespace smg {

Vec inverse_diagonal(const Sparse& M) {
    Vec d = M.diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) == 0.0) throw std::domain_error("jacobi: zero diagonal entry at row " + std::to_string(i));
        d(i) = 1.0 / d(i);
    }
    return d;
}

void jacobi_apply(const Sparse& M, const Vec& dinv, double omega, const Vec& b, Vec& x, int nu) {
    Vec work(x.size());
    for (int k = 0; k < nu; ++k) kernels::jacobi_sweep(M, dinv.data(), omega, b.data(), x.data(), work.data());
}

void jacobi_apply(const Sparse& M, double omega, const Vec& b, Vec& x, int nu) {
    if (nu <= 0) return;
    jacobi_apply(M, inverse_diagonal(M), omega, b, x, nu);
}

namespace {

// local blocks of interior patches repeat; key on the values rounded to ~1e-11 of the block scale
std::string block_key(const Eigen::MatrixXd& m) {
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    std::string key;
    key.reserve(m.size() * 8 + 8);
    const long long rows = m.rows();
    key.append(reinterpret_cast<const char*>(&rows), sizeof rows);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        long long q = std::llround(m.data()[i] / scale * 1e11);
        key.append(reinterpret_cast<const char*>(&q), sizeof q);
    }
    return key;
}

}  // namespace

VankaSmoother::VankaSmoother(const Sparse& A, const Sparse& B, const Sparse& C) : nv_(A.rows()) {
    const long np = B.rows();
    patch_.resize(np);
    block_of_.resize(np);
    std::unordered_map<std::string, int> seen;
    for (long j = 0; j < np; ++j) {
        std::vector<int>& idx = patch_[j];
        for (Sparse::InnerIterator it(B, j); it; ++it)
            if (it.value() != 0.0) idx.push_back(static_cast<int>(it.col()));
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXd loc = Eigen::MatrixXd::Zero(m + 1, m + 1);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) loc(a, b) = A.coeff(idx[a], idx[b]);
            const double bj = B.coeff(j, idx[a]);
            loc(a, m) = bj;
            loc(m, a) = bj;
        }
        loc(m, m) = -C.coeff(j, j);
        idx.push_back(static_cast<int>(nv_ + j));
        const std::string key = block_key(loc);
        auto it = seen.find(key);
        if (it != seen.end()) {
            block_of_[j] = it->second;
            continue;
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(loc);
        const double rc = lu.rcond();
        if (!(rc > 1e-14)) throw std::domain_error("vanka: singular local block at pressure " + std::to_string(j));
        block_of_[j] = static_cast<int>(lu_.size());
        seen.emplace(key, block_of_[j]);
        lu_.push_back(std::move(lu));
    }
}

void VankaSmoother::apply(const Sparse& K, const Vec& b, Vec& x, int nu) const {
    const int* outer = K.outerIndexPtr();
    const int* inner = K.innerIndexPtr();
    const double* val = K.valuePtr();
    for (int sweep = 0; sweep < nu; ++sweep) {
        for (std::size_t j = 0; j < patch_.size(); ++j) {
            const auto& idx = patch_[j];
            Eigen::VectorXd r(idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a) {
                const int row = idx[a];
                double s = b(row);
                for (int p = outer[row]; p < outer[row + 1]; ++p) s -= val[p] * x(inner[p]);
                r(a) = s;
            }
            const Eigen::VectorXd dx = lu_[block_of_[j]].solve(r);
            for (std::size_t a = 0; a < idx.size(); ++a) x(idx[a]) += dx(a);
        }
    }
}

}  // namespace smg
