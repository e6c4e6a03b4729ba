// Dense Hermitian-matrix kernel: eigendecomposition helpers, PSD square
// roots and pseudo-inverses, operator norm, and SVD for the small
// rectangular matrices used by the subspace-weight certificate.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qkd {

using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;

struct NotPSD : std::runtime_error {
    explicit NotPSD(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kHermTol = 1e-10;
inline constexpr double kRankTol = 1e-12;

inline void check_hermitian(const Mat& a) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
}

// Eigenvalues of a Hermitian matrix, ascending.
inline Eigen::SelfAdjointEigenSolver<Mat> eig(const Mat& a) {
    check_hermitian(a);
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    return es;
}

inline double min_eig(const Mat& a) { return eig(a).eigenvalues().minCoeff(); }

inline double op_norm_inf(const Mat& a) {
    return eig(a).eigenvalues().cwiseAbs().maxCoeff();
}

namespace detail {
inline Mat spectral_map(const Mat& a, double rank_tol, bool invert) {
    auto es = eig(a);
    Eigen::VectorXd ev = es.eigenvalues();
    double emax = ev.cwiseAbs().maxCoeff();
    if (ev.minCoeff() < -kHermTol * std::max(1.0, emax))
        throw NotPSD("negative eigenvalue " + std::to_string(ev.minCoeff()));
    double cut = rank_tol * std::max(emax, 0.0);
    Eigen::VectorXd f(ev.size());
    for (int i = 0; i < ev.size(); ++i) {
        if (ev[i] <= cut || ev[i] <= 0.0)
            f[i] = 0.0;
        else
            f[i] = invert ? 1.0 / std::sqrt(ev[i]) : std::sqrt(ev[i]);
    }
    return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace detail

// Principal PSD square root, eigenvalues below rank_tol*max treated as 0.
inline Mat psd_sqrt(const Mat& a, double rank_tol = kRankTol) {
    return detail::spectral_map(a, rank_tol, false);
}

// Pseudo-inverse of the square root: lambda -> 1/sqrt(lambda) on the support.
inline Mat psd_sqrt_pinv(const Mat& a, double rank_tol = kRankTol) {
    return detail::spectral_map(a, rank_tol, true);
}

// Orthogonal projector onto supp(A) for PSD A.
inline Mat support_projector(const Mat& a, double rank_tol = kRankTol) {
    auto es = eig(a);
    Eigen::VectorXd ev = es.eigenvalues();
    double cut = rank_tol * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    Eigen::VectorXd f(ev.size());
    for (int i = 0; i < ev.size(); ++i) f[i] = (ev[i] > cut) ? 1.0 : 0.0;
    return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

struct SvdSmall {
    RMat u;            // rows x cols, orthonormal columns
    Eigen::VectorXd sigma;  // nonincreasing
    RMat v;            // cols x cols, orthogonal
};

inline SvdSmall svd_small(const RMat& m) {
    Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

// Largest singular value of a small real matrix.
inline double sigma_max(const RMat& m) {
    return Eigen::JacobiSVD<RMat>(m).singularValues()(0);
}

}  // namespace qkd
