#include "stozeta/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>

#include "stozeta/common.hpp"

extern "C" void openblas_set_num_threads(int);

namespace stozeta::linalg {

void pin_blas_single_threaded() {
    static std::once_flag once;
    std::call_once(once, [] { openblas_set_num_threads(1); });
}

std::vector<std::complex<double>> complex_eigenvalues(std::vector<std::complex<double>>& a, int n) {
    pin_blas_single_threaded();
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n,
                             reinterpret_cast<lapack_complex_double*>(a.data()), n,
                             reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                             nullptr, 1);
    if (info != 0) fail("sampler", "zgeev failed to converge (info=" + std::to_string(info) + ")");
    return w;
}

std::vector<std::complex<double>> real_eigenvalues(std::vector<double>& a, int n) {
    pin_blas_single_threaded();
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(), wi.data(),
                             nullptr, 1, nullptr, 1);
    if (info != 0) fail("sampler", "dgeev failed to converge (info=" + std::to_string(info) + ")");
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = {wr[i], wi[i]};
    return w;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off) {
    pin_blas_single_threaded();
    int n = static_cast<int>(diag.size());
    if (n == 0) return {};
    int info = LAPACKE_dsterf(n, diag.data(), off.data());
    if (info != 0) fail("sampler", "dsterf failed to converge (info=" + std::to_string(info) + ")");
    return diag;
}

std::vector<double> symmetric_eigen(std::vector<double>& a, int n) {
    pin_blas_single_threaded();
    std::vector<double> w(static_cast<std::size_t>(n));
    int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data());
    if (info != 0) fail("numeric", "dsyev failed to converge (info=" + std::to_string(info) + ")");
    return w;
}

namespace {

int determinant_sign(std::vector<double> a, int n) {
    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, a.data(), n, ipiv.data());
    if (info < 0) fail("numeric", "dgetrf argument error");
    if (info > 0) return 0;  // singular
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        if (ipiv[static_cast<std::size_t>(i)] != i + 1) sign = -sign;
        if (a[static_cast<std::size_t>(i) * n + i] < 0.0) sign = -sign;
    }
    return sign;
}

}  // namespace

std::vector<double> haar_special_orthogonal(std::vector<double> a, int n) {
    pin_blas_single_threaded();
    std::vector<double> tau(static_cast<std::size_t>(n));
    int info = LAPACKE_dgeqrf(LAPACK_COL_MAJOR, n, n, a.data(), n, tau.data());
    if (info != 0) fail("sampler", "dgeqrf failed (info=" + std::to_string(info) + ")");
    std::vector<double> r_diag(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) r_diag[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j) * n + j];
    info = LAPACKE_dorgqr(LAPACK_COL_MAJOR, n, n, n, a.data(), n, tau.data());
    if (info != 0) fail("sampler", "dorgqr failed (info=" + std::to_string(info) + ")");
    // sign-fix columns so Q is Haar on O(n)
    for (int j = 0; j < n; ++j) {
        if (r_diag[static_cast<std::size_t>(j)] < 0.0) {
            for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(j) * n + i] = -a[static_cast<std::size_t>(j) * n + i];
        }
    }
    if (determinant_sign(a, n) < 0) {
        // left-multiply by diag(-1, 1, ..., 1): pushes Haar on O^- to Haar on SO(n)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j) * n] = -a[static_cast<std::size_t>(j) * n];
    }
    return a;
}

}  // namespace stozeta::linalg
