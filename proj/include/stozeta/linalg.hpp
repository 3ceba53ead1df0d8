#pragma once

#include <complex>
#include <vector>

namespace stozeta::linalg {

// Pins the BLAS backend to one thread; replica-level parallelism happens
// above, and results must not depend on the thread count.
void pin_blas_single_threaded();

// Eigenvalues of a dense complex matrix (column-major, n x n); the matrix is
// destroyed.  Throws Error("sampler") on non-convergence.
std::vector<std::complex<double>> complex_eigenvalues(std::vector<std::complex<double>>& a, int n);

// Eigenvalues of a dense real matrix (column-major); the matrix is destroyed.
std::vector<std::complex<double>> real_eigenvalues(std::vector<double>& a, int n);

// Ascending eigenvalues of a symmetric tridiagonal matrix.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off);

// Full symmetric eigendecomposition (ascending); on return `a` holds the
// eigenvectors column-wise.
std::vector<double> symmetric_eigen(std::vector<double>& a, int n);

// Haar-distributed matrix from SO(n): QR of a Gaussian matrix with the usual
// sign correction, then a reflection applied when det = -1.
std::vector<double> haar_special_orthogonal(std::vector<double> gaussian, int n);

}  // namespace stozeta::linalg
