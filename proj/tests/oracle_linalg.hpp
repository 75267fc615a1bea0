/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

// Hand-rolled reference linear algebra, deliberately independent of the
// library's Eigen-based implementations so the two can cross-check each
// other in tests. Sized for the 3x3/6x6 matrices used here, not for
// performance.
namespace polarlens::testing {

// Roots of the characteristic polynomial of a 3x3 row-major matrix,
// via Cardano's formula.
std::array<std::complex<double>, 3> cubic_eigenvalues(
    const std::array<double, 9>& m);

// Largest eigenvalue modulus after removing the eigenvalue closest to
// 1 + 0i (the Perron root of a stochastic matrix).
double second_eigen_modulus(const std::array<double, 9>& m);

// Determinant by LU decomposition with partial pivoting.
double determinant(const std::vector<double>& m, std::size_t n);

// Singular values (descending) via Jacobi iteration on A^T A.
std::vector<double> singular_values(const std::vector<double>& m,
                                    std::size_t n);

}  // namespace polarlens::testing
