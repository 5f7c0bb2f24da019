#pragma once

#include <vector>

namespace magsplit {

/// Symmetric tridiagonal matrix: diag[0..n-1], off[0..n-2].
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;
    int n() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below lambda (Sturm / LDL sign count).
int sturm_count(const Tridiag& T, double lambda);

/// k-th smallest eigenvalue (0-based) by bisection to relative tol.
double bisect_eigenvalue(const Tridiag& T, int k, double rel_tol = 1e-14);

/// Solve (T - sigma I) x = b with partial pivoting; b is overwritten by x.
void solve_shifted(const Tridiag& T, double sigma, std::vector<double>& b);

/// Inverse iteration at fixed shift; v must hold the start vector.
/// Returns the Rayleigh quotient after the final sweep.
double inverse_iteration(const Tridiag& T, double sigma, std::vector<double>& v, int sweeps);

} // namespace magsplit
