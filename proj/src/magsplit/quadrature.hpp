#pragma once

#include "magsplit/bigfloat.hpp"

#include <functional>
#include <vector>

namespace magsplit {

struct QuadResult {
    double value = 0;
    double error = 0;
    int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod 7-15 on [a, b].
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol = 1e-14, int max_intervals = 4000);

/// Gauss-Legendre rule on [-1, 1], cached per order.
struct GLRule {
    std::vector<double> x, w;
};
const GLRule& gl_rule(int n);

/// Gauss-Legendre rule on [-1, 1] at BigFloat precision, cached per (order, limbs).
struct GLRuleBig {
    std::vector<BigFloat> x, w;
};
const GLRuleBig& gl_rule_big(int n, int limbs);

/// Gauss rule for int_0^1 t^(delta-1) f(t) dt (the weight is inside the rule).
struct JacobiRule {
    std::vector<double> t, w;
};
JacobiRule gauss_jacobi01(int n, double delta);

/// Eigen decomposition of a symmetric tridiagonal matrix, returning ascending
/// eigenvalues in `d` and the first row of the eigenvector matrix in `z`
/// (Golub-Welsch form). `e` holds subdiagonal entries e[0..n-2] on input.
void tridiag_eigen_first_components(std::vector<double>& d, std::vector<double>& e,
                                    std::vector<double>& z);

} // namespace magsplit
