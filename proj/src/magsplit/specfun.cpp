#include "magsplit/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace magsplit {

namespace {

const double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

double gamma_core(double x)
{
    // valid for x >= 0.5
    double a = kLanczos[0];
    double t = x + 6.5; // x + g - 0.5 with g = 7
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0 + i);
    return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

} // namespace

double gamma_fn(double x)
{
    if (!(x > 0.0) || x > 30.0) throw std::domain_error("gamma_fn: argument outside (0, 30)");
    if (x < 0.5) return M_PI / (std::sin(M_PI * x) * gamma_core(1.0 - x));
    return gamma_core(x);
}

double log_gamma(double x)
{
    return std::log(gamma_fn(x));
}

} // namespace magsplit
