#pragma once

namespace magsplit {

/// Gamma function on (0, 30) by the Lanczos series (g = 7, 9 terms),
/// with reflection below 1/2; relative accuracy ~1e-14.
double gamma_fn(double x);
double log_gamma(double x);

} // namespace magsplit
