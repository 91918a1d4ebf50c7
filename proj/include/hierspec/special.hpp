#pragma once

namespace hierspec {

/// Upper incomplete gamma function Gamma(a, x) for real a and x >= 0.
/// a > 0 goes to Boost; a <= 0 uses a continued fraction for x >= 1, the
/// exponential integral x^-n E_{n+1}(x) when a is within 1e-12 of -n, and
/// downward recursion from a + n > 0 otherwise. Returns +inf for x = 0, a <= 0.
double upper_gamma(double a, double x);

}  // namespace hierspec
