#pragma once

#include "hyperlab/eval_result.hpp"

namespace hyperlab {

/// Elliptic modulus s, as in K(s) = int_0^1 dx / sqrt((1-x^2)(1-s^2 x^2)).
/// The parameter-m and modular-angle conventions are not used anywhere.
struct Modulus {
  double s;
};

/// K is rejected for |s| >= 1 - kEllipKEdge.
inline constexpr double kEllipKEdge = 1e-12;

double agm(double a, double b);

double ellipk(Modulus m);
double ellipe(Modulus m);

EvalResult ellipk_eval(Modulus m);
EvalResult ellipe_eval(Modulus m);

/// K and E as functions of the complementary modulus s' = sqrt(1 - s^2).
/// Used by integrands that approach s = 1, where s' is known more
/// accurately than s.
double ellipk_complement(double s_prime);
double ellipe_complement(double s_prime);

}  // namespace hyperlab
