#pragma once

// Generalized trigonometric functions s_k, c_k and the four comparison
// functions F_Rie, F_Sas, G_Rie, G_Sas, together with the curvature
// aggregates K1, K2. All functions are pure and reentrant.
//
//   s_k solves  y'' + k y = 0,  y(0)=0, y'(0)=1;   c_k = s_k'.
//
//   F_Rie(r,k) = d/dr log |s_k(r)|
//   F_Sas(r,k) = d/dr log |2 - 2 c_k(r) - k r s_k(r)|      (up to a constant)
//   G_Rie(r,k) = 2 d/dr log |c_k(r/2)|
//   G_Sas(r,k) = 2 d/dr log |s_k(r/2) - (r/2) c_k(r/2)|    (up to a constant)
//
// Near k = 0 all four are evaluated by Taylor series in k so that they are
// continuous through k = 0 (the F_Sas/G_Sas denominators vanish to 4th order
// there). Poles (conjugate radii) raise PoleError.

#include "sasaki/errors.hpp"

namespace sasaki::comparison {

// |k| * t^2 below this evaluates the series branch.
inline constexpr double kSeriesThreshold = 1e-4;

// A denominator with |den| < kPoleTol * (1 + |num|) is treated as a pole.
inline constexpr double kPoleTol = 1e-12;

struct TrigPair {
    double s; // s_k(t)
    double c; // c_k(t)
};

struct KPair {
    double K1; // k1 h^2 + v^2
    double K2; // k2 h^2 + v^2/4
};

TrigPair sk_ck(double k, double t);

double f_rie(double r, double k);
double f_sas(double r, double k);
double g_rie(double r, double k);
double g_sas(double r, double k);

KPair k_constants(double h, double v, double k1, double k2);

// First conjugate radius: smallest r > 0 with 2 - 2c_k(r) - k r s_k(r) = 0,
// i.e. r sqrt(k) = 2*pi for k > 0; +inf for k <= 0. This is where F_Sas and
// the Jacobi determinant phi(r) degenerate.
double sas_conjugate_radius(double k);

} // namespace sasaki::comparison
