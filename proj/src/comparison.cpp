#include "sasaki/comparison.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sasaki::comparison {

namespace {

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw BadInput(std::string(name) + " must be finite");
}

void require_radius(double r) {
    require_finite(r, "r");
    if (r <= 0.0) throw BadInput("r must be > 0");
}

double checked_ratio(double num, double den, const char* where) {
    if (std::fabs(den) < kPoleTol * (1.0 + std::fabs(num)))
        throw PoleError(std::string(where) + ": denominator vanishes (conjugate radius)");
    return num / den;
}

} // namespace

TrigPair sk_ck(double k, double t) {
    require_finite(k, "k");
    require_finite(t, "t");
    if (t < 0.0) throw BadInput("t must be >= 0");
    const double kt2 = k * t * t;
    if (std::fabs(kt2) < kSeriesThreshold) {
        // 4-term Taylor in k; continuous through k = 0.
        const double a = kt2, a2 = a * a, a3 = a2 * a;
        return {t * (1.0 - a / 6.0 + a2 / 120.0 - a3 / 5040.0),
                1.0 - a / 2.0 + a2 / 24.0 - a3 / 720.0};
    }
    if (k > 0.0) {
        const double w = std::sqrt(k);
        return {std::sin(w * t) / w, std::cos(w * t)};
    }
    const double w = std::sqrt(-k);
    return {std::sinh(w * t) / w, std::cosh(w * t)};
}

double f_rie(double r, double k) {
    require_radius(r);
    require_finite(k, "k");
    const double kr2 = k * r * r;
    if (std::fabs(kr2) < kSeriesThreshold) {
        // sqrt(k) cot(sqrt(k) r) = 1/r - kr/3 - k^2 r^3/45 - 2 k^3 r^5/945 - ...
        return 1.0 / r - k * r / 3.0 - k * k * r * r * r / 45.0 -
               2.0 * k * k * k * r * r * r * r * r / 945.0;
    }
    const auto [s, c] = sk_ck(k, r);
    return checked_ratio(c, s, "F_Rie");
}

double f_sas(double r, double k) {
    require_radius(r);
    require_finite(k, "k");
    const double kr2 = k * r * r;
    if (std::fabs(kr2) < kSeriesThreshold) {
        // (4/r)(1 - k r^2/30 - 11 k^2 r^4/25200 - ...)
        return (4.0 / r) * (1.0 - kr2 / 30.0 - 11.0 * kr2 * kr2 / 25200.0);
    }
    const auto [s, c] = sk_ck(k, r);
    const double num = k * (s - r * c);
    const double den = 2.0 - 2.0 * c - k * r * s;
    return checked_ratio(num, den, "F_Sas");
}

double g_rie(double r, double k) {
    require_radius(r);
    require_finite(k, "k");
    const double kr2 = k * r * r;
    if (std::fabs(kr2) < kSeriesThreshold) {
        // -sqrt(k) tan(sqrt(k) r/2) = -kr/2 - k^2 r^3/24 - k^3 r^5/240 - ...
        return -k * r / 2.0 - k * k * r * r * r / 24.0 -
               k * k * k * r * r * r * r * r / 240.0;
    }
    const auto [s, c] = sk_ck(k, 0.5 * r);
    // 2 d/dr log|c_k(r/2)| = -k s_k(r/2) / c_k(r/2)
    return checked_ratio(-k * s, c, "G_Rie");
}

double g_sas(double r, double k) {
    require_radius(r);
    require_finite(k, "k");
    if (k > 0.0 && r * std::sqrt(k) >= 2.0 * M_PI)
        throw PoleError("G_Sas: r sqrt(k) >= 2 pi is outside the comparison domain");
    const double kr2 = k * r * r;
    if (std::fabs(kr2) < kSeriesThreshold) {
        // (6/r)(1 - k r^2/60 - k^2 r^4/8400 - ...)
        return (6.0 / r) * (1.0 - kr2 / 60.0 - kr2 * kr2 / 8400.0);
    }
    const auto [s, c] = sk_ck(k, 0.5 * r);
    // (k r / 2) s_k(r/2) / (s_k(r/2) - (r/2) c_k(r/2)); equals the paper's
    // tan-form where the latter is finite, and stays finite at c_k(r/2)=0.
    const double num = 0.5 * k * r * s;
    const double den = s - 0.5 * r * c;
    return checked_ratio(num, den, "G_Sas");
}

KPair k_constants(double h, double v, double k1, double k2) {
    require_finite(h, "h");
    require_finite(v, "v");
    require_finite(k1, "k1");
    require_finite(k2, "k2");
    if (h < 0.0 || h > 1.0 + 1e-12) throw BadInput("h must lie in [0,1]");
    if (v < 0.0) throw BadInput("v must be >= 0");
    return {k1 * h * h + v * v, k2 * h * h + 0.25 * v * v};
}

double sas_conjugate_radius(double k) {
    require_finite(k, "k");
    if (k <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * M_PI / std::sqrt(k);
}

} // namespace sasaki::comparison
