#include "sasaki/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sasaki/errors.hpp"

namespace sasaki::heis {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void require_heisenberg(const ModelSpace& model) {
    if (model.family != models::Family::heisenberg)
        throw BadInput("closed-form machinery requires the heisenberg family");
}

// sigma1 = sin(vt)/v, sigma2 = (1-cos(vt))/v with stable small-v branches.
void sigmas(double v, double t, double& s1, double& s2) {
    const double a = v * t;
    if (std::fabs(a) < 1e-4) {
        s1 = t * (1.0 - a * a / 6.0 + a * a * a * a / 120.0);
        s2 = t * (a / 2.0 - a * a * a / 24.0 + a * a * a * a * a / 720.0);
    } else {
        s1 = std::sin(a) / v;
        s2 = (1.0 - std::cos(a)) / v;
    }
}

// tau(t) = (t - sin(vt)/v) / (2v): the area-per-momentum gain of z.
double tau(double v, double t) {
    const double a = v * t;
    if (std::fabs(a) < 1e-3) {
        // (v t^3/12)(1 - (vt)^2/20 + (vt)^4/840)
        return v * t * t * t / 12.0 * (1.0 - a * a / 20.0 + a * a * a * a / 840.0);
    }
    return (t - std::sin(a) / v) / (2.0 * v);
}

double mu(double v) {
    if (std::fabs(v) < 1e-4) return v / 6.0 + v * v * v / 180.0 + std::pow(v, 5) / 5040.0;
    return (v - std::sin(v)) / (2.0 - 2.0 * std::cos(v));
}

double mu_prime(double v) {
    if (std::fabs(v) < 1e-4) return 1.0 / 6.0 + v * v / 60.0 + v * v * v * v / 1008.0;
    const double den = 2.0 - 2.0 * std::cos(v);
    return ((1.0 - std::cos(v)) * den - (v - std::sin(v)) * 2.0 * std::sin(v)) / (den * den);
}

// <J u, w> summed over blocks: sum_i (u_x w_y - u_y w_x).
double jpair(int m, const la::Vec& u, const la::Vec& w) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += u[i] * w[m + i] - u[m + i] * w[i];
    return s;
}

} // namespace

HsEnd hs_exp(const ModelSpace& model, double eps, const Point& x, const la::Vec& q,
             double T) {
    require_heisenberg(model);
    const int m = model.m, n = model.n;
    const double v = q[n];
    double s1, s2;
    sigmas(v, T, s1, s2);

    HsEnd out;
    out.x = x;
    out.xi = q;
    // planar: x_pl(T) = x_pl + S(T) xi0, with S = s1 I + s2 K per block,
    // K = [[0,1],[-1,0]]; momentum rotates by e^{-vT J}.
    const double cr = std::cos(v * T), sr = std::sin(v * T);
    double q2 = 0.0;
    la::Vec s_xi(n);
    for (int i = 0; i < m; ++i) {
        const double qa = q[i], qb = q[m + i];
        s_xi[i] = s1 * qa + s2 * qb;
        s_xi[m + i] = -s2 * qa + s1 * qb;
        out.x[i] += s_xi[i];
        out.x[m + i] += s_xi[m + i];
        out.xi[i] = cr * qa + sr * qb;
        out.xi[m + i] = -sr * qa + cr * qb;
        q2 += qa * qa + qb * qb;
    }
    // z(T) = z0 + eps v T - (1/2) <J x_pl, S xi0> + |xi0|^2 tau(T),
    // where <J u, w> = jpair(u, w).
    la::Vec xpl(x.begin(), x.begin() + n);
    out.x[n] = x[n] + eps * v * T - 0.5 * jpair(m, xpl, s_xi) + q2 * tau(v, T);
    return out;
}

HsSolution hs_solve(const ModelSpace& model, double eps, const Point& x, const Point& y,
                    double warm_v) {
    require_heisenberg(model);
    const int m = model.m, n = model.n;

    // group-relative target: w = y_pl - x_pl, zeta = z_y - z_x + (1/2)<J x_pl, y_pl>
    la::Vec w(n);
    double w2 = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = y[i] - x[i];
        w2 += w[i] * w[i];
    }
    la::Vec xpl(x.begin(), x.begin() + n), ypl(y.begin(), y.begin() + n);
    const double zeta = y[n] - x[n] + 0.5 * jpair(m, xpl, ypl);

    HsSolution out;
    const double scale = 1.0 + std::sqrt(w2) + std::fabs(zeta);

    if (w2 < 1e-24 * scale * scale) {
        // vertical axis
        if (std::fabs(zeta) < 1e-15 * scale) {
            out.found = true;
            out.q.assign(model.dim, 0.0);
            out.r = 0.0;
            out.multiplicity_hint = 1;
            return out;
        }
        const double az = std::fabs(zeta), sgn = zeta >= 0 ? 1.0 : -1.0;
        out.q.assign(model.dim, 0.0);
        if (eps > 0.0 && az <= kTwoPi * eps) {
            // short vertical segment: Reeb geodesic, unique minimizer
            out.q[n] = zeta / eps;
            out.v = out.q[n];
            out.r = az / std::sqrt(eps);
            out.multiplicity_hint = 1;
            out.found = true;
            return out;
        }
        // conjugate-fan helix: |xi0|^2 = 4 pi (|zeta| - 2 pi eps), any direction
        const double xi2 = 4.0 * M_PI * az - 8.0 * M_PI * M_PI * eps;
        const double r2 = 4.0 * M_PI * az - 4.0 * M_PI * M_PI * eps;
        out.q[0] = std::sqrt(std::max(xi2, 0.0));
        out.q[n] = sgn * kTwoPi;
        out.v = out.q[n];
        out.r = std::sqrt(std::max(r2, 0.0));
        out.multiplicity_hint = 2; // S^1 family: cut locus
        out.conjugate_near = true;
        out.found = true;
        return out;
    }

    // principal branch: solve F(v) = eps v + (w2/2) mu(v) = zeta on (-2pi, 2pi)
    const double vmax = kTwoPi * (1.0 - 1e-12);
    auto F = [&](double v) { return eps * v + 0.5 * w2 * mu(v); };
    double v = std::isfinite(warm_v) && std::fabs(warm_v) < vmax
                   ? warm_v
                   : zeta / (eps + w2 / 12.0);
    v = std::clamp(v, -vmax, vmax);
    double lo = -vmax, hi = vmax;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        const double f = F(v) - zeta;
        if (std::fabs(f) <= 1e-14 * (1.0 + std::fabs(zeta))) {
            converged = true;
            break;
        }
        if (f > 0)
            hi = std::min(hi, v);
        else
            lo = std::max(lo, v);
        const double fp = eps + 0.5 * w2 * mu_prime(v);
        double vn = v - f / fp;
        if (!(vn > lo && vn < hi)) vn = 0.5 * (lo + hi);
        if (std::fabs(vn - v) <= 1e-16 * (1.0 + std::fabs(v))) {
            v = vn;
            converged = true;
            break;
        }
        v = vn;
    }
    if (!converged && std::fabs(F(v) - zeta) > 1e-9 * (1.0 + std::fabs(zeta)))
        return out; // not found

    // xi0 = S(1)^{-1} w per block
    double s1, s2;
    sigmas(v, 1.0, s1, s2);
    const double det = s1 * s1 + s2 * s2;
    out.q.assign(model.dim, 0.0);
    double xi2 = 0.0;
    for (int i = 0; i < m; ++i) {
        const double wa = w[i], wb = w[m + i];
        out.q[i] = (s1 * wa - s2 * wb) / det;
        out.q[m + i] = (s2 * wa + s1 * wb) / det;
        xi2 += out.q[i] * out.q[i] + out.q[m + i] * out.q[m + i];
    }
    out.q[n] = v;
    out.v = v;
    out.r = std::sqrt(xi2 + eps * v * v);
    out.conjugate_near = std::fabs(v) >= 0.98 * kTwoPi;
    out.multiplicity_hint = out.conjugate_near ? 2 : 1;
    out.found = true;
    return out;
}

la::Mat hs_transport(const ModelSpace& model, const la::Vec& q) {
    require_heisenberg(model);
    const int m = model.m, dim = model.dim;
    const double v = q[model.n];
    la::Mat w(dim, dim);
    const double c = std::cos(v), s = std::sin(v);
    // e^{-vJ} per block: [[cos v, sin v], [-sin v, cos v]]
    for (int i = 0; i < m; ++i) {
        w(i, i) = c;
        w(i, m + i) = s;
        w(m + i, i) = -s;
        w(m + i, m + i) = c;
    }
    w(dim - 1, dim - 1) = 1.0;
    return w;
}

double heisenberg_oracle(const Point& x, const Point& y) {
    if (x.size() != 3 || y.size() != 3) throw BadInput("oracle expects heisenberg m=1");

    // group-relative target, derived directly from the chart fields
    // X = d_x + (y/2) d_z, Y = d_y - (x/2) d_z
    const double wx = y[0] - x[0], wy = y[1] - x[1];
    double zeta = y[2] - x[2] + 0.5 * (x[0] * y[1] - x[1] * y[0]);
    const double wn = std::hypot(wx, wy);
    double az = std::fabs(zeta); // d depends on (|w|, |zeta|) only

    const double scale = 1.0 + wn + az;
    if (wn < 1e-12 * scale && az < 1e-12 * scale) return 0.0;
    if (wn < 1e-12 * scale) return 2.0 * std::sqrt(M_PI * az); // axis: vt = 2 pi wrap

    if (az < 1e-14 * scale) return wn; // straight horizontal segment

    // Unit-speed circle arcs: for vertical momentum v > 0 the planar chord
    // after time t has length (2/v) sin(vt/2); matching |w| gives
    // vt/2 = j pi + (-1)^j asin(|w| v / 2). The vertical gain is
    // z(t) = (t - sin(vt)/v) / (2v). Scan v, bisect sign changes of the
    // z-mismatch per wrap index j, keep the shortest match.
    double best = 1e300;
    const int kGrid = 4000;
    const double vcap = 2.0 / wn;
    for (int j = 0; j <= 3; ++j) {
        auto mismatch = [&](double v) {
            const double alpha = std::asin(std::min(1.0, 0.5 * wn * v));
            const double theta = j * M_PI + ((j % 2 == 0) ? alpha : -alpha);
            const double t = 2.0 * theta / v;
            return (t - std::sin(v * t) / v) / (2.0 * v) - az;
        };
        auto arclen = [&](double v) {
            const double alpha = std::asin(std::min(1.0, 0.5 * wn * v));
            const double theta = j * M_PI + ((j % 2 == 0) ? alpha : -alpha);
            return 2.0 * theta / v;
        };
        double vprev = 0.0, mprev = 0.0;
        bool have_prev = false;
        for (int g = 1; g <= kGrid; ++g) {
            const double v = vcap * g / kGrid;
            if (j == 0 && 0.5 * wn * v > 1.0 - 1e-12) break;
            const double mm = mismatch(v);
            if (have_prev && ((mprev < 0.0) != (mm < 0.0))) {
                double lo = vprev, hi = v;
                for (int b = 0; b < 80; ++b) {
                    const double mid = 0.5 * (lo + hi);
                    if ((mismatch(mid) < 0.0) == (mprev < 0.0))
                        lo = mid;
                    else
                        hi = mid;
                }
                best = std::min(best, arclen(0.5 * (lo + hi)));
            }
            vprev = v;
            mprev = mm;
            have_prev = true;
        }
        // j = 0 with v -> 0: mismatch -> -az < 0; also check tail behavior is
        // covered by the grid (mismatch grows with v for j >= 1).
    }
    if (best >= 1e300) throw OracleBudgetExceeded("no oracle candidate matched the target");
    return best;
}

} // namespace sasaki::heis
