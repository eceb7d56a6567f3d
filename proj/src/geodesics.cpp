#include "sasaki/geodesics.hpp"

#include <algorithm>
#include <cmath>

#include "sasaki/errors.hpp"
#include "sasaki/heisenberg.hpp"

namespace sasaki::geod {

namespace {

la::Vec sharp(const ModelSpace& model, double eps, const la::Vec& xi) {
    la::Vec u(model.dim);
    for (int i = 0; i < model.n; ++i) u[i] = xi[i];
    u[model.n] = eps * xi[model.n];
    return u;
}

// d/dt of (x, xi, W): the Hamiltonian system plus the transport ODE.
struct State {
    la::Vec x, xi;
    la::Mat w; // optional transport matrix (empty if unused)

    State& add_scaled(const State& d, double s) {
        la::axpy(s, d.x, x);
        la::axpy(s, d.xi, xi);
        if (w.rows()) w += s * d.w;
        return *this;
    }
};

State rhs(const ModelSpace& model, double eps, const State& s) {
    const int dim = model.dim;
    State d;
    const la::Vec u = sharp(model, eps, s.xi);
    d.x = model.frame_matrix(s.x) * u;
    d.xi.assign(dim, 0.0);
    for (int b = 0; b < dim; ++b) {
        double acc = 0.0;
        for (int a = 0; a < dim; ++a) {
            if (u[a] == 0.0) continue;
            for (int e = 0; e < dim; ++e) {
                const double cab = model.c(a, b, e);
                if (cab != 0.0) acc += u[a] * cab * s.xi[e];
            }
        }
        d.xi[b] = acc;
    }
    if (s.w.rows()) {
        // W' = -G W,  G = sum_a u^a Gamma_a + xi_Z J
        la::Mat g(dim, dim);
        for (int a = 0; a < dim; ++a)
            if (u[a] != 0.0) g += u[a] * model.gamma(a);
        g += s.xi[dim - 1] * model.J();
        d.w = -1.0 * (g * s.w);
    }
    return d;
}

State rk4_step(const ModelSpace& model, double eps, const State& s, double h) {
    State k1 = rhs(model, eps, s);
    State s2 = s;
    s2.add_scaled(k1, h / 2);
    State k2 = rhs(model, eps, s2);
    State s3 = s;
    s3.add_scaled(k2, h / 2);
    State k3 = rhs(model, eps, s3);
    State s4 = s;
    s4.add_scaled(k3, h);
    State k4 = rhs(model, eps, s4);
    State out = s;
    out.add_scaled(k1, h / 6).add_scaled(k2, h / 3).add_scaled(k3, h / 3).add_scaled(k4, h / 6);
    return out;
}

double hamiltonian(const ModelSpace& model, double eps, const la::Vec& xi) {
    double hh = 0.0;
    for (int i = 0; i < model.n; ++i) hh += xi[i] * xi[i];
    return 0.5 * (hh + eps * xi[model.n] * xi[model.n]);
}

} // namespace

double speed(const ModelSpace& model, double eps, const Covector& p) {
    return std::sqrt(2.0 * hamiltonian(model, eps, p));
}

GeodesicRecord hamiltonian_flow(const ModelSpace& model, double eps, const Point& x,
                                const Covector& p, double T, int steps) {
    if (eps < 0.0) throw BadInput("eps must be >= 0");
    if (steps < 1) throw BadInput("steps must be >= 1");
    for (double c : p)
        if (!std::isfinite(c)) throw BadInput("covector must be finite");

    GeodesicRecord rec;
    rec.eps = eps;
    rec.x0 = x;
    rec.p0 = p;
    const double s0 = speed(model, eps, p);
    rec.r = s0 * std::fabs(T);
    rec.h = s0 > 0 ? std::sqrt(2.0 * hamiltonian(model, 0.0, p)) / s0 : 0.0;
    rec.v = s0 > 0 ? p[model.n] / s0 : 0.0;

    State st{x, p, la::Mat()};
    const double h0 = hamiltonian(model, eps, p);
    const double dt = T / steps;
    rec.samples.reserve(steps + 1);
    auto push = [&](double t, const State& s) {
        la::Vec u = sharp(model, eps, s.xi);
        rec.samples.push_back({t, s.x, s.xi, model.from_frame(u)});
    };
    push(0.0, st);
    double drift = 0.0;
    for (int k = 0; k < steps; ++k) {
        st = rk4_step(model, eps, st, dt);
        drift = std::max(drift, std::fabs(hamiltonian(model, eps, st.xi) - h0));
        push(dt * (k + 1), st);
    }
    rec.energy_drift = drift;
    return rec;
}

void flow_endpoint(const ModelSpace& model, double eps, const Point& x,
                   const Covector& p, double T, int steps, Point& x_end,
                   Covector& xi_end, la::Mat* transport) {
    State st{x, p, transport ? *transport : la::Mat()};
    const double dt = T / steps;
    for (int k = 0; k < steps; ++k) st = rk4_step(model, eps, st, dt);
    x_end = st.x;
    xi_end = st.xi;
    if (transport) *transport = st.w;
}

Point frame_flow(const ModelSpace& model, const Point& x, const la::Vec& u, double s,
                 int steps) {
    la::Vec cur = x;
    const double dt = s / steps;
    for (int k = 0; k < steps; ++k) {
        la::Vec k1 = model.frame_matrix(cur) * u;
        la::Vec x2 = cur;
        la::axpy(dt / 2, k1, x2);
        la::Vec k2 = model.frame_matrix(x2) * u;
        la::Vec x3 = cur;
        la::axpy(dt / 2, k2, x3);
        la::Vec k3 = model.frame_matrix(x3) * u;
        la::Vec x4 = cur;
        la::axpy(dt, k3, x4);
        la::Vec k4 = model.frame_matrix(x4) * u;
        la::axpy(dt / 6, k1, cur);
        la::axpy(dt / 3, k2, cur);
        la::axpy(dt / 3, k3, cur);
        la::axpy(dt / 6, k4, cur);
    }
    return cur;
}

namespace {

struct NewtonResult {
    Covector q;
    double residual = 1e300;
    bool ok = false;
    double cond = 0.0;
};

// Damped Newton on the T=1 endpoint map with forward-difference Jacobian.
NewtonResult newton_shoot(const ModelSpace& model, double eps, const Point& x,
                          const Point& y, Covector q, int steps, double tol,
                          int max_iter, bool want_cond) {
    const int dim = model.dim;
    NewtonResult out;
    Point xe;
    Covector xie;
    auto residual = [&](const Covector& qq, la::Vec& res) -> bool {
        try {
            flow_endpoint(model, eps, x, qq, 1.0, steps, xe, xie);
        } catch (const Error&) {
            return false; // left the chart
        }
        res = xe - y;
        return true;
    };

    la::Vec res;
    if (!residual(q, res)) return out;
    double rn = la::norm(res);
    la::Mat jac(dim, dim);
    for (int it = 0; it < max_iter; ++it) {
        if (rn <= tol) break;
        const double fd = 1e-6 * (1.0 + la::norm(q));
        bool jac_ok = true;
        for (int j = 0; j < dim && jac_ok; ++j) {
            Covector qj = q;
            qj[j] += fd;
            la::Vec rj;
            jac_ok = residual(qj, rj);
            if (!jac_ok) break;
            for (int i = 0; i < dim; ++i) jac(i, j) = (rj[i] - res[i]) / fd;
        }
        if (!jac_ok) return out;
        la::Vec delta;
        try {
            delta = la::solve(jac, -1.0 * res);
        } catch (const Error&) {
            return out;
        }
        double lam = 1.0;
        bool improved = false;
        for (int half = 0; half < 10; ++half, lam *= 0.5) {
            Covector qn = q;
            la::axpy(lam, delta, qn);
            la::Vec rn_vec;
            if (!residual(qn, rn_vec)) continue;
            const double rnn = la::norm(rn_vec);
            if (rnn < rn) {
                q = qn;
                res = rn_vec;
                rn = rnn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    out.q = q;
    out.residual = rn;
    out.ok = rn <= tol;
    if (out.ok && want_cond) {
        const double fd = 1e-6 * (1.0 + la::norm(q));
        bool jac_ok = true;
        for (int j = 0; j < dim && jac_ok; ++j) {
            Covector qj = q;
            qj[j] += fd;
            la::Vec rj;
            jac_ok = residual(qj, rj);
            if (jac_ok)
                for (int i = 0; i < dim; ++i) jac(i, j) = (rj[i] - res[i]) / fd;
        }
        out.cond = jac_ok ? la::cond2(jac) : 1e300;
    }
    return out;
}

BvpSolution from_analytic(const ModelSpace& model, double eps, const Point& x,
                          const Point& y, const BvpOptions& opts) {
    double warm_v = 0.0;
    if (opts.warm && !opts.warm->empty()) warm_v = (*opts.warm)[model.n];
    heis::HsSolution hs = heis::hs_solve(model, eps, x, y, warm_v);
    BvpSolution sol;
    if (!hs.found) throw NoConvergence("analytic Heisenberg solve failed");
    sol.converged = true;
    sol.q = hs.q;
    sol.r = hs.r;
    sol.p = hs.r > 0 ? (1.0 / hs.r) * hs.q : la::Vec(model.dim, 0.0);
    sol.multiplicity_hint = hs.multiplicity_hint;
    if (hs.conjugate_near) sol.multiplicity_hint = std::max(sol.multiplicity_hint, 2);
    sol.endpoint_residual = 0.0;
    sol.jacobian_cond = hs.conjugate_near ? 1e300 : 1.0;
    return sol;
}

} // namespace

BvpSolution solve_bvp(const ModelSpace& model, double eps, const Point& x,
                      const Point& y, const BvpOptions& opts) {
    const int dim = model.dim;
    BvpSolution sol;
    const double sep = la::norm(y - x);
    if (sep <= 1e-14 * (1.0 + la::norm(x))) {
        sol.p.assign(dim, 0.0);
        sol.q.assign(dim, 0.0);
        sol.r = 0.0;
        sol.converged = true;
        sol.multiplicity_hint = 1;
        return sol;
    }

    if (opts.analytic) {
        if (model.family != models::Family::heisenberg)
            throw BadInput("analytic backend is Heisenberg-only");
        return from_analytic(model, eps, x, y, opts);
    }

    struct Candidate {
        Covector q;
        double r;
        double residual;
        double cond;
    };
    std::vector<Candidate> found;
    auto consider = [&](const NewtonResult& nr) {
        if (!nr.ok) return;
        for (const auto& c : found) {
            double diff = 0.0;
            for (int i = 0; i < dim; ++i) diff = std::max(diff, std::fabs(c.q[i] - nr.q[i]));
            if (diff <= 1e-5 * (1.0 + la::norm(c.q))) return; // duplicate
        }
        found.push_back({nr.q, speed(model, eps, nr.q), nr.residual, nr.cond});
    };

    if (opts.warm && !opts.warm->empty()) {
        consider(newton_shoot(model, eps, x, y, *opts.warm, opts.steps, opts.tol,
                              opts.max_newton, true));
    }

    if (found.empty() && opts.multistart) {
        const double rhat = std::max(sep, 1e-3);
        // base horizontal direction: toward the planar target, else X_1
        la::Vec base(model.n, 0.0);
        double bn = 0.0;
        for (int i = 0; i < model.n; ++i) {
            base[i] = y[i] - x[i];
            bn += base[i] * base[i];
        }
        if (bn < 1e-20) {
            base.assign(model.n, 0.0);
            base[0] = 1.0;
        } else {
            for (double& b : base) b /= std::sqrt(bn);
        }
        const la::Vec jbase = model.j_h(base);
        const int search_steps = std::max(48, opts.steps / 4);
        std::vector<NewtonResult> raw;
        for (int jdir = 0; jdir < 8; ++jdir) {
            const double ang = 2.0 * M_PI * jdir / 8.0;
            for (int l = 0; l < 9; ++l) {
                const double pz = (l - 4) * M_PI / rhat; // spans [-4pi/rhat, 4pi/rhat]
                Covector q0(dim, 0.0);
                for (int i = 0; i < model.n; ++i)
                    q0[i] = rhat * (std::cos(ang) * base[i] + std::sin(ang) * jbase[i]);
                q0[model.n] = pz;
                NewtonResult nr = newton_shoot(model, eps, x, y, q0, search_steps,
                                               std::max(opts.tol, 1e-8), 25, false);
                if (nr.ok) raw.push_back(nr);
            }
        }
        // polish distinct coarse solutions at full resolution
        std::vector<Covector> distinct;
        for (const auto& nr : raw) {
            bool dup = false;
            for (const auto& q : distinct) {
                double diff = 0.0;
                for (int i = 0; i < dim; ++i) diff = std::max(diff, std::fabs(q[i] - nr.q[i]));
                if (diff <= 1e-4 * (1.0 + la::norm(q))) {
                    dup = true;
                    break;
                }
            }
            if (!dup) distinct.push_back(nr.q);
        }
        for (const auto& q : distinct)
            consider(newton_shoot(model, eps, x, y, q, opts.steps, opts.tol,
                                  opts.max_newton, true));
    }

    if (found.empty()) throw NoConvergence("no shooting start converged");

    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        if (a.r != b.r) return a.r < b.r;
        return a.q < b.q;
    });
    const Candidate& best = found.front();
    int mult = 0;
    for (const auto& c : found)
        if (c.r <= best.r * 1.01) ++mult;
    sol.q = best.q;
    sol.r = best.r;
    sol.p = (1.0 / best.r) * best.q;
    sol.converged = true;
    sol.endpoint_residual = best.residual;
    sol.jacobian_cond = best.cond;
    sol.multiplicity_hint = mult;
    if (best.cond > 1e8) sol.multiplicity_hint = std::max(sol.multiplicity_hint, 2);
    return sol;
}

double distance(const ModelSpace& model, double eps, const Point& x, const Point& y,
                const BvpOptions& opts) {
    return solve_bvp(model, eps, x, y, opts).r;
}

GeodesicRecord minimizing_geodesic(const ModelSpace& model, double eps, const Point& x,
                                   const Point& y, const BvpOptions& opts) {
    BvpSolution sol = solve_bvp(model, eps, x, y, opts);
    if (sol.r == 0.0) {
        GeodesicRecord rec;
        rec.eps = eps;
        rec.x0 = x;
        rec.p0.assign(model.dim, 0.0);
        rec.samples.push_back({0.0, x, rec.p0, model.from_frame(la::Vec(model.dim, 0.0))});
        return rec;
    }
    return hamiltonian_flow(model, eps, x, sol.p, sol.r, opts.steps);
}

} // namespace sasaki::geod
