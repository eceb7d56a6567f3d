#include "sasaki/model.hpp"

#include <cmath>

#include "sasaki/comparison.hpp"
#include "sasaki/errors.hpp"

namespace sasaki::models {

namespace {

// Coefficient of ad^2 in A(xi) = I + ad/2 + c2 ad^2, where the nonzero
// eigenvalues of ad_xi are +-i mu: c2 = (1 - (mu/2) cot(mu/2)) / mu^2,
// continued through mu^2 <= 0 by generalized trig.
double ad2_coefficient(double mu2) {
    if (std::fabs(mu2) < 1e-4)
        return 1.0 / 12.0 + mu2 / 720.0 + mu2 * mu2 / 30240.0;
    const auto [s, c] = comparison::sk_ck(mu2, 0.5);
    const double q = 0.5 * c / s; // (mu/2) cot(mu/2)
    return (1.0 - q) / mu2;
}

} // namespace

la::Mat ModelSpace::ad(const la::Vec& u) const {
    la::Mat out(dim, dim);
    for (int a = 0; a < dim; ++a) {
        if (u[a] == 0.0) continue;
        for (int b = 0; b < dim; ++b)
            for (int d = 0; d < dim; ++d) out(d, b) += u[a] * c(a, b, d);
    }
    return out;
}

la::Mat ModelSpace::frame_matrix(const Point& x) const {
    la::Mat adx = ad(x);
    double mu2 = 0.0;
    if (family == Family::constant_curvature) {
        double hh = 0.0;
        for (int i = 0; i < n; ++i) hh += x[i] * x[i];
        mu2 = kappa * hh + kappa * kappa * x[n] * x[n];
        if (mu2 > 0.0 && std::sqrt(mu2) > 0.98 * 2.0 * M_PI)
            throw NoConvergence("point left the exponential chart (mu near 2 pi)");
    }
    la::Mat out = la::Mat::identity(dim);
    out += 0.5 * adx;
    out += ad2_coefficient(mu2) * (adx * adx);
    return out;
}

la::Vec ModelSpace::j_h(const la::Vec& h) const {
    la::Vec out(n, 0.0);
    for (int i = 0; i < m; ++i) {
        out[i] = -h[m + i];
        out[m + i] = h[i];
    }
    return out;
}

SplitVector ModelSpace::complex_action(double re, double im, const SplitVector& u) const {
    la::Vec h = re * u.h;
    la::axpy(im, j_h(u.h), h);
    return {std::move(h), re * u.v};
}

la::Vec ModelSpace::to_frame(const SplitVector& u) const {
    la::Vec f(dim, 0.0);
    for (int i = 0; i < n; ++i) f[i] = u.h[i];
    f[n] = u.v;
    return f;
}

SplitVector ModelSpace::from_frame(const la::Vec& f) const {
    la::Vec h(n);
    for (int i = 0; i < n; ++i) h[i] = f[i];
    return {std::move(h), f[n]};
}

ModelSpace make_model(Family family, int m, double kappa) {
    if (m < 1) throw UnsupportedModel("m must be >= 1");
    if (family == Family::heisenberg && kappa != 0.0)
        throw UnsupportedModel("heisenberg requires kappa = 0");
    if (family == Family::constant_curvature && m != 1 && kappa != 0.0)
        throw UnsupportedModel("constant_curvature with kappa != 0 exists only for m = 1");

    ModelSpace model;
    model.family = family;
    model.m = m;
    model.n = 2 * m;
    model.dim = 2 * m + 1;
    model.kappa = (family == Family::heisenberg) ? 0.0 : kappa;

    const int dim = model.dim, n = model.n, z = n;
    model.cc_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
    auto set_bracket = [&](int a, int b, int d, double val) {
        model.cc_[(a * dim + b) * dim + d] = val;
        model.cc_[(b * dim + a) * dim + d] = -val;
    };
    for (int i = 0; i < m; ++i) set_bracket(i, m + i, z, -1.0); // [X_i, Y_i] = -Z
    if (model.kappa != 0.0) {
        set_bracket(z, 0, 1, -model.kappa); // [Z, X] = -kappa Y
        set_bracket(z, 1, 0, model.kappa);  // [Z, Y] = kappa X
    }

    model.j_ = la::Mat(dim, dim);
    for (int i = 0; i < m; ++i) {
        model.j_(m + i, i) = 1.0;  // J X_i = Y_i
        model.j_(i, m + i) = -1.0; // J Y_i = -X_i
    }

    // Tanno connection coefficients. Structural zeros: anything with Z in
    // the last two slots. For a = Z: nabla_Z E_b = [Z, E_b] (K-contact).
    // For horizontal a,b,c: Koszul on the horizontal bracket parts
    // (the prescribed torsion is vertical and drops out of horizontal slots).
    model.gamma_.assign(dim, la::Mat(dim, dim));
    auto hpart = [&](int a, int b, int d) { return model.c(a, b, d); };
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            model.gamma_[z](d, b) = model.c(z, b, d);
            for (int a = 0; a < n; ++a)
                model.gamma_[a](d, b) =
                    0.5 * (hpart(a, b, d) - hpart(b, d, a) + hpart(d, a, b));
        }

    model.r_.assign(static_cast<std::size_t>(dim) * dim, la::Mat(dim, dim));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            la::Mat rab = model.gamma_[a] * model.gamma_[b] - model.gamma_[b] * model.gamma_[a];
            for (int d = 0; d < dim; ++d) {
                const double cab = model.c(a, b, d);
                if (cab != 0.0) rab -= cab * model.gamma_[d];
            }
            model.r_[a * dim + b] = rab;
        }

    // Verify: Jacobi identity of the brackets, Reeb condition, the five
    // Tanno properties, and the Sasakian conditions T(Z,.) = 0, nabla T = 0.
    double viol = 0.0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int e = 0; e < dim; ++e)
                for (int d = 0; d < dim; ++d) {
                    double s = 0.0;
                    for (int f = 0; f < dim; ++f)
                        s += model.c(a, b, f) * model.c(f, e, d) +
                             model.c(b, e, f) * model.c(f, a, d) +
                             model.c(e, a, f) * model.c(f, b, d);
                    viol = std::max(viol, std::fabs(s));
                }
    for (int b = 0; b < dim; ++b) viol = std::max(viol, std::fabs(model.c(z, b, z)));
    // metric compatibility: gamma_a antisymmetric; nabla Z = 0; H preserved
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int d = 0; d < dim; ++d) {
                viol = std::max(viol, std::fabs(model.gamma_[a](d, b) + model.gamma_[a](b, d)));
                if (b == z || d == z)
                    viol = std::max(viol, std::fabs(model.gamma_[a](d, b)));
            }
    // torsion: T(u,v) = <Ju,v> Z for horizontal u,v; T(Z,.) = 0
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int d = 0; d < dim; ++d) {
                double t = model.gamma_[a](d, b) - model.gamma_[b](d, a) - model.c(a, b, d);
                double want = 0.0;
                if (a < n && b < n && d == z) want = model.j_(b, a); // <J E_a, E_b>
                viol = std::max(viol, std::fabs(t - want));
            }
    // Sasakian: nabla J = 0, i.e. [gamma_a, J] = 0
    for (int a = 0; a < dim; ++a) {
        la::Mat comm = model.gamma_[a] * model.j_ - model.j_ * model.gamma_[a];
        viol = std::max(viol, comm.max_abs());
    }
    model.tanno_violation_ = viol;
    if (viol > 1e-10)
        throw UnsupportedModel("structure constants do not generate a Sasakian Tanno connection");
    return model;
}

ModelSpace make_model(const std::string& family, int m, double kappa) {
    if (family == "heisenberg") return make_model(Family::heisenberg, m, kappa);
    if (family == "constant_curvature") return make_model(Family::constant_curvature, m, kappa);
    throw UnsupportedModel("unknown family: " + family);
}

SplitVector tanno_curvature(const ModelSpace& model, const SplitVector& u,
                            const SplitVector& v, const SplitVector& w) {
    const int dim = model.dim;
    const la::Vec uf = model.to_frame(u), vf = model.to_frame(v), wf = model.to_frame(w);
    la::Vec out(dim, 0.0);
    for (int a = 0; a < dim; ++a) {
        if (uf[a] == 0.0) continue;
        for (int b = 0; b < dim; ++b) {
            const double coef = uf[a] * vf[b];
            if (coef == 0.0) continue;
            const la::Mat& rab = model.curvature_op(a, b);
            for (int d = 0; d < dim; ++d) {
                double s = 0.0;
                for (int e = 0; e < dim; ++e) s += rab(d, e) * wf[e];
                out[d] += coef * s;
            }
        }
    }
    return model.from_frame(out);
}

CurvatureBounds curvature_constants(const ModelSpace& model) {
    const int n = model.n, m = model.m;
    CurvatureBounds out;

    // Deterministic sample of unit horizontal directions.
    std::vector<la::Vec> ws;
    for (int i = 0; i < n; ++i) {
        la::Vec e(n, 0.0);
        e[i] = 1.0;
        ws.push_back(e);
    }
    for (int s = 1; s <= 5; ++s) {
        la::Vec w(n, 0.0);
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] = std::sin(0.7 * s + 1.3 * i) + 0.3 * std::cos(2.1 * s * (i + 1));
            nrm += w[i] * w[i];
        }
        nrm = std::sqrt(nrm);
        for (double& x : w) x /= nrm;
        ws.push_back(w);
    }

    auto sec = [&](const la::Vec& a, const la::Vec& b) {
        // <R(a,b)b, a> for orthonormal horizontal a, b
        SplitVector sa{a, 0.0}, sb{b, 0.0};
        SplitVector r = tanno_curvature(model, sa, sb, sb);
        return la::dot(r.h, a);
    };

    double k1 = 1e300, k2 = 1e300, k3 = 0.0;
    for (const auto& w : ws) {
        la::Vec jw = model.j_h(w);
        k1 = std::min(k1, sec(w, jw));
        if (m >= 2) {
            // orthonormal basis of the complement of {w, Jw}
            std::vector<la::Vec> comp;
            for (int i = 0; i < n; ++i) {
                la::Vec u(n, 0.0);
                u[i] = 1.0;
                la::axpy(-la::dot(u, w), w, u);
                la::axpy(-la::dot(u, jw), jw, u);
                for (const auto& p : comp) la::axpy(-la::dot(u, p), p, u);
                const double nu = la::norm(u);
                if (nu > 1e-8) {
                    comp.push_back((1.0 / nu) * u);
                }
            }
            for (const auto& u : comp) {
                k2 = std::min(k2, sec(w, u));
                SplitVector r = tanno_curvature(model, {w, 0.0}, {u, 0.0}, {jw, 0.0});
                k3 = std::max(k3, std::fabs(la::dot(r.h, w)));
            }
        }
    }
    out.k1 = k1;
    if (m >= 2) {
        out.k2 = k2;
        out.k3 = k3;
    } else {
        out.k2 = k1;
        out.k3 = 0.0;
        out.k2_degenerate = true;
    }
    return out;
}

double metric_split(const ModelSpace& model, double eps, const SplitVector& u,
                    const SplitVector& v) {
    (void)model;
    if (eps < 0.0) throw BadInput("eps must be >= 0");
    const double hh = la::dot(u.h, v.h);
    if (eps == 0.0) {
        if (u.v != 0.0 || v.v != 0.0)
            throw VerticalAtZero("g_0 pairing requires horizontal arguments");
        return hh;
    }
    return hh + u.v * v.v / eps;
}

} // namespace sasaki::models
