#include "sasaki/transport.hpp"

#include <cmath>

#include "sasaki/errors.hpp"

namespace sasaki::transport {

namespace {

la::Mat transport_matrix(const ModelSpace& model, const GeodesicRecord& geo) {
    la::Mat w = la::Mat::identity(model.dim);
    if (geo.steps() < 1 || geo.r == 0.0) return w;
    const double T = geo.back().t;
    Point xe;
    geod::Covector xie;
    geod::flow_endpoint(model, geo.eps, geo.x0, geo.p0, T, geo.steps(), xe, xie, &w);
    return w;
}

} // namespace

TransportMap parallel_map(const ModelSpace& model, const GeodesicRecord& geo) {
    TransportMap out;
    out.matrix = transport_matrix(model, geo);
    out.eps = geo.eps;
    out.source = geo.x0;
    out.target = geo.back().x;
    return out;
}

TransportMap mirror_map(const ModelSpace& model, const GeodesicRecord& geo) {
    if (geo.h <= 1e-8)
        throw DegenerateHorizontal("mirror map needs h > 0 (set Sigma'_eps)");
    const int n = model.n, dim = model.dim;
    // unit initial horizontal direction
    la::Vec dir(n);
    double hn = 0.0;
    for (int i = 0; i < n; ++i) {
        dir[i] = geo.p0[i];
        hn += dir[i] * dir[i];
    }
    hn = std::sqrt(hn);
    for (double& d : dir) d /= hn;

    la::Mat refl = la::Mat::identity(dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) refl(i, j) -= 2.0 * dir[i] * dir[j];

    TransportMap out = parallel_map(model, geo);
    out.matrix = out.matrix * refl;
    return out;
}

SplitVector parallel_transport(const ModelSpace& model, const GeodesicRecord& geo,
                               const SplitVector& w) {
    return model.from_frame(parallel_map(model, geo).matrix * model.to_frame(w));
}

SplitVector mirror_transport(const ModelSpace& model, const GeodesicRecord& geo,
                             const SplitVector& w) {
    return model.from_frame(mirror_map(model, geo).matrix * model.to_frame(w));
}

std::vector<ConvergenceRow> convergence_probe(const ModelSpace& model, const Point& x,
                                              const Point& y,
                                              const std::vector<double>& eps_list,
                                              const geod::BvpOptions& opts) {
    geod::BvpOptions o = opts;
    geod::BvpSolution s0 = geod::solve_bvp(model, 0.0, x, y, o);
    if (!s0.converged || s0.multiplicity_hint > 1)
        throw CutLocusError("pair is on or near the sub-Riemannian cut locus");
    GeodesicRecord g0 = geod::hamiltonian_flow(model, 0.0, x, s0.p, s0.r, o.steps);
    const la::Mat p0 = parallel_map(model, g0).matrix;
    const la::Mat m0 = mirror_map(model, g0).matrix;

    std::vector<ConvergenceRow> rows;
    geod::Covector warm = s0.q;
    for (double eps : eps_list) {
        if (eps == 0.0) {
            rows.push_back({0.0, 0.0, 0.0});
            continue;
        }
        o.warm = warm;
        geod::BvpSolution se = geod::solve_bvp(model, eps, x, y, o);
        warm = se.q;
        GeodesicRecord ge = geod::hamiltonian_flow(model, eps, x, se.p, se.r, o.steps);
        const la::Mat pe = parallel_map(model, ge).matrix;
        const la::Mat me = mirror_map(model, ge).matrix;
        rows.push_back({eps, la::op_norm(pe - p0), la::op_norm(me - m0)});
    }
    return rows;
}

} // namespace sasaki::transport
