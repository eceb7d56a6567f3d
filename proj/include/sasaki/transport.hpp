#pragma once

// Parallel and mirror maps along minimizing g_eps-geodesics, expressed as
// frame-to-frame matrices, plus the eps -> 0 convergence probe. The same
// transport ODE W' = -(sum_a u^a Gamma_a + xi_Z J) W covers eps > 0
// (connection nabla + (1/eps) theta(.) J) and the eps = 0 limit map.

#include "sasaki/geodesics.hpp"

namespace sasaki::transport {

using geod::GeodesicRecord;
using models::ModelSpace;
using models::Point;
using models::SplitVector;

struct TransportMap {
    la::Mat matrix; // dim x dim, frame at source -> frame at target
    double eps = 0.0;
    Point source;
    Point target;
};

// Matrix of the parallel map P_eps along a record (re-integrates the flow on
// the record's own grid so no interpolation enters).
TransportMap parallel_map(const ModelSpace& model, const GeodesicRecord& geo);

// Mirror map M_eps: reflect the component along the initial horizontal
// tangent, then transport. Requires h > 1e-8.
TransportMap mirror_map(const ModelSpace& model, const GeodesicRecord& geo);

SplitVector parallel_transport(const ModelSpace& model, const GeodesicRecord& geo,
                               const SplitVector& w);
SplitVector mirror_transport(const ModelSpace& model, const GeodesicRecord& geo,
                             const SplitVector& w);

struct ConvergenceRow {
    double eps;
    double p_diff; // ||P_eps - P_0||_op
    double m_diff; // ||M_eps - M_0||_op
};

// Requires (x, y) off the sub-Riemannian cut locus (multiplicity_hint == 1).
std::vector<ConvergenceRow> convergence_probe(const ModelSpace& model, const Point& x,
                                              const Point& y,
                                              const std::vector<double>& eps_list,
                                              const geod::BvpOptions& opts = {});

} // namespace sasaki::transport
