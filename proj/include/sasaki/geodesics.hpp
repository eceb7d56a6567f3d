#pragma once

// Hamiltonian geodesic flow of g_eps (eps = 0 gives the sub-Riemannian
// flow), the multi-start shooting boundary-value solver, distances, and the
// parallel-transport ODE along flows.
//
// State is (x, xi): coordinates plus frame components of the covector.
// With u(xi) = (xi_H, eps * xi_Z),
//     x'    = A(x) u,
//     xi_b' = sum_a u^a <xi, [E_a, E_b]>,
// and H = (|xi_H|^2 + eps xi_Z^2)/2 is conserved. The transport ODE for the
// connection nabla + (1/eps) theta(.) J along the flow reads W' = -G W with
// G = sum_a u^a Gamma_a + xi_Z J, which is eps-uniform (xi_Z J is the
// (1/eps) theta(gamma') J term) and at eps = 0 is the limit transport ODE.

#include <optional>
#include <vector>

#include "sasaki/model.hpp"

namespace sasaki::geod {

using models::ModelSpace;
using models::Point;
using models::SplitVector;

using Covector = la::Vec; // frame components in the coframe dual to the adapted frame

struct Sample {
    double t;
    Point x;
    Covector xi;
    SplitVector tangent;
};

struct GeodesicRecord {
    double eps = 0.0;
    Point x0;
    Covector p0;
    std::vector<Sample> samples;
    double r = 0.0; // arc length
    double h = 0.0; // |xi_H| / speed
    double v = 0.0; // xi_Z / speed (signed)
    double energy_drift = 0.0;

    const Sample& back() const { return samples.back(); }
    int steps() const { return static_cast<int>(samples.size()) - 1; }
};

double speed(const ModelSpace& model, double eps, const Covector& p);

GeodesicRecord hamiltonian_flow(const ModelSpace& model, double eps, const Point& x,
                                const Covector& p, double T, int steps);

// Endpoint-only flow; optionally integrates the transport matrix W' = -G W
// (pass W = identity to get the parallel map of the flow) and returns the
// terminal covector components.
void flow_endpoint(const ModelSpace& model, double eps, const Point& x,
                   const Covector& p, double T, int steps, Point& x_end,
                   Covector& xi_end, la::Mat* transport = nullptr);

// Flow of the constant frame field sum_a u^a E_a from x for time s. For
// horizontal u this is a Tanno-connection geodesic on these models.
Point frame_flow(const ModelSpace& model, const Point& x, const la::Vec& u,
                 double s, int steps);

struct BvpOptions {
    int steps = 256;
    double tol = 1e-10;        // terminal coordinate-norm tolerance
    int max_newton = 60;
    bool multistart = true;    // fall back to the 8 x 9 start grid
    std::optional<Covector> warm; // T=1 covector hint tried first
    bool analytic = false;     // closed-form Heisenberg endpoint map backend
};

struct BvpSolution {
    Covector p;  // unit-speed initial covector
    double r = 0.0;
    bool converged = false;
    int multiplicity_hint = 0;
    Covector q;  // T=1 covector (flow exp_eps(q)|_{t=1} = y)
    double endpoint_residual = 0.0;
    double jacobian_cond = 0.0; // endpoint-map Jacobian condition number
};

BvpSolution solve_bvp(const ModelSpace& model, double eps, const Point& x,
                      const Point& y, const BvpOptions& opts = {});

double distance(const ModelSpace& model, double eps, const Point& x, const Point& y,
                const BvpOptions& opts = {});

// Unit-speed record of the minimizing geodesic found by solve_bvp.
GeodesicRecord minimizing_geodesic(const ModelSpace& model, double eps, const Point& x,
                                   const Point& y, const BvpOptions& opts = {});

} // namespace sasaki::geod
