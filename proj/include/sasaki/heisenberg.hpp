#pragma once

// Closed-form Heisenberg machinery (any m, any eps >= 0):
//  - hs_exp:    exact endpoint of the g_eps geodesic flow
//  - hs_solve:  exact boundary-value solve (principal-branch helix)
//  - heisenberg_oracle: independent brute-force sub-Riemannian distance
//    (m = 1, eps = 0) by a dense vertical-momentum grid with bisection
//    refinement; used as the golden reference for the shooting solver.

#include "sasaki/model.hpp"

namespace sasaki::heis {

using models::ModelSpace;
using models::Point;

struct HsEnd {
    Point x;
    la::Vec xi; // terminal covector frame components
};

HsEnd hs_exp(const ModelSpace& model, double eps, const Point& x, const la::Vec& q,
             double T);

struct HsSolution {
    bool found = false;
    la::Vec q;       // T=1 covector
    double r = 0.0;
    double v = 0.0;  // q_Z (vertical momentum at T=1 scaling)
    int multiplicity_hint = 1;
    bool conjugate_near = false; // |v| within 2% of 2 pi
};

// Exact BVP on the Heisenberg group. warm_v, if finite, seeds the 1D solve.
HsSolution hs_solve(const ModelSpace& model, double eps, const Point& x, const Point& y,
                    double warm_v = 0.0);

// Parallel-transport matrix of the connection nabla + (1/eps) theta(.) J
// along the geodesic with T=1 covector q: block rotation by -q_Z on H, 1 on Z.
la::Mat hs_transport(const ModelSpace& model, const la::Vec& q);

double heisenberg_oracle(const Point& x, const Point& y);

} // namespace sasaki::heis
