#pragma once

// Sasakian model spaces as global frames with constant structure constants:
// an adapted frame (X_1..X_m, Y_1..Y_m, Z) on R^dim, orthonormal for g, with
// J X_i = Y_i, J Y_i = -X_i, J Z = 0 and theta dual to Z. The Tanno
// connection is generated from the structure constants and verified against
// its five defining properties plus the Sasakian conditions at construction.
//
// Families:
//   heisenberg          [X_i, Y_i] = -Z, all else zero (any m >= 1)
//   constant_curvature  m = 1, additionally [Z,X] = -kappa Y, [Z,Y] = kappa X;
//                       the generated Tanno curvature has k1 = kappa.
//
// Points are first-kind exponential coordinates; the left-invariant frame
// matrix is A(xi) = I + ad_xi/2 + c2(mu^2) ad_xi^2 with
// mu^2 = kappa(x^2+y^2) + kappa^2 z^2 (exact for both families).

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sasaki/linalg.hpp"

namespace sasaki::models {

enum class Family { heisenberg, constant_curvature };

using Point = la::Vec; // coordinates, length dim

struct SplitVector {
    la::Vec h; // components in (X_1..X_m, Y_1..Y_m)
    double v = 0.0; // Z component

    SplitVector() = default;
    SplitVector(la::Vec h_part, double v_part) : h(std::move(h_part)), v(v_part) {}
};

struct CurvatureBounds {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;        // max |<R(w,u)Jw, w>| over admissible pairs
    bool k2_degenerate = false; // m = 1: no directions orthogonal to {w, Jw}
};

class ModelSpace {
public:
    Family family;
    int m = 1;        // complex rank
    int n = 2;        // horizontal rank (= 2m)
    int dim = 3;      // = n + 1
    double kappa = 0.0;

    // [E_a, E_b] = sum_d c[a][b][d] E_d
    double c(int a, int b, int d) const { return cc_[(a * dim + b) * dim + d]; }

    const la::Mat& J() const { return j_; }               // dim x dim
    const la::Mat& gamma(int a) const { return gamma_[a]; } // nabla_{E_a}
    const la::Mat& curvature_op(int a, int b) const { return r_[a * dim + b]; }

    // Largest violation of the Tanno/Sasakian defining identities.
    double tanno_violation() const { return tanno_violation_; }

    int z_index() const { return dim - 1; }

    // ad_u as a matrix on the Lie algebra, u in frame components.
    la::Mat ad(const la::Vec& u) const;

    // Left-invariant frame matrix A(x): coordinate velocity of E_a at x is
    // column a. Throws NoConvergence if x leaves the chart (mu close to 2pi).
    la::Mat frame_matrix(const Point& x) const;

    // J applied to horizontal components.
    la::Vec j_h(const la::Vec& h) const;

    // z * u = Re(z) u + Im(z) J u (complex action on the horizontal part).
    SplitVector complex_action(double re, double im, const SplitVector& u) const;

    la::Vec to_frame(const SplitVector& u) const;   // length dim
    SplitVector from_frame(const la::Vec& f) const; // split h / v

    std::string family_name() const {
        return family == Family::heisenberg ? "heisenberg" : "constant_curvature";
    }

private:
    friend ModelSpace make_model(Family family, int m, double kappa);
    std::vector<double> cc_;
    la::Mat j_;
    std::vector<la::Mat> gamma_;
    std::vector<la::Mat> r_;
    double tanno_violation_ = 0.0;
};

ModelSpace make_model(Family family, int m, double kappa);
ModelSpace make_model(const std::string& family, int m, double kappa);

// R(u,v)w of the Tanno connection. The `at` argument is accepted for
// interface parity; all tensors are frame-constant on these models.
SplitVector tanno_curvature(const ModelSpace& model, const SplitVector& u,
                            const SplitVector& v, const SplitVector& w);

CurvatureBounds curvature_constants(const ModelSpace& model);

// <u, v> with respect to g_eps = g_H + (1/eps) g_V. eps = 0 requires both
// arguments horizontal (VerticalAtZero otherwise).
double metric_split(const ModelSpace& model, double eps, const SplitVector& u,
                    const SplitVector& v);

} // namespace sasaki::models
