#pragma once

// Small dense vectors/matrices for frame computations (dim <= 11 at desk
// scale). Row-major, heap-backed; no external dependency.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sasaki/errors.hpp"

namespace sasaki::la {

using Vec = std::vector<double>;

class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Mat& operator+=(const Mat& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat& operator*=(double s) {
        for (double& x : a_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat l, const Mat& r) { return l += r; }
    friend Mat operator-(Mat l, const Mat& r) { return l -= r; }
    friend Mat operator*(Mat l, double s) { return l *= s; }
    friend Mat operator*(double s, Mat r) { return r *= s; }

    friend Mat operator*(const Mat& l, const Mat& r) {
        assert(l.cols_ == r.rows_);
        Mat out(l.rows_, r.cols_);
        for (std::size_t i = 0; i < l.rows_; ++i)
            for (std::size_t k = 0; k < l.cols_; ++k) {
                const double lik = l(i, k);
                if (lik == 0.0) continue;
                for (std::size_t j = 0; j < r.cols_; ++j) out(i, j) += lik * r(k, j);
            }
        return out;
    }

    friend Vec operator*(const Mat& m, const Vec& v) {
        assert(m.cols_ == v.size());
        Vec out(m.rows_, 0.0);
        for (std::size_t i = 0; i < m.rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < m.cols_; ++j) s += m(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    Mat transposed() const {
        Mat out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : a_) m = std::max(m, std::fabs(x));
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

inline Vec operator+(Vec l, const Vec& r) {
    for (std::size_t i = 0; i < l.size(); ++i) l[i] += r[i];
    return l;
}
inline Vec operator-(Vec l, const Vec& r) {
    for (std::size_t i = 0; i < l.size(); ++i) l[i] -= r[i];
    return l;
}
inline Vec operator*(double s, Vec v) {
    for (double& x : v) x *= s;
    return v;
}
inline void axpy(double a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}
inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// Solve A x = b by partial-pivot LU. Throws NoConvergence on a (near-)singular
// pivot; callers treat that as a conjugate-point / degenerate-system signal.
inline Vec solve(Mat a, Vec b) {
    const std::size_t n = a.rows();
    assert(a.cols() == n && b.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        const double akk = a(k, k);
        if (std::fabs(akk) < 1e-300) throw NoConvergence("singular linear system");
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / akk;
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline Vec sym_eigenvalues(Mat s) {
    const std::size_t n = s.rows();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
    }
    Vec ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = s(i, i);
    return ev;
}

// Largest singular value (operator norm) via Jacobi eigenvalues of A^T A.
inline double op_norm(const Mat& a) {
    Vec ev = sym_eigenvalues(a.transposed() * a);
    double m = 0.0;
    for (double e : ev) m = std::max(m, e);
    return std::sqrt(std::max(0.0, m));
}

// Condition number estimate (2-norm) of a square matrix.
inline double cond2(const Mat& a) {
    Vec ev = sym_eigenvalues(a.transposed() * a);
    double lo = 1e300, hi = 0.0;
    for (double e : ev) {
        hi = std::max(hi, e);
        lo = std::min(lo, std::max(e, 0.0));
    }
    if (lo <= 0.0) return 1e300;
    return std::sqrt(hi / lo);
}

} // namespace sasaki::la
