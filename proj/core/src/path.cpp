#include "topophase/path.hpp"

#include "topophase/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace topophase {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGaussNode = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGaussWeight = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss16(const F& f, double a, double b) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        double dx = half * kGaussNode[i];
        sum += kGaussWeight[i] * (f(mid + dx) + f(mid - dx));
    }
    return sum * half;
}

// Derivative at `at` of the Lagrange polynomial through (ts[j], ys[j]).
double lagrange_derivative(const std::vector<double>& ts, const std::vector<double>& ys,
                           double at) {
    const int m = static_cast<int>(ts.size());
    double slope = 0.0;
    for (int j = 0; j < m; ++j) {
        double denom = 1.0;
        for (int l = 0; l < m; ++l)
            if (l != j) denom *= ts[j] - ts[l];
        double num = 0.0;
        for (int k = 0; k < m; ++k) {
            if (k == j) continue;
            double prod = 1.0;
            for (int l = 0; l < m; ++l)
                if (l != j && l != k) prod *= at - ts[l];
            num += prod;
        }
        slope += ys[j] * num / denom;
    }
    return slope;
}

// Tridiagonal solve (Thomas), overwrites inputs.
std::vector<double> solve_tridiag(std::vector<double> sub, std::vector<double> diag,
                                  std::vector<double> super, std::vector<double> rhs) {
    const int n = static_cast<int>(diag.size());
    for (int i = 1; i < n; ++i) {
        double w = sub[i] / diag[i - 1];
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
    return x;
}

// Cyclic tridiagonal solve via Sherman-Morrison. corner_lo is A[0][n-1],
// corner_hi is A[n-1][0].
std::vector<double> solve_cyclic_tridiag(const std::vector<double>& sub,
                                         const std::vector<double>& diag,
                                         const std::vector<double>& super,
                                         double corner_lo, double corner_hi,
                                         const std::vector<double>& rhs) {
    const int n = static_cast<int>(diag.size());
    double gamma = -diag[0];
    std::vector<double> d2 = diag;
    d2[0] -= gamma;
    d2[n - 1] -= corner_lo * corner_hi / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner_hi;

    std::vector<double> y = solve_tridiag(sub, d2, super, rhs);
    std::vector<double> q = solve_tridiag(sub, d2, super, u);

    double vy = y[0] + (corner_lo / gamma) * y[n - 1];
    double vq = q[0] + (corner_lo / gamma) * q[n - 1];
    double factor = vy / (1.0 + vq);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = y[i] - factor * q[i];
    return x;
}

} // namespace

// ---------------------------------------------------------------------------
// Spline representation
// ---------------------------------------------------------------------------

struct Path::Spline {
    // Segment i: p(tau) = a + b tau + c tau^2 + d tau^3, tau in [0, dt[i]].
    std::vector<Vec3> a, b, c, d;
    std::vector<double> dt;
    std::vector<double> cum_len; // cum_len[i] = aric length up to start of segment i
    double total_len = 0.0;

    int segments() const { return static_cast<int>(dt.size()); }

    Vec3 eval(int seg, double tau) const {
        return a[seg] + b[seg] * tau + c[seg] * (tau * tau) + d[seg] * (tau * tau * tau);
    }
    Vec3 deriv(int seg, double tau) const {
        return b[seg] + c[seg] * (2.0 * tau) + d[seg] * (3.0 * tau * tau);
    }
    double speed_at(int seg, double tau) const { return deriv(seg, tau).norm(); }

    double partial_len(int seg, double tau) const {
        return gauss16([&](double t) { return speed_at(seg, t); }, 0.0, tau);
    }

    // Locate arc length s (from the base start); returns {segment, tau}.
    std::pair<int, double> locate(double s) const {
        const int n = segments();
        s = std::clamp(s, 0.0, total_len);
        int lo = 0, hi = n - 1;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (cum_len[mid] <= s)
                lo = mid;
            else
                hi = mid - 1;
        }
        int seg = lo;
        double target = s - cum_len[seg];
        double seg_len = (seg + 1 < n ? cum_len[seg + 1] : total_len) - cum_len[seg];
        double snap = 8.0 * 2.22e-16 * std::max(total_len, 1.0);
        if (target <= snap) return {seg, 0.0};
        if (seg_len - target <= snap) return {seg, dt[seg]};

        // Newton with bisection safeguard on g(tau) = partial_len(tau) - target.
        double lo_t = 0.0, hi_t = dt[seg];
        double tau = dt[seg] * target / seg_len;
        for (int it = 0; it < 100; ++it) {
            double g = partial_len(seg, tau) - target;
            if (std::abs(g) <= 1e-13 * std::max(seg_len, 1e-300)) break;
            if (g > 0)
                hi_t = tau;
            else
                lo_t = tau;
            double sp = speed_at(seg, tau);
            double next = tau - g / sp;
            if (!(next > lo_t && next < hi_t)) next = 0.5 * (lo_t + hi_t);
            if (std::abs(next - tau) < 1e-16 * dt[seg]) {
                tau = next;
                break;
            }
            tau = next;
        }
        return {seg, tau};
    }
};

namespace {

// Builds the cubic coefficients from knot values, knot spacings and second
// derivatives (moments).
void fill_segments(Path::Spline& sp, const std::vector<Vec3>& y, const std::vector<double>& h,
                   const std::vector<Vec3>& m) {
    const int nseg = static_cast<int>(h.size());
    sp.dt = h;
    sp.a.resize(nseg);
    sp.b.resize(nseg);
    sp.c.resize(nseg);
    sp.d.resize(nseg);
    for (int i = 0; i < nseg; ++i) {
        const Vec3& y0 = y[i];
        const Vec3& y1 = y[i + 1];
        const Vec3& m0 = m[i];
        const Vec3& m1 = m[i + 1];
        double dt = h[i];
        sp.a[i] = y0;
        sp.b[i] = (y1 - y0) / dt - (m0 * 2.0 + m1) * (dt / 6.0);
        sp.c[i] = m0 * 0.5;
        sp.d[i] = (m1 - m0) / (6.0 * dt);
    }
}

// Clamped cubic spline: moments from prescribed end slopes.
void build_clamped(Path::Spline& sp, const std::vector<Vec3>& pts, const Vec3& slope0,
                   const Vec3& slope1, const std::vector<double>& h) {
    const int n = static_cast<int>(pts.size());
    std::vector<Vec3> moments(n);
    for (int comp = 0; comp < 3; ++comp) {
        std::vector<double> sub(n, 0), diag(n, 0), super(n, 0), rhs(n, 0);
        diag[0] = h[0] / 3.0;
        super[0] = h[0] / 6.0;
        rhs[0] = (pts[1][comp] - pts[0][comp]) / h[0] - slope0[comp];
        for (int i = 1; i < n - 1; ++i) {
            sub[i] = h[i - 1] / 6.0;
            diag[i] = (h[i - 1] + h[i]) / 3.0;
            super[i] = h[i] / 6.0;
            rhs[i] = (pts[i + 1][comp] - pts[i][comp]) / h[i] -
                     (pts[i][comp] - pts[i - 1][comp]) / h[i - 1];
        }
        sub[n - 1] = h[n - 2] / 6.0;
        diag[n - 1] = h[n - 2] / 3.0;
        rhs[n - 1] = slope1[comp] - (pts[n - 1][comp] - pts[n - 2][comp]) / h[n - 2];

        auto m = solve_tridiag(sub, diag, super, rhs);
        for (int i = 0; i < n; ++i) moments[i][comp] = m[i];
    }
    fill_segments(sp, pts, h, moments);
}

// Periodic cubic spline over pts[0..n-1] with the wrap segment back to
// pts[0]; h has n entries.
void build_periodic(Path::Spline& sp, const std::vector<Vec3>& pts, const std::vector<double>& h) {
    const int n = static_cast<int>(pts.size());
    auto at = [&](int i) -> const Vec3& { return pts[(i % n + n) % n]; };
    std::vector<std::vector<double>> moments_by_comp(3);
    for (int comp = 0; comp < 3; ++comp) {
        std::vector<double> sub(n, 0), diag(n, 0), super(n, 0), rhs(n, 0);
        for (int i = 0; i < n; ++i) {
            double h_prev = h[(i - 1 + n) % n];
            double h_cur = h[i];
            sub[i] = h_prev / 6.0;
            diag[i] = (h_prev + h_cur) / 3.0;
            super[i] = h_cur / 6.0;
            rhs[i] = (at(i + 1)[comp] - at(i)[comp]) / h_cur -
                     (at(i)[comp] - at(i - 1)[comp]) / h_prev;
        }
        // corners: A[0][n-1] = sub[0], A[n-1][0] = super[n-1]
        moments_by_comp[comp] =
            solve_cyclic_tridiag(sub, diag, super, sub[0], super[n - 1], rhs);
    }
    std::vector<Vec3> y(n + 1);
    std::vector<Vec3> m(n + 1);
    for (int i = 0; i <= n; ++i) {
        y[i] = at(i);
        m[i] = {moments_by_comp[0][i % n], moments_by_comp[1][i % n], moments_by_comp[2][i % n]};
    }
    fill_segments(sp, y, h, m);
}

Vec3 estimate_end_slope(const std::vector<Vec3>& pts, const std::vector<double>& knots,
                        bool at_start) {
    const int n = static_cast<int>(pts.size());
    const int m = std::min(4, n);
    std::vector<double> ts(m);
    std::vector<Vec3> ys(m);
    for (int j = 0; j < m; ++j) {
        int idx = at_start ? j : n - m + j;
        ts[j] = knots[idx];
        ys[j] = pts[idx];
    }
    double at = at_start ? ts.front() : ts.back();
    Vec3 slope;
    for (int comp = 0; comp < 3; ++comp) {
        std::vector<double> yc(m);
        for (int j = 0; j < m; ++j) yc[j] = ys[j][comp];
        slope[comp] = lagrange_derivative(ts, yc, at);
    }
    return slope;
}

} // namespace

// ---------------------------------------------------------------------------
// Path
// ---------------------------------------------------------------------------

Path::Path(std::string name, std::vector<Vec3> points, bool closed, double speed)
    : name_(std::move(name)), points_(std::move(points)), closed_(closed), speed_(speed) {
    if (!(speed_ > 0) || !std::isfinite(speed_))
        throw Error("path '" + name_ + "': traversal speed must be finite and > 0");
    for (const auto& pt : points_)
        if (!pt.finite()) throw Error("path '" + name_ + "': non-finite control point");

    if (closed_ && points_.size() >= 2 && points_.front() == points_.back())
        points_.pop_back(); // seam point is implicit for closed paths

    const int n = static_cast<int>(points_.size());
    if (!closed_ && n < 2) throw Error("path '" + name_ + "': open paths need >= 2 points");
    if (closed_ && n < 3)
        throw Error("path '" + name_ + "': closed paths need >= 3 distinct points");

    // Chord-length knots.
    const int nseg = closed_ ? n : n - 1;
    std::vector<double> h(nseg);
    double total_chord = 0.0;
    for (int i = 0; i < nseg; ++i) {
        const Vec3& p0 = points_[i];
        const Vec3& p1 = points_[(i + 1) % n];
        h[i] = (p1 - p0).norm();
        if (h[i] <= 0.0)
            throw Error("path '" + name_ + "': consecutive control points coincide");
        total_chord += h[i];
    }
    for (auto& v : h) v /= total_chord;

    auto sp = std::make_shared<Spline>();
    if (closed_) {
        build_periodic(*sp, points_, h);
    } else {
        std::vector<double> knots(n, 0.0);
        for (int i = 1; i < n; ++i) knots[i] = knots[i - 1] + h[i - 1];
        Vec3 s0 = estimate_end_slope(points_, knots, true);
        Vec3 s1 = estimate_end_slope(points_, knots, false);
        build_clamped(*sp, points_, s0, s1, h);
    }

    sp->cum_len.resize(sp->segments());
    double acc = 0.0;
    for (int i = 0; i < sp->segments(); ++i) {
        sp->cum_len[i] = acc;
        acc += sp->partial_len(i, sp->dt[i]);
    }
    sp->total_len = acc;
    spline_ = std::move(sp);
}

Path Path::reversed_copy() const {
    Path p = *this;
    p.reversed_ = !p.reversed_;
    return p;
}

int Path::segment_count() const { return spline_->segments(); }

double Path::length() const { return spline_->total_len; }

double Path::knot_fraction(int i) const {
    const int n = spline_->segments();
    if (i < 0 || i > n) throw Error("knot index out of range");
    double s = (i == n) ? spline_->total_len : spline_->cum_len[i];
    return s / spline_->total_len;
}

Vec3 Path::position(double u) const {
    if (reversed_) u = 1.0 - u;
    auto [seg, tau] = spline_->locate(std::clamp(u, 0.0, 1.0) * spline_->total_len);
    return spline_->eval(seg, tau);
}

Vec3 Path::derivative(double u) const {
    double sign = orientation();
    if (reversed_) u = 1.0 - u;
    auto [seg, tau] = spline_->locate(std::clamp(u, 0.0, 1.0) * spline_->total_len);
    Vec3 t = spline_->deriv(seg, tau);
    return t * (sign * spline_->total_len / t.norm());
}

Vec3 Path::unit_tangent(double u) const {
    Vec3 d = derivative(u);
    return d / spline_->total_len;
}

Vec3 Path::segment_position(int seg, double t) const {
    return spline_->eval(seg, t * spline_->dt[seg]);
}

Vec3 Path::segment_derivative(int seg, double t) const {
    return spline_->deriv(seg, t * spline_->dt[seg]) * spline_->dt[seg];
}

double Path::segment_length(int seg) const {
    const int n = spline_->segments();
    double next = (seg + 1 < n) ? spline_->cum_len[seg + 1] : spline_->total_len;
    return next - spline_->cum_len[seg];
}

} // namespace topophase
