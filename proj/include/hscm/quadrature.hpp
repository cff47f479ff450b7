#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals, with
// user-supplied breakpoints, and an iterated 2D variant built on it.

#include "hscm/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace hscm::quad {

struct Options
{
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
};

struct Result
{
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

/// Nodes (non-negative half, descending) and weights of the 15-point Kronrod
/// rule and the embedded 7-point Gauss rule on [-1, 1].
struct Kronrod15
{
    static constexpr std::array<double, 8> nodes = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> kronrod_weights = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss weights for nodes[1], nodes[3], nodes[5] and the centre.
    static constexpr std::array<double, 4> gauss_weights = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

namespace detail {

struct Segment
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

template <class F>
Segment gk15(F& f, double a, double b)
{
    using K = Kronrod15;
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(centre);
    double kronrod = fc * K::kronrod_weights[7];
    double gauss = fc * K::gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * K::nodes[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const double s = f1[j] + f2[j];
        kronrod += K::kronrod_weights[j] * s;
        abs_sum += K::kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1)
            gauss += K::gauss_weights[j / 2] * s;
    }
    const double mean = 0.5 * kronrod;
    double asc = K::kronrod_weights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        asc += K::kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = kronrod * half;
    asc *= std::abs(half);
    abs_sum *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    // QUADPACK error scaling: sharper than the raw Gauss/Kronrod gap for
    // smooth integrands.
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = 2.220446049250313e-16;
    if (abs_sum > 2.2250738585072014e-308 / (50.0 * eps))
        err = std::max(err, 50.0 * eps * abs_sum);
    return {a, b, value, err};
}

} // namespace detail

/// Integrates f over [a, b] split at the given interior breakpoints. Throws
/// QuadratureError when the requested tolerance is not reached within
/// `opt.max_intervals` subintervals.
template <class F>
Result integrate(F&& f, double a, double b, std::span<const double> breakpoints, const Options& opt = {})
{
    Result res;
    if (a == b)
        return res;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    if (!std::isfinite(a) || !std::isfinite(b))
        throw QuadratureError("quadrature limits must be finite");

    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b)
            cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto seg = detail::gk15(f, cuts[i], cuts[i + 1]);
        res.evaluations += 15;
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }

    auto converged = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

    while (!converged()) {
        if (heap.size() >= opt.max_intervals) {
            throw QuadratureError("adaptive quadrature did not converge: estimate " + std::to_string(total)
                                  + ", error " + std::to_string(total_err) + " after "
                                  + std::to_string(heap.size()) + " subintervals");
        }
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("adaptive quadrature exhausted floating-point resolution near "
                                  + std::to_string(worst.a));
        }
        heap.pop();
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed accumulated update round-off.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    res.value = sign * total;
    res.error = total_err;
    return res;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {})
{
    return integrate(std::forward<F>(f), a, b, std::span<const double>{}, opt);
}

/// Iterated 2D quadrature of f(x, y) over [ax, bx] x [ay(x), by(x)].
/// `inner_breaks(x)` returns breakpoints for the inner (y) integral.
template <class F, class Lo, class Hi, class InnerBreaks>
Result integrate_2d(F&& f, double ax, double bx, std::span<const double> outer_breaks, Lo&& ay, Hi&& by,
                    InnerBreaks&& inner_breaks, const Options& outer, const Options& inner)
{
    std::size_t evals = 0;
    auto row = [&](double x) {
        auto g = [&](double y) { return f(x, y); };
        const std::vector<double> br = inner_breaks(x);
        const auto r = integrate(g, ay(x), by(x), std::span<const double>(br), inner);
        evals += r.evaluations;
        return r.value;
    };
    auto res = integrate(row, ax, bx, outer_breaks, outer);
    res.evaluations = evals;
    return res;
}

/// 2D quadrature over a rectangle with fixed breakpoints in each direction.
template <class F>
Result integrate_box(F&& f, double ax, double bx, double ay, double by, std::span<const double> x_breaks,
                     std::span<const double> y_breaks, const Options& outer, const Options& inner)
{
    const std::vector<double> yb(y_breaks.begin(), y_breaks.end());
    return integrate_2d(
        std::forward<F>(f), ax, bx, x_breaks, [ay](double) { return ay; }, [by](double) { return by; },
        [&yb](double) { return yb; }, outer, inner);
}

} // namespace hscm::quad
