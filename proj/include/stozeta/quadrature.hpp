#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "stozeta/common.hpp"

namespace stozeta {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair on (-1,1); Fullerton's 80-digit values
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGK15KronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15GaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GK15Eval {
    double kronrod;
    double error;
};

template <typename F>
GK15Eval gk15(const F& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kGK15GaussW[3];
    double resk = fc * kGK15KronrodW[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        double x = h * kGK15Nodes[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        double fsum = f1 + f2;
        if (j % 2 == 1) resg += kGK15GaussW[j / 2] * fsum;
        resk += kGK15KronrodW[j] * fsum;
        resabs += kGK15KronrodW[j] * (std::abs(f1) + std::abs(f2));
    }
    double reskh = resk * 0.5;
    double resasc = kGK15KronrodW[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        double x = h * kGK15Nodes[j];
        resasc += kGK15KronrodW[j] * (std::abs(f(c - x) - reskh) + std::abs(f(c + x) - reskh));
    }
    resk *= h;
    resg *= h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {resk, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b].  Subdivides the worst
// interval until the summed error estimate meets max(abs_tol, rel_tol*|I|).
inline QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                            double rel_tol = 1e-10, double abs_tol = 0.0, int max_depth = 48) {
    QuadResult out;
    if (a == b) return out;
    struct Segment {
        double a, b, value, error;
        int depth;
    };
    auto eval = [&](double lo, double hi, int depth) {
        auto r = detail::gk15(f, lo, hi);
        out.evaluations += 22;
        return Segment{lo, hi, r.kronrod, r.error, depth};
    };
    std::vector<Segment> segs;
    segs.push_back(eval(a, b, 0));
    double total = segs[0].value;
    double total_err = segs[0].error;
    for (int iter = 0; iter < 20000; ++iter) {
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        Segment s = segs[worst];
        if (s.depth >= max_depth || s.b - s.a < 1e-15 * (std::abs(s.a) + std::abs(s.b) + 1.0)) break;
        double mid = 0.5 * (s.a + s.b);
        Segment left = eval(s.a, mid, s.depth + 1);
        Segment right = eval(mid, s.b, s.depth + 1);
        total += left.value + right.value - s.value;
        total_err += left.error + right.error - s.error;
        segs[worst] = left;
        segs.push_back(right);
    }
    out.value = total;
    out.abs_error = total_err;
    return out;
}

}  // namespace stozeta
