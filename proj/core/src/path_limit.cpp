#include <algorithm>
#include <cmath>

#include "hypermu/verify.hpp"

namespace hypermu {

namespace {

const double kPi = std::acos(-1.0);

void require_band(double lambda0) {
    if (!(std::abs(lambda0) < kBandEdge))
        throw DomainError("path: lambda0 must lie in (-2*sqrt(2), 2*sqrt(2))");
}

} // namespace

PathSpec PathSpec::sigma1(double x, double lambda0, bool at_infinity) {
    require_band(lambda0);
    auto fn = [x, lambda0, at_infinity](double t) {
        PathPoint p;
        const Complex z = at_infinity ? Complex(0.0, 1.0 / t) : Complex(x, t);
        p.z1 = p.z2 = z;
        p.lambda = Complex(lambda0, t * t);
        return p;
    };
    return PathSpec(Kind::Sigma1, at_infinity ? "sigma1-iinf" : "sigma1", fn, false);
}

PathSpec PathSpec::sigma2(double x, double lambda0) {
    require_band(lambda0);
    auto fn = [x, lambda0](double t) {
        PathPoint p;
        p.z1 = Complex(-lambda0, t * t);
        p.z2 = Complex(x, t);
        p.lambda = Complex(lambda0, t * t * t * t);
        return p;
    };
    return PathSpec(Kind::Sigma2, "sigma2", fn, false);
}

PathSpec PathSpec::sigma3(double x, double lambda0) {
    require_band(lambda0);
    auto fn = [x, lambda0](double t) {
        PathPoint p;
        p.z1 = Complex(x, t);
        p.z2 = Complex(-lambda0, t * t);
        p.lambda = Complex(lambda0, t * t * t * t);
        return p;
    };
    return PathSpec(Kind::Sigma3, "sigma3", fn, false);
}

PathSpec PathSpec::sigma4(double psi, double lambda0, double alpha) {
    require_band(lambda0);
    if (!(psi > 0 && psi < kPi)) throw DomainError("path: sigma4 needs psi in (0, pi)");
    if (!(alpha >= 0 && alpha < 1)) throw DomainError("path: alpha must lie in [0, 1)");
    auto fn = [psi, lambda0, alpha](double t) {
        PathPoint p;
        const double alpha1 = std::sqrt(1.0 - alpha * alpha);
        const Complex dir = std::polar(alpha1 / std::sqrt(2.0), psi);
        p.z1 = p.z2 = Complex(-lambda0, 0.0) + t * dir;
        p.lambda = Complex(lambda0, alpha > 0 ? alpha * t : t * t);
        return p;
    };
    return PathSpec(Kind::Sigma4, "sigma4", fn, false);
}

PathSpec PathSpec::skew(double a, double b, double x, double lambda0) {
    require_band(lambda0);
    if (!(a > 0 && b > 0)) throw DomainError("path: skew slopes must be positive");
    auto fn = [a, b, x, lambda0](double t) {
        PathPoint p;
        p.z1 = Complex(x, a * t);
        p.z2 = Complex(x, b * t);
        p.lambda = Complex(lambda0, t * t);
        return p;
    };
    return PathSpec(Kind::Skew, "skew", fn, false);
}

PathSpec PathSpec::iinf_check(double psi, double lambda0, double alpha) {
    PathSpec p = sigma4(psi, lambda0, alpha);
    return PathSpec(Kind::IInfCheck, "iinf-check", [p](double t) { return p.at(t); }, true);
}

PathSpec PathSpec::custom(std::string name, std::function<PathPoint(double)> fn,
                          bool tracks_phi) {
    return PathSpec(Kind::Custom, std::move(name), std::move(fn), tracks_phi);
}

PathSpec path_to_boundary(const KPoint& k) {
    const double lambda0 = k.lambda.lambda().real();
    const Complex zl = fixed_point_value(Complex(lambda0, 0.0));
    const double w1 = k.first.omega1;
    const double w2 = k.first.omega2;
    const ExtendedPoint minus_lambda = ExtendedPoint::real_boundary(-lambda0);
    const bool at1 = boundary_equal(k.z1, minus_lambda, 1e-12);
    const bool at2 = boundary_equal(k.z2, minus_lambda, 1e-12);

    if (at1 && at2 && k.second) {
        // Singular-locus point: approach along the stored eta direction; the
        // omega data of the path is Im(eta), so it must match the point's.
        const Complex e1 = k.second->eta1;
        const Complex e2 = k.second->eta2;
        auto fn = [lambda0, e1, e2](double t) {
            PathPoint p;
            p.z1 = Complex(-lambda0, 0.0) + t * e1;
            p.z2 = Complex(-lambda0, 0.0) + t * e2;
            p.lambda = Complex(lambda0, t * t);
            return p;
        };
        return PathSpec::custom("boundary-locus", fn);
    }
    if (at1 != at2) {
        // One-sided locus point: the locus coordinate descends one order
        // faster whenever its omega weight vanishes.
        const ExtendedPoint& other = at1 ? k.z2 : k.z1;
        const double w_locus = at1 ? w1 : w2;
        const double w_other = at1 ? w2 : w1;
        const double x = other.is_infinity() ? 0.0 : other.real_value();
        const bool other_inf = other.is_infinity();
        const bool fast = w_locus <= 1e-12;
        auto fn = [lambda0, x, other_inf, at1, fast, w_locus, w_other, zl](double t) {
            PathPoint p;
            const double locus_im = fast ? t * t : t * w_locus * 2.0;
            const Complex locus(-lambda0, locus_im);
            Complex rest;
            if (other_inf)
                rest = Complex(0.0, 1.0 / (w_other * t));
            else
                rest = Complex(x, t * w_other * std::norm(Complex(x, 0) - zl));
            p.z1 = at1 ? locus : rest;
            p.z2 = at1 ? rest : locus;
            p.lambda = Complex(lambda0, fast ? t * t * t * t : t * t);
            return p;
        };
        return PathSpec::custom("boundary-onesided", fn);
    }
    // Generic corner point: both base coordinates off the locus; scale the
    // heights so that the chi ratio reproduces the stored omega direction.
    const bool inf1 = k.z1.is_infinity();
    const bool inf2 = k.z2.is_infinity();
    const double x1 = inf1 ? 0.0 : k.z1.real_value();
    const double x2 = inf2 ? 0.0 : k.z2.real_value();
    auto fn = [lambda0, x1, x2, inf1, inf2, w1, w2, zl](double t) {
        PathPoint p;
        p.z1 = inf1 ? Complex(0.0, 1.0 / (std::max(w1, 1e-12) * t))
                    : Complex(x1, t * std::max(w1, 1e-12) * std::norm(Complex(x1, 0) - zl));
        p.z2 = inf2 ? Complex(0.0, 1.0 / (std::max(w2, 1e-12) * t))
                    : Complex(x2, t * std::max(w2, 1e-12) * std::norm(Complex(x2, 0) - zl));
        p.lambda = Complex(lambda0, t * t);
        return p;
    };
    return PathSpec::custom("boundary-corner", fn);
}

namespace {

struct Sequence {
    std::vector<double> t;
    std::vector<double> f;
};

// Polynomial extrapolation to t = 0 (Neville).
double neville(const std::vector<double>& ts, const std::vector<double>& fs) {
    std::vector<double> p = fs;
    const std::size_t n = p.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i + j < n; ++i)
            p[i] = (p[i + 1] * ts[i] - p[i] * ts[i + j]) / (ts[i] - ts[i + j]);
    return p[0];
}

} // namespace

LimitReport limit_along_path(const PathSpec& path, int k_min, int k_max) {
    if (k_min < 1 || k_max <= k_min) throw DomainError("limit_along_path: bad t schedule");
    LimitReport report;
    report.path = path.name();
    report.tracks_phi = path.tracks_phi();

    Sequence seq;
    for (int k = k_min; k <= k_max; ++k) {
        const double t = std::ldexp(1.0, -k);
        const PathPoint pp = path.at(t);
        if (!(pp.z1.imag() > 0) || !(pp.z2.imag() > 0) || !(pp.lambda.imag() > 0)) continue;
        const Complex zl = fixed_point_value(pp.lambda);
        double value;
        if (path.tracks_phi()) {
            const Complex f = detail::phi_raw(pp.z1, pp.z2, pp.q1, pp.q2, pp.lambda);
            const double mag = std::abs(f);
            if (k == 20) report.abs_phi_at_t20 = mag;
            value = 1.0 / mag; // chart size of phi
        } else {
            value = detail::mu2_raw(pp.z1, pp.z2, pp.q1, pp.q2, pp.lambda, zl);
        }
        if (!std::isfinite(value)) continue;
        seq.t.push_back(t);
        seq.f.push_back(value);
        // Conditioning floor: once successive values agree to near machine
        // precision, further terms add only rounding noise.
        const std::size_t n = seq.f.size();
        if (n >= 2 && std::abs(seq.f[n - 1] - seq.f[n - 2]) <
                          1e-15 * std::max(1.0, std::abs(seq.f[n - 1])))
            break;
    }

    const std::size_t n = seq.f.size();
    if (n < 3) {
        report.diagnostic = "too few usable terms";
        return report;
    }
    const std::size_t window = std::min<std::size_t>(8, n);
    std::vector<double> ts(seq.t.end() - window, seq.t.end());
    std::vector<double> fs(seq.f.end() - window, seq.f.end());
    report.tail = fs;
    report.limit = neville(ts, fs);

    // Convergence-order estimate from the tail's successive differences.
    std::vector<double> orders;
    for (std::size_t i = 2; i < n; ++i) {
        const double d1 = seq.f[i - 1] - seq.f[i - 2];
        const double d2 = seq.f[i] - seq.f[i - 1];
        if (d1 != 0.0 && d2 != 0.0 && std::signbit(d1) == std::signbit(d2)) {
            const double r = d1 / d2;
            if (r > 1.01) orders.push_back(std::log2(r));
        }
    }
    if (!orders.empty()) {
        std::sort(orders.begin(), orders.end());
        report.order_estimate = orders[orders.size() / 2];
    }

    // Stability check: compare against the extrapolation with one fewer term.
    if (window >= 4) {
        std::vector<double> ts2(ts.begin(), ts.end() - 1);
        std::vector<double> fs2(fs.begin(), fs.end() - 1);
        const double other = neville(ts2, fs2);
        const double scale = std::max({std::abs(report.limit), std::abs(other), 1e-12});
        if (std::abs(report.limit - other) <= 1e-6 * scale) {
            report.converged = true;
        } else {
            int flips = 0;
            for (std::size_t i = 2; i < n; ++i) {
                const double d1 = seq.f[i - 1] - seq.f[i - 2];
                const double d2 = seq.f[i] - seq.f[i - 1];
                if (d1 * d2 < 0) ++flips;
            }
            report.diagnostic = flips * 3 > static_cast<int>(n)
                                    ? "oscillating tail"
                                    : "extrapolation unstable";
        }
    } else {
        report.converged = true;
    }
    if (report.converged) report.diagnostic = "ok";
    return report;
}

} // namespace hypermu
