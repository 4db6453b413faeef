#include "flatspot/qgaussian.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace flatspot::qgaussian {

double q_exp(double Q, double x) {
    if (Q == 1.0) return std::exp(x);
    const double u = 1.0 + (1.0 - Q) * x;
    if (u < 0.0 || (u == 0.0 && Q > 1.0))
        throw std::domain_error("q_exp: argument outside support");
    return std::pow(u, 1.0 / (1.0 - Q));
}

double q_log(double Q, double y) {
    if (!(y > 0.0)) throw std::domain_error("q_log: y must be positive");
    if (Q == 1.0) return std::log(y);
    return (std::pow(y, 1.0 - Q) - 1.0) / (1.0 - Q);
}

double QGaussianParams::support_halfwidth() const {
    if (Q >= 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt((1.0 - Q) * beta);
}

double density(const QGaussianParams& p, double y) {
    const double d = y - p.y0;
    const double u = 1.0 - (1.0 - p.Q) * p.beta * d * d;
    if (p.Q < 1.0 && u <= 0.0) return 0.0;  // compact-support cutoff
    return p.C * std::pow(u, 1.0 / (1.0 - p.Q));
}

double tail_leading(const QGaussianParams& p, double z) {
    const double l = p.support_halfwidth();
    const double e = 1.0 / (1.0 - p.Q);
    return p.C * std::pow(2.0 / l, e) * std::pow(z, e);
}

std::vector<TailRatioPoint> tail_ratio_series(const QGaussianParams& p,
                                              const density::StepFunction& nu,
                                              long q_from, long q_to,
                                              const Rational& truncation_error) {
    if (!(p.Q < 1.0)) throw std::invalid_argument("tail_ratio_series: requires Q < 1");
    if (q_from < 2 || q_to < q_from)
        throw std::invalid_argument("tail_ratio_series: bad q range");
    const double l = p.support_halfwidth();
    std::vector<TailRatioPoint> out;
    out.reserve(static_cast<size_t>(q_to - q_from + 1));
    for (long q = q_from; q <= q_to; ++q) {
        const Rational x = Rational(1, q) - Rational(1, 2);
        const Rational nu_exact = nu.evaluate(x);
        if (nu_exact <= truncation_error)
            throw std::invalid_argument(
                "tail_ratio_series: partial-sum truncation error is not negligible at z = 1/" +
                std::to_string(q));
        const double z = 1.0 / static_cast<double>(q);
        const double g = density(p, -l + z);
        const double nv = nu_exact.to_double();
        out.push_back(TailRatioPoint{q, z, g, nv, g / nv});
    }
    return out;
}

namespace {

struct LineFit {
    double intercept;
    double slope;
    double ss_res;
    double ss_tot;
    double r2() const { return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0; }
};

LineFit regress(const std::vector<double>& s, const std::vector<double>& u) {
    const size_t n = s.size();
    double ms = 0.0, mu = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ms += s[i];
        mu += u[i];
    }
    ms /= static_cast<double>(n);
    mu /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double ds = s[i] - ms, du = u[i] - mu;
        sxx += ds * ds;
        sxy += ds * du;
        syy += du * du;
    }
    LineFit f{};
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = mu - f.slope * ms;
    f.ss_tot = syy;
    f.ss_res = syy - (sxx > 0.0 ? sxy * sxy / sxx : 0.0);
    return f;
}

}  // namespace

FitResult fit(const density::StepFunction& nu, const FitOptions& opts) {
    if (opts.bins < 8) throw std::invalid_argument("fit: too few bins");
    const int B = opts.bins;

    // Mass-preserving bin averages over [-1/2, 1/2].
    std::vector<double> xs, vs;
    xs.reserve(static_cast<size_t>(B));
    vs.reserve(static_cast<size_t>(B));
    Rational prev_cdf = nu.cdf(Rational(-1, 2));
    for (int i = 1; i <= B; ++i) {
        const Rational edge = Rational(i, B) - Rational(1, 2);
        const Rational c = nu.cdf(edge);
        const double avg = ((c - prev_cdf) * Rational(B)).to_double();
        prev_cdf = c;
        xs.push_back((static_cast<double>(i) - 0.5) / B - 0.5);
        vs.push_back(avg);
    }
    double peak = 0.0;
    for (double v : vs) peak = std::max(peak, v);
    if (!(peak > 0.0)) throw std::invalid_argument("fit: density is identically zero");

    std::vector<double> s, u;
    s.reserve(xs.size());
    u.reserve(xs.size());
    const auto eval_q = [&](double Q) {
        s.clear();
        u.clear();
        for (size_t i = 0; i < xs.size(); ++i) {
            if (!(vs[i] > 0.0)) continue;
            s.push_back(xs[i] * xs[i]);
            u.push_back(q_log(Q, vs[i] / peak));
        }
        return regress(s, u);
    };

    double best_q = opts.q_lo;
    LineFit best = eval_q(best_q);
    double step = opts.q_step;
    double lo = opts.q_lo, hi = opts.q_hi;
    for (int round = 0; round <= opts.refine_rounds; ++round) {
        for (double Q = lo; Q <= hi + 1e-12; Q += step) {
            const LineFit f = eval_q(Q);
            if (f.r2() > best.r2()) {
                best = f;
                best_q = Q;
            }
        }
        lo = std::max(opts.q_lo, best_q - step);
        hi = std::min(opts.q_hi, best_q + step);
        step /= 10.0;
    }

    // Fitted line: ln_Q(v/peak) = a + b y^2. Re-center so the law reads
    // ln_Q(v/C) = -beta y^2 exactly: with scale = 1/(1+(1-Q)a),
    // beta = -b*scale and C = peak*e_Q(a).
    const double Q = best_q;
    const double a = best.intercept, b = best.slope;
    const double denom = 1.0 + (1.0 - Q) * a;
    if (!(denom > 0.0) || !(b < 0.0))
        throw std::runtime_error("fit: linearization did not produce a concave profile");
    FitResult r{};
    r.params.Q = Q;
    r.params.beta = -b / denom;
    r.params.y0 = 0.0;
    r.params.C = peak * q_exp(Q, a);
    r.r_squared = best.r2();
    r.discrepancy = best.ss_res;
    int used = 0;
    for (double v : vs)
        if (v > 0.0) ++used;
    r.samples = used;
    return r;
}

void write_json(const FitResult& r, std::ostream& os) {
    nlohmann::json j{{"Q", r.params.Q},         {"beta", r.params.beta},
                     {"C", r.params.C},         {"y0", r.params.y0},
                     {"discrepancy", r.discrepancy}, {"samples", r.samples},
                     {"r_squared", r.r_squared}};
    os << j.dump(2) << '\n';
}

}  // namespace flatspot::qgaussian
