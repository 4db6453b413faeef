#include "flatspot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "flatspot/density.hpp"
#include "flatspot/dynamics.hpp"
#include "flatspot/exact_core.hpp"
#include "flatspot/montecarlo.hpp"
#include "flatspot/qgaussian.hpp"

namespace flatspot::verify {

namespace {

using density::StepFunction;

void check(std::vector<CheckResult>& out, const std::string& name, bool pass,
           const std::string& detail = "") {
    out.push_back(CheckResult{name, pass, detail});
}

// ---- exact_core ----------------------------------------------------------

std::vector<CheckResult> suite_strings() {
    std::vector<CheckResult> out;
    bool ones_ok = true, last_ok = true;
    for (const auto& r : farey_enumerate(30)) {
        const BitString s = upper_string(r);
        if (s.ones() != r.p) ones_ok = false;
        if (s.bit(s.size()) != 0) last_ok = false;
    }
    check(out, "strings/ones-count", ones_ok);
    check(out, "strings/last-bit-zero", last_ok);
    return out;
}

std::vector<CheckResult> suite_intervals() {
    std::vector<CheckResult> out;
    bool width_ok = true, contains_ok = true;
    std::vector<Interval> ivs;
    for (const auto& r : farey_enumerate(30)) {
        const Interval I = interval_I(r);
        if (I.width() != Rational(1) / (Rational::pow2(r.q) - Rational(1))) width_ok = false;
        if (!I.contains(t_of(r))) contains_ok = false;
        ivs.push_back(I);
    }
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    bool disjoint_ok = true;
    for (size_t i = 0; i + 1 < ivs.size(); ++i)
        if (!(ivs[i].hi <= ivs[i + 1].lo)) disjoint_ok = false;
    check(out, "intervals/width", width_ok);
    check(out, "intervals/t-inside", contains_ok);
    check(out, "intervals/interiors-disjoint", disjoint_ok);
    return out;
}

std::vector<CheckResult> suite_mirror() {
    std::vector<CheckResult> out;
    bool ok = true;
    std::string witness;
    for (const auto& r : farey_enumerate(30)) {
        const RotationFraction m(r.q - r.p, r.q);
        if (t_of(m) != Rational(1) - t_of(r)) {
            ok = false;
            witness = r.str();
            break;
        }
    }
    check(out, "mirror/t-reflection", ok, witness);
    return out;
}

std::vector<CheckResult> suite_fracparts() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(20240901);
    bool sum_ok = true, floor_ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const int q = 1 + static_cast<int>(rng() % 60);
        mpz_class num = 0;
        for (int b = 0; b < q; ++b) {
            num <<= 1;
            num += static_cast<long>(rng() & 1);
        }
        const Rational t(num, [&] {
            mpz_class d;
            mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(q));
            return d;
        }());
        // brute force fractional-part sum
        Rational brute;
        mpz_class brute_floor = 0;
        Rational x = t;
        for (int i = 0; i < q; ++i) {
            brute += x;
            x = (x + x).frac();
        }
        Rational pow(1);
        for (int i = 0; i < q; ++i) {
            brute_floor += (t * pow).floor();
            pow *= Rational(2);
        }
        if (sum_frac_parts(t, q) != brute) sum_ok = false;
        if (sum_floor_parts(t, q) != brute_floor) floor_ok = false;
    }
    check(out, "fracparts/closed-form", sum_ok);
    check(out, "fracparts/floor-identity", floor_ok);
    bool rejected = false;
    try {
        sum_frac_parts(Rational(1, 3), 4);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    check(out, "fracparts/non-dyadic-rejected", rejected);
    return out;
}

std::vector<CheckResult> suite_mass() {
    std::vector<CheckResult> out;
    bool increasing = true, bounded = true;
    Rational prev;
    for (int N = 2; N <= 50; ++N) {
        const Rational m = density::total_mass(N);
        if (!(m > prev)) increasing = false;
        if (!(m < Rational(1))) bounded = false;
        prev = m;
    }
    check(out, "mass/strictly-increasing", increasing);
    check(out, "mass/bounded-by-one", bounded);
    check(out, "mass/defect-below-error-bound",
          Rational(1) - density::total_mass(50) <= density::error_bound(50));
    return out;
}

// ---- dynamics ------------------------------------------------------------

std::vector<CheckResult> suite_entry() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(777);
    bool ok = true;
    std::string witness;
    for (const auto& r : farey_enumerate(10)) {
        const Interval I = interval_I(r);
        const Rational t = (I.lo + I.hi + I.hi) / Rational(3);  // interior point
        const long cap = 10L << r.q;
        for (int k = 0; k < 100 && ok; ++k) {
            Rational x0;
            if (k % 2 == 0) {
                x0 = Rational(static_cast<long>(rng() % (1ull << 40)), 1L << 40);
            } else {
                const long d = 2 + static_cast<long>(rng() % 999);
                x0 = Rational(static_cast<long>(rng() % static_cast<uint64_t>(d)), d);
            }
            if (!dynamics::entry_time(t, x0, cap)) {
                ok = false;
                witness = r.str() + " x0=" + x0.str();
            }
        }
    }
    check(out, "entry/finite-within-cap", ok, witness);
    return out;
}

std::vector<CheckResult> suite_convergence() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(31337);
    bool ok = true;
    std::string witness;
    const long n = 1000;
    for (const auto& r : farey_enumerate(6)) {
        const Interval I = interval_I(r);
        for (int i = 1; i <= 5 && ok; ++i) {
            const Rational t = I.lo + I.width() * Rational(i, 6);
            const Rational x0(static_cast<long>(rng() % (1ull << 30)), 1L << 30);
            const auto entry = dynamics::entry_time(t, x0, 10L << r.q);
            if (!entry) {
                ok = false;
                witness = "no entry at " + r.str();
                break;
            }
            if (n < *entry + r.q) continue;
            const Rational lhs =
                (dynamics::deviation_sum(t, x0, n) / Rational(n) -
                 dynamics::limit_deviation(r, t))
                    .abs();
            const Rational rhs = Rational(*entry + 2 * r.q) / Rational(n);
            if (!(lhs <= rhs)) {
                ok = false;
                witness = r.str() + " t=" + t.str();
            }
        }
    }
    check(out, "convergence/theorem-bound", ok, witness);
    return out;
}

std::vector<CheckResult> suite_affine() {
    std::vector<CheckResult> out;
    bool slope_ok = true, jump_ok = true, endpoint_ok = true;
    for (const auto& r : farey_enumerate(14)) {
        const Interval I = interval_I(r);
        const Rational t0 = t_of(r);
        const Rational slope = (Rational::pow2(r.q) - Rational(1)) / Rational(r.q);
        // sample 4 points strictly inside each half
        const auto probe = [&](const Rational& a, const Rational& b) {
            std::vector<std::pair<Rational, Rational>> pts;
            for (int i = 1; i <= 4; ++i) {
                const Rational t = a + (b - a) * Rational(i, 5);
                pts.emplace_back(t, dynamics::limit_deviation(r, t));
            }
            for (size_t i = 0; i + 1 < pts.size(); ++i) {
                const Rational ds = (pts[i + 1].second - pts[i].second) /
                                    (pts[i + 1].first - pts[i].first);
                if (ds != slope) slope_ok = false;
            }
            return pts;
        };
        const auto left = probe(I.lo, t0);
        probe(t0, I.hi);
        // left limit at t0 extrapolated from the left half
        const Rational left_limit = left.back().second + slope * (t0 - left.back().first);
        if (dynamics::limit_deviation(r, t0) != left_limit - Rational(1, r.q)) jump_ok = false;
    }
    for (const auto& r : farey_enumerate(20)) {
        const Interval I = interval_I(r);
        if (dynamics::limit_deviation(r, I.lo) != dynamics::limit_deviation(r, I.hi))
            endpoint_ok = false;
    }
    check(out, "affine/slope", slope_ok);
    check(out, "affine/jump-at-t0", jump_ok);
    check(out, "affine/equal-endpoints", endpoint_ok);
    return out;
}

// ---- density -------------------------------------------------------------

std::vector<CheckResult> suite_component_mass() {
    std::vector<CheckResult> out;
    bool ok = true;
    for (const auto& r : farey_enumerate(25)) {
        const auto c = density::component(r);
        if (c.height * c.support.width() != Rational(1) / (Rational::pow2(r.q) - Rational(1)))
            ok = false;
        if (c.support.width() != Rational(1, r.q)) ok = false;
        if (!(c.support.lo >= Rational(-1, 2) && c.support.hi <= Rational(1, 2))) ok = false;
    }
    check(out, "component/mass-width-support", ok);
    return out;
}

std::vector<Rational> union_midpoints(const StepFunction& a, const StepFunction& b) {
    std::vector<Rational> cuts;
    cuts.insert(cuts.end(), a.breakpoints().begin(), a.breakpoints().end());
    cuts.insert(cuts.end(), b.breakpoints().begin(), b.breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> mids;
    mids.reserve(cuts.size());
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        mids.push_back((cuts[i] + cuts[i + 1]) / Rational(2));
    return mids;
}

std::vector<CheckResult> suite_refinement() {
    std::vector<CheckResult> out;
    bool ok = true;
    StepFunction prev = density::assemble(2);
    for (int N = 3; N <= 20; ++N) {
        StepFunction cur = density::assemble(N);
        for (const Rational& x : union_midpoints(prev, cur))
            if (!(cur.evaluate(x) >= prev.evaluate(x))) ok = false;
        prev = std::move(cur);
    }
    check(out, "refinement/monotone", ok);
    return out;
}

std::vector<CheckResult> suite_supnorm() {
    std::vector<CheckResult> out;
    bool ok = true;
    for (int N = 5; N <= 15; ++N) {
        const StepFunction a = density::assemble(N);
        const StepFunction b = density::assemble(N + 5);
        Rational max_diff;
        for (const Rational& x : union_midpoints(a, b)) {
            const Rational d = b.evaluate(x) - a.evaluate(x);
            if (d > max_diff) max_diff = d;
        }
        if (!(max_diff <= density::error_bound(N))) ok = false;
    }
    check(out, "supnorm/partial-sum-gap", ok);
    return out;
}

std::vector<CheckResult> suite_overlap() {
    std::vector<CheckResult> out;
    bool ok = true;
    std::string witness;
    for (long q = 3; q <= 25 && ok; ++q) {
        std::vector<std::pair<long, long>> expected;
        for (long p = 1; p + 1 < q; ++p)
            if (std::gcd(p, q) == 1 && std::gcd(p + 1, q) == 1) expected.emplace_back(p, p + 1);
        if (density::overlap_pairs(q) != expected) {
            ok = false;
            witness = "q=" + std::to_string(q);
        }
    }
    check(out, "overlap/consecutive-numerators", ok, witness);
    return out;
}

std::vector<CheckResult> suite_symmetry() {
    std::vector<CheckResult> out;
    bool ok = true;
    for (int N = 2; N <= 20; ++N) {
        const StepFunction f = density::assemble(N);
        const auto& b = f.breakpoints();
        for (size_t i = 0; i + 1 < b.size(); ++i) {
            const Rational mid = (b[i] + b[i + 1]) / Rational(2);
            if (f.evaluate(mid) != f.evaluate(-mid)) ok = false;
        }
        if (!f.moment(1).is_zero()) ok = false;
    }
    check(out, "symmetry/even-density-zero-mean", ok);
    return out;
}

std::vector<CheckResult> suite_cover() {
    std::vector<CheckResult> out;
    bool ok = true;
    for (long q = 3; q <= 25; ++q) {
        std::map<Rational, int> events;
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const auto c = density::component(RotationFraction(p, q));
            events[c.support.lo] += 1;
            events[c.support.hi] -= 1;
        }
        int depth = 0;
        for (const auto& [x, d] : events) {
            depth += d;
            if (depth > 2) ok = false;
        }
    }
    check(out, "cover/at-most-two-per-q", ok);
    return out;
}

// ---- qgaussian -----------------------------------------------------------

std::vector<CheckResult> suite_qgaussian() {
    std::vector<CheckResult> out;
    bool roundtrip_ok = true;
    for (double Q : {0.3, 0.7, 2.0}) {
        for (double x = -10.0; x <= 10.0; x += 0.125) {
            if (Q < 1.0 && 1.0 + (1.0 - Q) * x < 1e-9) continue;
            if (Q > 1.0 && 1.0 + (1.0 - Q) * x < 1e-9) continue;
            const double back = qgaussian::q_log(Q, qgaussian::q_exp(Q, x));
            if (std::fabs(back - x) > 1e-12 * std::max(1.0, std::fabs(x)))
                roundtrip_ok = false;
        }
    }
    check(out, "qgaussian/roundtrip", roundtrip_ok);

    const qgaussian::QGaussianParams p{0.7, 16.1, 0.0, 1.0};
    const double l = p.support_halfwidth();
    bool support_ok = qgaussian::density(p, -l - 1e-9) == 0.0 &&
                      qgaussian::density(p, l + 1e-9) == 0.0 &&
                      qgaussian::density(p, 1.5) == 0.0;
    for (double y = -l * 0.999; y < l * 0.999; y += l / 16)
        if (!(qgaussian::density(p, y) > 0.0)) support_ok = false;
    check(out, "qgaussian/support", support_ok);

    const double z1 = 1e-6, z2 = 1e-4;
    const double slope = (std::log(qgaussian::density(p, -l + z2)) -
                          std::log(qgaussian::density(p, -l + z1))) /
                         (std::log(z2) - std::log(z1));
    const double want = 1.0 / (1.0 - p.Q);
    check(out, "qgaussian/tail-exponent",
          std::fabs(slope - want) <= 0.01 * want,
          "slope=" + std::to_string(slope));

    bool leading_ok = true;
    for (double z : {1e-3, 1e-4, 1e-5}) {
        const double ratio = qgaussian::density(p, -l + z) / qgaussian::tail_leading(p, z);
        if (z == 1e-5 && std::fabs(ratio - 1.0) > 5e-3) leading_ok = false;
        if (!(ratio > 0.9 && ratio < 1.1)) leading_ok = false;
    }
    check(out, "qgaussian/tail-leading", leading_ok);
    return out;
}

std::vector<CheckResult> suite_divergence() {
    std::vector<CheckResult> out;
    const StepFunction nu = density::assemble(50);
    const qgaussian::QGaussianParams p{0.7, 16.1, 0.0, 1.0};
    const auto series = qgaussian::tail_ratio_series(p, nu, 8, 20, density::error_bound(50));
    bool increasing = true;
    for (size_t i = 0; i + 1 < series.size(); ++i)
        if (!(series[i + 1].ratio > series[i].ratio)) increasing = false;
    check(out, "divergence/ratio-strictly-increasing", increasing);
    return out;
}

// ---- montecarlo ----------------------------------------------------------

std::vector<CheckResult> suite_mc_bitwise() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(2025);
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
        const long n = 1 + static_cast<long>(rng() % 10000);
        const uint64_t idx = rng();
        const auto fast = montecarlo::sample_one(42, idx, n, 1000000);
        const auto slow = montecarlo::sample_one_direct(42, idx, n);
        if (fast.value != slow.value) ok = false;
    }
    check(out, "mc/fast-equals-direct-bitwise", ok);
    return out;
}

std::vector<CheckResult> suite_mc_determinism() {
    std::vector<CheckResult> out;
    montecarlo::SimulationConfig cfg;
    cfg.samples = 100000;
    cfg.iters = 1000;
    cfg.bins = 200;
    cfg.seed = 99;
    cfg.threads = 1;
    const auto h1 = montecarlo::run(cfg);
    cfg.threads = 2;
    const auto h2 = montecarlo::run(cfg);
    cfg.threads = 5;
    const auto h5 = montecarlo::run(cfg);
    check(out, "mc/worker-count-invariant",
          h1.counts == h2.counts && h2.counts == h5.counts);
    check(out, "mc/no-overflow",
          h1.underflow == 0 && h1.overflow == 0 && h5.underflow == 0 && h5.overflow == 0);
    return out;
}

std::vector<CheckResult> suite_mc_mean() {
    std::vector<CheckResult> out;
    const long M = 100000, n = 10000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < M; ++i) {
        const double v = montecarlo::sample_one(7, static_cast<uint64_t>(i), n, 1000000).value;
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(M);
    const double sd = std::sqrt((sumsq / static_cast<double>(M) - mean * mean) /
                                static_cast<double>(M));
    check(out, "mc/mean-near-zero", std::fabs(mean) <= 3.0 * sd,
          "mean=" + std::to_string(mean) + " sigma=" + std::to_string(sd));
    return out;
}

std::vector<CheckResult> suite_mc_convergence() {
    std::vector<CheckResult> out;
    const StepFunction nu = density::assemble(40);
    montecarlo::SimulationConfig cfg;
    cfg.samples = 100000;
    cfg.bins = 400;
    cfg.seed = 5;
    std::vector<double> l1;
    for (long n : {100L, 1000L, 10000L}) {
        cfg.iters = n;
        l1.push_back(montecarlo::compare(montecarlo::run(cfg), nu).l1);
    }
    // allow 2x the multinomial noise floor on top of monotone decrease
    const double noise = std::sqrt(2.0 * cfg.bins / (M_PI * cfg.samples));
    bool ok = l1[1] <= l1[0] + 2.0 * noise && l1[2] <= l1[1] + 2.0 * noise;
    std::ostringstream os;
    os << "L1(100)=" << l1[0] << " L1(1e3)=" << l1[1] << " L1(1e4)=" << l1[2];
    check(out, "mc/l1-nonincreasing-in-n", ok, os.str());
    return out;
}

using SuiteFn = std::vector<CheckResult> (*)();

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"strings", suite_strings},
        {"intervals", suite_intervals},
        {"mirror", suite_mirror},
        {"fracparts", suite_fracparts},
        {"mass", suite_mass},
        {"entry", suite_entry},
        {"convergence", suite_convergence},
        {"affine", suite_affine},
        {"component-mass", suite_component_mass},
        {"refinement", suite_refinement},
        {"supnorm", suite_supnorm},
        {"overlap", suite_overlap},
        {"symmetry", suite_symmetry},
        {"cover", suite_cover},
        {"qgaussian", suite_qgaussian},
        {"divergence", suite_divergence},
        {"mc-bitwise", suite_mc_bitwise},
        {"mc-determinism", suite_mc_determinism},
        {"mc-mean", suite_mc_mean},
        {"mc-convergence", suite_mc_convergence},
    };
    return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    names.push_back("all");
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& [n, fn] : registry()) {
            auto part = fn();
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    for (const auto& [n, fn] : registry())
        if (n == name) return fn();
    throw std::invalid_argument("unknown verify suite: " + name);
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace flatspot::verify
