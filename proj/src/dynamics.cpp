#include "flatspot/dynamics.hpp"

#include <stdexcept>

namespace flatspot::dynamics {

namespace {

const Rational kHalf(1, 2);
const Rational kOne(1);

void check_unit(const Rational& x, const char* what) {
    if (x.sign() < 0 || x >= kOne)
        throw std::domain_error(std::string(what) + " must lie in [0,1)");
}

void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x < 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0,1)");
}

}  // namespace

Rational step(const Rational& t, const Rational& x) {
    check_unit(t, "t");
    check_unit(x, "x");
    const Rational y = x + x;
    if (y < kOne) return y <= t ? t : y;
    const Rational z = y - kOne;
    return z >= t ? t : z;
}

double step(double t, double x) {
    check_unit(t, "t");
    check_unit(x, "x");
    const double y = 2.0 * x;            // exact: exponent shift
    if (y < 1.0) return y <= t ? t : y;
    const double z = y - 1.0;            // exact for y in [1,2)
    return z >= t ? t : z;
}

bool in_flat_spot(const Rational& t, const Rational& x) {
    const Rational y = x + x;
    return y < kOne ? y <= t : y - kOne >= t;
}

bool in_flat_spot(double t, double x) {
    const double y = 2.0 * x;
    return y < 1.0 ? y <= t : y - 1.0 >= t;
}

Rational deviation_sum(const Rational& t, const Rational& x0, long n) {
    if (n < 1) throw std::invalid_argument("deviation_sum: n must be >= 1");
    check_unit(t, "t");
    check_unit(x0, "x0");
    Rational sum;
    Rational x = x0;
    for (long i = 0; i < n; ++i) {
        sum += x;
        if (i + 1 < n) x = step(t, x);
    }
    return sum - Rational(n) * kHalf;
}

double deviation_sum(double t, double x0, long n) {
    if (n < 1) throw std::invalid_argument("deviation_sum: n must be >= 1");
    check_unit(t, "t");
    check_unit(x0, "x0");
    double sum = 0.0;
    double x = x0;
    for (long i = 0; i < n; ++i) {
        sum += x - 0.5;
        if (i + 1 < n) x = step(t, x);
    }
    return sum;
}

std::optional<long> entry_time(const Rational& t, const Rational& x0, long cap) {
    check_unit(t, "t");
    check_unit(x0, "x0");
    Rational x = x0;
    for (long i = 0; i <= cap; ++i) {
        if (in_flat_spot(t, x)) return i;
        x = step(t, x);
    }
    return std::nullopt;
}

std::optional<long> entry_time(double t, double x0, long cap) {
    check_unit(t, "t");
    check_unit(x0, "x0");
    double x = x0;
    for (long i = 0; i <= cap; ++i) {
        if (in_flat_spot(t, x)) return i;
        x = step(t, x);
    }
    return std::nullopt;
}

OrbitSummary orbit_summary(double t, double x0, long n, long cap) {
    OrbitSummary out;
    out.n = n;
    double x = x0;
    std::optional<long> entry;
    for (long i = 0; i < n; ++i) {
        out.partial_sum += x - 0.5;
        if (!entry && i <= cap && in_flat_spot(t, x)) entry = i;
        if (i + 1 < n) x = step(t, x);
    }
    out.entry = entry;
    if (entry) {
        // period = first return time of t to itself
        double y = t;
        for (long k = 1; k <= cap; ++k) {
            y = step(t, y);
            if (y == t) {
                out.period = k;
                break;
            }
        }
    }
    return out;
}

std::vector<Rational> stable_orbit(const RotationFraction& r, const Rational& t) {
    if (!interval_I(r).interior_contains(t))
        throw std::domain_error("stable_orbit: t not in the interior of I_{p/q}");
    std::vector<Rational> orbit;
    orbit.reserve(static_cast<size_t>(r.q));
    Rational x = t;
    for (long i = 0; i < r.q; ++i) {
        orbit.push_back(x);
        x = (x + x).frac();
    }
    return orbit;
}

Rational limit_deviation(const RotationFraction& r, const Rational& t) {
    if (!interval_I(r).contains(t))
        throw std::domain_error("limit_deviation: t not in I_{p/q}");
    Rational sum;
    Rational x = t;
    for (long i = 0; i < r.q; ++i) {
        sum += x;
        x = (x + x).frac();
    }
    return sum / Rational(r.q) - kHalf;
}

std::optional<RotationFraction> locate(const Rational& t, int max_q) {
    if (t.sign() <= 0 || t >= kOne)
        throw std::domain_error("locate: t must lie in (0,1)");
    for (const RotationFraction& r : farey_enumerate(max_q))
        if (interval_I(r).contains(t)) return r;
    return std::nullopt;
}

}  // namespace flatspot::dynamics
