#pragma once

#include <optional>
#include <vector>

#include "flatspot/exact_core.hpp"
#include "flatspot/rational.hpp"

namespace flatspot::dynamics {

// The truncated doubling map: f_t(x) = t on [0, t/2] and [(1+t)/2, 1),
// 2x mod 1 in between. Two backends share the same branch convention:
// with y = 2x, the left flat test is y <= t and the right one is
// y - 1 >= t, both exact in binary floating point as well as in
// rational arithmetic.
Rational step(const Rational& t, const Rational& x);
double step(double t, double x);

// Whether x lies in the flat spot [0, t/2] u [(1+t)/2, 1).
bool in_flat_spot(const Rational& t, const Rational& x);
bool in_flat_spot(double t, double x);

// S_n(t, x0) = sum_{i=0}^{n-1} (f_t^i(x0) - 1/2). Exact for the rational
// backend; the double backend rounds only in the accumulation.
Rational deviation_sum(const Rational& t, const Rational& x0, long n);
double deviation_sum(double t, double x0, long n);

// Smallest i <= cap with f_t^i(x0) in the flat spot (so the next iterate
// equals t), or nullopt if the orbit does not reach it within cap steps
// (e.g. x0 on the unstable periodic orbit).
std::optional<long> entry_time(const Rational& t, const Rational& x0, long cap);
std::optional<long> entry_time(double t, double x0, long cap);

// Orbit bookkeeping: entry time, period of the post-entry cycle, and the
// deviation sum over the first n steps.
struct OrbitSummary {
    std::optional<long> entry;
    std::optional<long> period;
    double partial_sum = 0.0;
    long n = 0;
};
OrbitSummary orbit_summary(double t, double x0, long n, long cap);

// The stable q-periodic orbit (t, {2t}, ..., {2^{q-1}t}) for t in the
// interior of the p/q interval. Applying step to the last element
// returns t.
std::vector<Rational> stable_orbit(const RotationFraction& r, const Rational& t);

// lim_n S_n/n = (1/q) sum_{i=0}^{q-1} ({2^i t} - 1/2) for t in I_{p/q}
// (closed; the value at the interior discontinuity t_{p/q} is the right
// limit, which is what direct evaluation of the fractional parts gives).
Rational limit_deviation(const RotationFraction& r, const Rational& t);

// The unique p/q with q <= max_q whose interval contains t, if any.
// Linear scan over farey_enumerate with exact containment tests.
std::optional<RotationFraction> locate(const Rational& t, int max_q);

}  // namespace flatspot::dynamics
