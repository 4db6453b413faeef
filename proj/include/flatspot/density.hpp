#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "flatspot/exact_core.hpp"
#include "flatspot/rational.hpp"

namespace flatspot::density {

// One component of the limit density: constant height q/(2^q - 1) on the
// width-1/q support interval J_{p/q} = [(p-t)/q - 1/2, (p-t+1)/q - 1/2].
struct DensityComponent {
    RotationFraction r;
    Interval support;
    Rational height;
};

DensityComponent component(const RotationFraction& r);

// Piecewise-constant function with exact rational breakpoints, right-
// continuous, zero outside the extreme breakpoints. Immutable.
class StepFunction {
public:
    StepFunction() = default;
    // breakpoints strictly increasing, values.size() == breakpoints.size()-1.
    StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values);

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& values() const { return values_; }
    bool empty() const { return values_.empty(); }
    size_t plateau_count() const { return values_.size(); }

    // Right-continuous evaluation; 0 outside [first, last) breakpoint.
    Rational evaluate(const Rational& x) const;

    // Integral over (-inf, x].
    Rational cdf(const Rational& x) const;

    Rational mass() const { return prefix_.empty() ? Rational(0) : prefix_.back(); }

    // Exact k-th raw moment: integral of x^k f(x) dx.
    Rational moment(int k) const;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Rational> values_;
    std::vector<Rational> prefix_;  // prefix_[i] = integral up to breakpoints_[i]
};

// The partial-sum density over all reduced p/q with q <= N: an exact sweep
// over component endpoints, with coincident endpoints merged by exact
// equality and equal adjacent plateaus coalesced.
StepFunction assemble(int N);

// Sup-norm truncation error of the N-th partial sum: 4(N+2)/(2^{N+1} - 1).
Rational error_bound(int N);

// All pairs p1 < p2 (both coprime to q) whose support intervals intersect,
// found by exact pairwise interval intersection. Equals the set of
// consecutive coprime numerator pairs.
std::vector<std::pair<long, long>> overlap_pairs(long q);

// sum_{q <= N} phi(q)/(2^q - 1), the total mass of the N-th partial sum.
Rational total_mass(int N);

// Exact bracket for the density at -1/2 + 1/q:
//   lower = sum_{k=q}^{2q-1} k/(2^k - 1)
//   upper = lower + 2 * (2^{2q}/(2^{2q}-1)) * sum_{k>=2q} k 2^{-k}
// with the geometric tail sum_{k>=m} k 2^{-k} = (m+1) 2^{1-m}.
struct TailBounds {
    Rational lower;
    Rational upper;
};
TailBounds tail_bounds(long q);

// Plot-data emitters: rows x_left,x_right,value_exact,value_float with
// exact fields in num/den form and floats at 17 significant digits.
void write_csv(const StepFunction& f, std::ostream& os);
void write_json(const StepFunction& f, std::ostream& os);

}  // namespace flatspot::density
