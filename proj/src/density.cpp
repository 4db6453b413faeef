#include "flatspot/density.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace flatspot::density {

DensityComponent component(const RotationFraction& r) {
    const Rational t = t_of(r);
    const Rational q(r.q);
    const Rational lo = (Rational(r.p) - t) / q - Rational(1, 2);
    const Rational hi = lo + Rational(1, r.q);
    const Rational height = Rational(r.q) / (Rational::pow2(r.q) - Rational(1));
    return DensityComponent{r, Interval{lo, hi}, height};
}

StepFunction::StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size() + 1)
        throw std::invalid_argument("StepFunction: need one more breakpoint than values");
    for (size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw std::invalid_argument("StepFunction: breakpoints must strictly increase");
    prefix_.reserve(breakpoints_.size());
    Rational acc;
    prefix_.push_back(acc);
    for (size_t i = 0; i < values_.size(); ++i) {
        acc += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
        prefix_.push_back(acc);
    }
}

Rational StepFunction::evaluate(const Rational& x) const {
    if (empty()) return Rational(0);
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.begin() || it == breakpoints_.end()) return Rational(0);
    return values_[static_cast<size_t>(it - breakpoints_.begin()) - 1];
}

Rational StepFunction::cdf(const Rational& x) const {
    if (empty() || x <= breakpoints_.front()) return Rational(0);
    if (x >= breakpoints_.back()) return prefix_.back();
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const size_t i = static_cast<size_t>(it - breakpoints_.begin()) - 1;
    return prefix_[i] + values_[i] * (x - breakpoints_[i]);
}

Rational StepFunction::moment(int k) const {
    Rational sum;
    const Rational kk(k + 1);
    for (size_t i = 0; i < values_.size(); ++i) {
        Rational hi = breakpoints_[i + 1], lo = breakpoints_[i];
        Rational hp(1), lp(1);
        for (int j = 0; j <= k; ++j) {
            hp *= hi;
            lp *= lo;
        }
        sum += values_[i] * (hp - lp) / kk;
    }
    return sum;
}

StepFunction assemble(int N) {
    if (N < 2) throw std::invalid_argument("assemble: N must be >= 2");
    // farey_enumerate applies the capacity cap
    std::map<Rational, Rational> delta;  // height change at each endpoint
    for (const RotationFraction& r : farey_enumerate(N)) {
        const DensityComponent c = component(r);
        delta[c.support.lo] += c.height;
        delta[c.support.hi] -= c.height;
    }
    // Endpoints with a zero net height change are dropped, so consecutive
    // plateau values always differ and the representation is canonical.
    std::vector<Rational> bps, vals;
    bps.reserve(delta.size());
    vals.reserve(delta.size());
    Rational acc;
    for (const auto& [x, d] : delta) {
        if (d.is_zero()) continue;
        if (!bps.empty()) vals.push_back(acc);
        bps.push_back(x);
        acc += d;
    }
    if (!acc.is_zero()) throw std::logic_error("assemble: sweep did not close at zero");
    if (bps.empty()) return StepFunction();
    return StepFunction(std::move(bps), std::move(vals));
}

Rational error_bound(int N) {
    if (N < 2) throw std::invalid_argument("error_bound: N must be >= 2");
    return Rational(4 * (static_cast<long>(N) + 2)) / (Rational::pow2(N + 1) - Rational(1));
}

std::vector<std::pair<long, long>> overlap_pairs(long q) {
    if (q < 3) throw std::invalid_argument("overlap_pairs: q must be >= 3");
    std::vector<long> ps;
    for (long p = 1; p < q; ++p)
        if (std::gcd(p, q) == 1) ps.push_back(p);
    std::vector<Interval> supports;
    supports.reserve(ps.size());
    for (long p : ps) supports.push_back(component(RotationFraction(p, q)).support);
    std::vector<std::pair<long, long>> out;
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j)
            if (supports[i].intersects(supports[j])) out.emplace_back(ps[i], ps[j]);
    return out;
}

Rational total_mass(int N) {
    if (N < 2) throw std::invalid_argument("total_mass: N must be >= 2");
    Rational sum;
    for (long q = 2; q <= N; ++q) {
        long phi = 0;
        for (long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) ++phi;
        sum += Rational(phi) / (Rational::pow2(q) - Rational(1));
    }
    return sum;
}

TailBounds tail_bounds(long q) {
    if (q < 4) throw std::invalid_argument("tail_bounds: q must be >= 4");
    Rational lower;
    for (long k = q; k <= 2 * q - 1; ++k)
        lower += Rational(k) / (Rational::pow2(k) - Rational(1));
    // sum_{k>=2q} k 2^{-k} = (2q+1) 2^{1-2q}; correction 2^{2q}/(2^{2q}-1)
    const Rational p22q = Rational::pow2(2 * q);
    const Rational geom = Rational(2 * q + 1) * Rational::pow2(1 - 2 * q);
    const Rational upper = lower + Rational(2) * (p22q / (p22q - Rational(1))) * geom;
    return TailBounds{lower, upper};
}

void write_csv(const StepFunction& f, std::ostream& os) {
    os << "x_left,x_right,value_exact,value_float\n";
    const auto& b = f.breakpoints();
    const auto& v = f.values();
    for (size_t i = 0; i < v.size(); ++i)
        os << b[i].str() << ',' << b[i + 1].str() << ',' << v[i].str() << ','
           << format_double(v[i].to_double()) << '\n';
}

void write_json(const StepFunction& f, std::ostream& os) {
    nlohmann::json rows = nlohmann::json::array();
    const auto& b = f.breakpoints();
    const auto& v = f.values();
    for (size_t i = 0; i < v.size(); ++i)
        rows.push_back({{"x_left", b[i].str()},
                        {"x_right", b[i + 1].str()},
                        {"value_exact", v[i].str()},
                        {"value_float", v[i].to_double()}});
    os << rows.dump(2) << '\n';
}

}  // namespace flatspot::density
