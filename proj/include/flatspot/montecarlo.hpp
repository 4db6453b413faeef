#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "flatspot/density.hpp"

namespace flatspot::montecarlo {

struct SimulationConfig {
    long samples = 100000;       // M
    long iters = 10000;          // n
    long entry_cap = 1000000;
    int bins = 400;              // uniform over [-1/2, 1/2]
    uint64_t seed = 1;
    int threads = 0;             // 0 = hardware concurrency
};

struct Histogram {
    int bins = 0;
    long total = 0;                 // M
    std::vector<uint64_t> counts;   // size bins
    uint64_t underflow = 0;         // mass below -1/2
    uint64_t overflow = 0;          // mass above 1/2

    static Histogram empty(int bins);
    void add(double value);
    void merge(const Histogram& o);
    // Exact rational edges -1/2 + i/bins.
    Rational edge(int i) const { return Rational(i, bins) - Rational(1, 2); }
};

// One realized S_n/n with its provenance.
struct DeviationSample {
    double t;
    double x0;
    long n;
    double value;       // S_n/n
    long entry = -1;    // flat-spot entry time, -1 if not reached within cap
    long period = -1;   // post-entry cycle length, -1 if not detected
};

// Draws (t, x0) from the substream keyed by (seed, index) and computes
// S_n/n. Orbit values live on the 2^-53 grid, so the whole sum is carried
// as an exact integer; after the orbit enters the flat spot the periodic
// block is summed in closed form. Bitwise equal to the direct path.
DeviationSample sample_one(uint64_t seed, uint64_t index, long n, long cap);

// Direct n-step reference path (same draws, no closed form).
DeviationSample sample_one_direct(uint64_t seed, uint64_t index, long n);

// Embarrassingly parallel sampling; the histogram depends only on
// (seed, samples, iters, bins), not on the worker count.
Histogram run(const SimulationConfig& config);

struct Comparison {
    double l1 = 0.0;   // sum over bins of |empirical - exact| mass
    double ks = 0.0;   // max over bin edges of |empirical CDF - exact CDF|
};

// Compares a histogram against exact bin masses of a step function.
Comparison compare(const Histogram& h, const density::StepFunction& nu);

// Inverse-CDF sampler from a step-function density (normalized by its
// total mass). stratified=true uses the deterministic low-discrepancy
// stream u_i = (i+1/2)/M, which isolates the comparison machinery from
// Monte Carlo noise; stratified=false draws iid uniforms from seed.
Histogram sample_from_density(const density::StepFunction& nu, long samples, int bins,
                              uint64_t seed, bool stratified);

// CSV rows bin_left,bin_right,count,empirical_density,exact_density.
void write_csv(const Histogram& h, const density::StepFunction& nu, std::ostream& os);
void write_json(const Histogram& h, const density::StepFunction& nu, std::ostream& os);
// Comparison report {L1, KS, M, n, B, seed}.
void write_report_json(const Comparison& c, const SimulationConfig& cfg, std::ostream& os);

namespace detail {

// splitmix64; substreams are keyed by (seed, index).
struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform on the 2^-53 grid in [0,1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

SplitMix64 substream(uint64_t seed, uint64_t index);

}  // namespace detail

}  // namespace flatspot::montecarlo
