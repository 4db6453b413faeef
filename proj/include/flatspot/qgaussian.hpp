#pragma once

#include <iosfwd>
#include <vector>

#include "flatspot/density.hpp"
#include "flatspot/rational.hpp"

namespace flatspot::qgaussian {

// Generalized exponential e_Q(x) = (1 + (1-Q)x)^{1/(1-Q)} and its inverse
// ln_Q(y) = (y^{1-Q} - 1)/(1-Q); both reduce to exp/log as Q -> 1.
// q_exp throws std::domain_error when 1 + (1-Q)x < 0 (and when it hits 0
// with Q > 1); the compact-support cutoff lives in density() instead.
double q_exp(double Q, double x);
double q_log(double Q, double y);

struct QGaussianParams {
    double Q;
    double beta;
    double y0 = 0.0;
    double C = 1.0;

    // Half-width of the support for Q < 1: ((1-Q) beta)^{-1/2}.
    double support_halfwidth() const;
};

// C * e_Q(-beta (y-y0)^2), with value 0 outside the support when Q < 1.
double density(const QGaussianParams& p, double y);

// Leading behavior K z^{1/(1-Q)} of the density at distance z above the
// left support edge, K = C (2/l)^{1/(1-Q)}.
double tail_leading(const QGaussianParams& p, double z);

struct TailRatioPoint {
    long q;
    double z;        // 1/q
    double qgauss;   // density at -l + z
    double nu;       // nu evaluated at -1/2 + z
    double ratio;    // qgauss / nu
};

// ratio(z) = density(-l+z) / nu(-1/2+z) for z = 1/q, q in [q_from, q_to].
// truncation_error is the sup-norm error of the supplied partial sum; the
// series is rejected if it is not below every probed nu value.
std::vector<TailRatioPoint> tail_ratio_series(const QGaussianParams& p,
                                              const density::StepFunction& nu,
                                              long q_from, long q_to,
                                              const Rational& truncation_error);

struct FitOptions {
    int bins = 100;          // mass-preserving bin averages over [-1/2, 1/2]
    double q_lo = 0.05;
    double q_hi = 0.95;
    double q_step = 0.005;
    int refine_rounds = 2;   // grid refinement, step/10 per round
};

struct FitResult {
    QGaussianParams params;
    double r_squared;        // linearity of ln_Q(nu/peak) against y^2
    double discrepancy;      // residual sum of squares of that regression
    int samples;             // number of bins entering the regression
};

// Fits C e_Q(-beta y^2) to a density by constant-Q linearization: bin the
// density, pick Q maximizing the straight-line fit of ln_Q(value/peak)
// against y^2, then read beta and C off the fitted line. y0 is fixed at 0.
FitResult fit(const density::StepFunction& nu, const FitOptions& opts = {});

// {Q, beta, C, y0, discrepancy, samples}
void write_json(const FitResult& r, std::ostream& os);

}  // namespace flatspot::qgaussian
