#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldposc/method.hpp"
#include "ldposc/types.hpp"

namespace ldposc {

/// Worker count: LDP_OSC_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1). Results never depend on it.
unsigned worker_count();

struct SimConfig {
    MethodDef method;
    double h = 0.1;
    long long N = 1000;
    long long samples = 1000;
    std::uint64_t seed = 0;
    OscillatorParams params;
    /// 0 means worker_count().
    unsigned threads = 0;
};

/// Sample mean and variance with their standard errors.
struct SampleSummary {
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased
    double mean_stderr = 0.0;
    double variance_stderr = 0.0;  ///< sqrt((m4 - s^4) / n), central moments
};

/// Summation in index order by recursive halving; the result depends only on
/// the values and their order.
double pairwise_sum(const double* values, std::size_t count);

SampleSummary summarize(const std::vector<double>& values);

struct SimResult {
    std::vector<double> sum_x;  ///< N A_N per path
    std::vector<double> x_N;    ///< x_N per path
    SampleSummary NA;
    SampleSummary A;  ///< A_N = N A_N / N
    SampleSummary B;  ///< B_N = x_N / (N h)
};

/// Runs `samples` independent trajectories of the method; path k draws its
/// increments dW_n = sqrt(h) Z from stream k of `seed`. Throws
/// ConditionError("range") for an inadmissible h and DomainError for bad sizes.
SimResult simulate_paths(const SimConfig& config);

/// Fraction of values in [lo, hi] and its binomial standard error.
struct EmpiricalProbability {
    double value = 0.0;
    double standard_error = 0.0;
};
EmpiricalProbability empirical_probability(const std::vector<double>& values, double lo, double hi);

struct MsqReport {
    std::vector<double> h_values;   ///< step-sizes actually used (T0 / steps)
    std::vector<long long> steps;   ///< grid points per level
    std::vector<double> rms_errors; ///< sup over the grid of the RMS (x, y) error
    double slope = 0.0;             ///< least-squares order in h
    double residual = 0.0;          ///< RMS residual of the log-log fit
    std::vector<std::string> warnings;
};

/// Strong error against the exact solution on the same Brownian path. At each
/// level the exact solution is propagated on the method's own grid with the
/// jointly sampled (dW, I1, I2); the method consumes the same dW. Step-sizes
/// with T0/h not an integer are replaced by T0/round(T0/h) with a warning.
/// h_values must be strictly decreasing with at least two entries.
MsqReport msq_order(const MethodDef& method, const std::vector<double>& h_values, double T0,
                    long long samples, std::uint64_t seed, const OscillatorParams& params,
                    unsigned threads = 0);

}  // namespace ldposc
