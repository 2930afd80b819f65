#include "ldposc/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <string>
#include <thread>

#include "ldposc/error.hpp"
#include "ldposc/ldp.hpp"
#include "ldposc/oscillator.hpp"
#include "ldposc/rng.hpp"

namespace ldposc {

namespace {

constexpr std::size_t kBlock = 256;

// Runs body(block) for block = 0..blocks-1 on up to `threads` workers.
template <typename Body>
void for_each_block(std::size_t blocks, unsigned threads, Body body) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(1, blocks)));
    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b) body(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= blocks || failed.load()) return;
                try {
                    body(b);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

unsigned resolve_threads(unsigned requested) { return requested == 0 ? worker_count() : requested; }

}  // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("LDP_OSC_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double pairwise_sum(const double* values, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t k = 0; k < count; ++k) s += values[k];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

SampleSummary summarize(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("cannot summarize an empty sample");
    const std::size_t n = values.size();
    const double dn = static_cast<double>(n);
    SampleSummary s;
    s.mean = pairwise_sum(values.data(), n) / dn;
    std::vector<double> d2(n);
    std::vector<double> d4(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = values[k] - s.mean;
        d2[k] = d * d;
        d4[k] = d2[k] * d2[k];
    }
    const double m2 = pairwise_sum(d2.data(), n) / dn;
    const double m4 = pairwise_sum(d4.data(), n) / dn;
    s.variance = n > 1 ? m2 * dn / (dn - 1.0) : 0.0;
    s.mean_stderr = std::sqrt(s.variance / dn);
    s.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / dn);
    return s;
}

SimResult simulate_paths(const SimConfig& config) {
    if (config.samples < 1) throw DomainError("samples must be >= 1");
    if (config.N < 1) throw DomainError("N must be >= 1");
    require_admissible(config.method, config.h);
    const Coefficients c = evaluate(config.method, config.h);
    const double sqrt_h = std::sqrt(config.h);
    const double ab1 = config.params.alpha * c.b.x;
    const double ab2 = config.params.alpha * c.b.y;
    const std::size_t samples = static_cast<std::size_t>(config.samples);

    SimResult out;
    out.sum_x.assign(samples, 0.0);
    out.x_N.assign(samples, 0.0);
    const std::size_t blocks = (samples + kBlock - 1) / kBlock;
    for_each_block(blocks, resolve_threads(config.threads), [&](std::size_t block) {
        const std::size_t end = std::min(samples, (block + 1) * kBlock);
        for (std::size_t path = block * kBlock; path < end; ++path) {
            rng::Stream stream = rng::Stream::for_index(config.seed, path);
            double x = config.params.x0;
            double y = config.params.y0;
            double sum = 0.0;
            for (long long n = 0; n < config.N; ++n) {
                sum += x;
                const double dw = sqrt_h * stream.next_normal();
                const double xn = c.a.a11 * x + c.a.a12 * y + ab1 * dw;
                const double yn = c.a.a21 * x + c.a.a22 * y + ab2 * dw;
                x = xn;
                y = yn;
            }
            out.sum_x[path] = sum;
            out.x_N[path] = x;
        }
    });

    const double n = static_cast<double>(config.N);
    out.NA = summarize(out.sum_x);
    std::vector<double> a(samples);
    std::vector<double> b(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        a[k] = out.sum_x[k] / n;
        b[k] = out.x_N[k] / (n * config.h);
    }
    out.A = summarize(a);
    out.B = summarize(b);
    return out;
}

EmpiricalProbability empirical_probability(const std::vector<double>& values, double lo, double hi) {
    if (values.empty()) throw DomainError("empty sample");
    if (!(lo <= hi)) throw DomainError("interval needs lo <= hi");
    const auto hits = std::count_if(values.begin(), values.end(),
                                    [&](double v) { return lo <= v && v <= hi; });
    const double n = static_cast<double>(values.size());
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

MsqReport msq_order(const MethodDef& method, const std::vector<double>& h_values, double T0,
                    long long samples, std::uint64_t seed, const OscillatorParams& params,
                    unsigned threads) {
    if (h_values.size() < 2) throw DomainError("sweep requires >= 2 points");
    if (!(T0 > 0.0)) throw DomainError("T0 must be positive");
    if (samples < 1) throw DomainError("samples must be >= 1");
    for (std::size_t k = 0; k < h_values.size(); ++k) {
        if (!(h_values[k] > 0.0)) throw DomainError("step-sizes must be positive");
        if (k > 0 && !(h_values[k] < h_values[k - 1])) {
            throw DomainError("step-sizes must be strictly decreasing");
        }
    }
    const unsigned workers = resolve_threads(threads);
    const std::size_t paths = static_cast<std::size_t>(samples);
    const std::size_t blocks = (paths + kBlock - 1) / kBlock;

    MsqReport report;
    for (std::size_t level = 0; level < h_values.size(); ++level) {
        const double requested = h_values[level];
        const long long M = std::max(1LL, std::llround(T0 / requested));
        const double h = T0 / static_cast<double>(M);
        if (std::abs(h - requested) > 1e-12 * requested) {
            std::ostringstream os;
            os.precision(17);
            os << "T0/h not an integer for h=" << requested << "; using h=" << h << " (" << M
               << " steps)";
            report.warnings.push_back(os.str());
        }
        const Coefficients c = evaluate(method, h);
        const ExactStepSampler sampler(h);
        const Matrix2 R = rotation(h);
        const std::size_t grid = static_cast<std::size_t>(M);

        // Squared-error sums per block and grid point, reduced in block order.
        std::vector<double> block_sums(blocks * grid, 0.0);
        const std::uint64_t level_seed = rng::derive_key(seed, level);
        for_each_block(blocks, workers, [&](std::size_t block) {
            double* acc = block_sums.data() + block * grid;
            const std::size_t end = std::min(paths, (block + 1) * kBlock);
            for (std::size_t path = block * kBlock; path < end; ++path) {
                rng::Stream stream = rng::Stream::for_index(level_seed, path);
                Vector2 exact{params.x0, params.y0};
                Vector2 approx{params.x0, params.y0};
                for (std::size_t n = 0; n < grid; ++n) {
                    const StepNoise noise = sampler.sample(stream);
                    exact = R * exact;
                    exact.x += params.alpha * noise.i1;
                    exact.y += params.alpha * noise.i2;
                    approx = Vector2{c.a.a11 * approx.x + c.a.a12 * approx.y + params.alpha * c.b.x * noise.dw,
                                     c.a.a21 * approx.x + c.a.a22 * approx.y + params.alpha * c.b.y * noise.dw};
                    const double ex = approx.x - exact.x;
                    const double ey = approx.y - exact.y;
                    acc[n] += ex * ex + ey * ey;
                }
            }
        });
        std::vector<double> column(blocks);
        double worst = 0.0;
        for (std::size_t n = 0; n < grid; ++n) {
            for (std::size_t b = 0; b < blocks; ++b) column[b] = block_sums[b * grid + n];
            const double ms = pairwise_sum(column.data(), blocks) / static_cast<double>(paths);
            worst = std::max(worst, std::sqrt(ms));
        }
        report.h_values.push_back(h);
        report.steps.push_back(M);
        report.rms_errors.push_back(worst);
    }
    const LogLogFit fit = fit_log_log(report.h_values, report.rms_errors);
    report.slope = fit.slope;
    report.residual = fit.residual;
    return report;
}

}  // namespace ldposc
