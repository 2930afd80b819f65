#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "ldposc/catalog.hpp"
#include "ldposc/error.hpp"
#include "ldposc/gaussian_law.hpp"
#include "ldposc/ldp.hpp"
#include "ldposc/method_file.hpp"
#include "ldposc/oscillator.hpp"
#include "ldposc/search.hpp"
#include "ldposc/simulation.hpp"
#include "table.hpp"

namespace ldposc::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Options {
    std::string method;
    std::string observable = "mean-position";
    double h = kUnset;
    std::string h_sweep;
    long long N = 0;
    std::string N_sweep;
    std::string interval;
    double alpha = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;
    long long samples = 0;
    std::uint64_t seed = 1;
    double T0 = 1.0;
    std::string format = "csv";
    std::string out;
    std::string plot;
};

// Outcome of a command: its table, the gnuplot script (if any) and the exit code.
struct Result {
    Table table;
    std::string plot_script;
    int code = kExitOk;
};

double parse_number(const std::string& text, const std::string& what) {
    if (text == "inf") return kInf;
    if (text == "-inf") return -kInf;
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw DomainError("cannot read " + what + " '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

OscillatorParams params_of(const Options& o) {
    if (!(o.alpha > 0.0)) throw DomainError("--alpha must be positive");
    return {o.alpha, o.x0, o.y0};
}

// Step-sizes from --h or --h-sweep, largest first.
std::vector<double> step_sizes(const Options& o, std::optional<std::vector<double>> fallback = {}) {
    std::vector<double> hs;
    if (!o.h_sweep.empty()) {
        hs = parse_sweep(o.h_sweep);
    } else if (!std::isnan(o.h)) {
        hs = {o.h};
    } else if (fallback) {
        hs = *fallback;
    } else {
        throw DomainError("one of --h or --h-sweep is required");
    }
    for (double h : hs) {
        if (!(h > 0.0)) throw DomainError("step-sizes must be positive");
    }
    std::sort(hs.begin(), hs.end(), std::greater<>());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

double single_h(const Options& o) {
    if (!o.h_sweep.empty()) throw DomainError("this command takes a single --h");
    if (std::isnan(o.h)) throw DomainError("--h is required");
    if (!(o.h > 0.0)) throw DomainError("--h must be positive");
    return o.h;
}

MethodDef method_of(const Options& o) {
    if (o.method.empty()) throw DomainError("--method is required");
    return resolve_method(o.method);
}

std::string range_text(const AdmissibleRange& r) { return r.to_string(); }

std::string exact_text(const MethodDef& m) {
    std::string out;
    for (Observable obs : m.exact_observables()) {
        if (!out.empty()) out += " ";
        out += std::string(to_string(obs));
    }
    return out.empty() ? "-" : out;
}

std::string plot_header(const Options& o, const std::string& title) {
    std::ostringstream os;
    os << "# gnuplot script\n"
       << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set key autotitle columnhead\n"
       << "set title '" << title << "'\n"
       << "data = '" << o.out << "'\n";
    return os.str();
}

Result cmd_catalog(const Options& o) {
    const double h = std::isnan(o.h) ? 1.0 : o.h;
    if (!(h > 0.0)) throw DomainError("--h must be positive");
    std::vector<MethodDef> methods = catalog();
    if (!o.method.empty()) methods.push_back(resolve_method(o.method));

    Result r;
    r.table.command = "catalog";
    r.table.columns = {"id", "name", "group", "range", "h", "in_range", "det", "trace",
                       "symplectic", "a1", "a2", "a3", "a4", "excluded", "exact"};
    for (const MethodDef& m : methods) {
        const ConditionReport c = check_conditions(evaluate(m, h));
        r.table.add_row({m.id(), m.name(), std::string(to_string(m.group())), range_text(m.range()), h,
                         m.range().contains(h), c.det, c.trace, c.symplectic, c.a1, c.a2, c.a3, c.a4,
                         c.excluded, exact_text(m)});
    }
    return r;
}

std::vector<double> condition_b_sequence() {
    std::vector<double> hs;
    for (int k = 3; k <= 12; ++k) hs.push_back(std::ldexp(1.0, -k));
    return hs;
}

Result cmd_conditions(const Options& o) {
    const MethodDef m = method_of(o);
    Result r;
    r.table.command = "conditions";
    r.table.columns = {"method", "h", "det", "trace", "a1", "a2", "a3", "a4", "symplectic",
                       "excluded", "in_range", "r1", "r2", "r3", "r4"};
    for (double h : step_sizes(o)) {
        const Coefficients c = evaluate(m, h);
        const ConditionReport rep = check_conditions(c);
        const ConditionBRow b = condition_b_diagnostics(m, {2.0 * h, h}).rows.back();
        r.table.add_row({m.id(), h, rep.det, rep.trace, rep.a1, rep.a2, rep.a3, rep.a4, rep.symplectic,
                         rep.excluded, m.range().contains(h), b.r1, b.r2, b.r3, b.r4});
    }
    const ConditionBDiagnostics diag = condition_b_diagnostics(m, condition_b_sequence());
    r.table.summary = {{"b_sequence", std::string("2^-3..2^-12")},
                       {"r1_bounded", diag.r1_bounded},
                       {"r2_bounded", diag.r2_bounded},
                       {"r3_near_one", diag.r3_near_one},
                       {"r4_near_one", diag.r4_near_one},
                       {"b_consistent", diag.consistent}};
    return r;
}

Result cmd_rates(const Options& o) {
    const MethodDef m = method_of(o);
    const Observable obs = parse_observable(o.observable);
    const OscillatorParams params = params_of(o);
    const std::vector<double> hs = step_sizes(o);
    const PreservationReport pres =
        preservation_report(m, obs, hs.size() >= 2 ? hs : default_h_sequence(), params);

    Result r;
    r.table.command = "rates";
    r.table.columns = {"method", "observable", "h", "regime", "applicable", "reason", "log_mgf",
                       "rate", "modified", "target", "verdict"};
    std::size_t applicable = 0;
    for (double h : hs) {
        const LdpClassification cls = rate_function(m, h, obs, params);
        if (cls.applicable) {
            ++applicable;
        } else {
            std::ostringstream os;
            os.precision(17);
            os << "h=" << h << " not applicable: " << cls.reason;
            r.table.warnings.push_back(os.str());
        }
        const double log_mgf = cls.applicable ? cls.log_mgf : kUnset;
        r.table.add_row({m.id(), std::string(to_string(obs)), h, std::string(to_string(cls.regime)),
                         cls.applicable, cls.reason.empty() ? std::string("-") : cls.reason,
                         cls.applicable ? Cell(log_mgf) : Cell(std::string("n/a")),
                         cls.applicable ? Cell(cls.rate.coefficient()) : Cell(std::string("n/a")),
                         cls.applicable ? Cell(cls.modified_rate.coefficient()) : Cell(std::string("n/a")),
                         pres.target, pres.verdict_label()});
    }
    r.table.summary = {{"verdict", pres.verdict_label()},
                       {"target", pres.target},
                       {"verdict_h_count", static_cast<long long>(pres.entries.size())}};
    if (!std::isnan(pres.fitted_order)) r.table.summary.emplace_back("fitted_order", pres.fitted_order);
    if (applicable == 0) r.code = kExitNotApplicable;
    if (!o.plot.empty()) {
        r.plot_script = plot_header(o, "modified rate coefficient vs h: " + m.id()) +
                        "set xlabel 'h'\nset ylabel 'coefficient'\n"
                        "plot data using 3:9 with linespoints, data using 3:10 with lines\n";
    }
    return r;
}

Result cmd_prob(const Options& o) {
    const MethodDef m = method_of(o);
    const Observable obs = parse_observable(o.observable);
    const OscillatorParams params = params_of(o);
    const double h = single_h(o);
    if (o.interval.empty()) throw DomainError("--interval is required");
    const auto [lo, hi] = parse_interval(o.interval);
    std::vector<long long> Ns;
    if (!o.N_sweep.empty()) {
        Ns = parse_count_list(o.N_sweep);
    } else if (o.N > 0) {
        Ns = {o.N};
    } else {
        Ns = {100, 1000, 10000};
    }
    require_admissible(m, h);
    const LdpClassification cls = rate_function(m, h, obs, params);

    Result r;
    r.table.command = "prob";
    r.table.columns = {"method", "observable", "h", "N", "mean", "variance", "probability",
                       "log_probability", "decay", "prediction"};
    for (long long N : Ns) {
        const GaussianLaw law = obs == Observable::MeanPosition ? law_A_N(m, h, N, params)
                                                                : law_B_N(m, h, N, params);
        const Probability p = interval_probability(law, lo, hi);
        const double decay = -p.log / static_cast<double>(N);
        const Cell prediction =
            cls.applicable ? Cell(cls.rate.infimum(lo, hi)) : Cell(std::string("n/a"));
        r.table.add_row({m.id(), std::string(to_string(obs)), h, N, law.mean, law.variance, p.value,
                         p.log, decay, prediction});
        if (p.log_channel) {
            r.table.warnings.push_back("N=" + std::to_string(N) +
                                       ": probability below 1e-300, reported through log_probability");
        }
    }
    if (!cls.applicable) {
        r.table.warnings.push_back("no LDP applies: " + cls.reason);
    }
    r.table.summary = {{"interval", format_cell(lo) + ":" + format_cell(hi)},
                       {"rate", cls.applicable ? describe(cls.rate) : std::string("n/a")}};
    if (!o.plot.empty()) {
        r.plot_script = plot_header(o, "finite-N decay rate: " + m.id()) +
                        "set logscale x\nset xlabel 'N'\nset ylabel '-(1/N) log P'\n"
                        "plot data using 4:9 with linespoints, data using 4:10 with lines\n";
    }
    return r;
}

std::vector<double> default_msq_sweep() {
    std::vector<double> hs;
    for (int k = 0; k <= 4; ++k) hs.push_back(0.1 * std::ldexp(1.0, -k));
    return hs;
}

Result cmd_msq(const Options& o) {
    const MethodDef m = method_of(o);
    const OscillatorParams params = params_of(o);
    const std::vector<double> hs = step_sizes(o, default_msq_sweep());
    if (hs.size() < 2) throw DomainError("sweep requires >= 2 points");
    const long long samples = o.samples > 0 ? o.samples : 10000;
    const MsqReport rep = msq_order(m, hs, o.T0, samples, o.seed, params);

    Result r;
    r.table.command = "msq";
    r.table.columns = {"method", "h", "steps", "rms_error"};
    for (std::size_t k = 0; k < rep.h_values.size(); ++k) {
        r.table.add_row({m.id(), rep.h_values[k], rep.steps[k], rep.rms_errors[k]});
    }
    r.table.summary = {{"slope", rep.slope},
                       {"residual", rep.residual},
                       {"T0", o.T0},
                       {"samples", samples},
                       {"seed", static_cast<long long>(o.seed)}};
    r.table.warnings = rep.warnings;
    if (!o.plot.empty()) {
        r.plot_script = plot_header(o, "mean-square error: " + m.id()) +
                        "set logscale xy\nset xlabel 'h'\nset ylabel 'sup RMS error'\n"
                        "plot data using 2:4 with linespoints\n";
    }
    return r;
}

Result cmd_simulate(const Options& o) {
    const MethodDef m = method_of(o);
    const OscillatorParams params = params_of(o);
    SimConfig config{m, single_h(o), o.N > 0 ? o.N : 1000, o.samples > 0 ? o.samples : 10000, o.seed,
                     params, 0};
    const SimResult sim = simulate_paths(config);

    std::optional<GaussianLaw> exact_a;
    std::optional<GaussianLaw> exact_b;
    std::vector<std::string> warnings;
    try {
        exact_a = law_A_N(m, config.h, config.N, params);
        exact_b = law_B_N(m, config.h, config.N, params);
    } catch (const ConditionError& e) {
        warnings.push_back(std::string("exact law unavailable: ") + e.what());
    }

    Result r;
    r.table.command = "simulate";
    r.table.columns = {"method", "observable", "h", "N", "samples", "sample_mean", "sample_variance",
                       "mean_stderr", "variance_stderr", "exact_mean", "exact_variance"};
    auto row = [&](const char* name, const SampleSummary& s, const std::optional<GaussianLaw>& law) {
        r.table.add_row({m.id(), std::string(name), config.h, config.N, config.samples, s.mean, s.variance,
                         s.mean_stderr, s.variance_stderr,
                         law ? Cell(law->mean) : Cell(std::string("n/a")),
                         law ? Cell(law->variance) : Cell(std::string("n/a"))});
    };
    row("A_N", sim.A, exact_a);
    row("B_N", sim.B, exact_b);
    r.table.summary = {{"seed", static_cast<long long>(config.seed)}};
    if (!o.interval.empty()) {
        const auto [lo, hi] = parse_interval(o.interval);
        std::vector<double> a(sim.sum_x.size());
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = sim.sum_x[k] / static_cast<double>(config.N);
        const EmpiricalProbability emp = empirical_probability(a, lo, hi);
        r.table.summary.emplace_back("A_N_empirical_probability", emp.value);
        r.table.summary.emplace_back("A_N_probability_stderr", emp.standard_error);
        if (exact_a) {
            r.table.summary.emplace_back("A_N_exact_probability", interval_probability(*exact_a, lo, hi).value);
        }
    }
    r.table.warnings = warnings;
    return r;
}

Result cmd_search(const Options& o) {
    const Observable obs = parse_observable(o.observable);
    const std::vector<SearchHit> hits = exact_preservation_search(obs);
    Result r;
    r.table.command = "search";
    r.table.columns = {"index", "match", "c11", "c12", "c21", "c22", "d1", "d2", "max_deviation", "file"};
    if (!o.out.empty()) std::filesystem::create_directories(o.out);
    long long index = 0;
    for (const SearchHit& hit : hits) {
        ++index;
        std::string path = "-";
        if (!o.out.empty()) {
            const std::string stem = hit.catalog_id.empty() ? "ansatz-" + std::to_string(index) : hit.catalog_id;
            path = (std::filesystem::path(o.out) / (stem + ".method")).string();
            std::ofstream file(path);
            if (!file) throw Error("cannot write '" + path + "'");
            file << format_method_file(hit.file());
        }
        r.table.add_row({index, hit.catalog_id.empty() ? std::string("-") : hit.catalog_id, hit.params.c11,
                         hit.params.c12, hit.params.c21, hit.params.c22, hit.params.d1, hit.params.d2,
                         hit.max_deviation, path});
    }
    r.table.summary = {{"observable", std::string(to_string(obs))},
                       {"found", static_cast<long long>(hits.size())}};
    return r;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Write the table to this file instead of stdout");
}

void add_method(CLI::App* cmd, Options& o) {
    cmd->add_option("--method", o.method, "Catalog id (opt, beta:0.5, theta:1.0, m4, ...) or method file");
}

void add_params(CLI::App* cmd, Options& o) {
    cmd->add_option("--alpha", o.alpha, "Noise intensity alpha > 0");
    cmd->add_option("--x0", o.x0, "Initial position");
    cmd->add_option("--y0", o.y0, "Initial velocity");
}

void add_steps(CLI::App* cmd, Options& o) {
    cmd->add_option("--h", o.h, "Step-size");
    cmd->add_option("--h-sweep", o.h_sweep, "Step-size sweep lo:hi:n or lo:hi:nlog");
}

void emit(const Result& result, const Options& o, std::ostream& out, std::ostream& err,
          bool table_to_stdout) {
    const std::string text = o.format == "json" ? to_json(result.table) : to_csv(result.table);
    if (table_to_stdout || o.out.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out);
        if (!file) throw Error("cannot write '" + o.out + "'");
        file << text;
    }
    for (const std::string& w : result.table.warnings) err << "warning: " << w << "\n";
    if (!result.plot_script.empty()) {
        std::ofstream plot(o.plot);
        if (!plot) throw Error("cannot write '" + o.plot + "'");
        plot << result.plot_script;
    }
}

}  // namespace

std::vector<double> parse_sweep(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) throw DomainError("sweep must look like lo:hi:n or lo:hi:nlog");
    const double lo = parse_number(parts[0], "sweep bound");
    const double hi = parse_number(parts[1], "sweep bound");
    std::string count = parts[2];
    bool geometric = false;
    if (count.size() > 3 && count.compare(count.size() - 3, 3, "log") == 0) {
        geometric = true;
        count.resize(count.size() - 3);
    }
    long long n = 0;
    try {
        std::size_t used = 0;
        n = std::stoll(count, &used);
        if (used != count.size()) throw DomainError("");
    } catch (const std::exception&) {
        throw DomainError("sweep point count '" + parts[2] + "' is not an integer");
    }
    if (n < 2) throw DomainError("sweep requires >= 2 points");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("sweep needs finite lo < hi");
    }
    if (geometric && !(lo > 0.0)) throw DomainError("geometric sweep needs lo > 0");
    std::vector<double> values;
    for (long long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n - 1);
        values.push_back(geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    values.back() = hi;
    return values;
}

std::pair<double, double> parse_interval(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 2) throw DomainError("interval must look like a:b");
    const double a = parse_number(parts[0], "interval bound");
    const double b = parse_number(parts[1], "interval bound");
    if (!(a <= b)) throw DomainError("interval needs a <= b");
    return {a, b};
}

std::vector<long long> parse_count_list(const std::string& text) {
    std::vector<long long> out;
    for (const std::string& part : split(text, ',')) {
        long long v = 0;
        try {
            std::size_t used = 0;
            v = std::stoll(part, &used);
            if (used != part.size()) throw DomainError("");
        } catch (const std::exception&) {
            throw DomainError("cannot read count '" + part + "'");
        }
        if (v < 1) throw DomainError("counts must be positive");
        out.push_back(v);
    }
    if (out.empty()) throw DomainError("empty count list");
    return out;
}

MethodDef resolve_method(const std::string& selector) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(selector, ec)) return load_method_file(selector);
    return find_method(selector);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Large-deviation rate functions of one-step methods for the linear stochastic oscillator"};
    // "-h" would clash with the step-size option --h.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Options o;

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "List built-in methods with condition flags");
    add_common(catalog_cmd, o);
    add_method(catalog_cmd, o);
    catalog_cmd->add_option("--h", o.h, "Probe step-size (default 1)");

    CLI::App* conditions_cmd = app.add_subcommand("conditions", "Structural conditions and closeness to Euler-Maruyama");
    add_common(conditions_cmd, o);
    add_method(conditions_cmd, o);
    add_steps(conditions_cmd, o);

    CLI::App* rates_cmd = app.add_subcommand("rates", "Rate functions, modified rates and preservation verdict");
    add_common(rates_cmd, o);
    add_method(rates_cmd, o);
    add_steps(rates_cmd, o);
    add_params(rates_cmd, o);
    rates_cmd->add_option("--observable", o.observable, "mean-position or mean-velocity");
    rates_cmd->add_option("--plot", o.plot, "Write a gnuplot script reading the --out file");

    CLI::App* prob_cmd = app.add_subcommand("prob", "Exact finite-N probabilities and decay rates");
    add_common(prob_cmd, o);
    add_method(prob_cmd, o);
    add_steps(prob_cmd, o);
    add_params(prob_cmd, o);
    prob_cmd->add_option("--observable", o.observable, "mean-position or mean-velocity");
    prob_cmd->add_option("--interval", o.interval, "Event interval a:b");
    prob_cmd->add_option("--N", o.N, "Number of steps");
    prob_cmd->add_option("--N-sweep", o.N_sweep, "Comma-separated step counts");
    prob_cmd->add_option("--plot", o.plot, "Write a gnuplot script reading the --out file");

    CLI::App* msq_cmd = app.add_subcommand("msq", "Mean-square convergence order against the exact solution");
    add_common(msq_cmd, o);
    add_method(msq_cmd, o);
    add_steps(msq_cmd, o);
    add_params(msq_cmd, o);
    msq_cmd->add_option("--T0", o.T0, "Time horizon");
    msq_cmd->add_option("--samples", o.samples, "Monte Carlo paths (default 10000)");
    msq_cmd->add_option("--seed", o.seed, "Master seed");
    msq_cmd->add_option("--plot", o.plot, "Write a gnuplot script reading the --out file");

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo trajectories vs exact laws");
    add_common(simulate_cmd, o);
    add_method(simulate_cmd, o);
    add_steps(simulate_cmd, o);
    add_params(simulate_cmd, o);
    simulate_cmd->add_option("--N", o.N, "Number of steps (default 1000)");
    simulate_cmd->add_option("--samples", o.samples, "Monte Carlo paths (default 10000)");
    simulate_cmd->add_option("--seed", o.seed, "Master seed");
    simulate_cmd->add_option("--interval", o.interval, "Also estimate P(A_N in [a,b])");

    CLI::App* search_cmd = app.add_subcommand("search", "Search the symplectic ansatz for exactly preserving methods");
    search_cmd->add_option("--observable", o.observable, "mean-position or mean-velocity");
    search_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    search_cmd->add_option("--out", o.out, "Directory for the emitted method files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!o.plot.empty() && o.out.empty()) throw DomainError("--plot needs --out for the data file");
        Result result;
        bool to_stdout = false;
        if (catalog_cmd->parsed()) {
            result = cmd_catalog(o);
        } else if (conditions_cmd->parsed()) {
            result = cmd_conditions(o);
        } else if (rates_cmd->parsed()) {
            result = cmd_rates(o);
        } else if (prob_cmd->parsed()) {
            result = cmd_prob(o);
        } else if (msq_cmd->parsed()) {
            result = cmd_msq(o);
        } else if (simulate_cmd->parsed()) {
            result = cmd_simulate(o);
        } else {
            result = cmd_search(o);
            to_stdout = true;
        }
        emit(result, o, out, err, to_stdout);
        return result.code;
    } catch (const ParseError& e) {
        err << "error: method file: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ConditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNotApplicable;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}

}  // namespace ldposc::cli
