// flatspot: exact limit statistics of truncated doubling (flat-spot) maps.
//
// Subcommands expose the library modules: the mode-locking table, the
// exact limit density and its error bound, orbit Monte Carlo, tail
// comparison against Q-Gaussians, parameter fitting, interval lookup, and
// the invariant verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 capacity error. Errors are reported as JSON on stderr.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "flatspot/density.hpp"
#include "flatspot/dynamics.hpp"
#include "flatspot/exact_core.hpp"
#include "flatspot/montecarlo.hpp"
#include "flatspot/qgaussian.hpp"
#include "flatspot/svg.hpp"
#include "flatspot/verify.hpp"

namespace {

using namespace flatspot;

// Either stdout or a file; "-" and "" mean stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit_error(const std::string& type, const std::string& message) {
    nlohmann::json j{{"type", type}, {"error", message}};
    std::cerr << j.dump() << std::endl;
}

int cmd_table(int max_q, const std::string& format, const std::string& out_path) {
    Output out(out_path);
    std::ostream& os = out.stream();
    const auto rows = farey_enumerate(max_q);
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            const Interval I = interval_I(r);
            const auto c = density::component(r);
            arr.push_back({{"fraction", r.str()},
                           {"s_plus", upper_string(r).str()},
                           {"t", t_of(r).str()},
                           {"I_left", I.lo.str()},
                           {"I_right", I.hi.str()},
                           {"J_left", c.support.lo.str()},
                           {"J_right", c.support.hi.str()}});
        }
        os << arr.dump(2) << '\n';
    } else {
        os << "fraction,s_plus,t,I_left,I_right,J_left,J_right\n";
        for (const auto& r : rows) {
            const Interval I = interval_I(r);
            const auto c = density::component(r);
            os << r.str() << ',' << upper_string(r).str() << ',' << t_of(r).str() << ','
               << I.lo.str() << ',' << I.hi.str() << ',' << c.support.lo.str() << ','
               << c.support.hi.str() << '\n';
        }
    }
    return 0;
}

int cmd_density(int max_q, const std::string& format, const std::string& out_path) {
    const auto nu = density::assemble(max_q);
    Output out(out_path);
    if (format == "json")
        density::write_json(nu, out.stream());
    else if (format == "svg")
        svg::write_step_plot(nu, out.stream());
    else
        density::write_csv(nu, out.stream());
    return 0;
}

int cmd_eval(const std::string& x_str, int max_q, const std::string& out_path) {
    const auto x = Rational::parse(x_str);
    if (!x) throw std::invalid_argument("cannot parse --x value: " + x_str);
    const auto nu = density::assemble(max_q);
    const Rational v = nu.evaluate(*x);
    Output out(out_path);
    out.stream() << v.str() << ' ' << format_double(v.to_double()) << '\n';
    return 0;
}

int cmd_error_bound(int max_q, const std::string& out_path) {
    const Rational b = density::error_bound(max_q);
    Output out(out_path);
    out.stream() << b.str() << ' ' << format_double(b.to_double()) << '\n';
    return 0;
}

int cmd_locate(const std::string& t_str, int max_q, const std::string& out_path) {
    const auto t = Rational::parse(t_str);
    if (!t) throw std::invalid_argument("cannot parse --t value: " + t_str);
    const auto r = dynamics::locate(*t, max_q);
    Output out(out_path);
    if (r)
        out.stream() << r->str() << ' ' << interval_I(*r).str() << '\n';
    else
        out.stream() << "none\n";
    return 0;
}

int cmd_simulate(const montecarlo::SimulationConfig& cfg, int max_q,
                 const std::string& format, const std::string& out_path,
                 std::string report_path) {
    const auto nu = density::assemble(max_q);
    const auto hist = montecarlo::run(cfg);
    const auto report = montecarlo::compare(hist, nu);
    {
        Output out(out_path);
        if (format == "json")
            montecarlo::write_json(hist, nu, out.stream());
        else if (format == "svg")
            svg::write_histogram_plot(hist, out.stream());
        else
            montecarlo::write_csv(hist, nu, out.stream());
    }
    if (report_path == "auto")
        report_path = (out_path.empty() || out_path == "-") ? "" : "-";
    if (!report_path.empty()) {
        Output rep(report_path);
        montecarlo::write_report_json(report, cfg, rep.stream());
    }
    return 0;
}

int cmd_tail(long q_from, long q_to, double Q, double beta, double C, int max_q,
             const std::string& out_path) {
    const auto nu = density::assemble(max_q);
    const qgaussian::QGaussianParams params{Q, beta, 0.0, C};
    const auto series =
        qgaussian::tail_ratio_series(params, nu, q_from, q_to, density::error_bound(max_q));
    Output out(out_path);
    std::ostream& os = out.stream();
    os << "q,z,qgaussian,nu,ratio\n";
    for (const auto& pt : series)
        os << pt.q << ',' << format_double(pt.z) << ',' << format_double(pt.qgauss) << ','
           << format_double(pt.nu) << ',' << format_double(pt.ratio) << '\n';
    return 0;
}

int cmd_fit(int max_q, int bins, const std::string& out_path) {
    const auto nu = density::assemble(max_q);
    qgaussian::FitOptions opts;
    opts.bins = bins;
    const auto result = qgaussian::fit(nu, opts);
    Output out(out_path);
    qgaussian::write_json(result, out.stream());
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_path) {
    const auto results = verify::run_suite(suite);
    Output out(out_path);
    std::ostream& os = out.stream();
    for (const auto& r : results) {
        os << (r.pass ? "[ok]   " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ')';
        os << '\n';
    }
    if (!verify::all_passed(results)) {
        emit_error("verification", "suite '" + suite + "' reported failures");
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact limit statistics of the truncated doubling map family"};
    app.require_subcommand(1);

    std::string format = "csv", out_path, report_path = "auto";
    std::string x_str, t_str, suite = "all";
    int max_q = 50;
    int bins = 100;
    long q_from = 8, q_to = 20;
    double Q = 0.7, beta = 16.1, C = 1.0;
    montecarlo::SimulationConfig cfg;
    cfg.samples = 100000;
    cfg.iters = 10000;
    cfg.bins = 400;
    cfg.seed = 1;

    auto* table = app.add_subcommand("table", "mode-locking table: p/q, s+, t, I, J");
    table->add_option("--max-q", max_q, "largest denominator")->default_val(5);
    table->add_option("--format", format, "csv or json")->default_val("csv");
    table->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* dens = app.add_subcommand("density", "emit the exact partial-sum density");
    dens->add_option("--max-q", max_q, "partial-sum order N")->default_val(50);
    dens->add_option("--format", format, "csv, json or svg")->default_val("csv");
    dens->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* ev = app.add_subcommand("eval", "evaluate the density at a point");
    ev->add_option("--x", x_str, "abscissa, e.g. 0 or -13/80")->required();
    ev->add_option("--max-q", max_q, "partial-sum order N")->default_val(50);
    ev->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* eb = app.add_subcommand("error-bound", "sup-norm truncation error of the partial sum");
    eb->add_option("--max-q", max_q, "partial-sum order N")->default_val(50);
    eb->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* loc = app.add_subcommand("locate", "find the p/q interval containing t");
    loc->add_option("--t", t_str, "parameter, e.g. 3/10")->required();
    loc->add_option("--max-q", max_q, "largest denominator to scan")->default_val(50);
    loc->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo histogram of S_n/n");
    sim->add_option("--samples", cfg.samples, "number of (t, x0) draws")->default_val(100000);
    sim->add_option("--iters", cfg.iters, "orbit length n")->default_val(10000);
    sim->add_option("--bins", cfg.bins, "histogram bins over [-1/2,1/2]")->default_val(400);
    sim->add_option("--seed", cfg.seed, "RNG seed")->default_val(1);
    sim->add_option("--entry-cap", cfg.entry_cap, "flat-spot entry cap")->default_val(1000000);
    sim->add_option("--threads", cfg.threads, "worker threads (0 = auto)")->default_val(0);
    sim->add_option("--max-q", max_q, "partial-sum order for the exact reference")
        ->default_val(40);
    sim->add_option("--format", format, "csv, json or svg")->default_val("csv");
    sim->add_option("-o,--output", out_path, "output path (default stdout)");
    sim->add_option("--report", report_path,
                    "comparison report path ('-' stdout; default: stdout when -o is set)");

    auto* tail = app.add_subcommand("tail", "Q-Gaussian vs density tail-ratio series");
    tail->add_option("--q-from", q_from)->default_val(8);
    tail->add_option("--q-to", q_to)->default_val(20);
    tail->add_option("--Q", Q, "Tsallis Q (< 1)")->default_val(0.7);
    tail->add_option("--beta", beta)->default_val(16.1);
    tail->add_option("--C", C, "scale")->default_val(1.0);
    tail->add_option("--max-q", max_q, "partial-sum order N")->default_val(50);
    tail->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* fit = app.add_subcommand("fit", "fit a Q-Gaussian to the density");
    fit->add_option("--max-q", max_q, "partial-sum order N")->default_val(50);
    fit->add_option("--bins", bins, "bin count for the fit")->default_val(100);
    fit->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* ver = app.add_subcommand("verify", "run a named invariant suite");
    std::string suites_help = "one of: all";
    for (const auto& n : verify::suite_names())
        if (n != "all") suites_help += ", " + n;
    ver->add_option("--suite", suite, suites_help)->default_val("all");
    ver->add_option("-o,--output", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table->parsed()) return cmd_table(max_q, format, out_path);
        if (dens->parsed()) return cmd_density(max_q, format, out_path);
        if (ev->parsed()) return cmd_eval(x_str, max_q, out_path);
        if (eb->parsed()) return cmd_error_bound(max_q, out_path);
        if (loc->parsed()) return cmd_locate(t_str, max_q, out_path);
        if (sim->parsed()) return cmd_simulate(cfg, max_q, format, out_path, report_path);
        if (tail->parsed()) return cmd_tail(q_from, q_to, Q, beta, C, max_q, out_path);
        if (fit->parsed()) return cmd_fit(max_q, bins, out_path);
        if (ver->parsed()) return cmd_verify(suite, out_path);
    } catch (const capacity_error& e) {
        emit_error("capacity", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
    return 2;
}
