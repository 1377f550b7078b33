#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include <CLI11.hpp>

#include "salem/parallel.hpp"
#include "salem/rvdist.hpp"
#include "salem/shiftops.hpp"

namespace salem::cli {

std::string format_real(double v) {
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

namespace {

DigitString point_digits(const Point& point, const RunConfig& cfg) {
    if (const auto* d = std::get_if<DigitString>(&point)) {
        return *d;
    }
    return encode(std::get<double>(point), cfg.spec.schedule(), kRealArgumentDepth);
}

std::size_t feq_depth_for(const CoefficientVector& R, double tol) {
    constexpr std::size_t kMaxDepth = 4096;
    if (R.max_abs() == 0.0) {
        return 1;
    }
    const double need = std::log(tol / R.tail_sup()) / std::log(R.max_abs());
    if (!std::isfinite(need) || need < 1.0) {
        return 1;
    }
    return std::min<std::size_t>(kMaxDepth, static_cast<std::size_t>(std::ceil(need)));
}

int cmd_eval(const RunConfig& cfg, const std::string& point_text, const std::string& method, double tol,
             std::ostream& out) {
    const Point point = parse_point(point_text, cfg.spec.radix());
    const DigitString d = point_digits(point, cfg);
    EvalResult res;
    if (method == "feq") {
        res = eval_G_feq(d, cfg.spec, feq_depth_for(cfg.spec.R(), tol));
    } else {
        res = eval_G_series(d, cfg.spec, tol);
    }
    out << "value=" << format_real(res.value) << "\n";
    out << "bound=" << format_real(res.bound) << "\n";
    return kOk;
}

// Left endpoints of rank-m cylinders, m the least rank with q^m >= samples,
// picked at evenly spaced lexicographic indices.
int cmd_plot(const RunConfig& cfg, std::size_t samples, const std::string& path, std::ostream& out) {
    const unsigned q = cfg.spec.radix();
    std::size_t m = 0;
    std::uint64_t cells = 1;
    while (cells < samples) {
        cells *= q;
        ++m;
    }
    std::string csv = "s,G,bound\n";
    const auto sched = cfg.spec.schedule();
    for (std::size_t i = 0; i < samples; ++i) {
        std::uint64_t index = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(i) * cells) / samples);
        std::vector<Digit> base(m);
        for (std::size_t k = m; k-- > 0;) {
            base[k] = static_cast<Digit>(index % q);
            index /= q;
        }
        const DigitString d(q, std::move(base), DigitString::Zeros{});
        const double s = decode(d, sched, cfg.tol).value;
        const EvalResult g = eval_G_series(d, cfg.spec, cfg.tol);
        csv += format_real(s) + "," + format_real(g.value) + "," + format_real(g.bound) + "\n";
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << csv) || !file.flush()) {
        throw std::ios_base::failure("cannot write " + path);
    }
    out << "wrote " << samples << " rows to " << path << "\n";
    return kOk;
}

int cmd_integral(const RunConfig& cfg, const std::string& check, double tol, double cell, std::ostream& out) {
    const double closed = integral(cfg.spec);
    out << "integral=" << format_real(closed) << "\n";
    if (check != "quadrature") {
        return kOk;
    }
    const double numeric = integral_quadrature(cfg.spec, cell);
    const double delta = std::abs(closed - numeric);
    out << "quadrature=" << format_real(numeric) << "\n";
    out << "delta=" << format_real(delta) << "\n";
    return delta <= tol ? kOk : kQuadratureMismatch;
}

int cmd_classify(const RunConfig& cfg, const std::optional<std::string>& point_text, std::ostream& out) {
    if (point_text) {
        const Point point = parse_point(*point_text, cfg.spec.radix());
        const Continuity c = std::holds_alternative<double>(point)
                                 ? classify_continuity(std::get<double>(point), cfg.spec)
                                 : classify_continuity(std::get<DigitString>(point), cfg.spec);
        if (c.kind == Continuity::Kind::Continuous) {
            out << "continuous\n";
        } else {
            out << "jump left=" << format_real(c.left) << " right=" << format_real(c.right) << "\n";
        }
    }
    out << "G_D " << to_string(classify_discontinuity_set(cfg.spec)) << "\n";
    try {
        out << to_string(classify_monotonicity(cfg.spec)) << "\n";
    } catch (const UnclassifiedError& e) {
        out << "monotonicity unclassified: " << e.what() << "\n";
    }
    return kOk;
}

int cmd_sample(const RunConfig& cfg, std::size_t n, std::uint64_t seed, bool ks, double threshold,
               std::size_t grid, std::ostream& out) {
    const auto samples = sample_eta(cfg.spec, n, seed);
    const double mean = pairwise_sum(samples) / static_cast<double>(samples.size());
    out << "n=" << n << "\n";
    out << "seed=" << seed << "\n";
    out << "mean=" << format_real(mean) << "\n";
    if (!ks) {
        return kOk;
    }
    const SampleReport report = ks_compare(samples, cfg.spec, grid, threshold);
    out << "ks=" << format_real(report.ks_statistic) << "\n";
    out << "threshold=" << format_real(report.threshold) << "\n";
    out << "result=" << (report.pass ? "pass" : "fail") << "\n";
    return report.pass ? kOk : kCheckFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto outcomes = run_verify_suite(cfg);
    std::size_t failed = 0;
    for (const auto& o : outcomes) {
        switch (o.status) {
            case CheckOutcome::Status::Pass:
                out << "PASS " << o.name;
                break;
            case CheckOutcome::Status::Fail:
                out << "FAIL " << o.name;
                ++failed;
                break;
            case CheckOutcome::Status::Skip:
                out << "SKIP " << o.name;
                break;
        }
        if (!o.detail.empty()) {
            out << " (" << o.detail << ")";
        }
        out << "\n";
    }
    if (failed == 0) {
        out << "verify: all checks passed\n";
        return kOk;
    }
    out << "verify: " << failed << " check(s) failed\n";
    return kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized Salem function toolkit", "salemgen"};
    app.require_subcommand(1);

    std::string config_path;
    std::string point;
    std::optional<std::string> classify_point;
    std::string method = "series";
    std::optional<double> tol;
    std::size_t samples = 0;
    std::string out_path;
    std::string check = "none";
    double integral_tol = 1e-5;
    double cell = 1e-6;
    std::size_t n = 100000;
    std::optional<std::uint64_t> seed;
    bool ks = false;
    double threshold = 0.01;
    std::size_t grid = 1001;

    auto add_config = [&](CLI::App* sub) { sub->add_option("--config", config_path, "JSON config")->required(); };

    auto* eval = app.add_subcommand("eval", "Evaluate G at a point");
    add_config(eval);
    eval->add_option("--point", point, "real in [0,1] or digit literal")->required();
    eval->add_option("--method", method, "series | feq")->check(CLI::IsMember({"series", "feq"}));
    eval->add_option("--tol", tol, "truncation tolerance");

    auto* plot = app.add_subcommand("plot", "Write G on a cylinder grid as CSV");
    add_config(plot);
    plot->add_option("--samples", samples, "row count (>= 2)")->required();
    plot->add_option("--out", out_path, "CSV path")->required();

    auto* integ = app.add_subcommand("integral", "Closed-form integral of G");
    add_config(integ);
    integ->add_option("--check", check, "none | quadrature")->check(CLI::IsMember({"none", "quadrature"}));
    integ->add_option("--tol", integral_tol, "allowed |closed - quadrature|");
    integ->add_option("--cell", cell, "quadrature cell length");

    auto* classify = app.add_subcommand("classify", "Continuity, discontinuity set, monotonicity");
    add_config(classify);
    classify->add_option("--point", classify_point, "real in [0,1] or digit literal");

    auto* sample = app.add_subcommand("sample", "Sample eta and compare with G");
    add_config(sample);
    sample->add_option("--n", n, "sample count");
    sample->add_option("--seed", seed, "64-bit seed (default: config seed)");
    sample->add_flag("--ks", ks, "run the Kolmogorov-Smirnov comparison");
    sample->add_option("--threshold", threshold, "KS pass threshold");
    sample->add_option("--grid", grid, "KS grid size");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite for a config");
    add_config(verify);

    std::vector<const char*> argv{"salemgen"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "salemgen: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        if (eval->parsed()) {
            const double t = tol.value_or(cfg.tol);
            if (!(t > 0.0)) {
                throw DomainError("--tol must be positive");
            }
            return cmd_eval(cfg, point, method, t, out);
        }
        if (plot->parsed()) {
            if (samples < 2) {
                throw DomainError("--samples must be at least 2");
            }
            return cmd_plot(cfg, samples, out_path, out);
        }
        if (integ->parsed()) {
            return cmd_integral(cfg, check, integral_tol, cell, out);
        }
        if (classify->parsed()) {
            return cmd_classify(cfg, classify_point, out);
        }
        if (sample->parsed()) {
            if (n == 0) {
                throw DomainError("--n must be at least 1");
            }
            return cmd_sample(cfg, n, seed.value_or(cfg.seed), ks, threshold, grid, out);
        }
        return cmd_verify(cfg, out);
    } catch (const ConfigError& e) {
        err << "salemgen: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const PointParseError& e) {
        err << "salemgen: point error: " << e.what() << "\n";
        return kUsageError;
    } catch (const NonDistributionalError& e) {
        err << "salemgen: " << e.what() << "\n";
        return kNotDistributional;
    } catch (const std::ios_base::failure& e) {
        err << "salemgen: I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const DomainError& e) {
        err << "salemgen: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "salemgen: " << e.what() << "\n";
        return kCheckFailed;
    }
}

}  // namespace salem::cli
