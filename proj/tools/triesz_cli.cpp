#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "triesz/cli_config.hpp"
#include "triesz/errors.hpp"
#include "triesz/verify.hpp"

using namespace triesz;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text << '\n';
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int emit(const std::vector<VerificationReport>& reports, const std::string& json_path, bool timings)
{
    const std::string text = emit_report(reports, timings);
    if (json_path.empty()) {
        std::cout << text << '\n';
    } else {
        write_text(json_path, text);
        int failed = 0;
        for (const auto& r : reports) {
            if (r.pass) continue;
            ++failed;
            std::cout << "FAIL " << r.check;
            for (const auto& [k, v] : r.parameters) std::cout << ' ' << k << '=' << v;
            std::cout << " error=" << r.error << " tolerance=" << r.tolerance;
            if (!r.message.empty()) std::cout << " (" << r.message << ')';
            std::cout << '\n';
        }
        std::cout << reports.size() << " reports, " << failed << " failed\n";
    }
    return all_pass(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Riesz-family matrix distributions: densities, samplers and verification checks"};
    app.require_subcommand(1);

    std::string spec_path, point_path, out_path, json_path;
    std::uint64_t seed = 0, stream = 0;
    long long count = 1000;
    bool log_only = false, timings = false;

    auto* eval = app.add_subcommand("eval", "Evaluate the density at a point");
    eval->add_option("--spec", spec_path, "Distribution spec (JSON)")->required()->check(CLI::ExistingFile);
    eval->add_option("--point", point_path, "Point (matrix JSON)")->required()->check(CLI::ExistingFile);
    eval->add_flag("--log", log_only, "Print only the log-density");

    auto* sample_cmd = app.add_subcommand("sample", "Draw from the distribution");
    sample_cmd->add_option("--spec", spec_path, "Distribution spec (JSON)")->required()->check(CLI::ExistingFile);
    sample_cmd->add_option("--n", count, "Number of draws")->check(CLI::NonNegativeNumber);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--stream", stream);
    sample_cmd->add_option("--out", out_path, "Output file, .csv or .jsonl")->required();

    auto* check = app.add_subcommand("check", "Run one verification check");
    check->require_subcommand(1);

    std::string method = "quadrature";
    long long budget = 1000000;
    double tol = 0;
    auto* norm = check->add_subcommand("normalization", "Total mass of the density");
    norm->add_option("--spec", spec_path)->required()->check(CLI::ExistingFile);
    norm->add_option("--method", method)->check(CLI::IsMember({"quadrature", "mc"}));
    norm->add_option("--budget", budget, "Monte Carlo draws");
    norm->add_option("--tol", tol, "Tolerance (default 1e-4 for quadrature, 3 standard errors for mc)");
    norm->add_option("--seed", seed);

    std::string transform = "prop1";
    int beta = 1, points = 20;
    std::vector<int> dims{2, 2};
    auto* jac = check->add_subcommand("jacobian", "Finite-difference Jacobian against its closed form");
    jac->add_option("--transform", transform)->check(CLI::IsMember({"prop1", "prop2", "prop3", "prop4"}));
    jac->add_option("--beta", beta)->check(CLI::IsMember({1, 2, 4}));
    jac->add_option("--dims", dims, "n,m (prop2 and prop3 use m)")->delimiter(',')->expected(1, 2);
    jac->add_option("--seed", seed);
    jac->add_option("--points", points, "Random points");

    int trials = 200;
    auto* ids = check->add_subcommand("identities", "Special-function and highest-weight-vector identities");
    ids->add_option("--seed", seed);
    ids->add_option("--trials", trials);

    std::string statistic = "ks";
    long long draws = 100000;
    auto* gof = check->add_subcommand("gof", "Sampler against density");
    gof->add_option("--spec", spec_path)->required()->check(CLI::ExistingFile);
    gof->add_option("--n", draws, "Draws");
    gof->add_option("--statistic", statistic)->check(CLI::IsMember({"ks", "trace", "logdet"}));
    gof->add_option("--seed", seed);

    for (auto* sub : {norm, jac, ids, gof}) {
        sub->add_option("--json", json_path, "Write the report here instead of stdout");
        sub->add_flag("--timings", timings, "Include runtimes in the report");
    }

    SuiteOptions suite_options;
    auto* suite = app.add_subcommand("suite", "Run every check");
    suite->add_option("--seed", suite_options.seed);
    suite->add_option("--draws", suite_options.draws, "Monte Carlo draws for m = 2 checks");
    suite->add_option("--threads", suite_options.threads, "Worker threads (0 = all cores)");
    suite->add_option("--json", json_path, "Write the report here instead of stdout");
    suite->add_flag("--timings", timings, "Include runtimes in the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) {
            const SpecFile spec = parse_spec(read_file(spec_path));
            const Matrix x = parse_matrix(read_file(point_path));
            const double lp = logpdf(spec.spec, x);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", lp);
            std::cout << "{\"log_density\": " << buf;
            if (!log_only) {
                std::snprintf(buf, sizeof buf, "%.17g", std::exp(lp));
                std::cout << ", \"density\": " << buf;
            }
            std::cout << "}\n";
            return 0;
        }
        if (*sample_cmd) {
            const SpecFile spec = parse_spec(read_file(spec_path));
            SampleFormat format;
            if (ends_with(out_path, ".csv")) {
                format = SampleFormat::Csv;
            } else if (ends_with(out_path, ".jsonl")) {
                format = SampleFormat::JsonLines;
            } else {
                throw Error("--out must end in .csv or .jsonl");
            }
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw Error("cannot write " + out_path);
            write_samples(out, spec.spec, format, count, seed, stream);
            return 0;
        }
        if (*norm) {
            const SpecFile spec = parse_spec(read_file(spec_path));
            const auto how = method == "mc" ? NormalizationMethod::importance_mc : NormalizationMethod::quadrature;
            return emit({check_normalization(spec.spec, how, budget, seed, tol)}, json_path, timings);
        }
        if (*jac) {
            const Transform kind = transform == "prop1"   ? Transform::linear
                                   : transform == "prop2" ? Transform::congruence
                                   : transform == "prop3" ? Transform::inverse
                                                          : Transform::polar_cholesky;
            const int n = dims.front(), m = dims.back();
            return emit({jacobian_batch(kind, beta, n, m, seed, points)}, json_path, timings);
        }
        if (*ids) return emit(identity_suite(seed, trials), json_path, timings);
        if (*gof) {
            const SpecFile spec = parse_spec(read_file(spec_path));
            const GofStatistic stat = statistic == "ks"      ? GofStatistic::ks
                                      : statistic == "trace" ? GofStatistic::trace
                                                             : GofStatistic::logdet;
            return emit({gof_sampler_vs_density(spec.spec, draws, stat, seed)}, json_path, timings);
        }
        if (*suite) return emit(run_suite(suite_options), json_path, timings);
    } catch (const ValidationError& e) {
        std::cerr << "invalid spec:\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
