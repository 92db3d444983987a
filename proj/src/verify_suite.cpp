#include <algorithm>
#include <atomic>
#include <limits>
#include <functional>
#include <string>
#include <thread>

#include "triesz/errors.hpp"
#include "triesz/samplers.hpp"
#include "triesz/verify.hpp"

namespace triesz {

namespace {

using Reports = std::vector<VerificationReport>;

struct Task {
    std::string label;
    std::function<Reports(std::uint64_t)> run;
};

Reports one(VerificationReport r) { return {std::move(r)}; }

Matrix real_scalar(double x)
{
    Matrix p(AlgebraTag(1), 1, 1);
    p.entry(0, 0)[0] = x;
    return p;
}

HermitianMatrix real_hermitian(double x) { return HermitianMatrix(real_scalar(x)); }

// Mild weights. Type I: (first, ..., second); type II: (-second, ..., first),
// since its domain conditions bound the first weight from above.
WeightVector weights(Family f, int m, double first, double second)
{
    std::vector<double> w(m, 0.0);
    if (is_type_one(f)) {
        w[0] = first;
        if (m > 1) w[m - 1] = second;
    } else if (m == 1) {
        w[0] = -first;
    } else {
        w[0] = -second;
        w[m - 1] = first;
    }
    return WeightVector(w);
}

DistributionParams params(Family f, int beta, int n, int m, double nu_or_a, bool zero = false)
{
    DistributionParams p;
    p.family = f;
    p.beta = beta;
    p.n = n;
    p.m = m;
    p.kappa = zero ? WeightVector::zero(m) : weights(f, m, 0.5, 0.25);
    if (uses_tau(f)) p.tau = zero ? WeightVector::zero(m) : weights(f, m, 0.3, 0.2);
    if (uses_nu(f)) p.nu = nu_or_a;
    if (is_riesz(f)) p.a = nu_or_a;
    return p;
}

double default_shape(Family f) { return is_riesz(f) ? 3.0 : 5.0; }

void add_identity_tasks(std::vector<Task>& tasks, const SuiteOptions& o)
{
    tasks.push_back({"identities", [o](std::uint64_t s) { return identity_suite(s, o.identity_trials); }});
}

void add_oracle_tasks(std::vector<Task>& tasks)
{
    struct Point {
        int m;
        double a;
        WeightVector kappa;
        GammaSign sign;
    };
    const Point points[] = {
        {1, 2.0, {0.0}, GammaSign::plus},         {1, 2.0, {1.0}, GammaSign::plus},
        {1, 3.5, {1.2}, GammaSign::minus},        {1, 1.5, {-0.3}, GammaSign::plus},
        {1, 4.0, {1.0}, GammaSign::minus},        {2, 2.0, {1.0, 0.0}, GammaSign::plus},
        {2, 3.0, {1.0, 0.0}, GammaSign::plus},    {2, 3.0, {1.0, 0.5}, GammaSign::minus},
        {2, 2.5, {0.5, -0.25}, GammaSign::plus},  {2, 4.0, {1.0, -0.5}, GammaSign::minus},
    };
    for (const Point& p : points) {
        tasks.push_back({"gamma_oracle", [p](std::uint64_t) { return one(gamma_oracle_check(p.m, p.a, p.kappa, p.sign)); }});
    }
}

void add_jacobian_tasks(std::vector<Task>& tasks, const SuiteOptions& o)
{
    struct Case {
        Transform kind;
        int beta, n, m;
    };
    std::vector<Case> cases = {
        {Transform::linear, 1, 3, 2}, {Transform::linear, 1, 8, 8}, {Transform::linear, 2, 2, 2},
        {Transform::linear, 2, 8, 4}, {Transform::linear, 4, 2, 1}, {Transform::linear, 4, 4, 4},
    };
    for (Transform t : {Transform::congruence, Transform::inverse}) {
        for (int beta : {1, 2, 4}) {
            for (int m : {2, 5}) cases.push_back({t, beta, m, m});
        }
    }
    for (int beta : {1, 2, 4}) {
        for (auto [n, m] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{5, 3}}) {
            cases.push_back({Transform::polar_cholesky, beta, n, m});
        }
    }
    for (const Case& c : cases) {
        tasks.push_back({std::string("jacobian/") + transform_name(c.kind), [c, o](std::uint64_t s) {
                             return one(jacobian_batch(c.kind, c.beta, c.n, c.m, s, o.jacobian_points));
                         }});
    }
}

void add_zero_weight_tasks(std::vector<Task>& tasks)
{
    for (Family f : kAllFamilies) {
        tasks.push_back({"zero_weights", [f](std::uint64_t s) {
                             Reports out;
                             for (int beta : {1, 2, 4}) {
                                 out.push_back(zero_weight_constant_check(f, beta, 3, 2, 3.5));
                                 if (is_type_one(f)) out.push_back(zero_weight_types_check(f, beta, 3, 2, 3.5, s));
                             }
                             return out;
                         }});
    }
}

void add_normalization_tasks(std::vector<Task>& tasks, const SuiteOptions& o)
{
    std::vector<DistributionParams> quad;
    for (Family f : kAllFamilies) {
        // 2x2 real: the cone for Hermitian points, the polar reduction for matrices.
        quad.push_back(params(f, 1, 2, 2, default_shape(f)));
        // m = 1 over the complex numbers.
        quad.push_back(params(f, 2, 2, 1, default_shape(f)));
    }
    {
        auto p = params(Family::TRieszI, 1, 1, 1, 1.0, true);  // Cauchy
        quad.push_back(p);
        p = params(Family::BetaRiesz2C, 1, 1, 1, 1.0, true);  // beta prime (1/2, 1/2)
        quad.push_back(p);
        p = params(Family::RieszI, 1, 2, 2, 3.0, true);
        p.kappa = {1.0, 0.0};
        quad.push_back(p);
    }
    for (Family f : {Family::TRieszI, Family::TRieszII}) {
        auto p = params(f, 1, 1, 1, 3.0);
        p.mu = real_scalar(0.7);
        p.Delta = real_hermitian(2.0);
        p.Pi = real_hermitian(0.5);
        quad.push_back(p);
    }
    for (Family f : {Family::KotzRieszI, Family::KotzRieszII}) {
        auto p = params(f, 1, 1, 1, 0);
        p.mu = real_scalar(-0.4);
        p.Sigma = real_hermitian(1.5);
        p.Theta = real_hermitian(0.8);
        quad.push_back(p);
    }
    {
        auto p = params(Family::RieszII, 4, 1, 1, 3.0);
        p.Xi = HermitianMatrix(2.5 * Matrix::identity(AlgebraTag(4), 1));
        quad.push_back(p);
    }
    for (const auto& p : quad) {
        tasks.push_back({"normalization/quadrature " + std::string(family_name(p.family)), [p](std::uint64_t) {
                             return one(check_normalization(DistributionSpec(p), NormalizationMethod::quadrature));
                         }});
    }
    for (Family f : kAllFamilies) {
        const auto p = params(f, 1, 2, 2, default_shape(f));
        tasks.push_back({"normalization/importance_mc " + std::string(family_name(p.family)), [p, o](std::uint64_t s) {
                             return one(check_normalization(DistributionSpec(p), NormalizationMethod::importance_mc,
                                                            o.draws, s));
                         }});
    }
}

void add_gof_tasks(std::vector<Task>& tasks, const SuiteOptions& o)
{
    const long long ks_draws = std::max(2LL, o.draws / 10);
    std::vector<DistributionParams> ks = {
        params(Family::TRieszI, 1, 1, 1, 1.0, true),   // Cauchy
        params(Family::RieszI, 1, 1, 1, 2.0, true),    // gamma
        params(Family::RieszI, 2, 1, 1, 2.0),          // gamma with shifted shape
        params(Family::RieszII, 1, 1, 1, 2.0),
        params(Family::KotzRieszI, 2, 3, 1, 0),
        params(Family::KotzRieszII, 1, 1, 1, 0),
        params(Family::PearsonIIRieszI, 1, 1, 1, 3.0),
        params(Family::PearsonIIRieszII, 2, 2, 1, 3.0),
        params(Family::TRieszII, 1, 2, 1, 3.0),
        params(Family::BetaRiesz2C, 1, 2, 1, 3.0),
        params(Family::BetaRiesz2K, 4, 1, 1, 3.0),
    };
    for (const auto& p : ks) {
        tasks.push_back({"gof/ks " + std::string(family_name(p.family)), [p, ks_draws](std::uint64_t s) {
                             return one(gof_sampler_vs_density(DistributionSpec(p), ks_draws, GofStatistic::ks, s));
                         }});
    }
    // Two-estimator moments at m = 2; nu = 12 keeps second moments finite.
    for (Family f : kAllFamilies) {
        const auto p = params(f, 1, is_beta(f) ? 3 : 2, 2, is_riesz(f) ? 3.0 : 12.0);
        for (GofStatistic st : {GofStatistic::trace, GofStatistic::logdet}) {
            tasks.push_back({"gof/moments " + std::string(family_name(p.family)), [p, st, o](std::uint64_t s) {
                                 return one(gof_sampler_vs_density(DistributionSpec(p), o.draws, st, s));
                             }});
        }
    }
    for (Family f : {Family::PearsonIIRieszI, Family::PearsonIIRieszII}) {
        const auto p = params(f, 2, 3, 2, 3.0);
        tasks.push_back({"gof/pearson_support", [p, ks_draws](std::uint64_t s) {
                             return one(pearson_support_check(DistributionSpec(p), ks_draws, s));
                         }});
    }
}

void add_riesz_moment_tasks(std::vector<Task>& tasks, const SuiteOptions& o)
{
    for (Family f : {Family::RieszI, Family::RieszII}) {
        for (int m : {1, 2, 3}) {
            for (int beta : {1, 2}) {
                auto p = params(f, beta, m, m, 3.0 + (m - 1) * beta / 2.0);
                if (m == 2) {
                    Matrix xi = Matrix::identity(AlgebraTag(beta), 2);
                    xi.entry(0, 0)[0] = 2.0;
                    xi.entry(0, 1)[0] = xi.entry(1, 0)[0] = 0.5;
                    p.Xi = HermitianMatrix(xi);
                }
                std::vector<double> t(m, 0.0);
                t[0] = 0.5;
                t[m - 1] += 0.25;
                const WeightVector tau(t);
                tasks.push_back({"gof/riesz_moment", [p, tau, o](std::uint64_t s) {
                                     return one(riesz_moment_check(DistributionSpec(p), tau, o.draws, s));
                                 }});
            }
        }
    }
}

void add_roundtrip_tasks(std::vector<Task>& tasks)
{
    for (int beta : {1, 2, 4}) {
        for (Family f : {Family::TRieszI, Family::TRieszII}) {
            const auto p = params(f, beta, 3, 2, 4.0);
            tasks.push_back({"construction/roundtrip",
                             [p](std::uint64_t s) { return one(theorem_roundtrip_check(DistributionSpec(p), s)); }});
        }
    }
}

VerificationReport task_failure(const std::string& label, const std::string& what)
{
    VerificationReport r;
    r.check = label;
    r.error = std::numeric_limits<double>::infinity();
    r.message = "task failed: " + what;
    r.finish();
    return r;
}

}  // namespace

std::vector<VerificationReport> run_suite(const SuiteOptions& options)
{
    std::vector<Task> tasks;
    add_identity_tasks(tasks, options);
    add_oracle_tasks(tasks);
    add_jacobian_tasks(tasks, options);
    add_zero_weight_tasks(tasks);
    add_normalization_tasks(tasks, options);
    add_gof_tasks(tasks, options);
    add_riesz_moment_tasks(tasks, options);
    add_roundtrip_tasks(tasks);

    std::vector<Reports> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const std::uint64_t task_seed = RngStream(options.seed, i).bits();
            try {
                results[i] = tasks[i].run(task_seed);
            } catch (const std::exception& e) {
                results[i] = one(task_failure(tasks[i].label, e.what()));
            }
        }
    };
    unsigned threads = options.threads > 0 ? unsigned(options.threads) : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Reports out;
    for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return out;
}

}  // namespace triesz
