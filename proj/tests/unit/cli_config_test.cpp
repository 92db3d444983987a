#include "triesz/cli_config.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "test_support.hpp"
#include "triesz/errors.hpp"

namespace triesz {
namespace {

std::vector<std::string> problems_of(const std::string& text)
{
    try {
        parse_spec(text);
    } catch (const ValidationError& e) {
        return e.problems();
    }
    return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle)
{
    for (const auto& p : problems) {
        if (p.find(needle) != std::string::npos) return true;
    }
    return false;
}

TEST(ParseSpec, ValidTRiesz)
{
    const SpecFile f = parse_spec(R"({"family": "TRieszI", "beta": 1, "n": 2, "m": 2, "nu": 3,
        "kappa": [0.5, 0.25], "tau": [0.3, 0.2]})");
    EXPECT_EQ(f.spec.family(), Family::TRieszI);
    EXPECT_EQ(f.spec.kappa(), (WeightVector{0.5, 0.25}));
    EXPECT_EQ(f.key_lines.at("kappa"), 2);
}

TEST(ParseSpec, MalformedJson)
{
    EXPECT_THROW(parse_spec("{\"family\": "), ParseError);
    EXPECT_THROW(parse_spec("[1, 2]"), ParseError);
}

TEST(ParseSpec, BadBeta)
{
    const auto p = problems_of(R"({"family": "RieszI", "beta": 3, "n": 2, "m": 2, "a": 3, "kappa": "zero"})");
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0], "beta must be 1, 2, or 4");
}

TEST(ParseSpec, NamesTheViolatedInequality)
{
    const auto p = problems_of(
        R"({"family": "TRieszI", "beta": 1, "n": 2, "m": 2, "nu": 1, "kappa": [0, 0], "tau": [0, 0]})");
    ASSERT_FALSE(p.empty());
    EXPECT_TRUE(mentions(p, "(m−1)β/2 − k_m violated: 0.5 ≤ 0.5"));
}

TEST(ParseSpec, CollectsEveryProblem)
{
    const auto p = problems_of(R"({"family": "TRieszI", "beta": 1, "n": 2, "m": 2, "nu": 1,
        "kappa": [0, 0], "tau": [0, 0], "colour": "red", "a": 2})");
    EXPECT_TRUE(mentions(p, "unknown field \"colour\" (line 2)"));
    EXPECT_TRUE(mentions(p, "a is not a parameter"));
    EXPECT_TRUE(mentions(p, "violated"));
}

TEST(ParseSpec, WeightsMustBeExplicit)
{
    EXPECT_TRUE(mentions(problems_of(R"({"family": "RieszI", "beta": 1, "n": 1, "m": 1, "a": 2})"), "kappa is required"));
    EXPECT_NO_THROW(parse_spec(R"({"family": "RieszI", "beta": 1, "n": 1, "m": 1, "a": 2, "kappa": "zero"})"));
    EXPECT_TRUE(mentions(problems_of(R"({"family": "RieszI", "beta": 1, "n": 1, "m": 1, "a": 2, "kappa": "none"})"),
                         "kappa must be"));
}

TEST(ParseSpec, MatrixProblems)
{
    const auto p = problems_of(R"({"family": "RieszI", "beta": 1, "n": 2, "m": 2, "a": 3, "kappa": "zero",
        "Xi": {"beta": 1, "rows": 2, "cols": 2, "entries": [[1], [2], [0], [1]]}})");
    EXPECT_TRUE(mentions(p, "Xi must be Hermitian"));
    const auto q = problems_of(R"({"family": "RieszI", "beta": 1, "n": 2, "m": 2, "a": 3, "kappa": "zero",
        "Xi": {"beta": 1, "rows": 2, "cols": 2, "entries": [[1], [2], [2], [1]]}})");
    EXPECT_TRUE(mentions(q, "Xi must be positive definite"));
}

TEST(SpecJson, RoundTrip)
{
    std::mt19937_64 rng(4);
    DistributionParams p = test::base(Family::TRieszII, 2, 3, 2);
    p.kappa = {-0.25, 0.5};
    p.tau = WeightVector{0.1, 0.3};
    p.nu = 4.0 / 3.0 + 2;
    p.mu = test::random_matrix(rng, 2, 3, 2);
    p.Delta = test::random_pd(rng, 2, 3);
    p.Pi = test::random_pd(rng, 2, 2);
    const DistributionSpec spec(p);
    const SpecFile back = parse_spec(spec_to_json(spec));
    const DistributionParams& q = back.spec.params();
    EXPECT_EQ(q.family, p.family);
    EXPECT_EQ(q.kappa, p.kappa);
    EXPECT_EQ(*q.tau, *p.tau);
    EXPECT_EQ(*q.nu, *p.nu);
    EXPECT_LE(max_abs_diff(*q.mu, *p.mu), 1e-15);
    EXPECT_LE(max_abs_diff(q.Delta->matrix(), p.Delta->matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(q.Pi->matrix(), p.Pi->matrix()), 1e-15);
    EXPECT_EQ(spec_hash(spec), spec_hash(back.spec));
    EXPECT_EQ(spec_to_json(back.spec), spec_to_json(spec));
}

TEST(MatrixJson, RoundTripAndErrors)
{
    std::mt19937_64 rng(5);
    const Matrix x = test::random_matrix(rng, 4, 2, 3);
    EXPECT_EQ(max_abs_diff(parse_matrix(matrix_to_json(x)), x), 0.0);
    EXPECT_THROW(parse_matrix(R"({"beta": 1, "rows": 1, "cols": 2, "entries": [[1]]})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"beta": 2, "rows": 1, "cols": 1, "entries": [[1]]})"), ParseError);
    EXPECT_THROW(parse_matrix(R"({"beta": 1, "rows": 1, "cols": 1, "entries": [[1]], "x": 0})"), ParseError);
}

TEST(Reports, Envelope)
{
    EXPECT_EQ(emit_report({}), "{\n  \"schema\": 1,\n  \"reports\": []\n}");
    VerificationReport r;
    r.check = "demo";
    r.add("beta", "1");
    r.tolerance = 1;
    r.finish();
    r.runtime_seconds = 0.5;
    const std::string text = emit_report({r});
    EXPECT_NE(text.find("\"pass\": true"), std::string::npos);
    EXPECT_EQ(text.find("runtime_seconds"), std::string::npos);
    EXPECT_NE(emit_report({r}, true).find("runtime_seconds"), std::string::npos);
}

TEST(Samples, CsvAndJsonLines)
{
    const DistributionSpec spec = test::make(Family::KotzRieszI, 2, 2, 1, {0.5}, std::nullopt, 0);
    std::ostringstream csv, again, jsonl;
    write_samples(csv, spec, SampleFormat::Csv, 4, 7, 1);
    write_samples(again, spec, SampleFormat::Csv, 4, 7, 1);
    write_samples(jsonl, spec, SampleFormat::JsonLines, 2, 7, 1);
    EXPECT_EQ(csv.str(), again.str());
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# spec=" + spec_hash(spec) + " seed=7 stream=1");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
    }
    EXPECT_EQ(rows, 4);
    std::istringstream jl(jsonl.str());
    std::getline(jl, line);
    std::getline(jl, line);
    EXPECT_EQ(parse_matrix(line).rows(), 2);
}

}  // namespace
}  // namespace triesz
