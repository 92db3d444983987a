#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "triesz/algebra.hpp"
#include "triesz/densities.hpp"
#include "triesz/verify.hpp"

namespace triesz {

struct SpecFile {
    DistributionSpec spec;
    std::string source;
    // Line (1-based) of each top-level key in the source.
    std::map<std::string, int> key_lines;
};

// Strict: unknown fields, missing weight vectors and every violated domain
// condition are reported together. Throws ParseError for malformed JSON and
// ValidationError otherwise. "kappa": "zero" (likewise "tau") stands for the
// zero vector.
SpecFile parse_spec(std::string_view text);

// Matrix exchange format:
// {"beta": b, "rows": r, "cols": c, "entries": [[c1, ..., cb], ...]} row-major.
Matrix parse_matrix(std::string_view text);
std::string matrix_to_json(const Matrix& x);
std::string spec_to_json(const DistributionSpec& spec);

// 64-bit FNV-1a of the canonical JSON of the spec, as 16 hex digits.
std::string spec_hash(const DistributionSpec& spec);

// {"schema": 1, "reports": [...]} in the given order. Runtimes are omitted
// unless requested, so the text depends only on seed, spec and budget.
std::string emit_report(const std::vector<VerificationReport>& reports, bool include_timings = false);
std::string report_to_json(const VerificationReport& report, bool include_timings = false);

enum class SampleFormat { Csv, JsonLines };

// Header line "# spec=<hash> seed=<s> stream=<k>" then one draw per line.
void write_samples(std::ostream& out, const DistributionSpec& spec, SampleFormat format, long long count,
                   std::uint64_t seed, std::uint64_t stream);

}  // namespace triesz
