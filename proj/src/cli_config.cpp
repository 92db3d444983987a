#include "triesz/cli_config.hpp"

#include <cstdio>
#include <json.hpp>
#include <optional>
#include <set>

#include "triesz/errors.hpp"
#include "triesz/samplers.hpp"

namespace triesz {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSpecKeys[] = {"family", "beta", "n",     "m",  "nu",    "a",     "kappa",
                                     "tau",    "mu",   "Sigma", "Theta", "Xi", "Delta", "Pi"};

std::pair<int, int> line_column(std::string_view text, std::size_t byte)
{
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ordered_json parse_json(std::string_view text)
{
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        // byte is one past the offending character
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": "
                         + e.what());
    }
}

// Lines of the keys of the outermost object.
std::map<std::string, int> top_level_key_lines(std::string_view text)
{
    std::map<std::string, int> lines;
    int depth = 0, line = 1;
    bool expect_key = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
        } else if (c == '{' || c == '[') {
            ++depth;
            expect_key = c == '{' && depth == 1;
        } else if (c == '}' || c == ']') {
            --depth;
        } else if (c == ',' && depth == 1) {
            expect_key = true;
        } else if (c == '"') {
            std::string s;
            std::size_t j = i + 1;
            for (; j < text.size() && text[j] != '"'; ++j) {
                if (text[j] == '\\') ++j;
                if (j < text.size()) s += text[j];
            }
            if (depth == 1 && expect_key) lines.emplace(s, line);
            expect_key = false;
            i = j;
        }
    }
    return lines;
}

Matrix matrix_from_json(const ordered_json& j)
{
    if (!j.is_object()) throw ParseError("matrix must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "beta" && key != "rows" && key != "cols" && key != "entries") {
            throw ParseError("unknown matrix field \"" + key + "\"");
        }
    }
    for (const char* key : {"beta", "rows", "cols", "entries"}) {
        if (!j.contains(key)) throw ParseError(std::string("matrix is missing \"") + key + "\"");
    }
    if (!j["beta"].is_number_integer() || !j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        throw ParseError("matrix beta, rows and cols must be integers");
    }
    const int beta = j["beta"].get<int>(), rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
    if (beta != 1 && beta != 2 && beta != 4) throw ParseError("matrix beta must be 1, 2, or 4");
    if (rows < 1 || cols < 1) throw ParseError("matrix rows and cols must be positive");
    const ordered_json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != std::size_t(rows) * std::size_t(cols)) {
        throw ParseError("matrix entries must be an array of rows*cols = " + std::to_string(rows * cols) + " elements");
    }
    Matrix x{AlgebraTag(beta), rows, cols};
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < cols; ++k) {
            const ordered_json& e = entries[std::size_t(i * cols + k)];
            if (!e.is_array() || e.size() != std::size_t(beta)) {
                throw ParseError("matrix entry (" + std::to_string(i) + ", " + std::to_string(k) + ") must have "
                                 + std::to_string(beta) + " components");
            }
            for (int c = 0; c < beta; ++c) {
                if (!e[std::size_t(c)].is_number()) throw ParseError("matrix components must be numbers");
                x.entry(i, k)[c] = e[std::size_t(c)].get<double>();
            }
        }
    }
    return x;
}

ordered_json matrix_json(const Matrix& x)
{
    ordered_json entries = ordered_json::array();
    for (int i = 0; i < x.rows(); ++i) {
        for (int k = 0; k < x.cols(); ++k) {
            ordered_json e = ordered_json::array();
            for (int c = 0; c < x.beta(); ++c) e.push_back(x.entry(i, k)[c]);
            entries.push_back(std::move(e));
        }
    }
    return ordered_json{{"beta", x.beta()}, {"rows", x.rows()}, {"cols", x.cols()}, {"entries", std::move(entries)}};
}

ordered_json weights_json(const WeightVector& w)
{
    ordered_json a = ordered_json::array();
    for (double x : w.values()) a.push_back(x);
    return a;
}

ordered_json spec_json(const DistributionSpec& spec)
{
    const DistributionParams& p = spec.params();
    ordered_json j;
    j["family"] = std::string(family_name(p.family));
    j["beta"] = p.beta;
    j["n"] = p.n;
    j["m"] = p.m;
    if (p.nu) j["nu"] = *p.nu;
    if (p.a) j["a"] = *p.a;
    j["kappa"] = weights_json(p.kappa);
    if (p.tau) j["tau"] = weights_json(*p.tau);
    if (p.mu) j["mu"] = matrix_json(*p.mu);
    const std::pair<const char*, const std::optional<HermitianMatrix>*> scales[] = {
        {"Sigma", &p.Sigma}, {"Theta", &p.Theta}, {"Xi", &p.Xi}, {"Delta", &p.Delta}, {"Pi", &p.Pi}};
    for (const auto& [name, value] : scales) {
        if (*value) j[name] = matrix_json((*value)->matrix());
    }
    return j;
}

}  // namespace

SpecFile parse_spec(std::string_view text)
{
    const ordered_json j = parse_json(text);
    if (!j.is_object()) throw ParseError("spec must be a JSON object");
    const std::map<std::string, int> lines = top_level_key_lines(text);
    auto where = [&](const std::string& key) {
        const auto it = lines.find(key);
        return it == lines.end() ? std::string() : " (line " + std::to_string(it->second) + ")";
    };

    std::vector<std::string> problems;
    const std::set<std::string> known(std::begin(kSpecKeys), std::end(kSpecKeys));
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) problems.push_back("unknown field \"" + key + "\"" + where(key));
    }

    DistributionParams p;
    bool shape_ok = true;
    if (!j.contains("family") || !j["family"].is_string()) {
        problems.push_back("family is required and must be a string");
        shape_ok = false;
    } else if (const auto f = family_from_name(j["family"].get<std::string>())) {
        p.family = *f;
    } else {
        problems.push_back("unknown family \"" + j["family"].get<std::string>() + "\"" + where("family"));
        shape_ok = false;
    }
    for (const char* key : {"beta", "n", "m"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            problems.push_back(std::string(key) + " is required and must be an integer" + where(key));
            shape_ok = false;
        }
    }
    if (shape_ok) {
        p.beta = j["beta"].get<int>();
        p.n = j["n"].get<int>();
        p.m = j["m"].get<int>();
    }
    for (const char* key : {"nu", "a"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_number()) {
            problems.push_back(std::string(key) + " must be a number" + where(key));
            continue;
        }
        (std::string(key) == "nu" ? p.nu : p.a) = j[key].get<double>();
    }

    auto read_weights = [&](const char* key) -> std::optional<WeightVector> {
        const ordered_json& w = j[key];
        if (w.is_string() && w.get<std::string>() == "zero") {
            if (!shape_ok || p.m < 1) return std::nullopt;
            return WeightVector::zero(p.m);
        }
        if (!w.is_array()) {
            problems.push_back(std::string(key) + " must be an array of numbers or \"zero\"" + where(key));
            return std::nullopt;
        }
        std::vector<double> v;
        for (const auto& x : w) {
            if (!x.is_number()) {
                problems.push_back(std::string(key) + " must contain only numbers" + where(key));
                return std::nullopt;
            }
            v.push_back(x.get<double>());
        }
        return WeightVector(std::move(v));
    };
    bool kappa_ok = false;
    if (!j.contains("kappa")) {
        problems.push_back("kappa is required (use \"kappa\": \"zero\" for the zero vector)");
    } else if (auto w = read_weights("kappa")) {
        p.kappa = std::move(*w);
        kappa_ok = true;
    }
    bool tau_ok = true;
    if (j.contains("tau")) {
        auto w = read_weights("tau");
        tau_ok = bool(w);
        p.tau = std::move(w);
    }

    auto read_matrix = [&](const char* key) -> std::optional<Matrix> {
        if (!j.contains(key)) return std::nullopt;
        try {
            Matrix x = matrix_from_json(j[key]);
            if (shape_ok && x.beta() != p.beta) {
                problems.push_back(std::string(key) + " has beta = " + std::to_string(x.beta())
                                   + " but the spec has beta = " + std::to_string(p.beta) + where(key));
                return std::nullopt;
            }
            return x;
        } catch (const ParseError& e) {
            problems.push_back(std::string(key) + ": " + e.what() + where(key));
            return std::nullopt;
        }
    };
    bool matrices_ok = true;
    if (auto mu = read_matrix("mu")) p.mu = std::move(*mu);
    else matrices_ok = matrices_ok && !j.contains("mu");
    const std::pair<const char*, std::optional<HermitianMatrix>*> scales[] = {
        {"Sigma", &p.Sigma}, {"Theta", &p.Theta}, {"Xi", &p.Xi}, {"Delta", &p.Delta}, {"Pi", &p.Pi}};
    for (const auto& [key, slot] : scales) {
        auto x = read_matrix(key);
        if (!x) {
            matrices_ok = matrices_ok && !j.contains(key);
            continue;
        }
        if (!x->is_square()) {
            problems.push_back(std::string(key) + " must be square" + where(key));
            matrices_ok = false;
            continue;
        }
        try {
            *slot = HermitianMatrix(*x);
        } catch (const Error&) {
            problems.push_back(std::string(key) + " must be Hermitian" + where(key));
            matrices_ok = false;
        }
    }

    // Domain conditions need well-formed inputs; report them alongside
    // any other problem when they can be evaluated.
    if (shape_ok && kappa_ok && tau_ok && matrices_ok) {
        for (std::string& s : validate(p)) problems.push_back(std::move(s));
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return SpecFile{DistributionSpec(std::move(p)), std::string(text), lines};
}

Matrix parse_matrix(std::string_view text) { return matrix_from_json(parse_json(text)); }

std::string matrix_to_json(const Matrix& x) { return matrix_json(x).dump(); }

std::string spec_to_json(const DistributionSpec& spec) { return spec_json(spec).dump(2); }

std::string spec_hash(const DistributionSpec& spec)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : spec_json(spec).dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

ordered_json report_json(const VerificationReport& r, bool timings)
{
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    ordered_json j;
    j["check"] = r.check;
    j["parameters"] = std::move(params);
    j["value"] = r.value;
    j["reference"] = r.reference;
    j["abs_error"] = r.abs_error;
    j["rel_error"] = r.rel_error;
    j["measure"] = r.measure;
    j["error"] = r.error;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["evaluations"] = r.evaluations;
    if (!r.message.empty()) j["message"] = r.message;
    if (timings) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& report, bool include_timings)
{
    return report_json(report, include_timings).dump(2);
}

std::string emit_report(const std::vector<VerificationReport>& reports, bool include_timings)
{
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(report_json(r, include_timings));
    ordered_json j;
    j["schema"] = 1;
    j["reports"] = std::move(list);
    return j.dump(2);
}

void write_samples(std::ostream& out, const DistributionSpec& spec, SampleFormat format, long long count,
                   std::uint64_t seed, std::uint64_t stream)
{
    out << "# spec=" << spec_hash(spec) << " seed=" << seed << " stream=" << stream << '\n';
    RngStream rng(seed, stream);
    char buf[32];
    for (long long i = 0; i < count; ++i) {
        const Matrix x = sample(rng, spec);
        if (format == SampleFormat::JsonLines) {
            out << matrix_to_json(x) << '\n';
            continue;
        }
        bool first = true;
        for (double v : x.raw()) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << (first ? "" : ",") << buf;
            first = false;
        }
        out << '\n';
    }
}

}  // namespace triesz
