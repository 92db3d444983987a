#include "triesz/errors.hpp"

namespace triesz {

namespace {

std::string join(const std::vector<std::string>& problems)
{
    std::string out = "invalid specification";
    for (const auto& p : problems) out += "\n  - " + p;
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(join(problems)), problems_(std::move(problems))
{
}

}  // namespace triesz
