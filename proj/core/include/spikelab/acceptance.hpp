#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spikelab::acceptance {

struct Check {
    std::string label;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string slug;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool passed() const;
    /// One line: "PASS [07] slug (12.3 s): label detail; ...".
    std::string summary_line() const;
};

struct Options {
    int workers = 0;  ///< 0 = all cores
};

using Runner = void (*)(const Options&, std::vector<Check>&);

struct Criterion {
    int id = 0;
    std::string_view slug;
    std::string_view title;
    /// Hard runtime limit in seconds for deterministic criteria; 0 = none.
    double time_limit = 0.0;
    Runner run = nullptr;
};

const std::vector<Criterion>& criteria();

/// Looks a criterion up by number ("7") or slug; nullptr when unknown.
const Criterion* find_criterion(std::string_view key);

/// Runs one criterion, timing it and adding the runtime check when the
/// criterion has a time limit. Library errors propagate to the caller.
CriterionResult run_criterion(const Criterion& criterion, const Options& options = {});

}  // namespace spikelab::acceptance
