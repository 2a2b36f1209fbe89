#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wez/dataset.hpp"

namespace wez {

// Data-driven plausibility predicate. The one built-in kind,
// "abs_diff_max", keeps a row iff |field_a - field_b| <= limit; mission
// experts extend the rule list through the rules file rather than code.
struct PlausibilityRule {
    std::string name;
    std::string kind = "abs_diff_max";
    std::string field_a;
    std::string field_b;
    double limit = 0.0;
};

struct FilterRules {
    // Rows whose label falls below the seeker-activation distance carry no
    // usable range information.
    double activation_floor_nm = 1.079;
    // When set, reuse this outlier fence; when empty, compute the Tukey
    // fence from the post-floor rows of the dataset being filtered and
    // freeze it into the report.
    std::optional<double> frozen_fence_nm;
    std::vector<PlausibilityRule> plausibility;
};

struct FilterReport {
    std::size_t input_rows = 0;
    std::size_t output_rows = 0;
    std::size_t removed_floor = 0;
    std::size_t removed_fence = 0;
    // Per-rule removal counts in rule order; attribution goes to the first
    // rule that rejects a row.
    std::vector<std::pair<std::string, std::size_t>> removed_plausibility;
    double floor_nm = 0.0;
    double fence_nm = 0.0;
};

FilterRules default_filter_rules();

// Applies floor, then fence, then plausibility rules, attributing each
// removed row to the first stage that rejects it. Re-filtering the output
// with the reported fence frozen removes nothing.
std::pair<Dataset, FilterReport> filter_dataset(const Dataset& dataset,
                                                const FilterRules& rules);

std::string filter_rules_json(const FilterRules& rules);
FilterRules load_filter_rules(const std::string& path);

std::string filter_report_json(const FilterReport& report);
void write_filter_report(const FilterReport& report, const std::string& path);

}  // namespace wez
