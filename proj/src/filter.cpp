#include "wez/filter.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "wez/errors.hpp"
#include "wez/stats.hpp"

namespace wez {

namespace {

int column_index(const std::string& name) {
    for (std::size_t j = 0; j < kDatasetColumns.size(); ++j)
        if (name == kDatasetColumns[j]) return static_cast<int>(j);
    throw ConfigError("unknown dataset column '" + name + "'");
}

double row_value(const Sample& s, int col) {
    return col < 7 ? scenario_field(s.scenario, col) : s.max_range_nm;
}

void validate_rules(const FilterRules& rules) {
    if (!(rules.activation_floor_nm >= 0.0) || !std::isfinite(rules.activation_floor_nm))
        throw ConfigError("activation_floor_nm must be finite and non-negative");
    if (rules.frozen_fence_nm && !std::isfinite(*rules.frozen_fence_nm))
        throw ConfigError("frozen_fence_nm must be finite");
    for (const PlausibilityRule& rule : rules.plausibility) {
        if (rule.name.empty()) throw ConfigError("plausibility rule without a name");
        if (rule.kind != "abs_diff_max")
            throw ConfigError("unknown plausibility rule kind '" + rule.kind + "'");
        column_index(rule.field_a);
        column_index(rule.field_b);
        if (!(rule.limit >= 0.0) || !std::isfinite(rule.limit))
            throw ConfigError("plausibility rule '" + rule.name +
                              "' needs a finite non-negative limit");
    }
}

bool rule_rejects(const PlausibilityRule& rule, const Sample& s) {
    const double a = row_value(s, column_index(rule.field_a));
    const double b = row_value(s, column_index(rule.field_b));
    return std::fabs(a - b) > rule.limit;
}

}  // namespace

FilterRules default_filter_rules() {
    FilterRules rules;
    rules.plausibility.push_back(
        {"altitude_separation", "abs_diff_max", "alt_sht", "alt_tgt", 25000.0});
    return rules;
}

std::pair<Dataset, FilterReport> filter_dataset(const Dataset& dataset,
                                                const FilterRules& rules) {
    validate_rules(rules);
    FilterReport report;
    report.input_rows = dataset.rows.size();
    report.floor_nm = rules.activation_floor_nm;
    for (const PlausibilityRule& rule : rules.plausibility)
        report.removed_plausibility.emplace_back(rule.name, 0);

    // The fence comes from the post-floor rows unless a frozen value is
    // supplied; either way the value used is recorded.
    if (rules.frozen_fence_nm) {
        report.fence_nm = *rules.frozen_fence_nm;
    } else {
        std::vector<double> surviving;
        for (const Sample& s : dataset.rows)
            if (s.max_range_nm >= rules.activation_floor_nm)
                surviving.push_back(s.max_range_nm);
        if (surviving.empty())
            throw EmptyDataset("no rows survive the activation floor; cannot fit a fence");
        const double q1 = quantile_linear(surviving, 0.25);
        const double q3 = quantile_linear(surviving, 0.75);
        report.fence_nm = iqr_upper_fence(q1, q3);
    }

    Dataset out;
    out.meta = dataset.meta;
    for (const Sample& s : dataset.rows) {
        if (s.max_range_nm < rules.activation_floor_nm) {
            ++report.removed_floor;
            continue;
        }
        if (s.max_range_nm > report.fence_nm) {
            ++report.removed_fence;
            continue;
        }
        bool rejected = false;
        for (std::size_t r = 0; r < rules.plausibility.size(); ++r) {
            if (rule_rejects(rules.plausibility[r], s)) {
                ++report.removed_plausibility[r].second;
                rejected = true;
                break;
            }
        }
        if (!rejected) out.rows.push_back(s);
    }
    out.meta.rows = out.rows.size();
    report.output_rows = out.rows.size();
    return {std::move(out), std::move(report)};
}

std::string filter_rules_json(const FilterRules& rules) {
    nlohmann::ordered_json j;
    j["activation_floor_nm"] = rules.activation_floor_nm;
    if (rules.frozen_fence_nm)
        j["frozen_fence_nm"] = *rules.frozen_fence_nm;
    else
        j["frozen_fence_nm"] = nullptr;
    j["plausibility"] = nlohmann::ordered_json::array();
    for (const PlausibilityRule& rule : rules.plausibility) {
        nlohmann::ordered_json r;
        r["name"] = rule.name;
        r["kind"] = rule.kind;
        r["field_a"] = rule.field_a;
        r["field_b"] = rule.field_b;
        r["limit"] = rule.limit;
        j["plausibility"].push_back(r);
    }
    return j.dump(2) + "\n";
}

FilterRules load_filter_rules(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open filter rules file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    FilterRules rules;
    try {
        if (j.contains("activation_floor_nm"))
            rules.activation_floor_nm = j.at("activation_floor_nm").get<double>();
        if (j.contains("frozen_fence_nm") && !j.at("frozen_fence_nm").is_null())
            rules.frozen_fence_nm = j.at("frozen_fence_nm").get<double>();
        if (j.contains("plausibility")) {
            for (const auto& r : j.at("plausibility")) {
                PlausibilityRule rule;
                rule.name = r.at("name").get<std::string>();
                rule.kind = r.value("kind", std::string("abs_diff_max"));
                rule.field_a = r.at("field_a").get<std::string>();
                rule.field_b = r.at("field_b").get<std::string>();
                rule.limit = r.at("limit").get<double>();
                rules.plausibility.push_back(rule);
            }
        } else {
            rules.plausibility = default_filter_rules().plausibility;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    validate_rules(rules);
    return rules;
}

std::string filter_report_json(const FilterReport& report) {
    nlohmann::ordered_json j;
    j["input_rows"] = report.input_rows;
    j["output_rows"] = report.output_rows;
    j["floor_nm"] = report.floor_nm;
    j["fence_nm"] = report.fence_nm;
    nlohmann::ordered_json removed;
    removed["floor"] = report.removed_floor;
    removed["fence"] = report.removed_fence;
    for (const auto& [name, count] : report.removed_plausibility) removed[name] = count;
    j["removed"] = removed;
    return j.dump(2) + "\n";
}

void write_filter_report(const FilterReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << filter_report_json(report);
    if (!out.flush()) throw ConfigError("write failed for " + path);
}

}  // namespace wez
