#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace mbcsim {

// Row of the probability schema: scenario,proposal_merit,funded_probability,std_error.
// Delta rows reuse the schema with the delta in the probability column.
struct ProbabilityRow {
    std::string scenario;
    int merit = 0;
    double value = 0.0;
    double std_error = 0.0;
};

// Row of the accuracy schema: scenario,m,topT_accuracy,kendall_tau.
struct AccuracyRow {
    std::string scenario;
    int m = 0;
    double accuracy = 0.0;
    double kendall_tau = 0.0;
};

void write_probability_csv(const std::string& path, std::span<const ProbabilityRow> rows);
void write_accuracy_csv(const std::string& path, std::span<const AccuracyRow> rows);
void write_json(const std::string& path, const nlohmann::json& doc);

}  // namespace mbcsim
