#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace pks {

struct CheckOptions {
    double m = 3, q = 2, cbar = 1;
    double a_shift = 0;  // fault injection: perturb the derived constant a
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0;  // seconds
    std::string summary;
    nlohmann::json detail;
};

constexpr int kCriteria = 10;

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const CheckOptions& opt = {});
nlohmann::json report_json(const std::vector<CriterionResult>& results);

} // namespace pks
