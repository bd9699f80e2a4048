#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pks/fields.hpp"
#include "pks/solver.hpp"

namespace pks {

struct LawsSection {
    double m = 0, q = 0, cbar = 0;
};

struct GridSection {
    int dim = 1;
    int nx = 0, ny = 1;
    double lx = 0, ly = 1;

    Grid build() const;
};

struct TargetSection {
    std::string kind = "interval";  // interval | disk
    double x0 = 0, x1 = 0;          // interval
    double cx = 0, cy = 0, radius = 0;
    bool allow_outside = false;     // skip the E inside Omega0 requirement
};

struct RunConfig {
    std::optional<LawsSection> laws;
    std::optional<GridSection> grid;
    MediumSpec medium;
    bool has_medium = false;
    std::optional<SimParams> sim;
    std::vector<double> eps_list;  // strictly decreasing
    std::optional<TargetSection> target;
    std::string experiment;
};

// strict INI reader: unknown sections or keys are errors
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

std::vector<double> parse_number_list(const std::string& s, const std::string& field);

} // namespace pks
