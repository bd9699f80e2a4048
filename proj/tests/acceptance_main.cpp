// Acceptance runner: one line per criterion, JSON report on request.

#include <cstdio>
#include <fstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pks/acceptance.hpp"
#include "pks/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    std::string json_out;
    app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, pks::kCriteria));
    app.add_option("--json", json_out, "write the report here");
    CLI11_PARSE(app, argc, argv);

    pks::configure_threads();
    if (only.empty())
        for (int i = 1; i <= pks::kCriteria; ++i) only.push_back(i);

    std::vector<pks::CriterionResult> results;
    for (int id : only) {
        auto r = pks::run_criterion(id);
        fmt::print("[{}] criterion {:2d} {:<36} {:8.1f}s  {}\n", r.pass ? "PASS" : "FAIL", r.id, r.name, r.seconds,
                   r.summary);
        std::fflush(stdout);
        results.push_back(std::move(r));
    }
    if (!json_out.empty()) std::ofstream(json_out) << pks::report_json(results).dump(2) << "\n";
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
