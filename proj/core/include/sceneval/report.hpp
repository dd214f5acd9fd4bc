#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sceneval/counting.hpp"
#include "sceneval/matching.hpp"

namespace sceneval {

// Everything one evaluation run reports, ready for serialization. config
// holds the resolved run configuration as ordered key/value pairs so reruns
// are reproducible from the report alone.
struct ReportBundle {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<CountingReport> counting;
    std::vector<LocalizationReport> localization;
    std::vector<std::pair<std::string, std::string>> notes;
};

// Deterministic JSON: object keys sorted, numbers in shortest round-trip
// form. Two runs over identical inputs produce identical bytes.
std::string render_report_json(const ReportBundle& bundle);

// CSV renderings. All end with a trailing newline.
std::string counting_csv(std::span<const CountingReport> reports);
std::string gridmetrics_csv(std::span<const CountingReport> reports);
std::string sweep_csv(std::span<const SweepRow> rows);

} // namespace sceneval
