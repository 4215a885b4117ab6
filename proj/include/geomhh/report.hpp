#pragma once

#include <string>

#include "geomhh/bounds.hpp"
#include "geomhh/convexity.hpp"
#include "geomhh/sweep.hpp"

namespace geomhh::report {

// Serializes a sweep to one JSON document: meta (timestamp and wall time,
// the only run-dependent fields), spec echo, records, summary. Several
// specs may feed one merged result (the built-in verify suite does).
std::string to_json(const std::vector<sweep::SweepSpec>& specs,
                    const sweep::SweepResult& result);

// One row per record with 17-significant-digit numbers; no run-dependent
// fields, so identical sweeps serialize byte-identically.
std::string to_csv(const sweep::SweepResult& result);

std::string bound_report_json(const bounds::BoundReport& report, int theorem);
std::string chain_report_json(const bounds::ChainReport& report, double slack);
std::string verdict_json(const convexity::ConvexityVerdict& verdict, double s);
std::string error_json(const std::string& type, const std::string& message);

// 17 significant digits, enough to round-trip a double exactly.
std::string format_double(double v);

} // namespace geomhh::report
