#pragma once

#include <string>
#include <vector>

#include "petallab/experiments.hpp"

namespace petallab {

/// Renders report.csv / report.json / report.svg under out_dir for the
/// requested formats (subset of {"csv", "json", "svg"}).
/// CSV header is exactly `t,quantity,value,std_err,flags`.
std::vector<std::string> render_report(const SweepReport& report,
                                       const std::vector<std::string>& formats,
                                       const std::string& out_dir);

std::string report_to_csv(const SweepReport& report);
std::string report_to_json(const SweepReport& report);
std::string report_to_svg(const SweepReport& report);

/// Parses report.json content back into a report (for re-rendering).
SweepReport report_from_json(const std::string& text);

}  // namespace petallab
