#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bks {

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Static single-file log-log line plot (decay curves, bound-vs-error
/// overlays). Non-positive values are dropped from log axes.
void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series);

}  // namespace bks
