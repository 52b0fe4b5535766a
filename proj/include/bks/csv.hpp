#pragma once

#include <string>
#include <vector>

namespace bks {

/// Number formatted with 17 significant digits (round-trip exact).
std::string fmt_g17(double v);

/// Write header + rows to path atomically: a temp file in the same
/// directory is renamed over the target only after a full write, so a
/// failed run leaves no partial CSV behind.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

/// Same temp+rename discipline for plain text (reports, SVG).
void write_text(const std::string& path, const std::string& content);

}  // namespace bks
