#include "bks/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bks {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed on " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::string body = header;
    body += '\n';
    for (const auto& r : rows) {
        body += r;
        body += '\n';
    }
    write_text(path, body);
}

}  // namespace bks
