#include "bks/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bks/csv.hpp"

namespace bks {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series) {
    const double W = 640, H = 440, ml = 70, mr = 20, mt = 40, mb = 55;
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (x <= 0.0 || y <= 0.0) continue;
            lo_x = std::min(lo_x, std::log10(x));
            hi_x = std::max(hi_x, std::log10(x));
            lo_y = std::min(lo_y, std::log10(y));
            hi_y = std::max(hi_y, std::log10(y));
        }
    if (lo_x > hi_x) { lo_x = 0; hi_x = 1; }
    if (lo_y > hi_y) { lo_y = 0; hi_y = 1; }
    if (hi_x - lo_x < 1e-9) { lo_x -= 0.5; hi_x += 0.5; }
    if (hi_y - lo_y < 1e-9) { lo_y -= 0.5; hi_y += 0.5; }
    auto px = [&](double lx) { return ml + (lx - lo_x) / (hi_x - lo_x) * (W - ml - mr); };
    auto py = [&](double ly) { return H - mb - (ly - lo_y) / (hi_y - lo_y) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    // decade ticks
    for (int d = static_cast<int>(std::ceil(lo_x)); d <= static_cast<int>(std::floor(hi_x)); ++d) {
        double xx = px(d);
        svg << "<line x1=\"" << xx << "\" y1=\"" << H - mb << "\" x2=\"" << xx << "\" y2=\""
            << H - mb + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << xx << "\" y=\"" << H - mb + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(lo_y)); d <= static_cast<int>(std::floor(hi_y)); ++d) {
        double yy = py(d);
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << yy << "\" x2=\"" << ml << "\" y2=\"" << yy
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << yy + 4
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
    }
    svg << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    svg << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (mt + H - mb) / 2 << ")\">" << ylabel << "</text>\n";

    int ci = 0;
    double ly_legend = mt + 8;
    for (const auto& s : series) {
        const char* col = kColors[ci % 6];
        std::ostringstream pts;
        for (auto [x, y] : s.points) {
            if (x <= 0.0 || y <= 0.0) continue;
            pts << num(px(std::log10(x))) << "," << num(py(std::log10(y))) << " ";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.6\" points=\""
            << pts.str() << "\"/>\n";
        svg << "<text x=\"" << W - mr - 6 << "\" y=\"" << ly_legend
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << col << "\">" << s.name
            << "</text>\n";
        ly_legend += 16;
        ++ci;
    }
    svg << "</svg>\n";
    write_text(path, svg.str());
}

}  // namespace bks
