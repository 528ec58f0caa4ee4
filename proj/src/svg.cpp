#include "sprd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace sprd {

namespace {

constexpr int kWidth = 640, kHeight = 440;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

} // namespace

void write_line_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<PlotSeries>& series,
                     bool log_x, bool log_y) {
    // Collect transformed points and ranges.
    std::vector<std::vector<std::pair<double, double>>> transformed(series.size());
    double x_lo = HUGE_VAL, x_hi = -HUGE_VAL, y_lo = HUGE_VAL, y_hi = -HUGE_VAL;
    for (std::size_t s = 0; s < series.size(); ++s) {
        for (const auto& [x, y] : series[s].points) {
            if ((log_x && !(x > 0.0)) || (log_y && !(y > 0.0))) continue;
            const double tx = log_x ? std::log10(x) : x;
            const double ty = log_y ? std::log10(y) : y;
            if (!std::isfinite(tx) || !std::isfinite(ty)) continue;
            transformed[s].push_back({tx, ty});
            x_lo = std::min(x_lo, tx);
            x_hi = std::max(x_hi, tx);
            y_lo = std::min(y_lo, ty);
            y_hi = std::max(y_hi, ty);
        }
    }
    if (!(x_lo <= x_hi)) {
        x_lo = 0;
        x_hi = 1;
    }
    if (!(y_lo <= y_hi)) {
        y_lo = 0;
        y_hi = 1;
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;

    const auto map_x = [&](double t) {
        return kLeft + (t - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight);
    };
    const auto map_y = [&](double t) {
        return kHeight - kBottom - (t - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    // Axes and ticks.
    out << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kHeight - kBottom << "\"/>\n</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double tx = x_lo + (x_hi - x_lo) * i / 5.0;
        const double value = log_x ? std::pow(10.0, tx) : tx;
        out << "<text x=\"" << fmt(map_x(tx)) << "\" y=\"" << kHeight - kBottom + 16
            << "\" text-anchor=\"middle\">" << fmt(value) << "</text>\n";
        const double ty = y_lo + (y_hi - y_lo) * i / 5.0;
        const double y_value = log_y ? std::pow(10.0, ty) : ty;
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(map_y(ty) + 3)
            << "\" text-anchor=\"end\">" << fmt(y_value) << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label << "</text>\n</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        if (transformed[s].size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [tx, ty] : transformed[s])
                out << fmt(map_x(tx)) << ',' << fmt(map_y(ty)) << ' ';
            out << "\"/>\n";
        }
        for (const auto& [tx, ty] : transformed[s])
            out << "<circle cx=\"" << fmt(map_x(tx)) << "\" cy=\"" << fmt(map_y(ty))
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kTop + 14 * (s + 1)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
            << color << "\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace sprd
