#include "arrowlab/svg.hpp"

#include "arrowlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace arrowlab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 560.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

double x_pixel(double s) {
    return kMarginLeft + s * (kWidth - kMarginLeft - kMarginRight);
}

double y_pixel(double z, double z_max) {
    const double h = kHeight - kMarginTop - kMarginBottom;
    return kHeight - kMarginBottom - z / z_max * h;
}

std::string coord(double v) {
    // Two decimals is plenty for pixel coordinates and keeps files small.
    const double rounded = std::round(v * 100.0) / 100.0;
    return format_double(rounded);
}

} // namespace

std::string render_entropy_scan_svg(std::span<const EntropyScanRow> rows) {
    // Group by p preserving first-appearance order (rows are p-outer).
    std::vector<double> p_values;
    for (const EntropyScanRow& row : rows) {
        if (p_values.empty() || p_values.back() != row.p) {
            if (std::find(p_values.begin(), p_values.end(), row.p) ==
                p_values.end()) {
                p_values.push_back(row.p);
            }
        }
    }
    const double z_max = 0.75; // comfortably above ln 2

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // Axes.
    svg << "<line x1=\"" << coord(x_pixel(0)) << "\" y1=\""
        << coord(y_pixel(0, z_max)) << "\" x2=\"" << coord(x_pixel(1))
        << "\" y2=\"" << coord(y_pixel(0, z_max))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << coord(x_pixel(0)) << "\" y1=\""
        << coord(y_pixel(0, z_max)) << "\" x2=\"" << coord(x_pixel(0))
        << "\" y2=\"" << coord(y_pixel(z_max, z_max))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Ticks and labels.
    for (int i = 0; i <= 4; ++i) {
        const double s = i / 4.0;
        const double x = x_pixel(s);
        svg << "<line x1=\"" << coord(x) << "\" y1=\""
            << coord(y_pixel(0, z_max)) << "\" x2=\"" << coord(x)
            << "\" y2=\"" << coord(y_pixel(0, z_max) + 6)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << coord(x) << "\" y=\""
            << coord(y_pixel(0, z_max) + 22)
            << "\" font-size=\"13\" text-anchor=\"middle\">"
            << format_double(s) << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double z = z_max * i / 5.0;
        const double y = y_pixel(z, z_max);
        svg << "<line x1=\"" << coord(x_pixel(0) - 6) << "\" y1=\""
            << coord(y) << "\" x2=\"" << coord(x_pixel(0)) << "\" y2=\""
            << coord(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << coord(x_pixel(0) - 10) << "\" y=\""
            << coord(y + 4)
            << "\" font-size=\"13\" text-anchor=\"end\">"
            << format_double(std::round(z * 100.0) / 100.0) << "</text>\n";
    }
    svg << "<text x=\"" << coord((x_pixel(0) + x_pixel(1)) / 2) << "\" y=\""
        << coord(kHeight - 16)
        << "\" font-size=\"16\" text-anchor=\"middle\">s</text>\n";
    svg << "<text x=\"18\" y=\"" << coord(kHeight / 2)
        << "\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "18 "
        << coord(kHeight / 2) << ")\">Z^b</text>\n";

    // One polyline per p.
    for (std::size_t k = 0; k < p_values.size(); ++k) {
        const double p = p_values[k];
        svg << "<polyline fill=\"none\" stroke=\""
            << kPalette[k % std::size(kPalette)]
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const EntropyScanRow& row : rows) {
            if (row.p != p) {
                continue;
            }
            if (!first) {
                svg << " ";
            }
            svg << coord(x_pixel(row.s)) << "," << coord(y_pixel(row.z_b, z_max));
            first = false;
        }
        svg << "\"/>\n";
        // Legend entry.
        const double ly = kMarginTop + 18.0 * static_cast<double>(k);
        svg << "<line x1=\"" << coord(kWidth - 150) << "\" y1=\"" << coord(ly)
            << "\" x2=\"" << coord(kWidth - 120) << "\" y2=\"" << coord(ly)
            << "\" stroke=\"" << kPalette[k % std::size(kPalette)]
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << coord(kWidth - 112) << "\" y=\"" << coord(ly + 4)
            << "\" font-size=\"13\">p = " << format_double(p) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace arrowlab
