#include "bfly/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bfly {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

std::string csv_preamble(const std::string& artifact, std::span<const std::string> columns) {
    std::string out = "# artifact: " + artifact + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += (i + 1 == columns.size()) ? '\n' : ',';
    }
    return out;
}

std::string pbm_p4(std::size_t rows, std::size_t cols,
                   const std::function<bool(std::size_t, std::size_t)>& bit) {
    std::string out = "P4\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n";
    const std::size_t row_bytes = (cols + 7) / 8;
    for (std::size_t i = 0; i < rows; ++i) {
        std::string row(row_bytes, '\0');
        for (std::size_t j = 0; j < cols; ++j)
            if (bit(i, j)) row[j / 8] |= static_cast<char>(0x80u >> (j % 8));
        out += row;
    }
    return out;
}

namespace {

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

std::string svg_log_histogram(const std::string& title, std::span<const HistogramSeries> series,
                              std::size_t bins) {
    static const char* kColors[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee"};
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& s : series)
        for (double v : s.samples) {
            if (v <= 0.0) continue;
            if (!any) {
                lo = hi = v;
                any = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    if (!any) {
        lo = 1.0;
        hi = 10.0;
    }
    if (lo == hi) {
        lo *= 0.5;
        hi *= 2.0;
    }
    const double llo = std::log10(lo), lhi = std::log10(hi);

    std::vector<std::vector<std::size_t>> counts(series.size(), std::vector<std::size_t>(bins, 0));
    std::size_t max_count = 1;
    for (std::size_t s = 0; s < series.size(); ++s) {
        for (double v : series[s].samples) {
            if (v <= 0.0) continue;
            double t = (std::log10(v) - llo) / (lhi - llo);
            auto b = static_cast<std::size_t>(std::min(t * static_cast<double>(bins),
                                                       static_cast<double>(bins - 1)));
            counts[s][b]++;
            max_count = std::max(max_count, counts[s][b]);
        }
    }

    const double width = 800, height = 500, left = 70, right = 20, top = 50, bottom = 60;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % 5];
        for (std::size_t b = 0; b < bins; ++b) {
            if (counts[s][b] == 0) continue;
            const double x = left + plot_w * static_cast<double>(b) / static_cast<double>(bins);
            const double w = plot_w / static_cast<double>(bins);
            const double h = plot_h * static_cast<double>(counts[s][b]) /
                             static_cast<double>(max_count);
            svg += "<rect x=\"" + fmt_tick(x) + "\" y=\"" + fmt_tick(top + plot_h - h) +
                   "\" width=\"" + fmt_tick(w) + "\" height=\"" + fmt_tick(h) + "\" fill=\"" +
                   color + "\" fill-opacity=\"0.45\"/>\n";
        }
        svg += "<rect x=\"" + fmt_tick(left + 10 + 170 * static_cast<double>(s)) +
               "\" y=\"36\" width=\"12\" height=\"12\" fill=\"" + color +
               "\" fill-opacity=\"0.45\"/>\n";
        svg += "<text x=\"" + fmt_tick(left + 26 + 170 * static_cast<double>(s)) +
               "\" y=\"47\" font-family=\"sans-serif\" font-size=\"12\">" + series[s].name +
               "</text>\n";
    }

    // Axes and log ticks.
    svg += "<line x1=\"" + fmt_tick(left) + "\" y1=\"" + fmt_tick(top + plot_h) + "\" x2=\"" +
           fmt_tick(left + plot_w) + "\" y2=\"" + fmt_tick(top + plot_h) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_tick(left) + "\" y1=\"" + fmt_tick(top) + "\" x2=\"" +
           fmt_tick(left) + "\" y2=\"" + fmt_tick(top + plot_h) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double frac = t / 4.0;
        const double x = left + plot_w * frac;
        svg += "<line x1=\"" + fmt_tick(x) + "\" y1=\"" + fmt_tick(top + plot_h) + "\" x2=\"" +
               fmt_tick(x) + "\" y2=\"" + fmt_tick(top + plot_h + 6) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_tick(x) + "\" y=\"" + fmt_tick(top + plot_h + 22) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt_tick(std::pow(10.0, llo + (lhi - llo) * frac)) + "</text>\n";
        const double y = top + plot_h * (1.0 - frac);
        svg += "<text x=\"" + fmt_tick(left - 8) + "\" y=\"" + fmt_tick(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt_tick(frac * static_cast<double>(max_count)) + "</text>\n";
    }
    svg += "<text x=\"" + fmt_tick(left + plot_w / 2) + "\" y=\"" + fmt_tick(height - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">value "
           "(log scale)</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt_tick(top + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + fmt_tick(top + plot_h / 2) + ")\">count</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace bfly
