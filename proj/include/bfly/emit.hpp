#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bfly {

// All numeric file output goes through "%.17g".
std::string fmt_g17(double v);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// CSV preamble: "# artifact: <name>" followed by the column header.
std::string csv_preamble(const std::string& artifact, std::span<const std::string> columns);

// Binary PBM (P4). bit(i, j) true = black pixel.
std::string pbm_p4(std::size_t rows, std::size_t cols,
                   const std::function<bool(std::size_t, std::size_t)>& bit);

struct HistogramSeries {
    std::string name;
    std::vector<double> samples;
};

// Self-contained SVG of overlaid histograms on a log-scaled abscissa with
// `bins` logarithmically spaced bins. Deterministic output, no timestamps.
std::string svg_log_histogram(const std::string& title, std::span<const HistogramSeries> series,
                              std::size_t bins = 50);

}  // namespace bfly
