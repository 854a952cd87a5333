#pragma once

// CSV and summary emission. Reals are written with 17 significant digits so
// emitted files parse back to the exact doubles and replays compare
// byte-for-byte.

#include <array>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brandsim/errors.hpp"
#include "brandsim/harness.hpp"
#include "brandsim/metrics.hpp"

namespace brandsim {

inline std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw InvariantError("format_real: buffer too small");
    return std::string(buf.data(), ptr);
}

inline std::string csv_header(std::size_t brands) {
    std::string header = "t,fluctuation";
    for (std::size_t b = 0; b < brands; ++b) header += ",share_" + std::to_string(b);
    header += ",dominant";
    return header;
}

inline void emit_csv_row(const TimeSeriesRecord& rec, std::ostream& out) {
    out << rec.t << ',' << format_real(rec.fluctuation);
    for (double share : rec.shares) out << ',' << format_real(share);
    out << ',' << rec.dominant << '\n';
}

/// Header row uses the brand count of the first record; `brands` covers the
/// empty case.
inline void emit_csv(std::span<const TimeSeriesRecord> records, std::ostream& out, std::size_t brands = 1) {
    if (!records.empty()) brands = records.front().shares.size();
    out << csv_header(brands) << '\n';
    for (const auto& rec : records) emit_csv_row(rec, out);
    out.flush();
    if (!out) throw IoError("failed to write time-series CSV");
}

inline std::vector<TimeSeriesRecord> parse_csv(std::istream& in) {
    auto fail = [](const std::string& what) { return IoError("malformed time-series CSV: " + what); };
    std::string line;
    if (!std::getline(in, line)) throw fail("missing header");
    std::size_t columns = 1;
    for (char ch : line) columns += ch == ',' ? 1 : 0;
    if (columns < 3 || line.rfind("t,fluctuation", 0) != 0) throw fail("unexpected header '" + line + "'");
    const std::size_t brands = columns - 3;

    std::vector<TimeSeriesRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> cells;
        std::string_view view(line);
        for (std::size_t start = 0;;) {
            const auto comma = view.find(',', start);
            cells.push_back(view.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (cells.size() != columns) throw fail("wrong column count in '" + line + "'");
        auto number = [&](std::string_view cell, auto& value) {
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw fail("bad value '" + std::string(cell) + "'");
        };
        TimeSeriesRecord rec;
        number(cells[0], rec.t);
        number(cells[1], rec.fluctuation);
        rec.shares.resize(brands);
        for (std::size_t b = 0; b < brands; ++b) number(cells[2 + b], rec.shares[b]);
        number(cells.back(), rec.dominant);
        records.push_back(std::move(rec));
    }
    return records;
}

/// Flat key=value lines.
inline void emit_summary(const EnsembleSummary& summary, std::ostream& out) {
    out << "runs=" << summary.runs << '\n';
    out << "consensus_fraction=" << format_real(summary.consensus_fraction) << '\n';
    out << "mean_sweeps_to_consensus="
        << (summary.mean_sweeps_to_consensus ? format_real(*summary.mean_sweeps_to_consensus) : std::string())
        << '\n';
    for (std::size_t b = 0; b < summary.dominant_brand_histogram.size(); ++b)
        out << "dominant_hist_" << b << '=' << format_real(summary.dominant_brand_histogram[b]) << '\n';
    out.flush();
    if (!out) throw IoError("failed to write summary");
}

/// One summary block per swept value, each preceded by `param=` and
/// `value=` lines and separated by a blank line.
inline void emit_sweep(std::string_view param, std::span<const std::pair<double, EnsembleSummary>> rows,
                       std::ostream& out) {
    bool first = true;
    for (const auto& [value, summary] : rows) {
        if (!first) out << '\n';
        first = false;
        out << "param=" << param << '\n' << "value=" << format_real(value) << '\n';
        emit_summary(summary, out);
    }
    out.flush();
    if (!out) throw IoError("failed to write sweep output");
}

}  // namespace brandsim
