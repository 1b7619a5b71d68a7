#pragma once

// CSV tables and minimal SVG line plots.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "zeno/dynamics.hpp"

namespace zeno::report {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    // Builds a table from equally long numeric columns.
    static Table from_columns(std::vector<std::string> header, const std::vector<std::vector<double>>& columns);
    std::vector<double> numeric_column(std::size_t i) const;
};

// RFC 4180: CRLF line ends, fields quoted when they contain , " CR or LF.
std::string to_csv(const Table& t);
void write_csv(const std::filesystem::path& path, const Table& t);

Table timeseries_table(const TimeSeries& ts);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

std::string to_svg(const PlotSpec& spec, const std::vector<Series>& series);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series);

// Writes `text` to `path`, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace zeno::report
