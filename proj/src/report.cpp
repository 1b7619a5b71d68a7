#include "zeno/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "zeno/config.hpp"
#include "zeno/errors.hpp"

namespace zeno::report {
namespace {

std::string quote_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    return quote_field(std::get<std::string>(c));
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    double transform(double v) const { return log ? std::log10(v) : v; }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis fit_axis(const std::vector<Series>& series, bool use_x, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series)
        for (double v : use_x ? s.x : s.y)
            if (a.usable(v)) {
                lo = std::min(lo, a.transform(v));
                hi = std::max(hi, a.transform(v));
            }
    if (!(lo <= hi)) lo = 0, hi = 1;
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

Table Table::from_columns(std::vector<std::string> header, const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw std::invalid_argument("header and column counts differ");
    Table t;
    t.header = std::move(header);
    const std::size_t n = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != n) throw std::invalid_argument("columns differ in length");
    t.rows.resize(n);
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& c : columns) t.rows[r].emplace_back(c[r]);
    return t;
}

std::vector<double> Table::numeric_column(std::size_t i) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(std::get<double>(r.at(i)));
    return out;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += quote_field(t.header[i]);
    }
    out += "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += "\r\n";
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    f.close();
    if (!f) throw IoError("failed writing " + path.string());
}

void write_csv(const std::filesystem::path& path, const Table& t) { write_text(path, to_csv(t)); }

Table timeseries_table(const TimeSeries& ts) {
    return Table::from_columns({"time_s", "I1R_W", "I2R_W", "out_1A_W", "out_1B_W", "out_2A_W", "out_2B_W"},
                               {ts.time_s, ts.I1R_W, ts.I2R_W, ts.out_1A_W, ts.out_1B_W, ts.out_2A_W, ts.out_2B_W});
}

std::string to_svg(const PlotSpec& spec, const std::vector<Series>& series) {
    constexpr double W = 720, H = 480, left = 80, right = 160, top = 40, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;
    const Axis ax = fit_axis(series, true, spec.log_x);
    const Axis ay = fit_axis(series, false, spec.log_y);
    const auto px = [&](double v) { return left + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    const auto py = [&](double v) { return top + ph - (ay.transform(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << xml_escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
        const double fy = ay.lo + (ay.hi - ay.lo) * i / 4.0;
        const double sx = left + pw * i / 4.0;
        const double sy = top + ph - ph * i / 4.0;
        os << "<text x=\"" << num(sx) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
           << tick_label(ax.log ? std::pow(10.0, fx) : fx) << "</text>\n";
        os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy + 4) << "\" text-anchor=\"end\">"
           << tick_label(ay.log ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 16) << "\" text-anchor=\"middle\">"
       << xml_escape(spec.x_label) << (ax.log ? " (log)" : "") << "</text>\n";
    os << "<text transform=\"translate(18," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << xml_escape(spec.y_label) << (ay.log ? " (log)" : "") << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const char* color = kColors[s % std::size(kColors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(ser.x.size(), ser.y.size());
        // Thin very long series so the file stays small.
        const std::size_t stride = std::max<std::size_t>(1, n / 4000);
        for (std::size_t i = 0; i < n; i += stride)
            if (ax.usable(ser.x[i]) && ay.usable(ser.y[i])) os << num(px(ser.x[i])) << ',' << num(py(ser.y[i])) << ' ';
        os << "\"/>\n";
        const double ly = top + 16 + 18 * static_cast<double>(s);
        os << "<line x1=\"" << num(left + pw + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(left + pw + 30)
           << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(left + pw + 36) << "\" y=\"" << num(ly) << "\">" << xml_escape(ser.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series) {
    write_text(path, to_svg(spec, series));
}

}  // namespace zeno::report
