#include "extremes/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "extremes/error.hpp"

namespace extremes::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_int(std::string_view text, std::int64_t& out) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
}

struct Record {
    std::size_t line_no = 0;
    std::vector<std::string> fields;
};

// Header plus data records; blank lines dropped, BOM and CR stripped.
std::vector<Record> read_records(std::istream& in, char sep, const std::vector<std::string>& header,
                                 bool split_first_only = false) {
    std::vector<Record> records;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        view = trim(view);
        if (view.empty()) continue;

        std::vector<std::string> fields;
        if (split_first_only && view.find(';') == std::string_view::npos) {
            const auto pos = view.find(sep);
            fields.emplace_back(trim(view.substr(0, pos)));
            if (pos != std::string_view::npos) fields.emplace_back(trim(view.substr(pos + 1)));
        } else {
            fields = split(view, split_first_only ? ';' : sep);
        }

        if (!saw_header) {
            saw_header = true;
            std::vector<std::string> lowered = fields;
            for (auto& f : lowered) {
                std::transform(f.begin(), f.end(), f.begin(),
                               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            }
            std::vector<std::string> expected = header;
            for (auto& f : expected) {
                std::transform(f.begin(), f.end(), f.begin(),
                               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            }
            if (lowered != expected) {
                std::string want;
                for (std::size_t i = 0; i < header.size(); ++i) want += (i ? "," : "") + header[i];
                fail(line_no, "expected header `" + want + "`");
            }
            continue;
        }
        if (fields.size() != header.size()) {
            fail(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                              std::to_string(fields.size()));
        }
        records.push_back({line_no, std::move(fields)});
    }
    if (!saw_header) throw DataError("input is empty");
    if (records.empty()) throw DataError("input has a header but no records");
    return records;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

double field_double(const Record& r, std::size_t i, const std::string& name) {
    double v = 0.0;
    if (!parse_double(r.fields[i], v)) fail(r.line_no, "invalid " + name + " `" + r.fields[i] + "`");
    return v;
}

}  // namespace

TimeSeries read_series(std::istream& in, DecimalConvention decimal) {
    const bool comma = decimal == DecimalConvention::comma;
    const auto records = read_records(in, ',', {"month", "value"}, comma);

    std::vector<Observation> obs;
    obs.reserve(records.size());
    for (const auto& r : records) {
        std::int64_t month = 0;
        if (!parse_int(r.fields[0], month)) fail(r.line_no, "invalid month `" + r.fields[0] + "`");
        if (month < 1) fail(r.line_no, "month must be >= 1");
        std::string value_text = r.fields[1];
        if (comma) std::replace(value_text.begin(), value_text.end(), ',', '.');
        double value = 0.0;
        if (!parse_double(value_text, value) || !std::isfinite(value)) {
            fail(r.line_no, "invalid value `" + r.fields[1] + "`");
        }
        if (!obs.empty() && month <= obs.back().index) {
            fail(r.line_no, "month " + std::to_string(month) + " does not increase");
        }
        obs.push_back({month, value});
    }
    return TimeSeries(std::move(obs));
}

TimeSeries read_series_file(const std::filesystem::path& path, DecimalConvention decimal) {
    auto in = open(path);
    return read_series(in, decimal);
}

HazardCurve read_hazard_file(const std::filesystem::path& path) {
    auto in = open(path);
    std::vector<HazardPoint> points;
    for (const auto& r : read_records(in, ',', {"s", "G"})) {
        points.push_back({field_double(r, 0, "s"), field_double(r, 1, "G")});
    }
    return HazardCurve(std::move(points));
}

std::vector<VulnerabilityPoint> read_vulnerability_file(const std::filesystem::path& path) {
    auto in = open(path);
    std::vector<VulnerabilityPoint> points;
    for (const auto& r : read_records(in, ',', {"s", "mean_loss", "cov"})) {
        points.push_back(VulnerabilityPoint::make(field_double(r, 0, "s"),
                                                  field_double(r, 1, "mean_loss"),
                                                  field_double(r, 2, "cov")));
    }
    return points;
}

std::vector<double> read_loss_grid_file(const std::filesystem::path& path) {
    auto in = open(path);
    std::vector<double> grid;
    for (const auto& r : read_records(in, ',', {"x"})) grid.push_back(field_double(r, 0, "x"));
    return grid;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(item, v)) throw UsageError("invalid number `" + item + "` in list");
        out.push_back(v);
    }
    return out;
}

}  // namespace extremes::io
