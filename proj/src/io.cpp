#include "mpadp/io.hpp"
#include "mpadp/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mpadp::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path.string());
    return in;
}

} // namespace

std::string format_number(double v) {
    if (v == 0.0) return "0"; // no "-0"
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double quantize(double v) { return parse_number(format_number(v)); }

std::vector<double> quantize(std::span<const double> v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = quantize(v[i]);
    return out;
}

double parse_number(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ValidationError("expected a number, got an empty field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw ValidationError("not a number: '" + t + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

void write_value_csv(std::ostream& out, std::span<const double> values) {
    out << "state,value\n";
    for (std::size_t s = 0; s < values.size(); ++s)
        out << (s + 1) << ',' << format_number(values[s]) << '\n';
}

void write_value_csv(const std::filesystem::path& path, std::span<const double> values) {
    auto out = open_out(path);
    write_value_csv(out, values);
}

std::vector<double> read_value_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "state,value")
        throw ValidationError(path.string() + ": expected header 'state,value'");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 2) throw ValidationError(path.string() + ": malformed row '" + line + "'");
        if (static_cast<std::size_t>(parse_number(f[0])) != values.size() + 1)
            throw ValidationError(path.string() + ": states must be consecutive from 1");
        values.push_back(parse_number(f[1]));
    }
    return values;
}

void write_policy_csv(const std::filesystem::path& path, const Policy& policy) {
    auto out = open_out(path);
    out << "state,action\n";
    for (std::size_t s = 0; s < policy.size(); ++s) out << (s + 1) << ',' << (policy[s] + 1) << '\n';
}

Policy read_policy_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "state,action")
        throw ValidationError(path.string() + ": expected header 'state,action'");
    std::vector<std::size_t> actions;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 2) throw ValidationError(path.string() + ": malformed row '" + line + "'");
        const double a = parse_number(f[1]);
        if (a < 1 || a != std::floor(a)) throw ValidationError(path.string() + ": bad action");
        actions.push_back(static_cast<std::size_t>(a) - 1);
    }
    return Policy(std::move(actions));
}

void write_dat(const std::filesystem::path& path, std::span<const double> x,
               std::span<const double> y) {
    detail::require_same_size(x.size(), y.size(), "write_dat");
    auto out = open_out(path);
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_number(x[i]) << ' ' << format_number(y[i]) << '\n';
}

std::vector<std::pair<double, double>> read_dat(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::istringstream ss(line);
        std::string a, b, extra;
        if (!(ss >> a >> b) || (ss >> extra))
            throw ValidationError(path.string() + ": expected two columns in '" + line + "'");
        rows.emplace_back(parse_number(a), parse_number(b));
    }
    return rows;
}

std::vector<std::vector<int>> read_int_grid_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::vector<int>> grid;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<int> row;
        for (const auto& f : split(t, ',')) {
            const double v = parse_number(f);
            if (v != std::floor(v)) throw ValidationError(path.string() + ": non-integer '" + f + "'");
            row.push_back(static_cast<int>(v));
        }
        grid.push_back(std::move(row));
    }
    return grid;
}

} // namespace mpadp::io
