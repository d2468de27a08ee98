#include "rbfdd/csv.hpp"

#include <charconv>
#include <istream>
#include <stdexcept>

namespace rbfdd::csv {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return value;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> data_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        lines.push_back(std::move(line));
    }
    return lines;
}

Table read_table(std::istream& in) {
    Table table;
    auto lines = data_lines(in);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = split(lines[i]);
        if (i == 0) {
            bool numeric = true;
            try {
                parse_double(fields.front());
            } catch (const std::invalid_argument&) {
                numeric = false;
            }
            if (!numeric) {
                table.header = std::move(fields);
                continue;
            }
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

} // namespace rbfdd::csv
