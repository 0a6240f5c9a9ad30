#include "csv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include "bergman/json_io.hpp"

namespace bergman::cli {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void push_value(std::vector<std::string>& row, const LogReal& x) {
    row.push_back(std::to_string(x.sign()));
    row.push_back(x.is_zero() ? std::string() : fmt17(x.log10_magnitude()));
    if (x.is_zero()) {
        row.push_back("0");
    } else if (x.log_magnitude() > 709.0) {
        row.push_back("overflow");
    } else if (x.log_magnitude() < -745.0) {
        row.push_back("underflow");
    } else {
        row.push_back(fmt17(x.to_double()));
    }
}

void push_value(std::vector<std::string>& row, double x) {
    push_value(row, LogReal::from_double(x));
}

void push_value_header(std::vector<std::string>& header, const std::string& name) {
    header.push_back(name + "_sign");
    header.push_back(name + "_log10");
    header.push_back(name + "_decimal");
}

CsvWriter::CsvWriter(std::string table_name) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    comment_ = "# " + table_name + " generated " + stamp + "\n";
}

void CsvWriter::header(std::vector<std::string> columns) {
    columns_ = columns.size();
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) body_ += ',';
        body_ += columns[i];
    }
    body_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (columns_ && cells.size() != columns_)
        throw std::logic_error("CsvWriter: row width does not match header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

void CsvWriter::write(const std::string& path) const {
    io::write_file_atomic(path, comment_ + body_);
}

}  // namespace bergman::cli
