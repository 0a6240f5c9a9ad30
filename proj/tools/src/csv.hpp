#pragma once

#include <string>
#include <vector>

#include "bergman/log_real.hpp"

namespace bergman::cli {

/// %.17g, enough digits to round-trip a double exactly.
std::string fmt17(double x);

/// The three-column representation of a measured value: sign, log10 of the
/// magnitude, and a decimal rendering that degrades to "overflow"/"underflow"
/// outside double range.
void push_value(std::vector<std::string>& row, const LogReal& x);
void push_value(std::vector<std::string>& row, double x);
/// Header names for the triple.
void push_value_header(std::vector<std::string>& header, const std::string& name);

/// CSV assembly: one timestamped comment line, a header row, then a
/// deterministic body.  Written atomically.
class CsvWriter {
public:
    explicit CsvWriter(std::string table_name);
    void header(std::vector<std::string> columns);
    void row(const std::vector<std::string>& cells);
    void write(const std::string& path) const;
    const std::string& body() const { return body_; }

private:
    std::string comment_;
    std::string body_;
    size_t columns_ = 0;
};

}  // namespace bergman::cli
