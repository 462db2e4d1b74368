#include "emhd/csv.hpp"

#include <cstdio>

#include "emhd/errors.hpp"

namespace emhd {

std::string csv_format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::trunc), columns_(header.size()) {
    if (!out_) throw IoError("cannot open CSV file for writing: " + path_);
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
    out_.flush();
    if (!out_) throw IoError("write failed on CSV file: " + path_);
}

void CsvWriter::append(std::span<const double> row) {
    if (row.size() != columns_)
        throw IoError("CSV row width " + std::to_string(row.size()) + " does not match header (" +
                      std::to_string(columns_) + ") in " + path_);
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_format(row[i]);
    }
    out_ << '\n';
    out_.flush();
    if (!out_) throw IoError("write failed on CSV file: " + path_);
}

}  // namespace emhd
