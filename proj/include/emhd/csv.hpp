#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace emhd {

/// Append-only CSV series: mandatory header, '.' decimal point, ','
/// separator, '\n' line ends, 17 significant digits, one flush per row.
/// Single-owner per file; no concurrent appends.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void append(std::span<const double> row);
    void append(std::initializer_list<double> row) {
        append(std::span<const double>(row.begin(), row.size()));
    }

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
    size_t columns_;
};

/// One value formatted the way CsvWriter writes it (%.17g).
std::string csv_format(double value);

}  // namespace emhd
