#pragma once
#include <fstream>
#include <string>
#include <vector>

#include "types.hpp"

namespace pdm {

// CSV writer with byte-stable number formatting (shortest round-trip via
// std::to_chars), so identical runs produce identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& columns);
    CsvWriter& field(double v);
    CsvWriter& field(std::uint64_t v);
    CsvWriter& field(const std::string& v);
    void end_row();

    static std::string format(double v);

private:
    void sep();
    std::ofstream out_;
    bool row_started_ = false;
};

} // namespace pdm
