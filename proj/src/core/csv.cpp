#include "csv.hpp"

#include <charconv>

namespace pdm {

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw Error(ErrorCode::IoFailure, "cannot open for writing: " + path);
}

std::string CsvWriter::format(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::sep() {
    if (row_started_) out_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::field(double v) {
    sep();
    out_ << format(v);
    return *this;
}

CsvWriter& CsvWriter::field(std::uint64_t v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
    sep();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

} // namespace pdm
