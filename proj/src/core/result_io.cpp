#include "core/result_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "core/errors.hpp"

namespace mit {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

TsvWriter::TsvWriter(std::vector<std::string> columns) : width_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        body_ += (i ? "\t" : "") + columns[i];
    body_ += "\n";
}

void TsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_)
        throw ArgumentError("tsv row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i)
        body_ += (i ? "\t" : "") + fields[i];
    body_ += "\n";
}

void JsonWriter::separator() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) body_ += ", ";
        needs_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    body_ += "{";
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    body_ += "}";
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    body_ += "[";
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    body_ += "]";
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
    separator();
    body_ += "\"" + name + "\": ";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    body_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    body_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    separator();
    body_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    separator();
    body_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    body_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    body_ += "\"";
    for (char c : v) {
        switch (c) {
            case '"': body_ += "\\\""; break;
            case '\\': body_ += "\\\\"; break;
            case '\n': body_ += "\\n"; break;
            case '\t': body_ += "\\t"; break;
            default: body_ += c;
        }
    }
    body_ += "\"";
    return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::raw(const std::string& text) {
    separator();
    body_ += text;
    return *this;
}

void OutputBundle::add(const std::string& filename, std::string content) {
    files_[filename] = std::move(content);
}

void OutputBundle::write_all(const std::string& directory) const {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw ArgumentError("cannot create output directory: " + directory);
    for (const auto& [name, content] : files_) {
        const std::filesystem::path path = std::filesystem::path(directory) / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ArgumentError("cannot open output file: " + path.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw NumericError("failed writing output file: " + path.string());
    }
}

std::string matrix_tsv(const Eigen::MatrixXd& m) {
    std::string body;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            body += (c ? "\t" : "") + format_double(m(r, c));
        body += "\n";
    }
    return body;
}

}  // namespace mit
