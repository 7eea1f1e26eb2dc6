#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace mit {

// Deterministic text emitters: fixed field order, 17-significant-digit
// decimal floats, '\n' line endings. Files are buffered in memory and only
// written once the whole command has succeeded.
std::string format_double(double v);

class TsvWriter {
public:
    explicit TsvWriter(std::vector<std::string> columns);
    void row(const std::vector<std::string>& fields);
    std::string str() const { return body_; }

private:
    std::size_t width_;
    std::string body_;
};

// Minimal ordered JSON emitter (insertion order preserved).
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& raw(const std::string& text);
    std::string str() const { return body_ + "\n"; }

private:
    void separator();
    std::string body_;
    std::vector<bool> needs_comma_;
    bool after_key_ = false;
};

// Filename -> content map, flushed atomically at the end of a command.
class OutputBundle {
public:
    void add(const std::string& filename, std::string content);
    void write_all(const std::string& directory) const;
    const std::map<std::string, std::string>& files() const { return files_; }

private:
    std::map<std::string, std::string> files_;
};

std::string matrix_tsv(const Eigen::MatrixXd& m);

}  // namespace mit
