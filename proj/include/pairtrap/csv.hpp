#pragma once

// Deterministic CSV emission ('#'-prefixed metadata, fixed 12-significant-
// digit floats) and the flat key=value run manifest.

#include "pairtrap/errors.hpp"

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace pairtrap::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// %.12g formatting: identical flags always give byte-identical output.
std::string format_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

    bool good() const { return out_.good(); }

private:
    std::ofstream out_;
};

/// Flat key=value run record; re-running from a manifest must reproduce
/// the CSV byte-identically.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value) { set(key, format_number(value)); }
    void set(const std::string& key, int value) { set(key, std::to_string(value)); }

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    void add_failure(const std::string& what);
    std::size_t failure_count() const { return failures_.size(); }

    void write(const std::string& path) const;
    static Manifest read(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::vector<std::string> failures_;
};

} // namespace pairtrap::io
