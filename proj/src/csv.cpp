#include "pairtrap/csv.hpp"

#include <algorithm>
#include <cstdio>

namespace pairtrap::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw Error("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
    out_ << "# " << key << ": " << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

void Manifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

bool Manifest::has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& kv) { return kv.first == key; });
}

const std::string& Manifest::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw Error("manifest: missing key '" + key + "'");
}

std::string Manifest::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

void Manifest::add_failure(const std::string& what) { failures_.push_back(what); }

void Manifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open manifest file: " + path);
    for (const auto& [k, v] : entries_) out << k << "=" << v << "\n";
    out << "failures=" << failures_.size() << "\n";
    for (std::size_t i = 0; i < failures_.size(); ++i)
        out << "failure." << i << "=" << failures_[i] << "\n";
}

Manifest Manifest::read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest file: " + path);
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key.rfind("failure.", 0) == 0) {
            m.failures_.push_back(value);
        } else if (key != "failures") {
            m.set(key, value);
        }
    }
    return m;
}

} // namespace pairtrap::io
