#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ehrelay/geometry.hpp"

namespace ehrelay {

// Flat `key = value` configuration text with `#` comments. Later
// assignments override earlier ones, so files can be layered. Entries
// keep insertion order so a resolved configuration serializes back to a
// stable, diffable block.
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_text(const std::string& text, const std::string& origin = "<config>");

    bool contains(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    Point get_point(const std::string& key, Point fallback) const;

    // Comma-separated list of tokens.
    std::vector<std::string> get_list(const std::string& key) const;
    // Semicolon-separated list of `x,y` pairs.
    std::vector<Point> get_point_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    // The full configuration as `key = value` lines.
    std::string to_text() const;

private:
    struct Location {
        std::size_t entry_index;
        int line;
    };

    std::string origin_ = "<config>";
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, Location> index_;

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;
    const std::string& raw(const std::string& key) const;
};

double parse_double(const std::string& text, const std::string& what);
Point parse_point(const std::string& text, const std::string& what);

}  // namespace ehrelay
