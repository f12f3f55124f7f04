#include "ehrelay/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ehrelay/errors.hpp"

namespace ehrelay {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ConfigError(what + ": cannot parse '" + text + "' as a number");
    }
    return v;
}

Point parse_point(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError(what + ": expected 'x,y', got '" + text + "'");
    }
    return {parse_double(text.substr(0, comma), what),
            parse_double(text.substr(comma + 1), what)};
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path);
}

ConfigMap ConfigMap::parse_text(const std::string& text, const std::string& origin) {
    ConfigMap cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        if (auto it = cfg.index_.find(key); it != cfg.index_.end()) {
            cfg.entries_[it->second.entry_index].second = value;
            it->second.line = line_no;
        } else {
            cfg.index_[key] = {cfg.entries_.size(), line_no};
            cfg.entries_.emplace_back(key, value);
        }
    }
    return cfg;
}

bool ConfigMap::contains(const std::string& key) const {
    return index_.count(key) != 0;
}

void ConfigMap::fail(const std::string& key, const std::string& message) const {
    const auto it = index_.find(key);
    if (it == index_.end()) {
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    }
    throw ConfigError(origin_ + ":" + std::to_string(it->second.line) + ": key '" + key + "': " +
                      message);
}

const std::string& ConfigMap::raw(const std::string& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) fail(key, "");
    return entries_[it->second.entry_index].second;
}

std::string ConfigMap::get_string(const std::string& key) const {
    return raw(key);
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
    return contains(key) ? raw(key) : fallback;
}

double ConfigMap::get_double(const std::string& key) const {
    try {
        return parse_double(raw(key), key);
    } catch (const ConfigError& e) {
        fail(key, e.what());
    }
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    return contains(key) ? get_double(key) : fallback;
}

std::int64_t ConfigMap::get_int(const std::string& key) const {
    const std::string t = raw(key);
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size()) fail(key, "cannot parse '" + t + "' as an integer");
    return v;
}

std::int64_t ConfigMap::get_int(const std::string& key, std::int64_t fallback) const {
    return contains(key) ? get_int(key) : fallback;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    if (!contains(key)) return fallback;
    const std::string v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(key, "expected a boolean, got '" + v + "'");
}

Point ConfigMap::get_point(const std::string& key, Point fallback) const {
    if (!contains(key)) return fallback;
    try {
        return parse_point(raw(key), key);
    } catch (const ConfigError& e) {
        fail(key, e.what());
    }
}

std::vector<std::string> ConfigMap::get_list(const std::string& key) const {
    std::vector<std::string> out;
    std::istringstream in(raw(key));
    std::string token;
    while (std::getline(in, token, ',')) {
        const std::string t = trim(token);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::vector<Point> ConfigMap::get_point_list(const std::string& key) const {
    std::vector<Point> out;
    std::istringstream in(raw(key));
    std::string token;
    while (std::getline(in, token, ';')) {
        const std::string t = trim(token);
        if (!t.empty()) out.push_back(parse_point(t, key));
    }
    if (out.empty()) fail(key, "expected at least one 'x,y' pair");
    return out;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
    if (auto it = index_.find(key); it != index_.end()) {
        entries_[it->second.entry_index].second = value;
    } else {
        index_[key] = {entries_.size(), 0};
        entries_.emplace_back(key, value);
    }
}

std::string ConfigMap::to_text() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries_) {
        out << key << " = " << value << "\n";
    }
    return out.str();
}

}  // namespace ehrelay
