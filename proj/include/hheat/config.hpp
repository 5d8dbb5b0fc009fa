#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace hheat {

// Flat "key = value" configuration. Keys are dotted names such as
// problem.gamma or grid.nx; '#' starts a comment; later assignments win.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text, const std::string& origin = "<string>");

    void set(const std::string& key, const std::string& value);
    // "key=value" as given on the command line.
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list of numbers.
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    // Keys that were set but never read.
    std::vector<std::string> unused_keys() const;
    const std::string& origin() const { return origin_; }

private:
    std::string origin_ = "<empty>";
    std::map<std::string, std::string> entries_;
    mutable std::set<std::string> read_;
};

}  // namespace hheat
