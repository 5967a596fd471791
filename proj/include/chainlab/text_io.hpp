#pragma once

// Number formatting, small string helpers, CSV emission and the flat
// "key = value" config format with dotted sections.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chainlab {

/// Shortest round-trip decimal form.
[[nodiscard]] std::string format_double(double x);

/// Strict parse; throws std::invalid_argument on trailing garbage.
[[nodiscard]] double parse_double(std::string_view s);
[[nodiscard]] long long parse_int(std::string_view s);

[[nodiscard]] std::string trim(std::string_view s);
[[nodiscard]] std::vector<std::string> split(std::string_view s, char sep);

/// Row-oriented CSV writer: mandatory header, LF endings, no quoting
/// (all fields are numeric or simple identifiers).
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void row(const std::vector<std::string>& fields);
    [[nodiscard]] const std::string& str() const noexcept { return body_; }
    void save(const std::filesystem::path& path) const;

private:
    std::size_t width_;
    std::string body_;
};

struct ConfigEntry {
    std::string value;
    int line = 0;
};

/// Parsed config: dotted keys ("ic.kind") to values with source line numbers.
/// Lines are "key = value"; "[section]" prefixes subsequent keys with
/// "section."; '#' starts a comment.
class Config {
public:
    [[nodiscard]] static Config parse(std::string_view text);
    [[nodiscard]] static Config load(const std::filesystem::path& path);

    [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) != 0; }
    [[nodiscard]] const std::string& get(const std::string& key) const;
    [[nodiscard]] std::string get_or(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] int line_of(const std::string& key) const;

    /// All entries "prefix.x" with the prefix stripped.
    [[nodiscard]] std::map<std::string, std::string> section(const std::string& prefix) const;
    [[nodiscard]] const std::map<std::string, ConfigEntry>& entries() const noexcept { return entries_; }

    void set(const std::string& key, std::string value) { entries_[key] = {std::move(value), 0}; }

private:
    std::map<std::string, ConfigEntry> entries_;
};

/// Error carrying the offending config key and line for diagnostics.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, int line, const std::string& what);
    [[nodiscard]] const std::string& key() const noexcept { return key_; }
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

}  // namespace chainlab
