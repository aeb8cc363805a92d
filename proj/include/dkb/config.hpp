// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace dkb {

/// Plain-text `key=value` configuration file. `#` comments and blank lines
/// are skipped; keys are unique; values keep inner whitespace but are
/// trimmed at both ends. Relative paths in values resolve against the
/// directory of the file they were read from.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(std::string_view text, std::string base_dir = "");
    static KeyValueConfig load(const std::string& path);

    bool has(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;
    std::string get_or(std::string_view key, std::string_view fallback) const;
    /// Throws ConfigError when the key is absent.
    std::string require(std::string_view key) const;

    double get_double(std::string_view key, double fallback) const;
    long long get_int(std::string_view key, long long fallback) const;

    /// Value of `key` resolved against the config file's directory.
    /// Absolute values pass through unchanged.
    std::string resolve_path(std::string_view key) const;
    std::string resolve(std::string_view value) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    const std::string& base_dir() const { return base_dir_; }

    void set(std::string key, std::string value);

private:
    std::map<std::string, std::string> entries_;
    std::string base_dir_;
};

} // namespace dkb
