// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/config.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include <filesystem>

namespace dkb {

namespace {

std::string_view trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string base_dir) {
    KeyValueConfig cfg;
    cfg.base_dir_ = std::move(base_dir);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        if (!is_skippable_line(line)) {
            std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
            }
            std::string key(trim(line.substr(0, eq)));
            std::string value(trim(line.substr(eq + 1)));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            }
            if (cfg.entries_.count(key)) {
                throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            }
            cfg.entries_.emplace(std::move(key), std::move(value));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::string text = read_file(path);
    return parse(text, std::filesystem::path(path).parent_path().string());
}

bool KeyValueConfig::has(std::string_view key) const {
    return entries_.find(std::string(key)) != entries_.end();
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string KeyValueConfig::get_or(std::string_view key, std::string_view fallback) const {
    auto v = get(key);
    return v ? *v : std::string(fallback);
}

std::string KeyValueConfig::require(std::string_view key) const {
    auto v = get(key);
    if (!v) {
        throw ConfigError("missing required config key '" + std::string(key) + "'");
    }
    return *v;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
    auto v = get(key);
    return v ? parse_double(*v, "config key '" + std::string(key) + "'") : fallback;
}

long long KeyValueConfig::get_int(std::string_view key, long long fallback) const {
    auto v = get(key);
    return v ? parse_int(*v, "config key '" + std::string(key) + "'") : fallback;
}

std::string KeyValueConfig::resolve_path(std::string_view key) const {
    return resolve(require(key));
}

std::string KeyValueConfig::resolve(std::string_view value) const {
    std::filesystem::path p{std::string(value)};
    if (p.is_absolute() || base_dir_.empty()) {
        return p.string();
    }
    return (std::filesystem::path(base_dir_) / p).string();
}

void KeyValueConfig::set(std::string key, std::string value) {
    entries_[std::move(key)] = std::move(value);
}

} // namespace dkb
