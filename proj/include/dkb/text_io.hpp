// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dkb {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

/// Fixed-point form with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);

/// `%.*g`-style form with `digits` significant digits.
std::string format_sig(double v, int digits);

/// Strict double parse; the whole token must be consumed and the value finite.
/// Throws ParseError naming `context` otherwise.
double parse_double(std::string_view token, std::string_view context);

/// Strict non-negative integer parse.
long long parse_int(std::string_view token, std::string_view context);

/// Split a line at tab characters. Empty fields are preserved.
std::vector<std::string_view> split_tsv(std::string_view line);

/// True for lines that TSV readers skip: empty, whitespace-only, or `#`-prefixed.
bool is_skippable_line(std::string_view line);

/// Read a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

/// Write a whole file; throws Error if it cannot be opened.
void write_file(const std::string& path, std::string_view content);

/// Iterate data lines of TSV `text`, invoking `fn(line_number, fields)`.
/// Line numbers are 1-based and count every physical line.
void for_each_tsv_line(std::string_view text,
                       const std::function<void(std::size_t, const std::vector<std::string_view>&)>& fn);

} // namespace dkb
