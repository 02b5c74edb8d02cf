#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kglp {

// Invalid or inconsistent configuration. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unrecoverable input problem (bad encoding, missing file, unknown predicate).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite parameter produced during SGD.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Byte offset of the first invalid UTF-8 sequence, or nullopt if valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

// FNV-1a, used for seed derivation tags and artifact content hashes.
std::uint64_t fnv1a64(std::string_view bytes);

// Quotes a CSV field only when it contains a separator, quote, or newline.
std::string csv_field(std::string_view s);

// Splits one CSV line into fields, honoring double-quote escaping as
// produced by csv_field. The line must not contain the record separator.
std::vector<std::string> parse_csv_line(std::string_view line);

// Shortest round-trip decimal form ("%.17g" trimmed); CSV files use this so
// parsing a value back yields the identical double.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace kglp
