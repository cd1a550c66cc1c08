#pragma once

// Body JSON, report JSON/CSV, and small file helpers.

#include "dcl/harmonic.hpp"
#include "dcl/inequalities.hpp"

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcl {

struct TextLocation {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Malformed or schema-violating input. what() already includes the location when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::optional<TextLocation> where = {}, std::string pointer = {});
    const std::optional<TextLocation>& location() const noexcept { return where_; }
    /// JSON pointer to the offending value ("" for syntax errors).
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::optional<TextLocation> where_;
    std::string pointer_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses text as JSON; syntax errors become ParseError with line/column.
nlohmann::json parse_json_text(std::string_view text, std::string_view source = "<input>");
std::string read_text_file(const std::filesystem::path& path);
/// Writes atomically enough for our purposes: truncate, write, check the stream.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// {"a0": number, "harmonics": [[a1, b1], [a2, b2], ...]}
FourierProfile profile_from_json(const nlohmann::json& j, const std::string& pointer = "");
nlohmann::json profile_to_json(const FourierProfile& profile);
FourierProfile load_profile(const std::filesystem::path& path);

/// {"samples": [[theta, r], ...]} or a bare array of pairs.
std::vector<RadialSample> samples_from_json(const nlohmann::json& j);

/// %.17g, enough digits to round-trip.
std::string format_double(double v);

nlohmann::json parameters_to_json(const Parameters& p);
nlohmann::json report_to_json(const SlackReport& r);

std::string csv_header();
/// inequality_id,k,lambda,mu,alpha,lhs,rhs,slack,verdict,family
/// family: matched family name, "mismatch" for an equality outside the expected family, else empty.
std::string csv_row(const SlackReport& r);

/// Serialized the same way everywhere so artifacts compare byte for byte.
std::string dump_json(const nlohmann::json& j);

}  // namespace dcl
