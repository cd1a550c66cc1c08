#include "dcl/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace dcl {

using nlohmann::json;

namespace {

std::string with_location(const std::string& message, const std::optional<TextLocation>& where,
                          const std::string& pointer) {
    if (where) {
        return fmt::format("{} (line {}, column {})", message, where->line, where->column);
    }
    if (!pointer.empty()) {
        return fmt::format("{} (at {})", message, pointer);
    }
    return message;
}

TextLocation locate(std::string_view text, std::size_t byte) {
    TextLocation loc;
    byte = std::min(byte, text.size());
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

double number_at(const json& j, const std::string& pointer) {
    if (!j.is_number()) {
        throw ParseError("expected a number", {}, pointer);
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ParseError("expected a finite number", {}, pointer);
    }
    return v;
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string optional_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

}  // namespace

ParseError::ParseError(const std::string& message, std::optional<TextLocation> where, std::string pointer)
    : std::runtime_error(with_location(message, where, pointer)), where_(where), pointer_(std::move(pointer)) {}

json parse_json_text(std::string_view text, std::string_view source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character
        const auto loc = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(fmt::format("{}: malformed JSON", source), loc);
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError(fmt::format("cannot read {}", path.string()));
    }
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot write {}", path.string()));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw IoError(fmt::format("write failed for {}", path.string()));
    }
}

FourierProfile profile_from_json(const json& j, const std::string& pointer) {
    if (!j.is_object()) {
        throw ParseError("body must be a JSON object", {}, pointer.empty() ? "/" : pointer);
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "a0" && key != "harmonics") {
            throw ParseError(fmt::format("unknown body field \"{}\"", key), {}, pointer + "/" + key);
        }
    }
    if (!j.contains("a0")) {
        throw ParseError("body is missing \"a0\"", {}, pointer.empty() ? "/" : pointer);
    }
    const double a0 = number_at(j.at("a0"), pointer + "/a0");
    std::vector<Harmonic> harmonics;
    if (j.contains("harmonics")) {
        const auto& list = j.at("harmonics");
        if (!list.is_array()) {
            throw ParseError("\"harmonics\" must be an array of [a, b] pairs", {}, pointer + "/harmonics");
        }
        harmonics.reserve(list.size());
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto at = fmt::format("{}/harmonics/{}", pointer, i);
            const auto& pair = list[i];
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("harmonic entry must be a pair [a, b]", {}, at);
            }
            harmonics.push_back({number_at(pair[0], at + "/0"), number_at(pair[1], at + "/1")});
        }
    }
    return FourierProfile(a0, std::move(harmonics));
}

json profile_to_json(const FourierProfile& profile) {
    json harmonics = json::array();
    for (const auto& h : profile.harmonics()) {
        harmonics.push_back(json::array({h.a, h.b}));
    }
    return json{{"a0", profile.a0()}, {"harmonics", std::move(harmonics)}};
}

FourierProfile load_profile(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    return profile_from_json(parse_json_text(text, path.string()));
}

std::vector<RadialSample> samples_from_json(const json& j) {
    const json* list = &j;
    std::string base;
    if (j.is_object()) {
        if (!j.contains("samples")) {
            throw ParseError("expected a \"samples\" array", {}, "/");
        }
        list = &j.at("samples");
        base = "/samples";
    }
    if (!list->is_array()) {
        throw ParseError("samples must be an array of [theta, r] pairs", {}, base.empty() ? "/" : base);
    }
    std::vector<RadialSample> out;
    out.reserve(list->size());
    for (std::size_t i = 0; i < list->size(); ++i) {
        const auto at = fmt::format("{}/{}", base, i);
        const auto& pair = (*list)[i];
        if (!pair.is_array() || pair.size() != 2) {
            throw ParseError("sample must be a pair [theta, r]", {}, at);
        }
        out.push_back({number_at(pair[0], at + "/0"), number_at(pair[1], at + "/1")});
    }
    return out;
}

std::string format_double(double v) {
    return fmt::format("{:.17g}", v);
}

json parameters_to_json(const Parameters& p) {
    return json{{"k", p.k ? json(*p.k) : json(nullptr)},
                {"lambda", optional_number(p.lambda)},
                {"mu", optional_number(p.mu)},
                {"alpha", optional_number(p.alpha)}};
}

json report_to_json(const SlackReport& r) {
    return json{
        {"inequality_id", to_string(r.id)},
        {"parameters", parameters_to_json(r.params)},
        {"lhs", r.lhs},
        {"rhs", r.rhs},
        {"slack", r.slack},
        {"verdict", to_string(r.verdict)},
        {"tolerance", r.tolerance},
        {"expected_family", r.expected_family ? json(to_string(*r.expected_family)) : json(nullptr)},
        {"equality_family_match",
         r.equality_family_match ? json(to_string(*r.equality_family_match)) : json(nullptr)},
        {"family_mismatch", r.family_mismatch()},
        {"method", to_string(r.method)},
        {"oracle_residual", optional_number(r.oracle_residual)},
        {"out_of_range", r.out_of_range},
    };
}

std::string csv_header() {
    return "inequality_id,k,lambda,mu,alpha,lhs,rhs,slack,verdict,family";
}

std::string csv_row(const SlackReport& r) {
    std::string family;
    if (r.equality_family_match) {
        family = to_string(*r.equality_family_match);
    } else if (r.family_mismatch()) {
        family = "mismatch";
    }
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", to_string(r.id), r.params.k ? std::to_string(*r.params.k) : "",
                       optional_cell(r.params.lambda), optional_cell(r.params.mu), optional_cell(r.params.alpha),
                       format_double(r.lhs), format_double(r.rhs), format_double(r.slack), to_string(r.verdict),
                       family);
}

std::string dump_json(const json& j) {
    return j.dump(2) + "\n";
}

}  // namespace dcl
