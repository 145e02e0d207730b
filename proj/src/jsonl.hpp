#pragma once

// Private helpers for the JSON-lines readers.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mcqg/error.hpp"

namespace mcqg::detail {

inline std::string located(std::string_view source, std::size_t line, std::string_view reason) {
    return std::string(source) + ":" + std::to_string(line) + ": " + std::string(reason);
}

[[noreturn]] inline void fail_at(ErrorKind kind, std::string_view source, std::size_t line,
                                 std::string_view reason) {
    throw Error(kind, located(source, line, reason));
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::WriteFailure, "cannot open " + path.string() + " for writing");
    return out;
}

inline bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

// Calls fn(record, line_number) for every non-blank line.
template <typename Fn>
void for_each_record(std::istream& in, std::string_view source, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail_at(ErrorKind::MalformedRecord, source, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) fail_at(ErrorKind::MalformedRecord, source, line_no, "record is not an object");
        fn(record, line_no);
    }
    if (in.bad()) throw Error(ErrorKind::Io, "read error in " + std::string(source));
}

inline const std::string& require_string(const nlohmann::json& record, const char* key, std::string_view source,
                                         std::size_t line) {
    const auto it = record.find(key);
    if (it == record.end() || !it->is_string()) {
        fail_at(ErrorKind::MalformedRecord, source, line, std::string("missing or non-string field \"") + key + "\"");
    }
    return it->get_ref<const std::string&>();
}

}  // namespace mcqg::detail
