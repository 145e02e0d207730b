#include "mcqg/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "jsonl.hpp"
#include "mcqg/error.hpp"
#include "mcqg/text.hpp"

namespace mcqg {

using nlohmann::json;

std::string_view to_string(Split split) noexcept {
    switch (split) {
        case Split::Trn: return "Trn";
        case Split::Dev: return "Dev";
        case Split::Evl: return "Evl";
    }
    return "?";
}

std::string_view to_string(Difficulty d) noexcept {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Medium: return "medium";
        case Difficulty::Hard: return "hard";
    }
    return "?";
}

std::optional<Split> parse_split(std::string_view s) noexcept {
    const auto lower = text::to_lower_ascii(s);
    if (lower == "trn" || lower == "train") return Split::Trn;
    if (lower == "dev") return Split::Dev;
    if (lower == "evl" || lower == "test") return Split::Evl;
    return std::nullopt;
}

std::optional<Difficulty> parse_difficulty(std::string_view s) noexcept {
    if (s == "easy") return Difficulty::Easy;
    if (s == "medium") return Difficulty::Medium;
    if (s == "hard") return Difficulty::Hard;
    return std::nullopt;
}

std::string_view to_string(ParseStatus status) noexcept {
    switch (status) {
        case ParseStatus::Ok: return "Ok";
        case ParseStatus::TooFewSegments: return "TooFewSegments";
        case ParseStatus::EmptySegment: return "EmptySegment";
    }
    return "?";
}

namespace {

MCQExample parse_example(const json& record, Split split, std::string_view source, std::size_t line) {
    using detail::fail_at;
    using detail::require_string;

    MCQExample ex;
    ex.split = split;
    ex.example_id = require_string(record, "example_id", source, line);
    ex.context_id = require_string(record, "context_id", source, line);
    ex.context = require_string(record, "context", source, line);
    ex.question = require_string(record, "question", source, line);

    const auto options = record.find("options");
    if (options == record.end() || !options->is_array()) {
        fail_at(ErrorKind::MalformedRecord, source, line, "missing or non-array field \"options\"");
    }
    for (const auto& opt : *options) {
        if (!opt.is_string()) fail_at(ErrorKind::MalformedRecord, source, line, "non-string option");
        ex.options.push_back(opt.get<std::string>());
    }
    if (ex.options.size() < 2) fail_at(ErrorKind::MalformedRecord, source, line, "fewer than 2 options");
    if (text::trim(ex.question).empty()) fail_at(ErrorKind::MalformedRecord, source, line, "empty question");
    if (text::trim(ex.context).empty()) fail_at(ErrorKind::MalformedRecord, source, line, "empty context");

    const auto& answer = require_string(record, "answer", source, line);
    if (answer.size() != 1 || answer[0] < 'A' || answer[0] > 'D') {
        fail_at(ErrorKind::UnknownAnswerLetter, source, line, "answer \"" + answer + "\" is not one of A-D");
    }
    ex.correct_index = static_cast<std::size_t>(answer[0] - 'A');
    if (ex.correct_index >= ex.options.size()) {
        fail_at(ErrorKind::MalformedRecord, source, line,
                "answer " + answer + " out of range for " + std::to_string(ex.options.size()) + " options");
    }

    if (const auto diff = record.find("difficulty"); diff != record.end() && !diff->is_null()) {
        if (!diff->is_string()) fail_at(ErrorKind::MalformedRecord, source, line, "non-string difficulty");
        ex.difficulty = parse_difficulty(diff->get_ref<const std::string&>());
        if (!ex.difficulty) {
            fail_at(ErrorKind::MalformedRecord, source, line,
                    "difficulty \"" + diff->get<std::string>() + "\" is not easy/medium/hard");
        }
    }
    return ex;
}

}  // namespace

std::vector<MCQExample> read_dataset(std::istream& in, Split split, std::string_view source) {
    std::vector<MCQExample> examples;
    std::unordered_set<std::string> seen;
    detail::for_each_record(in, source, [&](const json& record, std::size_t line) {
        auto ex = parse_example(record, split, source, line);
        if (!seen.insert(ex.example_id).second) {
            detail::fail_at(ErrorKind::DuplicateExampleId, source, line, "duplicate example_id " + ex.example_id);
        }
        examples.push_back(std::move(ex));
    });
    return examples;
}

std::vector<MCQExample> load_dataset(const std::filesystem::path& path, Split split) {
    auto in = detail::open_input(path);
    return read_dataset(in, split, path.string());
}

void write_dataset(std::span<const MCQExample> examples, std::ostream& out) {
    for (const auto& ex : examples) {
        nlohmann::ordered_json record;
        record["example_id"] = ex.example_id;
        record["context_id"] = ex.context_id;
        record["context"] = ex.context;
        record["question"] = ex.question;
        record["options"] = ex.options;
        record["answer"] = std::string(1, static_cast<char>('A' + ex.correct_index));
        if (ex.difficulty) record["difficulty"] = std::string(to_string(*ex.difficulty));
        out << record.dump() << '\n';
    }
}

void write_dataset(std::span<const MCQExample> examples, const std::filesystem::path& path) {
    auto out = detail::open_output(path);
    write_dataset(examples, out);
    out.flush();
    if (!out) throw Error(ErrorKind::WriteFailure, "failed writing " + path.string());
}

std::size_t SplitStats::total_questions() const {
    std::size_t n = 0;
    for (const auto& s : subsets) n += s.questions;
    return n;
}

std::size_t SplitStats::total_contexts() const {
    std::size_t n = 0;
    for (const auto& s : subsets) n += s.contexts;
    return n;
}

SplitStats compute_split_stats(std::span<const MCQExample> examples) {
    SplitStats stats;
    std::array<std::unordered_set<std::string>, 3> contexts;
    for (const auto& ex : examples) {
        if (!ex.difficulty) {
            ++stats.unlabeled_questions;
            continue;
        }
        const auto idx = static_cast<std::size_t>(*ex.difficulty);
        ++stats.subsets[idx].questions;
        contexts[idx].insert(ex.context_id);
    }
    for (std::size_t i = 0; i < contexts.size(); ++i) stats.subsets[i].contexts = contexts[i].size();
    return stats;
}

GeneratedOutput parse_generated(std::string_view raw, std::string_view separator) {
    if (separator.empty()) throw Error(ErrorKind::InvalidArgument, "separator must be non-empty");

    std::vector<std::string> segments;
    std::size_t start = 0;
    while (true) {
        const auto hit = raw.find(separator, start);
        const auto piece = raw.substr(start, hit == std::string_view::npos ? std::string_view::npos : hit - start);
        segments.emplace_back(text::trim(piece));
        if (hit == std::string_view::npos) break;
        start = hit + separator.size();
    }

    GeneratedOutput g;
    g.raw = std::string(raw);
    g.question = std::move(segments.front());
    g.options.assign(std::make_move_iterator(segments.begin() + 1), std::make_move_iterator(segments.end()));

    if (g.options.empty()) {
        g.parse_status = ParseStatus::TooFewSegments;
    } else if (g.question.empty() ||
               std::any_of(g.options.begin(), g.options.end(), [](const auto& o) { return o.empty(); })) {
        g.parse_status = ParseStatus::EmptySegment;
    } else {
        g.parse_status = ParseStatus::Ok;
    }
    return g;
}

std::string join_generated(std::string_view question, std::span<const std::string> options,
                           std::string_view separator) {
    std::string out(question);
    for (const auto& opt : options) {
        out += ' ';
        out += separator;
        out += ' ';
        out += opt;
    }
    return out;
}

std::vector<GeneratedOutput> read_generations(std::istream& in, std::string_view separator,
                                              std::string_view source) {
    std::vector<GeneratedOutput> gens;
    std::unordered_set<std::string> seen;
    detail::for_each_record(in, source, [&](const json& record, std::size_t line) {
        const auto& context_id = detail::require_string(record, "context_id", source, line);
        if (!seen.insert(context_id).second) {
            detail::fail_at(ErrorKind::DuplicateQuestionId, source, line, "second generation for context " + context_id);
        }
        const auto& raw = detail::require_string(record, "raw", source, line);
        auto g = parse_generated(raw, separator);
        g.context_id = context_id;
        gens.push_back(std::move(g));
    });
    return gens;
}

std::vector<GeneratedOutput> load_generations(const std::filesystem::path& path, std::string_view separator) {
    auto in = detail::open_input(path);
    return read_generations(in, separator, path.string());
}

std::size_t unique_option_count(const GeneratedOutput& g) {
    if (!g.ok()) {
        throw Error(ErrorKind::NotParsed,
                    "generation for context " + g.context_id + " has status " + std::string(to_string(g.parse_status)));
    }
    return count_distinct_options(g.options);
}

std::size_t count_distinct_options(std::span<const std::string> options) {
    std::set<std::string_view> distinct;
    for (const auto& opt : options) distinct.insert(text::trim(opt));
    return distinct.size();
}

}  // namespace mcqg
