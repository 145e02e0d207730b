#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcqg {

enum class Split { Trn, Dev, Evl };

// RACE-M / RACE-H / RACE-C map onto easy / medium / hard.
enum class Difficulty { Easy = 0, Medium = 1, Hard = 2 };

inline constexpr std::array<Difficulty, 3> kDifficulties{Difficulty::Easy, Difficulty::Medium,
                                                         Difficulty::Hard};

std::string_view to_string(Split split) noexcept;
std::string_view to_string(Difficulty d) noexcept;
std::optional<Split> parse_split(std::string_view s) noexcept;
std::optional<Difficulty> parse_difficulty(std::string_view s) noexcept;

struct MCQExample {
    std::string example_id;
    std::string context_id;
    std::string context;
    std::string question;
    std::vector<std::string> options;
    std::size_t correct_index = 0;
    Split split = Split::Evl;
    std::optional<Difficulty> difficulty;
};

// Reads a JSON-lines dataset. Blank lines are skipped; any invalid record
// aborts the whole load with its line number.
std::vector<MCQExample> load_dataset(const std::filesystem::path& path, Split split);
std::vector<MCQExample> read_dataset(std::istream& in, Split split, std::string_view source = "<stream>");

// Serializes examples in the dataset schema; answer letters come from correct_index.
void write_dataset(std::span<const MCQExample> examples, std::ostream& out);
void write_dataset(std::span<const MCQExample> examples, const std::filesystem::path& path);

struct SubsetCounts {
    std::size_t questions = 0;
    std::size_t contexts = 0;
};

// Table-1 style counts for one split, indexed by Difficulty.
struct SplitStats {
    std::array<SubsetCounts, 3> subsets{};
    std::size_t unlabeled_questions = 0;

    const SubsetCounts& operator[](Difficulty d) const { return subsets[static_cast<std::size_t>(d)]; }
    std::size_t total_questions() const;
    std::size_t total_contexts() const;
};

SplitStats compute_split_stats(std::span<const MCQExample> examples);

// ---------------------------------------------------------------------------
// Generated sequences: "question [SEP] option1 [SEP] option2 ...".

inline constexpr std::string_view kDefaultSeparator = "[SEP]";

enum class ParseStatus { Ok, TooFewSegments, EmptySegment };

std::string_view to_string(ParseStatus status) noexcept;

struct GeneratedOutput {
    std::string context_id;
    std::string raw;
    std::string question;
    std::vector<std::string> options;  // first option is the asserted answer
    ParseStatus parse_status = ParseStatus::TooFewSegments;

    bool ok() const noexcept { return parse_status == ParseStatus::Ok; }
};

GeneratedOutput parse_generated(std::string_view raw, std::string_view separator = kDefaultSeparator);

// Inverse of parse_generated for segments that do not contain the separator.
std::string join_generated(std::string_view question, std::span<const std::string> options,
                           std::string_view separator = kDefaultSeparator);

// Generated-output file: JSON lines {"context_id": str, "raw": str}.
std::vector<GeneratedOutput> load_generations(const std::filesystem::path& path,
                                              std::string_view separator = kDefaultSeparator);
std::vector<GeneratedOutput> read_generations(std::istream& in, std::string_view separator = kDefaultSeparator,
                                              std::string_view source = "<stream>");

// Distinct entries after whitespace trimming, case-sensitive.
std::size_t count_distinct_options(std::span<const std::string> options);

// Distinct options after whitespace trimming, case-sensitive. Throws NotParsed.
std::size_t unique_option_count(const GeneratedOutput& g);

}  // namespace mcqg
