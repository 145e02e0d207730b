#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "mcqg/corpus.hpp"

namespace mcqg {

enum class VocabTier { Beginner = 0, Intermediate = 1, Expert = 2 };

std::string_view to_string(VocabTier tier) noexcept;
std::optional<VocabTier> parse_vocab_tier(std::string_view s) noexcept;

// beginner 0.0, intermediate 0.5, expert 1.0
constexpr double tier_score(VocabTier tier) noexcept { return 0.5 * static_cast<int>(tier); }

class VocabLexicon {
public:
    // Keys are lower-cased; a repeated word throws InvalidArgument.
    void add(std::string_view word, VocabTier tier);
    std::optional<VocabTier> find(std::string_view lowered_word) const;

    std::size_t size() const noexcept { return tiers_.size(); }
    bool empty() const noexcept { return tiers_.empty(); }

private:
    std::unordered_map<std::string, VocabTier> tiers_;
};

// JSON lines {"word": str, "tier": "beginner"|"intermediate"|"expert"}.
VocabLexicon load_lexicon(const std::filesystem::path& path);
VocabLexicon read_lexicon(std::istream& in, std::string_view source = "<stream>");

inline constexpr double kNeutralVocabScore = 0.5;

struct VocabScore {
    double joint = kNeutralVocabScore;     // question + context + all options
    double question = kNeutralVocabScore;
    double context = kNeutralVocabScore;
    double options = kNeutralVocabScore;
    std::size_t matched_tokens = 0;        // in-lexicon tokens behind `joint`
};

// Average tier score over in-lexicon tokens; out-of-lexicon tokens are ignored
// and a field with no matches scores kNeutralVocabScore.
VocabScore vocab_score(const MCQExample& example, const VocabLexicon& lexicon);

struct ComplexityThresholds {
    double t1 = 0.0;  // easy / medium boundary
    double t2 = 1.0;  // medium / hard boundary
};

void validate(const ComplexityThresholds& th);

// easy below t1, medium in [t1, t2), hard from t2 up.
Difficulty classify_by_threshold(double score, const ComplexityThresholds& th);

struct TunedThresholds {
    ComplexityThresholds thresholds;
    double dev_accuracy = 0.0;
    std::size_t grid_points = 0;
};

inline constexpr double kDefaultGridStep = 0.01;

// Exhaustive search over t1 <= t2 on a [0, 1] grid maximizing accuracy; ties go
// to the smaller t1, then the smaller t2. Throws MissingDifficultyLabels.
TunedThresholds tune_thresholds(std::span<const MCQExample> dev, const VocabLexicon& lexicon,
                                double grid_step = kDefaultGridStep);
TunedThresholds tune_thresholds_on_scores(std::span<const double> scores, std::span<const Difficulty> labels,
                                          double grid_step = kDefaultGridStep);

}  // namespace mcqg
