#include "mcqg/vocab_complexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "jsonl.hpp"
#include "mcqg/error.hpp"
#include "mcqg/text.hpp"

namespace mcqg {

std::string_view to_string(VocabTier tier) noexcept {
    switch (tier) {
        case VocabTier::Beginner: return "beginner";
        case VocabTier::Intermediate: return "intermediate";
        case VocabTier::Expert: return "expert";
    }
    return "?";
}

std::optional<VocabTier> parse_vocab_tier(std::string_view s) noexcept {
    if (s == "beginner") return VocabTier::Beginner;
    if (s == "intermediate") return VocabTier::Intermediate;
    if (s == "expert") return VocabTier::Expert;
    return std::nullopt;
}

void VocabLexicon::add(std::string_view word, VocabTier tier) {
    auto key = text::to_lower_ascii(text::trim(word));
    if (key.empty()) throw Error(ErrorKind::InvalidArgument, "empty lexicon word");
    if (!tiers_.emplace(key, tier).second) throw Error(ErrorKind::InvalidArgument, "duplicate lexicon word " + key);
}

std::optional<VocabTier> VocabLexicon::find(std::string_view lowered_word) const {
    const auto it = tiers_.find(std::string(lowered_word));
    if (it == tiers_.end()) return std::nullopt;
    return it->second;
}

VocabLexicon read_lexicon(std::istream& in, std::string_view source) {
    VocabLexicon lexicon;
    detail::for_each_record(in, source, [&](const nlohmann::json& record, std::size_t line) {
        const auto& word = detail::require_string(record, "word", source, line);
        const auto& tier_name = detail::require_string(record, "tier", source, line);
        const auto tier = parse_vocab_tier(tier_name);
        if (!tier) detail::fail_at(ErrorKind::MalformedRecord, source, line, "unknown tier \"" + tier_name + "\"");
        try {
            lexicon.add(word, *tier);
        } catch (const Error& e) {
            detail::fail_at(ErrorKind::MalformedRecord, source, line, e.detail());
        }
    });
    return lexicon;
}

VocabLexicon load_lexicon(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    return read_lexicon(in, path.string());
}

namespace {

// Tier sums are kept in half-units so averages are exact and order-free.
struct TierTally {
    std::size_t half_units = 0;
    std::size_t matched = 0;

    void add(std::string_view textual, const VocabLexicon& lexicon) {
        for (const auto& token : text::tokenize(textual)) {
            if (const auto tier = lexicon.find(token)) {
                half_units += static_cast<std::size_t>(*tier);
                ++matched;
            }
        }
    }

    double average() const {
        if (matched == 0) return kNeutralVocabScore;
        return static_cast<double>(half_units) / (2.0 * static_cast<double>(matched));
    }
};

}  // namespace

VocabScore vocab_score(const MCQExample& example, const VocabLexicon& lexicon) {
    if (lexicon.empty()) throw Error(ErrorKind::InvalidArgument, "vocabulary lexicon is empty");
    TierTally question;
    TierTally context;
    TierTally options;
    question.add(example.question, lexicon);
    context.add(example.context, lexicon);
    for (const auto& opt : example.options) options.add(opt, lexicon);

    TierTally joint;
    joint.half_units = question.half_units + context.half_units + options.half_units;
    joint.matched = question.matched + context.matched + options.matched;

    VocabScore score;
    score.joint = joint.average();
    score.question = question.average();
    score.context = context.average();
    score.options = options.average();
    score.matched_tokens = joint.matched;
    return score;
}

void validate(const ComplexityThresholds& th) {
    if (!(0.0 <= th.t1 && th.t1 <= th.t2 && th.t2 <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "thresholds must satisfy 0 <= t1 <= t2 <= 1");
    }
}

Difficulty classify_by_threshold(double score, const ComplexityThresholds& th) {
    if (score < th.t1) return Difficulty::Easy;
    if (score < th.t2) return Difficulty::Medium;
    return Difficulty::Hard;
}

TunedThresholds tune_thresholds_on_scores(std::span<const double> scores, std::span<const Difficulty> labels,
                                          double grid_step) {
    if (!(grid_step > 0.0 && grid_step <= 0.1)) throw Error(ErrorKind::InvalidArgument, "grid step must be in (0, 0.1]");
    if (scores.size() != labels.size()) throw Error(ErrorKind::LengthMismatch, "scores and labels differ in length");
    if (scores.empty()) throw Error(ErrorKind::MissingDifficultyLabels, "no labeled dev examples");

    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(std::floor(1.0 / grid_step + 1e-9));
    // k / n keeps 0.07 from printing as 0.07000000000000001 when the step divides 1.
    const bool divides_unit = std::abs(static_cast<double>(steps) * grid_step - 1.0) < 1e-9;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double g = divides_unit ? static_cast<double>(k) / static_cast<double>(steps)
                                      : static_cast<double>(k) * grid_step;
        grid.push_back(std::min(1.0, g));
    }
    if (grid.back() < 1.0) grid.push_back(1.0);

    std::array<std::vector<double>, 3> by_class;
    for (std::size_t i = 0; i < scores.size(); ++i) by_class[static_cast<std::size_t>(labels[i])].push_back(scores[i]);
    for (auto& v : by_class) std::sort(v.begin(), v.end());

    // below[c][g]: examples of class c with score < grid[g]
    std::array<std::vector<std::size_t>, 3> below;
    for (std::size_t c = 0; c < 3; ++c) {
        for (double g : grid) {
            below[c].push_back(
                static_cast<std::size_t>(std::lower_bound(by_class[c].begin(), by_class[c].end(), g) - by_class[c].begin()));
        }
    }
    const std::size_t hard_total = by_class[2].size();

    std::size_t best_correct = 0;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    bool found = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const std::size_t correct = below[0][i] + (below[1][j] - below[1][i]) + (hard_total - below[2][j]);
            if (!found || correct > best_correct) {
                best_correct = correct;
                best_i = i;
                best_j = j;
                found = true;
            }
        }
    }

    TunedThresholds out;
    out.thresholds = {grid[best_i], grid[best_j]};
    out.dev_accuracy = static_cast<double>(best_correct) / static_cast<double>(scores.size());
    out.grid_points = grid.size();
    return out;
}

TunedThresholds tune_thresholds(std::span<const MCQExample> dev, const VocabLexicon& lexicon, double grid_step) {
    std::vector<double> scores;
    std::vector<Difficulty> labels;
    for (const auto& ex : dev) {
        if (!ex.difficulty) {
            throw Error(ErrorKind::MissingDifficultyLabels, "example " + ex.example_id + " has no difficulty label");
        }
        scores.push_back(vocab_score(ex, lexicon).joint);
        labels.push_back(*ex.difficulty);
    }
    return tune_thresholds_on_scores(scores, labels, grid_step);
}

}  // namespace mcqg
