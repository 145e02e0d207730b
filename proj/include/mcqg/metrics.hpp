#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcqg/predictions.hpp"

namespace mcqg {

enum class EntropyBase { Nats, Bits };

std::string_view to_string(EntropyBase base) noexcept;
std::optional<EntropyBase> parse_entropy_base(std::string_view s) noexcept;

// Shannon entropy with 0 log 0 = 0. Throws InvalidDistribution unless p is a
// distribution within kRowSumTolerance.
double entropy(std::span<const double> p, EntropyBase base);

// Mean of the member entropies (not the entropy of the mean).
double expected_entropy(const EnsemblePrediction& p, EntropyBase base);

// A per-question score vector and its mean, kept together so aggregates can be audited.
struct ScoredSet {
    double mean = 0.0;
    std::vector<std::string> ids;
    std::vector<double> per_question;
};

// Mean expected entropy over `ids`. Throws MissingPrediction, EmptyQuestionSet.
ScoredSet unanswerability(const PredictionSet& set, std::span<const std::string> ids, EntropyBase base);

// ---------------------------------------------------------------------------
// Question-type diversity

enum class QuestionType { What, Who, When, Where, Why, How, Which, YesNo, Other };
enum class StandaloneClass { Standalone, PassageDependent };
enum class DiversityScheme { EightWay, Binary };

std::string_view to_string(QuestionType t) noexcept;
std::string_view to_string(StandaloneClass c) noexcept;
std::string_view to_string(DiversityScheme s) noexcept;
std::optional<DiversityScheme> parse_diversity_scheme(std::string_view s) noexcept;

// First wh-word anywhere in the question wins (whom/whose count as who); failing
// that, a leading auxiliary verb makes it yes/no. Throws EmptyQuestion.
QuestionType classify_question_type(std::string_view question);

// Passage-dependent iff the token "passage" occurs. Throws EmptyQuestion.
StandaloneClass classify_standalone(std::string_view question);

struct DiversityResult {
    double value_bits = 0.0;
    DiversityScheme scheme = DiversityScheme::Binary;
    // Every class of the scheme in declaration order, including zero counts.
    std::vector<std::pair<std::string, std::size_t>> histogram;
};

// Entropy in bits of the empirical question-class distribution. Throws EmptyQuestionSet.
DiversityResult diversity(std::span<const std::string> questions, DiversityScheme scheme);

// ---------------------------------------------------------------------------
// Complexity

// 0.0 * p_easy + 0.5 * p_medium + 1.0 * p_hard over the ensemble mean.
// Throws LabelSpaceMismatch for anything but [easy, medium, hard].
double complexity_score(const EnsemblePrediction& p);

ScoredSet mean_complexity(const PredictionSet& set, std::span<const std::string> ids);

// ---------------------------------------------------------------------------
// Grammar

// Rule-based fallback, NOT equivalent to a real grammatical error checker:
// one error each for a missing leading capital, a missing trailing "?",
// unbalanced double quotes and unbalanced brackets.
int naive_grammar_errors(std::string_view question);

// Total errors per question. Throws EmptyQuestionSet when n_questions is 0.
double grammar_rate(std::span<const int> error_counts, std::size_t n_questions);

// External checker report, JSON lines {"question_id": str, "errors": int}.
std::map<std::string, int> load_grammar_report(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Classification metrics for the complexity baselines

double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth);

// Unweighted mean of per-class F1; a class with undefined precision or recall
// contributes 0 for that term. Throws LengthMismatch, UnknownLabel.
double macro_f1(std::span<const std::string> predicted, std::span<const std::string> truth,
                std::span<const std::string> classes);

}  // namespace mcqg
