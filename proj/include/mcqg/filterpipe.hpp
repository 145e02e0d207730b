#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcqg/corpus.hpp"
#include "mcqg/predictions.hpp"

namespace mcqg {

// per_member: every ensemble member's argmax must hit the target.
// mean: the argmax of the ensemble-mean distribution must hit it.
enum class AgreementMode { PerMemberArgmax, MeanArgmax };

std::string_view to_string(AgreementMode mode) noexcept;
std::optional<AgreementMode> parse_agreement_mode(std::string_view s) noexcept;

// Index of the largest entry, lowest index on ties.
std::size_t argmax(std::span<const double> values);

// Exactly four options, all distinct after trimming. Throws NotParsed.
bool check_four_options(const GeneratedOutput& g);

bool ensemble_agrees(const EnsemblePrediction& p, std::size_t target, AgreementMode mode);

// The ensemble picks option A. Throws LabelSpaceMismatch for non-[A,B,C,D] labels.
bool ensemble_first_agreement(const EnsemblePrediction& p, AgreementMode mode = AgreementMode::PerMemberArgmax);

struct FilterOutcome {
    std::string question_id;
    bool parsed = false;
    bool four_unique = false;
    bool ensemble_agrees_first = false;
    bool kept = false;
};

struct FilterSummary {
    std::size_t n_input = 0;
    std::size_t n_parsed = 0;
    std::size_t n_four_opt = 0;
    std::size_t n_agree = 0;
    std::size_t n_kept = 0;
    AgreementMode mode = AgreementMode::PerMemberArgmax;

    // Rates over an empty denominator are undefined.
    std::optional<double> four_opt_rate() const;         // over all inputs
    std::optional<double> four_opt_rate_parsed() const;  // over parseable inputs
    std::optional<double> accuracy() const;              // agreeing / four-option
};

struct FilterResult {
    std::vector<FilterOutcome> outcomes;
    std::vector<GeneratedOutput> kept;  // input order
    FilterSummary summary;
};

// Generations are keyed by context_id in the prediction set. Every parsed
// four-unique generation needs a prediction (MissingPrediction otherwise).
FilterResult filter_set(std::span<const GeneratedOutput> gens, const PredictionSet& preds,
                        AgreementMode mode = AgreementMode::PerMemberArgmax);

// Builds a training example whose answer is the first generated option.
MCQExample make_augmentation_example(const GeneratedOutput& g, std::string context, Split split = Split::Trn);

// Writes dataset-schema JSON lines with answer "A". Every item must have four options.
void export_augmentation(std::span<const MCQExample> kept, const std::filesystem::path& path);

}  // namespace mcqg
