#include "mcqg/filterpipe.hpp"

#include "mcqg/error.hpp"

namespace mcqg {

std::string_view to_string(AgreementMode mode) noexcept {
    return mode == AgreementMode::PerMemberArgmax ? "per_member" : "mean";
}

std::optional<AgreementMode> parse_agreement_mode(std::string_view s) noexcept {
    if (s == "per_member" || s == "per_member_argmax") return AgreementMode::PerMemberArgmax;
    if (s == "mean" || s == "mean_argmax") return AgreementMode::MeanArgmax;
    return std::nullopt;
}

std::size_t argmax(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::InvalidArgument, "argmax of an empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

bool check_four_options(const GeneratedOutput& g) {
    const auto distinct = unique_option_count(g);  // throws NotParsed
    return g.options.size() == 4 && distinct == 4;
}

bool ensemble_agrees(const EnsemblePrediction& p, std::size_t target, AgreementMode mode) {
    if (mode == AgreementMode::MeanArgmax) return argmax(mean_distribution(p)) == target;
    for (const auto& row : p.members) {
        if (argmax(row) != target) return false;
    }
    return !p.members.empty();
}

bool ensemble_first_agreement(const EnsemblePrediction& p, AgreementMode mode) {
    if (p.labels != label_space(Purpose::Mcmrc)) {
        throw Error(ErrorKind::LabelSpaceMismatch, "agreement needs [A, B, C, D] labels for question " + p.question_id);
    }
    return ensemble_agrees(p, 0, mode);
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<double> FilterSummary::four_opt_rate() const { return ratio(n_four_opt, n_input); }
std::optional<double> FilterSummary::four_opt_rate_parsed() const { return ratio(n_four_opt, n_parsed); }
std::optional<double> FilterSummary::accuracy() const { return ratio(n_agree, n_four_opt); }

FilterResult filter_set(std::span<const GeneratedOutput> gens, const PredictionSet& preds, AgreementMode mode) {
    FilterResult result;
    result.summary.mode = mode;
    result.summary.n_input = gens.size();
    result.outcomes.reserve(gens.size());
    for (const auto& g : gens) {
        FilterOutcome outcome;
        outcome.question_id = g.context_id;
        outcome.parsed = g.ok();
        if (outcome.parsed) {
            ++result.summary.n_parsed;
            outcome.four_unique = check_four_options(g);
        }
        if (outcome.four_unique) {
            ++result.summary.n_four_opt;
            outcome.ensemble_agrees_first = ensemble_first_agreement(preds.at(g.context_id), mode);
            if (outcome.ensemble_agrees_first) ++result.summary.n_agree;
        }
        outcome.kept = outcome.four_unique && outcome.ensemble_agrees_first;
        if (outcome.kept) result.kept.push_back(g);
        result.outcomes.push_back(std::move(outcome));
    }
    result.summary.n_kept = result.kept.size();
    return result;
}

MCQExample make_augmentation_example(const GeneratedOutput& g, std::string context, Split split) {
    MCQExample ex;
    ex.example_id = "gen-" + g.context_id;
    ex.context_id = g.context_id;
    ex.context = std::move(context);
    ex.question = g.question;
    ex.options = g.options;
    ex.correct_index = 0;
    ex.split = split;
    return ex;
}

void export_augmentation(std::span<const MCQExample> kept, const std::filesystem::path& path) {
    std::vector<MCQExample> rows;
    rows.reserve(kept.size());
    for (const auto& ex : kept) {
        if (ex.options.size() != 4) {
            throw Error(ErrorKind::InvalidArgument,
                        "augmentation example " + ex.example_id + " has " + std::to_string(ex.options.size()) +
                            " options");
        }
        auto& row = rows.emplace_back(ex);
        row.correct_index = 0;
    }
    write_dataset(rows, path);
}

}  // namespace mcqg
