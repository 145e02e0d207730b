#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcqg {

// MCMRC predictions are over answer options, QC predictions over difficulty.
enum class Purpose { Mcmrc, Qc };

std::string_view to_string(Purpose purpose) noexcept;
std::optional<Purpose> parse_purpose(std::string_view s) noexcept;

const std::vector<std::string>& label_space(Purpose purpose);

// Row-sum tolerance; rows inside it are renormalized, rows outside rejected.
inline constexpr double kRowSumTolerance = 1e-6;

// K member distributions over one label space for a single question.
struct EnsemblePrediction {
    std::string question_id;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> members;

    std::size_t ensemble_size() const noexcept { return members.size(); }
    std::size_t num_labels() const noexcept { return labels.size(); }
};

// Checks entries and row lengths and renormalizes rows within tolerance.
// Throws RowNotNormalized, LabelSpaceMismatch or InvalidDistribution.
void validate_prediction(EnsemblePrediction& p);

// Arithmetic mean over members.
std::vector<double> mean_distribution(const EnsemblePrediction& p);

class PredictionSet {
public:
    PredictionSet(Purpose purpose, std::size_t ensemble_size) : purpose_(purpose), ensemble_size_(ensemble_size) {}

    Purpose purpose() const noexcept { return purpose_; }
    std::size_t ensemble_size() const noexcept { return ensemble_size_; }
    std::size_t size() const noexcept { return predictions_.size(); }
    bool contains(const std::string& question_id) const { return predictions_.count(question_id) != 0; }

    // Throws MissingPrediction.
    const EnsemblePrediction& at(const std::string& question_id) const;

    // Validates and inserts; enforces label space, member count and id uniqueness.
    void insert(EnsemblePrediction p);

    const std::map<std::string, EnsemblePrediction>& items() const noexcept { return predictions_; }

private:
    Purpose purpose_;
    std::size_t ensemble_size_;
    std::map<std::string, EnsemblePrediction> predictions_;
};

// Prediction file: a header line {"purpose": "mcmrc"|"qc", "ensemble_size": int}
// followed by {"question_id": str, "labels": [...], "members": [[...], ...]} lines.
PredictionSet load_predictions(const std::filesystem::path& path, Purpose purpose);
PredictionSet read_predictions(std::istream& in, Purpose purpose, std::string_view source = "<stream>");

void write_predictions(const PredictionSet& set, std::ostream& out);
void write_predictions(const PredictionSet& set, const std::filesystem::path& path);

}  // namespace mcqg
