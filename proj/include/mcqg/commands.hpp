#pragma once

// The command-line workflows, callable without a process boundary.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcqg/corpus.hpp"
#include "mcqg/filterpipe.hpp"
#include "mcqg/metrics.hpp"
#include "mcqg/refsim.hpp"

namespace mcqg {

enum class OutputFormat { Json, Csv, Markdown };

std::string_view to_string(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept;

struct SimulateSpec {
    Framework framework = Framework::ExactMatch;
    std::string posterior = "zipf";  // zipf | explicit | positionwise | uniform_positionwise
    std::size_t outcomes = 1000;     // zipf M
    double zipf_exponent = 1.0;
    std::vector<double> probs;                     // explicit
    std::vector<std::vector<double>> positions;    // positionwise
    std::size_t length = 2;                        // uniform_positionwise T
    std::size_t alphabet = 2;                      // uniform_positionwise V
    std::vector<int> references{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::size_t trials = 100000;
    double rel_tol = 0.01;
    double saturation_tol = 0.05;
};

struct RunConfig {
    std::optional<std::filesystem::path> dataset;
    std::optional<std::filesystem::path> dev_dataset;
    std::optional<std::filesystem::path> generations;
    std::optional<std::filesystem::path> mcmrc_preds;
    std::optional<std::filesystem::path> qc_preds;
    std::optional<std::filesystem::path> lexicon;
    std::optional<std::filesystem::path> grammar_report;
    std::optional<std::filesystem::path> kept_out;
    std::optional<std::filesystem::path> augment_out;
    Split split = Split::Evl;
    EntropyBase entropy_base = EntropyBase::Nats;
    DiversityScheme diversity_scheme = DiversityScheme::Binary;
    AgreementMode agreement = AgreementMode::PerMemberArgmax;
    std::string separator = std::string(kDefaultSeparator);
    double grid_step = 0.01;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    SimulateSpec simulate;
};

// A command's machine-readable result plus its tabular renderings.
struct CommandOutput {
    nlohmann::ordered_json json;
    std::string csv;
    std::string markdown;

    std::string render(OutputFormat format) const;
};

CommandOutput cmd_assess(const RunConfig& config);
CommandOutput cmd_filter(const RunConfig& config);
CommandOutput cmd_tune_vocab(const RunConfig& config);
CommandOutput cmd_simulate(const RunConfig& config);
CommandOutput cmd_baselines(const RunConfig& config);
CommandOutput cmd_stats(const RunConfig& config);
CommandOutput cmd_validate(const RunConfig& config);

SimPosterior build_posterior(const SimulateSpec& spec);

nlohmann::ordered_json to_json(const SimResult& result);
std::string to_csv(const SimResult& result);

}  // namespace mcqg
