// mcqg: assessment toolkit for multiple-choice question generation.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcqg/commands.hpp"
#include "mcqg/error.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) {
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw mcqg::Error(mcqg::ErrorKind::InvalidArgument, "not a number: " + s);
    return v;
}

std::vector<double> parse_probs(const std::string& s) {
    std::vector<double> out;
    for (const auto& p : split_list(s, ',')) out.push_back(to_double(p));
    return out;
}

// "1-10" or "1,2,5" or a mix like "1-3,8".
std::vector<int> parse_references(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split_list(s, ',')) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoi(part));
            continue;
        }
        const int lo = std::stoi(part.substr(0, dash));
        const int hi = std::stoi(part.substr(dash + 1));
        for (int j = lo; j <= hi; ++j) out.push_back(j);
    }
    return out;
}

template <typename Parse>
auto enum_option(const std::string& value, Parse&& parse, const char* flag) {
    const auto parsed = parse(value);
    if (!parsed) throw mcqg::Error(mcqg::ErrorKind::InvalidArgument, std::string("bad value for --") + flag + ": " + value);
    return *parsed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Assessment toolkit for multiple-choice question generation"};
    app.require_subcommand(1);

    mcqg::RunConfig config;
    std::string dataset, dev_dataset, generations, mcmrc, qc, lexicon, grammar, kept, augment, out_path;
    std::string split_name = "Evl";
    std::string base = "nats";
    std::string scheme = "binary";
    std::string agreement = "per_member";
    std::string format = "json";
    std::string framework = "exact";
    std::string probs, positions;
    std::string references = "1-10";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write the report here instead of stdout");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "md"}));
        sub->add_option("--seed", config.seed, "Random seed");
        sub->add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto add_assessment_flags = [&](CLI::App* sub) {
        sub->add_option("--entropy-base", base)->check(CLI::IsMember({"nats", "bits"}));
        sub->add_option("--diversity-scheme", scheme)->check(CLI::IsMember({"eight_way", "binary"}));
        sub->add_option("--agreement", agreement)->check(CLI::IsMember({"per_member", "mean"}));
        sub->add_option("--separator", config.separator, "Separator token in generated sequences");
    };

    auto* assess = app.add_subcommand("assess", "Score a question set: 4-option rate, accuracy, A, C, D, G");
    assess->add_option("--generations", generations, "Generated-output JSON lines");
    assess->add_option("--dataset", dataset, "Human-written dataset to assess instead of generations");
    assess->add_option("--split", split_name, "Split label for --dataset");
    assess->add_option("--mcmrc-preds", mcmrc, "MCMRC ensemble predictions")->required();
    assess->add_option("--qc-preds", qc, "Question-complexity ensemble predictions");
    assess->add_option("--grammar-report", grammar, "External grammar checker counts");
    add_assessment_flags(assess);
    add_common(assess);

    auto* filter = app.add_subcommand("filter", "Keep generations with four unique options and ensemble agreement");
    filter->add_option("--generations", generations)->required();
    filter->add_option("--mcmrc-preds", mcmrc)->required();
    filter->add_option("--kept", kept, "Write kept generations (generated-output schema)");
    filter->add_option("--augment", augment, "Write kept items as a training dataset (needs --dataset)");
    filter->add_option("--dataset", dataset, "Dataset providing contexts for --augment");
    add_assessment_flags(filter);
    add_common(filter);

    auto* tune = app.add_subcommand("tune-vocab", "Tune vocabulary complexity thresholds on Dev");
    tune->add_option("--dev-dataset", dev_dataset)->required();
    tune->add_option("--lexicon", lexicon)->required();
    tune->add_option("--dataset", dataset, "Evaluation split scored with the tuned thresholds");
    tune->add_option("--grid-step", config.grid_step)->check(CLI::Range(1e-6, 0.1));
    add_common(tune);

    auto* baselines = app.add_subcommand("baselines", "Majority-class and vocab-based complexity baselines");
    baselines->add_option("--dev-dataset", dev_dataset);
    baselines->add_option("--dataset", dataset, "Evaluation split");
    baselines->add_option("--lexicon", lexicon, "Adds the vocab-based row");
    baselines->add_option("--grid-step", config.grid_step)->check(CLI::Range(1e-6, 0.1));
    add_common(baselines);

    auto& sim = config.simulate;
    auto* simulate = app.add_subcommand("simulate", "Multi-draw reference scaling experiments");
    simulate->add_option("--framework", framework)->check(CLI::IsMember({"exact", "overlap"}));
    simulate->add_option("--posterior", sim.posterior)
        ->check(CLI::IsMember({"zipf", "explicit", "positionwise", "uniform_positionwise"}));
    simulate->add_option("--outcomes", sim.outcomes, "Zipf support size M");
    simulate->add_option("--zipf-exponent", sim.zipf_exponent);
    simulate->add_option("--probs", probs, "Explicit distribution, comma separated");
    simulate->add_option("--positions", positions, "Per-position distributions, ';' between positions");
    simulate->add_option("--length", sim.length, "T for uniform_positionwise");
    simulate->add_option("--alphabet", sim.alphabet, "V for uniform_positionwise");
    simulate->add_option("--J", references, "Reference counts, e.g. 1-10 or 1,2,5");
    simulate->add_option("--trials", sim.trials)->check(CLI::PositiveNumber);
    simulate->add_option("--rel-tol", sim.rel_tol);
    simulate->add_option("--saturation-tol", sim.saturation_tol);
    add_common(simulate);

    auto* stats = app.add_subcommand("stats", "Question and context counts per difficulty subset");
    stats->add_option("--dataset", dataset)->required();
    stats->add_option("--split", split_name);
    add_common(stats);

    auto* validate = app.add_subcommand("validate", "Validate prediction files");
    validate->add_option("--mcmrc-preds", mcmrc);
    validate->add_option("--qc-preds", qc);
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        auto set_path = [](std::optional<std::filesystem::path>& dst, const std::string& src) {
            if (!src.empty()) dst = src;
        };
        set_path(config.dataset, dataset);
        set_path(config.dev_dataset, dev_dataset);
        set_path(config.generations, generations);
        set_path(config.mcmrc_preds, mcmrc);
        set_path(config.qc_preds, qc);
        set_path(config.lexicon, lexicon);
        set_path(config.grammar_report, grammar);
        set_path(config.kept_out, kept);
        set_path(config.augment_out, augment);
        config.split = enum_option(split_name, mcqg::parse_split, "split");
        config.entropy_base = enum_option(base, mcqg::parse_entropy_base, "entropy-base");
        config.diversity_scheme = enum_option(scheme, mcqg::parse_diversity_scheme, "diversity-scheme");
        config.agreement = enum_option(agreement, mcqg::parse_agreement_mode, "agreement");
        const auto out_format = enum_option(format, mcqg::parse_output_format, "format");
        sim.framework = framework == "exact" ? mcqg::Framework::ExactMatch : mcqg::Framework::Overlap;
        if (!probs.empty()) sim.probs = parse_probs(probs);
        if (!positions.empty()) {
            sim.positions.clear();
            for (const auto& row : split_list(positions, ';')) sim.positions.push_back(parse_probs(row));
        }
        sim.references = parse_references(references);

        mcqg::CommandOutput output;
        if (*assess) output = mcqg::cmd_assess(config);
        else if (*filter) output = mcqg::cmd_filter(config);
        else if (*tune) output = mcqg::cmd_tune_vocab(config);
        else if (*baselines) output = mcqg::cmd_baselines(config);
        else if (*simulate) output = mcqg::cmd_simulate(config);
        else if (*stats) output = mcqg::cmd_stats(config);
        else output = mcqg::cmd_validate(config);

        const auto text = output.render(out_format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            out << text;
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return kExitIo;
            }
        }
    } catch (const mcqg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_io() ? kExitIo : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return EXIT_SUCCESS;
}
