#include "mcqg/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "jsonl.hpp"
#include "mcqg/error.hpp"
#include "mcqg/predictions.hpp"
#include "mcqg/vocab_complexity.hpp"

namespace mcqg {

using ojson = nlohmann::ordered_json;

std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Markdown: return "md";
    }
    return "?";
}

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "md" || s == "markdown") return OutputFormat::Markdown;
    return std::nullopt;
}

std::string CommandOutput::render(OutputFormat format) const {
    switch (format) {
        case OutputFormat::Json: return json.dump(2) + "\n";
        case OutputFormat::Csv: return csv;
        case OutputFormat::Markdown: return markdown;
    }
    return {};
}

namespace {

ojson nullable(const std::optional<double>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

std::string cell(const std::optional<double>& v) {
    return v ? fmt::format("{}", *v) : std::string();
}

std::string fixed(const std::optional<double>& v, int digits, double scale = 1.0) {
    return v ? fmt::format("{:.{}f}", *v * scale, digits) : std::string("--");
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

const std::filesystem::path& require(const std::optional<std::filesystem::path>& p, std::string_view flag) {
    if (!p) throw Error(ErrorKind::InvalidArgument, "missing required option --" + std::string(flag));
    return *p;
}

void put_path(ojson& obj, const char* key, const std::optional<std::filesystem::path>& p) {
    obj[key] = p ? ojson(p->generic_string()) : ojson(nullptr);
}

// ---------------------------------------------------------------------------
// assess

struct AssessItem {
    std::string id;
    std::string question;
    ParseStatus status = ParseStatus::Ok;
    bool four_unique = false;
    std::size_t target = 0;  // option the ensemble must pick
};

struct AssessInputs {
    const RunConfig& config;
    const PredictionSet& mcmrc;
    const std::optional<PredictionSet>& qc;
    const std::optional<std::map<std::string, int>>& grammar;
};

int grammar_errors(const AssessInputs& in, const AssessItem& item) {
    if (!in.grammar) return naive_grammar_errors(item.question);
    const auto it = in.grammar->find(item.id);
    if (it == in.grammar->end()) {
        throw Error(ErrorKind::MissingPrediction, "grammar report has no count for question " + item.id);
    }
    return it->second;
}

ojson assess_row(std::string_view name, const std::vector<const AssessItem*>& items, const AssessInputs& in) {
    std::size_t n_parsed = 0;
    std::size_t n_four = 0;
    std::size_t n_agree = 0;
    std::vector<std::string> parsed_questions;
    std::vector<int> grammar_counts;
    std::vector<std::string> four_ids;
    ojson per_question = ojson::array();

    for (const auto* item : items) {
        ojson q;
        q["question_id"] = item->id;
        q["parse_status"] = std::string(to_string(item->status));
        q["four_unique"] = item->four_unique;
        q["agrees"] = nullptr;
        q["question_type"] = nullptr;
        q["standalone"] = nullptr;
        q["grammar_errors"] = nullptr;
        q["expected_entropy"] = nullptr;
        q["complexity"] = nullptr;
        if (item->status == ParseStatus::Ok) {
            ++n_parsed;
            parsed_questions.push_back(item->question);
            const int errors = grammar_errors(in, *item);
            grammar_counts.push_back(errors);
            q["question_type"] = std::string(to_string(classify_question_type(item->question)));
            q["standalone"] = std::string(to_string(classify_standalone(item->question)));
            q["grammar_errors"] = errors;
        }
        if (item->four_unique) {
            ++n_four;
            four_ids.push_back(item->id);
            const auto& pred = in.mcmrc.at(item->id);
            const bool agrees = ensemble_agrees(pred, item->target, in.config.agreement);
            n_agree += agrees ? 1 : 0;
            q["agrees"] = agrees;
            q["expected_entropy"] = expected_entropy(pred, in.config.entropy_base);
            if (in.qc) q["complexity"] = complexity_score(in.qc->at(item->id));
        }
        per_question.push_back(std::move(q));
    }

    ojson row;
    row["name"] = std::string(name);
    row["n_questions"] = items.size();
    row["n_parsed"] = n_parsed;
    row["n_four_opt"] = n_four;
    row["four_opt_rate"] = nullable(ratio(n_four, items.size()));
    row["four_opt_rate_parsed"] = nullable(ratio(n_four, n_parsed));
    row["accuracy"] = nullable(ratio(n_agree, n_four));

    row["G"] = n_parsed == 0 ? ojson(nullptr) : ojson(grammar_rate(grammar_counts, n_parsed));

    ojson a;
    a["value"] = four_ids.empty() ? ojson(nullptr) : ojson(unanswerability(in.mcmrc, four_ids, in.config.entropy_base).mean);
    a["base"] = std::string(to_string(in.config.entropy_base));
    row["A"] = std::move(a);

    row["C"] = (four_ids.empty() || !in.qc) ? ojson(nullptr) : ojson(mean_complexity(*in.qc, four_ids).mean);

    ojson d;
    d["value_bits"] = nullptr;
    d["scheme"] = std::string(to_string(in.config.diversity_scheme));
    d["class_histogram"] = ojson::object();
    if (!parsed_questions.empty()) {
        const auto div = diversity(parsed_questions, in.config.diversity_scheme);
        d["value_bits"] = div.value_bits;
        for (const auto& [cls, count] : div.histogram) d["class_histogram"][cls] = count;
    }
    row["D"] = std::move(d);
    row["per_question"] = std::move(per_question);
    return row;
}

std::optional<double> json_number(const ojson& v) {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

void render_assess_tables(CommandOutput& out) {
    std::string csv = "set,n_questions,four_opt_rate,accuracy,A,C,D,G\n";
    std::string md = "| Set | N | 4 opts | Acc | A | C | D | G |\n|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& row : out.json["rows"]) {
        const auto four = json_number(row["four_opt_rate"]);
        const auto acc = json_number(row["accuracy"]);
        const auto a = json_number(row["A"]["value"]);
        const auto c = json_number(row["C"]);
        const auto d = json_number(row["D"]["value_bits"]);
        const auto g = json_number(row["G"]);
        const auto name = row["name"].get<std::string>();
        const auto n = row["n_questions"].get<std::size_t>();
        csv += fmt::format("{},{},{},{},{},{},{},{}\n", name, n, cell(four), cell(acc), cell(a), cell(c), cell(d), cell(g));
        md += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} |\n", name, n, fixed(four, 2, 100.0),
                          fixed(acc, 2, 100.0), fixed(a, 4), fixed(c, 4), fixed(d, 4), fixed(g, 4));
    }
    out.csv = std::move(csv);
    out.markdown = std::move(md);
}

// ---------------------------------------------------------------------------
// baselines / tune

struct LabeledSplit {
    std::vector<MCQExample> examples;
    std::vector<std::string> truth;
};

LabeledSplit load_labeled(const std::filesystem::path& path, Split split) {
    LabeledSplit out;
    out.examples = load_dataset(path, split);
    for (const auto& ex : out.examples) {
        if (!ex.difficulty) {
            throw Error(ErrorKind::MissingDifficultyLabels,
                        path.string() + ": example " + ex.example_id + " has no difficulty label");
        }
        out.truth.emplace_back(to_string(*ex.difficulty));
    }
    return out;
}

std::vector<std::string> difficulty_classes() {
    std::vector<std::string> classes;
    for (auto d : kDifficulties) classes.emplace_back(to_string(d));
    return classes;
}

// Most frequent label, earliest in easy/medium/hard order on ties.
Difficulty majority_label(const std::vector<std::string>& truth) {
    std::array<std::size_t, 3> counts{};
    for (const auto& t : truth) ++counts[static_cast<std::size_t>(*parse_difficulty(t))];
    return static_cast<Difficulty>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

ojson split_scores(const std::vector<std::string>& predicted, const std::vector<std::string>& truth) {
    ojson s;
    if (truth.empty()) {
        s["accuracy"] = nullptr;
        s["macro_f1"] = nullptr;
        return s;
    }
    const auto classes = difficulty_classes();
    s["accuracy"] = accuracy(predicted, truth);
    s["macro_f1"] = macro_f1(predicted, truth, classes);
    s["n"] = truth.size();
    return s;
}

std::vector<std::string> vocab_predictions(const LabeledSplit& split, const VocabLexicon& lexicon,
                                           const ComplexityThresholds& th) {
    std::vector<std::string> out;
    out.reserve(split.examples.size());
    for (const auto& ex : split.examples) {
        out.emplace_back(to_string(classify_by_threshold(vocab_score(ex, lexicon).joint, th)));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string describe_references(const std::vector<int>& js) {
    std::string s;
    for (std::size_t i = 0; i < js.size(); ++i) s += (i ? "," : "") + std::to_string(js[i]);
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

CommandOutput cmd_assess(const RunConfig& config) {
    const auto& mcmrc_path = require(config.mcmrc_preds, "mcmrc-preds");
    if (!config.generations && !config.dataset) {
        throw Error(ErrorKind::InvalidArgument, "assess needs --generations or --dataset");
    }
    const auto mcmrc = load_predictions(mcmrc_path, Purpose::Mcmrc);
    std::optional<PredictionSet> qc;
    if (config.qc_preds) qc = load_predictions(*config.qc_preds, Purpose::Qc);
    std::optional<std::map<std::string, int>> grammar;
    if (config.grammar_report) grammar = load_grammar_report(*config.grammar_report);

    const bool generated = config.generations.has_value();
    std::vector<AssessItem> items;
    if (generated) {
        for (const auto& g : load_generations(*config.generations, config.separator)) {
            AssessItem item;
            item.id = g.context_id;
            item.question = g.question;
            item.status = g.parse_status;
            item.four_unique = g.ok() && check_four_options(g);
            item.target = 0;
            items.push_back(std::move(item));
        }
    } else {
        for (const auto& ex : load_dataset(*config.dataset, config.split)) {
            AssessItem item;
            item.id = ex.example_id;
            item.question = ex.question;
            item.four_unique = ex.options.size() == 4 && count_distinct_options(ex.options) == 4;
            item.target = ex.correct_index;
            items.push_back(std::move(item));
        }
    }

    const AssessInputs in{config, mcmrc, qc, grammar};
    std::vector<const AssessItem*> all;
    for (const auto& item : items) all.push_back(&item);

    CommandOutput out;
    auto& j = out.json;
    j["command"] = "assess";
    ojson cfg;
    cfg["mode"] = generated ? "generated" : "dataset";
    put_path(cfg, "generations", config.generations);
    put_path(cfg, "dataset", generated ? std::nullopt : config.dataset);
    put_path(cfg, "mcmrc_preds", config.mcmrc_preds);
    put_path(cfg, "qc_preds", config.qc_preds);
    put_path(cfg, "grammar_report", config.grammar_report);
    cfg["grammar_source"] = grammar ? "external_report" : "naive_rules (not equivalent to a full grammatical error checker)";
    cfg["entropy_base"] = std::string(to_string(config.entropy_base));
    cfg["diversity_scheme"] = std::string(to_string(config.diversity_scheme));
    cfg["agreement"] = std::string(to_string(config.agreement));
    cfg["separator"] = config.separator;
    cfg["mcmrc_ensemble_size"] = mcmrc.ensemble_size();
    cfg["qc_ensemble_size"] = qc ? ojson(qc->ensemble_size()) : ojson(nullptr);
    j["config"] = std::move(cfg);

    j["rows"] = ojson::array();
    j["rows"].push_back(assess_row("all", all, in));
    if (generated) {
        std::vector<const AssessItem*> kept;
        for (const auto* item : all) {
            if (item->four_unique && ensemble_agrees(mcmrc.at(item->id), item->target, config.agreement)) {
                kept.push_back(item);
            }
        }
        j["rows"].push_back(assess_row("filtered", kept, in));
    }
    render_assess_tables(out);
    return out;
}

CommandOutput cmd_filter(const RunConfig& config) {
    const auto gens = load_generations(require(config.generations, "generations"), config.separator);
    const auto preds = load_predictions(require(config.mcmrc_preds, "mcmrc-preds"), Purpose::Mcmrc);
    const auto result = filter_set(gens, preds, config.agreement);
    const auto& s = result.summary;

    if (config.kept_out) {
        auto out = detail::open_output(*config.kept_out);
        for (const auto& g : result.kept) {
            ojson record;
            record["context_id"] = g.context_id;
            record["raw"] = g.raw;
            out << record.dump() << '\n';
        }
        out.flush();
        if (!out) throw Error(ErrorKind::WriteFailure, "failed writing " + config.kept_out->string());
    }
    if (config.augment_out) {
        const auto dataset = load_dataset(require(config.dataset, "dataset"), config.split);
        std::unordered_map<std::string, const MCQExample*> contexts;
        for (const auto& ex : dataset) contexts.emplace(ex.context_id, &ex);
        std::vector<MCQExample> augmented;
        for (const auto& g : result.kept) {
            const auto it = contexts.find(g.context_id);
            if (it == contexts.end()) throw Error(ErrorKind::MissingContext, "no context for " + g.context_id);
            augmented.push_back(make_augmentation_example(g, it->second->context, Split::Trn));
        }
        export_augmentation(augmented, *config.augment_out);
    }

    CommandOutput out;
    auto& j = out.json;
    j["n_input"] = s.n_input;
    j["four_opt_rate"] = nullable(s.four_opt_rate());
    j["accuracy"] = nullable(s.accuracy());
    j["n_kept"] = s.n_kept;
    j["mode"] = std::string(to_string(s.mode));
    j["n_parsed"] = s.n_parsed;
    j["four_opt_rate_parsed"] = nullable(s.four_opt_rate_parsed());
    j["n_four_opt"] = s.n_four_opt;
    j["n_agree"] = s.n_agree;
    j["separator"] = config.separator;

    out.csv = "n_input,n_parsed,n_four_opt,n_agree,n_kept,four_opt_rate,four_opt_rate_parsed,accuracy,mode\n" +
              fmt::format("{},{},{},{},{},{},{},{},{}\n", s.n_input, s.n_parsed, s.n_four_opt, s.n_agree, s.n_kept,
                          cell(s.four_opt_rate()), cell(s.four_opt_rate_parsed()), cell(s.accuracy()),
                          to_string(s.mode));
    out.markdown = "| Inputs | Parsed | 4 opts | Acc | Kept | Mode |\n|---:|---:|---:|---:|---:|---|\n" +
                   fmt::format("| {} | {} | {} | {} | {} | {} |\n", s.n_input, s.n_parsed,
                               fixed(s.four_opt_rate(), 2, 100.0), fixed(s.accuracy(), 2, 100.0), s.n_kept,
                               to_string(s.mode));
    return out;
}

CommandOutput cmd_tune_vocab(const RunConfig& config) {
    const auto lexicon = load_lexicon(require(config.lexicon, "lexicon"));
    const auto dev = load_labeled(require(config.dev_dataset, "dev-dataset"), Split::Dev);
    const auto tuned = tune_thresholds(dev.examples, lexicon, config.grid_step);

    std::optional<double> evl_accuracy;
    if (config.dataset) {
        const auto evl = load_labeled(*config.dataset, Split::Evl);
        if (!evl.truth.empty()) evl_accuracy = accuracy(vocab_predictions(evl, lexicon, tuned.thresholds), evl.truth);
    }

    CommandOutput out;
    auto& j = out.json;
    j["t1"] = tuned.thresholds.t1;
    j["t2"] = tuned.thresholds.t2;
    j["dev_accuracy"] = tuned.dev_accuracy;
    j["evl_accuracy"] = nullable(evl_accuracy);
    j["grid_step"] = config.grid_step;
    j["grid_points"] = tuned.grid_points;
    j["lexicon_size"] = lexicon.size();

    out.csv = "t1,t2,dev_accuracy,evl_accuracy\n" +
              fmt::format("{},{},{},{}\n", tuned.thresholds.t1, tuned.thresholds.t2, tuned.dev_accuracy,
                          cell(evl_accuracy));
    out.markdown = "| t1 | t2 | Dev acc | Evl acc |\n|---:|---:|---:|---:|\n" +
                   fmt::format("| {:.2f} | {:.2f} | {} | {} |\n", tuned.thresholds.t1, tuned.thresholds.t2,
                               fixed(tuned.dev_accuracy, 2, 100.0), fixed(evl_accuracy, 2, 100.0));
    return out;
}

CommandOutput cmd_baselines(const RunConfig& config) {
    if (!config.dev_dataset && !config.dataset) {
        throw Error(ErrorKind::InvalidArgument, "baselines needs --dev-dataset and/or --dataset");
    }
    std::optional<LabeledSplit> dev;
    std::optional<LabeledSplit> evl;
    if (config.dev_dataset) dev = load_labeled(*config.dev_dataset, Split::Dev);
    if (config.dataset) evl = load_labeled(*config.dataset, Split::Evl);

    const auto& prior = dev ? dev->truth : evl->truth;
    if (prior.empty()) throw Error(ErrorKind::MissingDifficultyLabels, "no labeled examples to pick a majority class");
    const auto majority = majority_label(prior);

    auto constant = [&](const std::optional<LabeledSplit>& split) {
        return split ? std::vector<std::string>(split->truth.size(), std::string(to_string(majority)))
                     : std::vector<std::string>{};
    };
    auto scores = [&](const std::optional<LabeledSplit>& split, const std::vector<std::string>& predicted) {
        return split ? split_scores(predicted, split->truth) : ojson(nullptr);
    };

    CommandOutput out;
    auto& j = out.json;
    j["command"] = "baselines";
    ojson cfg;
    put_path(cfg, "dev_dataset", config.dev_dataset);
    put_path(cfg, "dataset", config.dataset);
    put_path(cfg, "lexicon", config.lexicon);
    cfg["grid_step"] = config.grid_step;
    cfg["majority_source"] = dev ? "dev" : "evl";
    j["config"] = std::move(cfg);
    j["rows"] = ojson::array();

    ojson majority_row;
    majority_row["system"] = "majority_class";
    majority_row["label"] = std::string(to_string(majority));
    majority_row["dev"] = scores(dev, constant(dev));
    majority_row["evl"] = scores(evl, constant(evl));
    j["rows"].push_back(std::move(majority_row));

    if (config.lexicon) {
        if (!dev) throw Error(ErrorKind::InvalidArgument, "the vocab baseline tunes on --dev-dataset");
        const auto lexicon = load_lexicon(*config.lexicon);
        const auto tuned = tune_thresholds(dev->examples, lexicon, config.grid_step);
        ojson vocab_row;
        vocab_row["system"] = "vocab";
        vocab_row["thresholds"] = {{"t1", tuned.thresholds.t1}, {"t2", tuned.thresholds.t2}};
        vocab_row["dev"] = scores(dev, vocab_predictions(*dev, lexicon, tuned.thresholds));
        vocab_row["evl"] = evl ? scores(evl, vocab_predictions(*evl, lexicon, tuned.thresholds)) : ojson(nullptr);
        j["rows"].push_back(std::move(vocab_row));
    }

    auto metric = [](const ojson& split, const char* key) -> std::optional<double> {
        if (split.is_null() || split[key].is_null()) return std::nullopt;
        return split[key].get<double>();
    };
    out.csv = "system,dev_accuracy,evl_accuracy,dev_macro_f1,evl_macro_f1\n";
    out.markdown = "| System | Acc Dev | Acc Evl | F1 Dev | F1 Evl |\n|---|---:|---:|---:|---:|\n";
    for (const auto& row : j["rows"]) {
        const auto name = row["system"].get<std::string>();
        const auto da = metric(row["dev"], "accuracy");
        const auto ea = metric(row["evl"], "accuracy");
        const auto df = metric(row["dev"], "macro_f1");
        const auto ef = metric(row["evl"], "macro_f1");
        out.csv += fmt::format("{},{},{},{},{}\n", name, cell(da), cell(ea), cell(df), cell(ef));
        out.markdown += fmt::format("| {} | {} | {} | {} | {} |\n", name, fixed(da, 2, 100.0), fixed(ea, 2, 100.0),
                                    fixed(df, 2, 100.0), fixed(ef, 2, 100.0));
    }
    return out;
}

SimPosterior build_posterior(const SimulateSpec& spec) {
    if (spec.posterior == "zipf") return SimPosterior::zipf(spec.outcomes, spec.zipf_exponent);
    if (spec.posterior == "explicit") return SimPosterior::explicit_distribution(spec.probs);
    if (spec.posterior == "positionwise") return SimPosterior::positionwise(spec.positions);
    if (spec.posterior == "uniform_positionwise") return SimPosterior::uniform_positionwise(spec.length, spec.alphabet);
    throw Error(ErrorKind::InvalidArgument, "unknown posterior family \"" + spec.posterior + "\"");
}

ojson to_json(const SimResult& r) {
    ojson j;
    j["framework"] = std::string(to_string(r.framework));
    j["posterior"] = r.posterior;
    j["p_star"] = r.p_star;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["rows"] = ojson::array();
    for (std::size_t i = 0; i < r.references.size(); ++i) {
        ojson row;
        row["J"] = r.references[i];
        row["estimate"] = r.estimate[i];
        row["stderr"] = r.standard_error[i];
        row["closed_form"] = nullable(r.closed_form[i]);
        row["exact"] = nullable(r.exact[i]);
        j["rows"].push_back(std::move(row));
    }
    return j;
}

std::string to_csv(const SimResult& r) {
    std::string csv = "J,estimate,stderr,closed_form,exact\n";
    for (std::size_t i = 0; i < r.references.size(); ++i) {
        csv += fmt::format("{},{},{},{},{}\n", r.references[i], r.estimate[i], r.standard_error[i],
                           cell(r.closed_form[i]), cell(r.exact[i]));
    }
    return csv;
}

CommandOutput cmd_simulate(const RunConfig& config) {
    const auto& spec = config.simulate;
    const auto posterior = build_posterior(spec);
    SimOptions options;
    options.references = spec.references;
    options.trials = spec.trials;
    options.seed = config.seed;
    options.threads = config.threads;

    const auto result = spec.framework == Framework::ExactMatch ? simulate_exact_match(posterior, options)
                                                                 : simulate_overlap(posterior, options);
    const auto estimate_check = linearity_check(result, spec.rel_tol, CurveColumn::Estimate, spec.saturation_tol);
    const auto closed_check = linearity_check(result, spec.rel_tol, CurveColumn::ClosedForm, spec.saturation_tol);

    CommandOutput out;
    auto& j = out.json;
    j["command"] = "simulate";
    ojson cfg;
    cfg["framework"] = std::string(to_string(spec.framework));
    cfg["posterior_family"] = spec.posterior;
    cfg["J"] = describe_references(spec.references);
    cfg["trials"] = spec.trials;
    cfg["seed"] = config.seed;
    cfg["rel_tol"] = spec.rel_tol;
    cfg["saturation_tol"] = spec.saturation_tol;
    j["config"] = std::move(cfg);
    j["conditional_entropy"] = {{"nats", conditional_entropy(posterior, EntropyBase::Nats)},
                                {"bits", conditional_entropy(posterior, EntropyBase::Bits)},
                                {"log_num_outcomes_nats", posterior.log_num_outcomes(EntropyBase::Nats)}};
    j["result"] = to_json(result);

    auto linearity_json = [](const LinearityReport& rep) {
        ojson l;
        l["linear"] = rep.linear;
        l["checked_J"] = rep.checked;
        l["deviation"] = rep.deviation;
        l["saturation_onset_J"] = rep.saturation_onset ? ojson(*rep.saturation_onset) : ojson(nullptr);
        return l;
    };
    j["linearity"] = {{"estimate", linearity_json(estimate_check)}, {"closed_form", linearity_json(closed_check)}};

    out.csv = to_csv(result);
    out.markdown = "| J | estimate | stderr | closed form | exact |\n|---:|---:|---:|---:|---:|\n";
    for (std::size_t i = 0; i < result.references.size(); ++i) {
        out.markdown += fmt::format("| {} | {:.6f} | {:.6f} | {} | {} |\n", result.references[i], result.estimate[i],
                                    result.standard_error[i], fixed(result.closed_form[i], 6),
                                    fixed(result.exact[i], 6));
    }
    return out;
}

CommandOutput cmd_stats(const RunConfig& config) {
    const auto examples = load_dataset(require(config.dataset, "dataset"), config.split);
    const auto stats = compute_split_stats(examples);

    CommandOutput out;
    auto& j = out.json;
    j["split"] = std::string(to_string(config.split));
    j["subsets"] = ojson::object();
    out.csv = "split,subset,questions,contexts\n";
    out.markdown = "| Subset | Questions | Contexts |\n|---|---:|---:|\n";
    for (auto d : kDifficulties) {
        const auto& c = stats[d];
        j["subsets"][std::string(to_string(d))] = {{"questions", c.questions}, {"contexts", c.contexts}};
        out.csv += fmt::format("{},{},{},{}\n", to_string(config.split), to_string(d), c.questions, c.contexts);
        out.markdown += fmt::format("| {} | {} | {} |\n", to_string(d), c.questions, c.contexts);
    }
    j["total_questions"] = stats.total_questions();
    j["total_contexts"] = stats.total_contexts();
    j["unlabeled_questions"] = stats.unlabeled_questions;
    return out;
}

CommandOutput cmd_validate(const RunConfig& config) {
    if (!config.mcmrc_preds && !config.qc_preds) {
        throw Error(ErrorKind::InvalidArgument, "validate needs --mcmrc-preds and/or --qc-preds");
    }
    CommandOutput out;
    out.json["files"] = ojson::array();
    out.csv = "file,purpose,ensemble_size,n_questions\n";
    out.markdown = "| File | Purpose | K | Questions |\n|---|---|---:|---:|\n";
    auto check = [&](const std::filesystem::path& path, Purpose purpose) {
        const auto set = load_predictions(path, purpose);
        ojson f;
        f["file"] = path.generic_string();
        f["purpose"] = std::string(to_string(purpose));
        f["ensemble_size"] = set.ensemble_size();
        f["n_questions"] = set.size();
        f["valid"] = true;
        out.json["files"].push_back(std::move(f));
        out.csv += fmt::format("{},{},{},{}\n", path.generic_string(), to_string(purpose), set.ensemble_size(), set.size());
        out.markdown += fmt::format("| {} | {} | {} | {} |\n", path.generic_string(), to_string(purpose),
                                    set.ensemble_size(), set.size());
    };
    if (config.mcmrc_preds) check(*config.mcmrc_preds, Purpose::Mcmrc);
    if (config.qc_preds) check(*config.qc_preds, Purpose::Qc);
    return out;
}

}  // namespace mcqg
