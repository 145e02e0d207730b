#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mcqg/commands.hpp"
#include "mcqg/corpus.hpp"
#include "mcqg/error.hpp"
#include "mcqg/filterpipe.hpp"
#include "mcqg/metrics.hpp"
#include "mcqg/predictions.hpp"
#include "mcqg/refsim.hpp"
#include "mcqg/vocab_complexity.hpp"

namespace py = pybind11;

namespace {

template <typename T, typename Parse>
T parse_or_throw(const std::string& value, Parse&& parse, const char* what) {
    const auto parsed = parse(value);
    if (!parsed) throw py::value_error(std::string("unknown ") + what + ": " + value);
    return *parsed;
}

mcqg::EntropyBase base_of(const std::string& s) {
    return parse_or_throw<mcqg::EntropyBase>(s, mcqg::parse_entropy_base, "entropy base");
}

mcqg::EnsemblePrediction make_prediction(std::vector<std::vector<double>> members, mcqg::Purpose purpose) {
    mcqg::EnsemblePrediction p;
    p.question_id = "<python>";
    p.labels = mcqg::label_space(purpose);
    p.members = std::move(members);
    mcqg::validate_prediction(p);
    return p;
}

py::dict sim_result_dict(const mcqg::SimResult& r) {
    // Round-trip through the JSON form so Python sees the same keys as the CLI.
    return py::module_::import("json").attr("loads")(mcqg::to_json(r).dump());
}

mcqg::RunConfig config_from(const py::dict& options) {
    mcqg::RunConfig c;
    auto path = [&](const char* key, std::optional<std::filesystem::path>& dst) {
        if (options.contains(key) && !options[key].is_none()) dst = py::str(options[key]).cast<std::string>();
    };
    path("dataset", c.dataset);
    path("dev_dataset", c.dev_dataset);
    path("generations", c.generations);
    path("mcmrc_preds", c.mcmrc_preds);
    path("qc_preds", c.qc_preds);
    path("lexicon", c.lexicon);
    path("grammar_report", c.grammar_report);
    path("kept", c.kept_out);
    path("augment", c.augment_out);
    if (options.contains("split")) {
        c.split = parse_or_throw<mcqg::Split>(options["split"].cast<std::string>(), mcqg::parse_split, "split");
    }
    if (options.contains("entropy_base")) c.entropy_base = base_of(options["entropy_base"].cast<std::string>());
    if (options.contains("diversity_scheme")) {
        c.diversity_scheme = parse_or_throw<mcqg::DiversityScheme>(options["diversity_scheme"].cast<std::string>(),
                                                                   mcqg::parse_diversity_scheme, "diversity scheme");
    }
    if (options.contains("agreement")) {
        c.agreement = parse_or_throw<mcqg::AgreementMode>(options["agreement"].cast<std::string>(),
                                                          mcqg::parse_agreement_mode, "agreement mode");
    }
    if (options.contains("separator")) c.separator = options["separator"].cast<std::string>();
    if (options.contains("grid_step")) c.grid_step = options["grid_step"].cast<double>();
    if (options.contains("seed")) c.seed = options["seed"].cast<std::uint64_t>();
    if (options.contains("threads")) c.threads = options["threads"].cast<unsigned>();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Assessment toolkit for multiple-choice question generation";

    py::register_exception<mcqg::Error>(m, "Error", PyExc_ValueError);

    py::enum_<mcqg::ParseStatus>(m, "ParseStatus")
        .value("Ok", mcqg::ParseStatus::Ok)
        .value("TooFewSegments", mcqg::ParseStatus::TooFewSegments)
        .value("EmptySegment", mcqg::ParseStatus::EmptySegment);

    py::class_<mcqg::GeneratedOutput>(m, "GeneratedOutput")
        .def_readonly("context_id", &mcqg::GeneratedOutput::context_id)
        .def_readonly("raw", &mcqg::GeneratedOutput::raw)
        .def_readonly("question", &mcqg::GeneratedOutput::question)
        .def_readonly("options", &mcqg::GeneratedOutput::options)
        .def_readonly("parse_status", &mcqg::GeneratedOutput::parse_status)
        .def("ok", &mcqg::GeneratedOutput::ok);

    py::class_<mcqg::MCQExample>(m, "MCQExample")
        .def_readonly("example_id", &mcqg::MCQExample::example_id)
        .def_readonly("context_id", &mcqg::MCQExample::context_id)
        .def_readonly("context", &mcqg::MCQExample::context)
        .def_readonly("question", &mcqg::MCQExample::question)
        .def_readonly("options", &mcqg::MCQExample::options)
        .def_readonly("correct_index", &mcqg::MCQExample::correct_index)
        .def_property_readonly("difficulty", [](const mcqg::MCQExample& ex) -> std::optional<std::string> {
            if (!ex.difficulty) return std::nullopt;
            return std::string(mcqg::to_string(*ex.difficulty));
        });

    m.def("parse_generated", &mcqg::parse_generated, py::arg("raw"), py::arg("separator") = "[SEP]");
    m.def("unique_option_count", &mcqg::unique_option_count);
    m.def(
        "load_dataset",
        [](const std::filesystem::path& path, const std::string& split) {
            return mcqg::load_dataset(path, parse_or_throw<mcqg::Split>(split, mcqg::parse_split, "split"));
        },
        py::arg("path"), py::arg("split") = "Evl");

    m.def(
        "entropy", [](const std::vector<double>& p, const std::string& base) { return mcqg::entropy(p, base_of(base)); },
        py::arg("p"), py::arg("base") = "nats");
    m.def(
        "expected_entropy",
        [](std::vector<std::vector<double>> members, const std::string& base) {
            return mcqg::expected_entropy(make_prediction(std::move(members), mcqg::Purpose::Mcmrc), base_of(base));
        },
        py::arg("members"), py::arg("base") = "nats");
    m.def("complexity_score", [](std::vector<std::vector<double>> members) {
        return mcqg::complexity_score(make_prediction(std::move(members), mcqg::Purpose::Qc));
    });
    m.def("classify_question_type",
          [](const std::string& q) { return std::string(mcqg::to_string(mcqg::classify_question_type(q))); });
    m.def("classify_standalone",
          [](const std::string& q) { return std::string(mcqg::to_string(mcqg::classify_standalone(q))); });
    m.def(
        "diversity",
        [](const std::vector<std::string>& questions, const std::string& scheme) {
            const auto r = mcqg::diversity(
                questions, parse_or_throw<mcqg::DiversityScheme>(scheme, mcqg::parse_diversity_scheme, "scheme"));
            py::dict hist;
            for (const auto& [cls, n] : r.histogram) hist[py::str(cls)] = n;
            return py::make_tuple(r.value_bits, hist);
        },
        py::arg("questions"), py::arg("scheme") = "binary");
    m.def("naive_grammar_errors", &mcqg::naive_grammar_errors);
    m.def("grammar_rate", [](const std::vector<int>& counts, std::size_t n) { return mcqg::grammar_rate(counts, n); });
    m.def("macro_f1", [](const std::vector<std::string>& pred, const std::vector<std::string>& truth,
                         const std::vector<std::string>& classes) { return mcqg::macro_f1(pred, truth, classes); });
    m.def("ensemble_first_agreement",
          [](std::vector<std::vector<double>> members, const std::string& mode) {
              return mcqg::ensemble_first_agreement(
                  make_prediction(std::move(members), mcqg::Purpose::Mcmrc),
                  parse_or_throw<mcqg::AgreementMode>(mode, mcqg::parse_agreement_mode, "agreement mode"));
          },
          py::arg("members"), py::arg("mode") = "per_member");

    m.def("exact_match_closed_form", &mcqg::exact_match_closed_form, py::arg("p_star"), py::arg("J"));
    m.def("overlap_score", [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        return mcqg::overlap_score(a, b);
    });
    m.def(
        "simulate_exact_match",
        [](const std::vector<double>& probs, const std::vector<int>& J, std::size_t trials, std::uint64_t seed) {
            const auto posterior = mcqg::SimPosterior::explicit_distribution(probs);
            return sim_result_dict(mcqg::simulate_exact_match(posterior, {J, trials, seed, 1}));
        },
        py::arg("probs"), py::arg("J"), py::arg("trials"), py::arg("seed") = 0);
    m.def(
        "simulate_overlap",
        [](const std::vector<std::vector<double>>& positions, const std::vector<int>& J, std::size_t trials,
           std::uint64_t seed) {
            const auto posterior = mcqg::SimPosterior::positionwise(positions);
            return sim_result_dict(mcqg::simulate_overlap(posterior, {J, trials, seed, 1}));
        },
        py::arg("positions"), py::arg("J"), py::arg("trials"), py::arg("seed") = 0);
    m.def("zipf", [](std::size_t m_outcomes, double exponent) {
        return mcqg::SimPosterior::zipf(m_outcomes, exponent).rows().front();
    }, py::arg("M"), py::arg("exponent") = 1.0);

    m.def(
        "run_command",
        [](const std::string& name, const py::dict& options) {
            const auto config = config_from(options);
            mcqg::CommandOutput out;
            if (name == "assess") out = mcqg::cmd_assess(config);
            else if (name == "filter") out = mcqg::cmd_filter(config);
            else if (name == "tune-vocab") out = mcqg::cmd_tune_vocab(config);
            else if (name == "baselines") out = mcqg::cmd_baselines(config);
            else if (name == "stats") out = mcqg::cmd_stats(config);
            else if (name == "validate") out = mcqg::cmd_validate(config);
            else throw py::value_error("unknown command " + name);
            return out.json.dump();
        },
        py::arg("name"), py::arg("options"));
}
