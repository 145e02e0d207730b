#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "mcqg/error.hpp"
#include "mcqg/filterpipe.hpp"

using namespace mcqg;

namespace {

EnsemblePrediction mcmrc(std::string id, std::vector<std::vector<double>> rows) {
    return fixtures::prediction(std::move(id), Purpose::Mcmrc, std::move(rows));
}

GeneratedOutput gen(std::string id, std::string_view raw) {
    auto g = parse_generated(raw);
    g.context_id = std::move(id);
    return g;
}

std::vector<GeneratedOutput> reparse(const std::vector<GeneratedOutput>& gens) {
    std::vector<GeneratedOutput> out;
    for (const auto& g : gens) out.push_back(gen(g.context_id, g.raw));
    return out;
}

}  // namespace

TEST_CASE("four-option check") {
    CHECK(check_four_options(parse_generated("Q [SEP] a [SEP] b [SEP] c [SEP] d")));
    CHECK_FALSE(check_four_options(parse_generated("Q [SEP] a [SEP] b [SEP] c [SEP] d [SEP] e")));
    CHECK_FALSE(check_four_options(parse_generated("Q [SEP] a [SEP] b [SEP] a [SEP] d")));
    CHECK_FALSE(check_four_options(parse_generated("Q [SEP] a [SEP] b [SEP] c")));
    CHECK_THROWS_AS(check_four_options(parse_generated("Q")), Error);
}

TEST_CASE("ensemble first-option agreement") {
    const auto all_a = mcmrc("q", {{0.7, 0.1, 0.1, 0.1}, {0.4, 0.3, 0.2, 0.1}, {0.9, 0, 0, 0.1}});
    CHECK(ensemble_first_agreement(all_a));
    CHECK(ensemble_first_agreement(all_a, AgreementMode::MeanArgmax));

    const auto one_b = mcmrc("q", {{0.7, 0.1, 0.1, 0.1}, {0.1, 0.6, 0.2, 0.1}, {0.9, 0, 0, 0.1}});
    CHECK_FALSE(ensemble_first_agreement(one_b));
    CHECK(ensemble_first_agreement(one_b, AgreementMode::MeanArgmax));

    const auto uniform = mcmrc("q", std::vector<std::vector<double>>(3, {0.25, 0.25, 0.25, 0.25}));
    CHECK(ensemble_first_agreement(uniform));
    CHECK(ensemble_first_agreement(uniform, AgreementMode::MeanArgmax));

    CHECK_THROWS_AS(ensemble_first_agreement(fixtures::prediction("q", Purpose::Qc, {{1, 0, 0}})), Error);
}

TEST_CASE("with one member both agreement modes coincide") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        auto row = fixtures::random_distribution(rng, 4);
        if (trial % 7 == 0) row = {0.4, 0.4, 0.1, 0.1};
        const auto p = mcmrc("q", {row});
        CHECK(ensemble_first_agreement(p, AgreementMode::PerMemberArgmax) ==
              ensemble_first_agreement(p, AgreementMode::MeanArgmax));
    }
}

TEST_CASE("ten-item constructed filter fixture") {
    // 8 of 10 have four unique options; 5 of those 8 agree.
    std::vector<GeneratedOutput> gens;
    PredictionSet preds(Purpose::Mcmrc, 1);
    for (int i = 0; i < 10; ++i) {
        const auto id = "g" + std::to_string(i);
        if (i == 8) {
            gens.push_back(gen(id, "Q? [SEP] a [SEP] a [SEP] b [SEP] c"));
            continue;
        }
        if (i == 9) {
            gens.push_back(gen(id, "Q?"));
            continue;
        }
        gens.push_back(gen(id, "Q? [SEP] a [SEP] b [SEP] c [SEP] d"));
        preds.insert(mcmrc(id, {i < 5 ? fixtures::one_hot(0, 4) : fixtures::one_hot(2, 4)}));
    }
    const auto r = filter_set(gens, preds);
    CHECK(r.summary.n_input == 10);
    CHECK(r.summary.n_four_opt == 8);
    CHECK(r.summary.n_agree == 5);
    CHECK(*r.summary.four_opt_rate() == 0.8);
    CHECK(*r.summary.accuracy() == 0.625);
    CHECK(*r.summary.four_opt_rate_parsed() == doctest::Approx(8.0 / 9.0));
    REQUIRE(r.kept.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(r.kept[static_cast<std::size_t>(i)].context_id == "g" + std::to_string(i));
    for (const auto& o : r.outcomes) CHECK(o.kept == (o.four_unique && o.ensemble_agrees_first));
}

TEST_CASE("empty input yields an empty summary") {
    const auto r = filter_set(std::vector<GeneratedOutput>{}, PredictionSet(Purpose::Mcmrc, 3));
    CHECK(r.summary.n_input == 0);
    CHECK_FALSE(r.summary.four_opt_rate().has_value());
    CHECK_FALSE(r.summary.accuracy().has_value());
    CHECK(r.kept.empty());
}

TEST_CASE("a four-option generation without a prediction is an error") {
    const std::vector<GeneratedOutput> gens{gen("g", "Q? [SEP] a [SEP] b [SEP] c [SEP] d")};
    try {
        filter_set(gens, PredictionSet(Purpose::Mcmrc, 1));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingPrediction);
    }
}

TEST_CASE("planted fixture: counts, idempotence and kept accuracy") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto f = fixtures::planted_filter_fixture(200, seed);
        std::istringstream gin(fixtures::join_lines(f.generation_lines));
        std::istringstream pin(fixtures::join_lines(f.prediction_lines));
        const auto gens = read_generations(gin);
        const auto preds = read_predictions(pin, Purpose::Mcmrc);

        const auto first = filter_set(gens, preds);
        CHECK(first.summary.n_input == f.n_input);
        CHECK(first.summary.n_parsed == f.n_parsed);
        CHECK(first.summary.n_four_opt == f.n_four_opt);
        CHECK(first.summary.n_agree == f.n_agree);
        CHECK(first.summary.n_kept == f.kept_ids.size());

        const auto second = filter_set(reparse(first.kept), preds);
        CHECK(second.summary.n_kept == first.summary.n_kept);
        CHECK(*second.summary.accuracy() == 1.0);
        CHECK(*second.summary.four_opt_rate() == 1.0);
        REQUIRE(second.kept.size() == first.kept.size());
        for (std::size_t i = 0; i < first.kept.size(); ++i) {
            CHECK(second.kept[i].context_id == first.kept[i].context_id);
            CHECK(first.kept[i].context_id == f.kept_ids[i]);
        }
    }
}

TEST_CASE("augmentation export round trips through the dataset loader") {
    fixtures::TempDir dir;
    SUBCASE("empty") {
        export_augmentation(std::vector<MCQExample>{}, dir / "aug.jsonl");
        CHECK(fixtures::read_text(dir / "aug.jsonl").empty());
        CHECK(load_dataset(dir / "aug.jsonl", Split::Trn).empty());
    }
    SUBCASE("five items") {
        std::vector<MCQExample> kept;
        for (int i = 0; i < 5; ++i) {
            const auto g = gen("c" + std::to_string(i), "Why " + std::to_string(i) + "? [SEP] yes [SEP] no [SEP] maybe [SEP] never");
            kept.push_back(make_augmentation_example(g, "Context " + std::to_string(i)));
        }
        export_augmentation(kept, dir / "aug.jsonl");
        const auto back = load_dataset(dir / "aug.jsonl", Split::Trn);
        REQUIRE(back.size() == 5);
        for (const auto& ex : back) {
            CHECK(ex.correct_index == 0);
            CHECK(ex.options.front() == "yes");
        }
    }
    SUBCASE("three options are rejected") {
        auto ex = make_augmentation_example(gen("c", "Q? [SEP] a [SEP] b [SEP] c"), "ctx");
        CHECK_THROWS_AS(export_augmentation(std::vector<MCQExample>{ex}, dir / "aug.jsonl"), Error);
    }
    SUBCASE("unwritable path") {
        try {
            export_augmentation(std::vector<MCQExample>{}, "/nonexistent-dir/aug.jsonl");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::WriteFailure);
        }
    }
}
