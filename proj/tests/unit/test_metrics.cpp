#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mcqg/error.hpp"
#include "mcqg/metrics.hpp"
#include "oracles.hpp"

using namespace mcqg;
using doctest::Approx;

TEST_CASE("entropy examples") {
    const std::vector<double> one_hot{1, 0, 0, 0}, uniform{0.25, 0.25, 0.25, 0.25};
    CHECK(entropy(one_hot, EntropyBase::Nats) == 0.0);
    CHECK(entropy(one_hot, EntropyBase::Bits) == 0.0);
    CHECK(entropy(uniform, EntropyBase::Bits) == Approx(2.0).epsilon(1e-12));
    CHECK(entropy(uniform, EntropyBase::Nats) == Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(entropy(std::vector<double>{0.5, 0.25, 0.25}, EntropyBase::Bits) == Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(entropy(std::vector<double>{0.5, 0.4}, EntropyBase::Bits), Error);
    CHECK_THROWS_AS(entropy(std::vector<double>{1.5, -0.5}, EntropyBase::Bits), Error);
}

TEST_CASE("entropy is permutation invariant and maximal at uniform") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 6;
        auto p = fixtures::random_distribution(rng, n);
        const double h = entropy(p, EntropyBase::Bits);
        CHECK(h >= 0.0);
        CHECK(h <= std::log2(static_cast<double>(n)) + 1e-12);
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(entropy(p, EntropyBase::Bits) == Approx(h).epsilon(1e-12));
        const std::vector<double> u(n, 1.0 / static_cast<double>(n));
        CHECK(entropy(u, EntropyBase::Bits) == Approx(std::log2(static_cast<double>(n))).epsilon(1e-12));
    }
}

TEST_CASE("expected entropy averages member entropies") {
    using fixtures::prediction;
    CHECK(expected_entropy(prediction("q", Purpose::Mcmrc, {{1, 0, 0, 0}, {0, 0, 1, 0}}), EntropyBase::Nats) == 0.0);
    CHECK(expected_entropy(prediction("q", Purpose::Mcmrc, std::vector<std::vector<double>>(3, {0.25, 0.25, 0.25, 0.25})),
                           EntropyBase::Nats) == Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(expected_entropy(prediction("q", Purpose::Mcmrc, {{1, 0, 0, 0}, {0.25, 0.25, 0.25, 0.25}}), EntropyBase::Bits) ==
          Approx(1.0).epsilon(1e-12));

    // Opposing one-hot members: the mean is maximally uncertain but every member is certain.
    const auto opposing = prediction("q", Purpose::Mcmrc, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(expected_entropy(opposing, EntropyBase::Bits) == 0.0);
    CHECK(entropy(mean_distribution(opposing), EntropyBase::Bits) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unanswerability") {
    PredictionSet set(Purpose::Mcmrc, 2);
    set.insert(fixtures::prediction("a", Purpose::Mcmrc, {{1, 0, 0, 0}, {1, 0, 0, 0}}));
    set.insert(fixtures::prediction("b", Purpose::Mcmrc, {{1, 0, 0, 0}, {1, 0, 0, 0}}));
    set.insert(fixtures::prediction("u", Purpose::Mcmrc, std::vector<std::vector<double>>(2, {0.25, 0.25, 0.25, 0.25})));
    const std::vector<std::string> sharp{"a", "b"}, all{"a", "b", "u"}, missing{"a", "x"};
    CHECK(unanswerability(set, sharp, EntropyBase::Nats).mean == 0.0);
    CHECK(unanswerability(set, std::vector<std::string>{"u"}, EntropyBase::Nats).mean == Approx(std::log(4.0)));
    const auto scored = unanswerability(set, all, EntropyBase::Bits);
    CHECK(scored.per_question == std::vector<double>{0.0, 0.0, 2.0});
    CHECK(scored.mean == Approx(2.0 / 3.0));
    CHECK_THROWS_AS(unanswerability(set, missing, EntropyBase::Nats), Error);
    CHECK_THROWS_AS(unanswerability(set, std::vector<std::string>{}, EntropyBase::Nats), Error);
}

TEST_CASE("question type classification") {
    auto type = [](const char* q) { return std::string(to_string(classify_question_type(q))); };
    CHECK(type("What is the best title?") == "what");
    CHECK(type("Is the author happy?") == "yesno");
    CHECK(type("In which year was he born?") == "which");
    CHECK(type("Whose bag was it?") == "who");
    CHECK(type("To whom did she write?") == "who");
    CHECK(type("Does the writer agree?") == "yesno");
    CHECK(type("The author thinks that ____.") == "other");
    CHECK(type("According to the passage, why did Tom leave?") == "why");
    CHECK(type("When was King Henry born") == "when");
    CHECK(type("HOW MANY PEOPLE CAME?") == "how");
    CHECK(type("Isn't it strange?") == "yesno");
    CHECK_THROWS_AS(classify_question_type("   "), Error);
}

TEST_CASE("stand-alone classification") {
    auto cls = [](const char* q) { return std::string(to_string(classify_standalone(q))); };
    CHECK(cls("What is the best title for this passage?") == "passage_dependent");
    CHECK(cls("When was King Henry born?") == "standalone");
    CHECK(cls("Passages of time are measured how?") == "standalone");
    CHECK(cls("The PASSAGE mainly tells us ____.") == "passage_dependent");
    CHECK_THROWS_AS(classify_standalone(""), Error);
}

TEST_CASE("diversity") {
    const std::vector<std::string> standalone(50, "When was King Henry born?");
    const std::vector<std::string> dependent(50, "What is the best title for this passage?");
    auto mixed = standalone;
    mixed.insert(mixed.end(), dependent.begin(), dependent.end());
    CHECK(diversity(mixed, DiversityScheme::Binary).value_bits == Approx(1.0).epsilon(1e-12));
    CHECK(diversity(standalone, DiversityScheme::Binary).value_bits == 0.0);
    CHECK(diversity(standalone, DiversityScheme::EightWay).value_bits == 0.0);

    std::vector<std::string> skewed(77, "Who is he?");
    skewed.insert(skewed.end(), 23, "What does the passage say?");
    const double h = diversity(skewed, DiversityScheme::Binary).value_bits;
    CHECK(h == Approx(-(0.77 * std::log2(0.77) + 0.23 * std::log2(0.23))).epsilon(1e-12));
    CHECK(h == Approx(0.7780).epsilon(1e-4));

    const auto eight = diversity(std::vector<std::string>{"What?", "Who?", "When?", "Where?", "Why?", "How?", "Which?", "Is it?"},
                                 DiversityScheme::EightWay);
    CHECK(eight.value_bits == Approx(3.0).epsilon(1e-12));
    CHECK(eight.histogram.size() == 9);
    CHECK(eight.histogram.back().first == "other");
    CHECK(eight.histogram.back().second == 0);

    CHECK_THROWS_AS(diversity(std::vector<std::string>{}, DiversityScheme::Binary), Error);
}

TEST_CASE("diversity is invariant to order and to duplicating the set") {
    const std::vector<std::string> pool{"What is it?", "Who came?", "Is it the passage?", "Why not?",
                                        "Which one is in the passage?", "The end ____.", "How old?"};
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> qs(1 + trial % 30);
        for (auto& q : qs) q = pool[pick(rng)];
        for (auto scheme : {DiversityScheme::Binary, DiversityScheme::EightWay}) {
            const double d = diversity(qs, scheme).value_bits;
            auto shuffled = qs;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            auto doubled = qs;
            doubled.insert(doubled.end(), qs.begin(), qs.end());
            CHECK(diversity(shuffled, scheme).value_bits == Approx(d).epsilon(1e-12));
            CHECK(diversity(doubled, scheme).value_bits == Approx(d).epsilon(1e-12));
            CHECK(d <= std::log2(scheme == DiversityScheme::Binary ? 2.0 : 9.0) + 1e-12);
        }
    }
}

TEST_CASE("complexity score") {
    using fixtures::prediction;
    CHECK(complexity_score(prediction("q", Purpose::Qc, {{1, 0, 0}})) == 0.0);
    CHECK(complexity_score(prediction("q", Purpose::Qc, {{0, 1, 0}})) == 0.5);
    CHECK(complexity_score(prediction("q", Purpose::Qc, {{0, 0, 1}})) == 1.0);
    CHECK(complexity_score(prediction("q", Purpose::Qc, {{0.2, 0.5, 0.3}})) == Approx(0.55).epsilon(1e-12));
    CHECK(complexity_score(prediction("q", Purpose::Qc, {{1, 0, 0}, {0, 0, 1}})) == Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(complexity_score(prediction("q", Purpose::Mcmrc, {{1, 0, 0, 0}})), Error);
}

TEST_CASE("complexity score is affine in the mean distribution") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto u = fixtures::random_distribution(rng, 3);
        const auto v = fixtures::random_distribution(rng, 3);
        const double a = unit(rng);
        std::vector<double> mix(3);
        for (int c = 0; c < 3; ++c) mix[c] = a * u[c] + (1 - a) * v[c];
        const double lhs = complexity_score(fixtures::prediction("m", Purpose::Qc, {mix}));
        const double rhs = a * complexity_score(fixtures::prediction("u", Purpose::Qc, {u})) +
                           (1 - a) * complexity_score(fixtures::prediction("v", Purpose::Qc, {v}));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
        CHECK(lhs >= 0.0);
        CHECK(lhs <= 1.0);
    }
}

TEST_CASE("grammar") {
    CHECK(naive_grammar_errors("what is this") == 2);
    CHECK(naive_grammar_errors("What is this?") == 0);
    CHECK(naive_grammar_errors("What is \"this?") == 1);
    CHECK(naive_grammar_errors("What (is this?") == 1);
    CHECK(naive_grammar_errors("What ]is[ this?") == 1);
    CHECK(grammar_rate(std::vector<int>{0, 0, 0}, 3) == 0.0);
    CHECK(grammar_rate(std::vector<int>{1, 0, 1}, 3) == Approx(2.0 / 3.0));
    CHECK_THROWS_AS(grammar_rate(std::vector<int>{}, 0), Error);

    fixtures::TempDir dir;
    fixtures::write_text(dir / "g.jsonl", "{\"question_id\": \"a\", \"errors\": 2}\n{\"question_id\": \"b\", \"errors\": 0}\n");
    const auto report = load_grammar_report(dir / "g.jsonl");
    CHECK(report.at("a") == 2);
    CHECK(report.at("b") == 0);
}

TEST_CASE("macro F1 examples") {
    const std::vector<std::string> classes{"easy", "medium", "hard"};
    const std::vector<std::string> truth{"easy", "medium", "hard", "hard"};
    CHECK(macro_f1(truth, truth, classes) == 1.0);

    // Majority-class predictor from label counts.
    std::vector<std::string> evl;
    evl.insert(evl.end(), 1436, "easy");
    evl.insert(evl.end(), 3498, "medium");
    evl.insert(evl.end(), 708, "hard");
    const std::vector<std::string> all_medium(evl.size(), "medium");
    CHECK(macro_f1(all_medium, evl, classes) == Approx(0.2551).epsilon(5e-5));
    CHECK(accuracy(all_medium, evl) == Approx(0.6200).epsilon(5e-5));

    CHECK_THROWS_AS(macro_f1(std::vector<std::string>{"easy"}, truth, classes), Error);
    CHECK_THROWS_AS(macro_f1(std::vector<std::string>{"x"}, std::vector<std::string>{"easy"}, classes), Error);
}

TEST_CASE("macro F1 equals the per-class counting oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const auto inst = oracles::random_labels(rng, 100, 5);
        CHECK(macro_f1(inst.predicted, inst.truth, inst.classes) ==
              oracles::macro_f1(inst.predicted, inst.truth, inst.classes));
    }
}
