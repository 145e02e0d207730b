#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "mcqg/corpus.hpp"
#include "mcqg/error.hpp"
#include "mcqg/text.hpp"

using namespace mcqg;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

std::vector<MCQExample> read(const std::string& text) {
    std::istringstream in(text);
    return read_dataset(in, Split::Evl, "fixture");
}

const char* kRecord =
    R"({"example_id": "e1", "context_id": "c1", "context": "Some text.", "question": "Why?", "options": ["a", "b", "c", "d"], "answer": "C", "difficulty": "hard"})";

}  // namespace

TEST_CASE("tokenize strips punctuation and lower-cases") {
    CHECK(text::tokenize("What's the \"Best\" title?") == std::vector<std::string>{"what's", "the", "best", "title"});
    CHECK(text::tokenize("  \t ") .empty());
    CHECK(text::tokenize("a b") == std::vector<std::string>{"a", "b"});
    CHECK(text::tokenize("“Quoted” ...") == std::vector<std::string>{"quoted"});
}

TEST_CASE("trim handles unicode whitespace only at the ends") {
    CHECK(text::trim("　 a b \n") == "a b");
    CHECK(text::trim("") == "");
}

TEST_CASE("dataset records map answer letters to indices") {
    const auto ds = read(std::string(kRecord) + "\n");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].correct_index == 2);
    CHECK(ds[0].difficulty == Difficulty::Hard);
    CHECK(ds[0].split == Split::Evl);
    CHECK(ds[0].options.size() == 4);
}

TEST_CASE("empty dataset loads as an empty list") {
    CHECK(read("").empty());
    CHECK(read("\n  \n").empty());
}

TEST_CASE("dataset validation errors") {
    SUBCASE("answer letter E") {
        auto bad = std::string(kRecord);
        bad.replace(bad.find("\"C\""), 3, "\"E\"");
        CHECK(kind_of([&] { read(bad); }) == ErrorKind::UnknownAnswerLetter);
    }
    SUBCASE("duplicate id") {
        CHECK(kind_of([&] { read(std::string(kRecord) + "\n" + kRecord); }) == ErrorKind::DuplicateExampleId);
    }
    SUBCASE("bad json carries the line number") {
        try {
            read(std::string(kRecord) + "\n{not json\n");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::MalformedRecord);
            CHECK(std::string(e.what()).find("fixture:2") != std::string::npos);
        }
    }
    SUBCASE("answer beyond the options") {
        CHECK(kind_of([] {
                  read(R"({"example_id": "e", "context_id": "c", "context": "x", "question": "q", "options": ["a", "b"], "answer": "D"})");
              }) == ErrorKind::MalformedRecord);
    }
    SUBCASE("blank question") {
        CHECK(kind_of([] {
                  read(R"({"example_id": "e", "context_id": "c", "context": "x", "question": "  ", "options": ["a", "b"], "answer": "A"})");
              }) == ErrorKind::MalformedRecord);
    }
    SUBCASE("single option") {
        CHECK(kind_of([] {
                  read(R"({"example_id": "e", "context_id": "c", "context": "x", "question": "q", "options": ["a"], "answer": "A"})");
              }) == ErrorKind::MalformedRecord);
    }
    SUBCASE("missing file is an io error") {
        CHECK(kind_of([] { load_dataset("/nonexistent/file.jsonl", Split::Dev); }) == ErrorKind::Io);
    }
}

TEST_CASE("write_dataset round trips and loading is deterministic") {
    const auto ex = fixtures::race_like({{{5, 2}, {7, 3}, {2, 1}}}, Split::Dev);
    fixtures::TempDir dir;
    write_dataset(ex, dir / "d.jsonl");
    const auto a = load_dataset(dir / "d.jsonl", Split::Dev);
    const auto b = load_dataset(dir / "d.jsonl", Split::Dev);
    REQUIRE(a.size() == ex.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].example_id == ex[i].example_id);
        CHECK(a[i].correct_index == ex[i].correct_index);
        CHECK(a[i].difficulty == ex[i].difficulty);
        CHECK(a[i].example_id == b[i].example_id);
    }
}

TEST_CASE("split statistics reproduce the published table") {
    for (const auto& [spec, split] : {std::pair{fixtures::kRaceTrn, Split::Trn}, std::pair{fixtures::kRaceDev, Split::Dev},
                                      std::pair{fixtures::kRaceEvl, Split::Evl}}) {
        const auto stats = compute_split_stats(fixtures::race_like(spec, split));
        std::size_t total = 0;
        for (auto d : kDifficulties) {
            const auto i = static_cast<std::size_t>(d);
            CHECK(stats[d].questions == spec[i].questions);
            CHECK(stats[d].contexts == spec[i].contexts);
            total += spec[i].questions;
        }
        CHECK(stats.total_questions() == total);
        CHECK(stats.unlabeled_questions == 0);
    }
    const auto evl = compute_split_stats(fixtures::race_like(fixtures::kRaceEvl, Split::Evl));
    CHECK(evl[Difficulty::Easy].questions == 1436);
    CHECK(evl[Difficulty::Medium].questions == 3498);
    CHECK(evl[Difficulty::Hard].questions == 708);
}

TEST_CASE("parse_generated") {
    SUBCASE("plain split") {
        const auto g = parse_generated("Q [SEP] a [SEP] b [SEP] c [SEP] d");
        CHECK(g.parse_status == ParseStatus::Ok);
        CHECK(g.question == "Q");
        CHECK(g.options == std::vector<std::string>{"a", "b", "c", "d"});
    }
    SUBCASE("no separator") {
        const auto g = parse_generated("Q");
        CHECK(g.parse_status == ParseStatus::TooFewSegments);
        CHECK(g.options.empty());
    }
    SUBCASE("empty segment is preserved") {
        const auto g = parse_generated("Q [SEP] a [SEP] [SEP] c");
        CHECK(g.parse_status == ParseStatus::EmptySegment);
        CHECK(g.options == std::vector<std::string>{"a", "", "c"});
    }
    SUBCASE("custom separator") {
        const auto g = parse_generated("Q <s> x <s> y", "<s>");
        CHECK(g.ok());
        CHECK(g.options == std::vector<std::string>{"x", "y"});
    }
    SUBCASE("empty separator is rejected") {
        CHECK(kind_of([] { parse_generated("Q", ""); }) == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("parse and join round trip") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> words{"alpha", "B", "gamma delta", "été", "x?", "1", "Zed"};
    std::uniform_int_distribution<std::size_t> w(0, words.size() - 1), n(1, 6);
    for (int trial = 0; trial < 500; ++trial) {
        const auto q = words[w(rng)] + " " + words[w(rng)];
        std::vector<std::string> opts(n(rng));
        for (auto& o : opts) o = words[w(rng)];
        const auto g = parse_generated(join_generated(q, opts));
        REQUIRE(g.ok());
        CHECK(g.question == q);
        CHECK(g.options == opts);
    }
}

TEST_CASE("unique option counting") {
    CHECK(unique_option_count(parse_generated("Q [SEP] a [SEP] b [SEP] c [SEP] d")) == 4);
    CHECK(unique_option_count(parse_generated("Q [SEP] a [SEP] a [SEP] b [SEP] c")) == 3);
    CHECK(unique_option_count(parse_generated("Q [SEP] a [SEP]  a  [SEP] b [SEP] c")) == 3);
    CHECK(unique_option_count(parse_generated("Q [SEP] a [SEP] A [SEP] b [SEP] c")) == 4);
    CHECK(kind_of([] { unique_option_count(parse_generated("Q")); }) == ErrorKind::NotParsed);
}

TEST_CASE("generation files reject repeated contexts") {
    std::istringstream ok(R"({"context_id": "c1", "raw": "Q [SEP] a"})"
                          "\n"
                          R"({"context_id": "c2", "raw": "Q"})");
    const auto gens = read_generations(ok);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].ok());
    CHECK(gens[1].parse_status == ParseStatus::TooFewSegments);

    std::istringstream dup(R"({"context_id": "c1", "raw": "Q [SEP] a"})"
                           "\n"
                           R"({"context_id": "c1", "raw": "Q"})");
    CHECK(kind_of([&] { read_generations(dup); }) == ErrorKind::DuplicateQuestionId);
}
