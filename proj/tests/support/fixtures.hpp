#pragma once
// Synthetic fixtures shared by the unit and acceptance suites.

#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "mcqg/corpus.hpp"
#include "mcqg/predictions.hpp"

namespace fixtures {

// Per-subset (M/H/C) question and context counts for one split.
struct SubsetSpec {
    std::size_t questions;
    std::size_t contexts;
};
using SplitSpec = std::array<SubsetSpec, 3>;  // easy, medium, hard

// Published RACE++ statistics.
inline constexpr SplitSpec kRaceTrn{{{25421, 6409}, {62445, 18728}, {12702, 2437}}};
inline constexpr SplitSpec kRaceDev{{{1436, 368}, {3451, 1021}, {712, 136}}};
inline constexpr SplitSpec kRaceEvl{{{1436, 362}, {3498, 1045}, {708, 135}}};

// A dataset whose label and context counts equal `spec`. Question i of a subset
// goes to context i mod contexts, so every context is used.
inline std::vector<mcqg::MCQExample> race_like(const SplitSpec& spec, mcqg::Split split) {
    static constexpr std::array<const char*, 3> kPrefix{"m", "h", "c"};
    std::vector<mcqg::MCQExample> out;
    for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t i = 0; i < spec[s].questions; ++i) {
            mcqg::MCQExample ex;
            const auto ctx = i % spec[s].contexts;
            ex.example_id = std::string(kPrefix[s]) + "-q" + std::to_string(i);
            ex.context_id = std::string(kPrefix[s]) + "-c" + std::to_string(ctx);
            ex.context = "Passage number " + std::to_string(ctx) + " of the reading set.";
            ex.question = "What does passage " + std::to_string(ctx) + " say?";
            ex.options = {"first", "second", "third", "fourth"};
            ex.correct_index = i % 4;
            ex.split = split;
            ex.difficulty = static_cast<mcqg::Difficulty>(s);
            out.push_back(std::move(ex));
        }
    }
    return out;
}

// A scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("mcqg-test-" + std::to_string(stamp) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<double> one_hot(std::size_t index, std::size_t n) {
    std::vector<double> row(n, 0.0);
    row[index] = 1.0;
    return row;
}

inline mcqg::EnsemblePrediction prediction(std::string id, mcqg::Purpose purpose,
                                           std::vector<std::vector<double>> members) {
    mcqg::EnsemblePrediction p;
    p.question_id = std::move(id);
    p.labels = mcqg::label_space(purpose);
    p.members = std::move(members);
    return p;
}

// Random distribution over n labels with a fraction of exact zeros.
inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> row(n);
    double sum = 0.0;
    for (auto& x : row) {
        x = u(rng) < 0.2 ? 0.0 : u(rng);
        sum += x;
    }
    if (sum == 0.0) {
        row[0] = 1.0;
        return row;
    }
    for (auto& x : row) x /= sum;
    return row;
}

// Planted filter fixture: generations plus a 3-member MCMRC prediction set.
struct FilterFixture {
    std::vector<std::string> generation_lines;  // JSON lines
    std::vector<std::string> prediction_lines;  // header first
    std::size_t n_input = 0;
    std::size_t n_parsed = 0;
    std::size_t n_four_opt = 0;
    std::size_t n_agree = 0;
    std::vector<std::string> kept_ids;
};

// Item kinds are drawn at random and the ground truth is counted while planting.
inline FilterFixture planted_filter_fixture(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<int> pick(1, 3);
    FilterFixture f;
    f.n_input = n;
    f.prediction_lines.push_back(R"({"purpose": "mcmrc", "ensemble_size": 3})");

    auto quote = [](const std::string& s) { return "\"" + s + "\""; };
    auto row = [](const std::vector<double>& r) {
        std::string s = "[";
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + std::to_string(r[i]);
        return s + "]";
    };

    for (std::size_t i = 0; i < n; ++i) {
        const std::string id = "g" + std::to_string(i);
        const int k = kind(rng);
        std::string raw;
        bool parsed = true, four = true;
        switch (k) {
            case 0:  // planted trimmed duplicate
                raw = "Why did it happen? [SEP] rain [SEP]  rain  [SEP] wind [SEP] snow";
                four = false;
                break;
            case 1:  // three options
                raw = "Who wrote it? [SEP] Ann [SEP] Bob [SEP] Cy";
                four = false;
                break;
            case 2:  // unparseable
                raw = "Where is the passage set?";
                parsed = false;
                four = false;
                break;
            default:
                raw = "What is item " + std::to_string(i) + "? [SEP] a" + std::to_string(i) + " [SEP] b [SEP] c [SEP] d";
                break;
        }
        f.generation_lines.push_back("{\"context_id\": " + quote(id) + ", \"raw\": " + quote(raw) + "}");
        if (parsed) ++f.n_parsed;
        if (!four) continue;
        ++f.n_four_opt;

        // Agreeing items: every member peaks on A. Planted disagreement: one member peaks elsewhere.
        std::vector<std::vector<double>> members(3, std::vector<double>{0.7, 0.1, 0.1, 0.1});
        const bool agree = k != 3;
        if (!agree) members[static_cast<std::size_t>(pick(rng)) - 1] = {0.1, 0.6, 0.2, 0.1};
        if (agree) {
            ++f.n_agree;
            f.kept_ids.push_back(id);
        }
        std::string line = "{\"question_id\": " + quote(id) + ", \"labels\": [\"A\", \"B\", \"C\", \"D\"], \"members\": [";
        for (std::size_t m = 0; m < 3; ++m) line += (m ? ", " : "") + row(members[m]);
        f.prediction_lines.push_back(line + "]}");
    }
    return f;
}

inline std::string join_lines(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

}  // namespace fixtures
