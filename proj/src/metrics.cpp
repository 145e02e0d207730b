#include "mcqg/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "jsonl.hpp"
#include "mcqg/error.hpp"
#include "mcqg/text.hpp"

namespace mcqg {

std::string_view to_string(EntropyBase base) noexcept {
    return base == EntropyBase::Nats ? "nats" : "bits";
}

std::optional<EntropyBase> parse_entropy_base(std::string_view s) noexcept {
    if (s == "nats") return EntropyBase::Nats;
    if (s == "bits") return EntropyBase::Bits;
    return std::nullopt;
}

double entropy(std::span<const double> p, EntropyBase base) {
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw Error(ErrorKind::InvalidDistribution, "probability " + std::to_string(v) + " outside [0, 1]");
        }
        sum += v;
    }
    if (p.empty() || std::abs(sum - 1.0) > kRowSumTolerance) {
        throw Error(ErrorKind::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
    }
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * (base == EntropyBase::Bits ? std::log2(v) : std::log(v));
    }
    // -0.0 and rounding noise around a one-hot row.
    return std::max(h, 0.0);
}

double expected_entropy(const EnsemblePrediction& p, EntropyBase base) {
    if (p.members.empty()) throw Error(ErrorKind::InvalidDistribution, "prediction has no members");
    double total = 0.0;
    for (const auto& row : p.members) total += entropy(row, base);
    return total / static_cast<double>(p.members.size());
}

namespace {

template <typename Score>
ScoredSet score_set(const PredictionSet& set, std::span<const std::string> ids, Score&& score) {
    if (ids.empty()) throw Error(ErrorKind::EmptyQuestionSet, "no questions to score");
    ScoredSet out;
    out.ids.assign(ids.begin(), ids.end());
    out.per_question.reserve(ids.size());
    double total = 0.0;
    for (const auto& id : ids) {
        const double v = score(set.at(id));
        out.per_question.push_back(v);
        total += v;
    }
    out.mean = total / static_cast<double>(ids.size());
    return out;
}

}  // namespace

ScoredSet unanswerability(const PredictionSet& set, std::span<const std::string> ids, EntropyBase base) {
    return score_set(set, ids, [base](const EnsemblePrediction& p) { return expected_entropy(p, base); });
}

// ---------------------------------------------------------------------------

std::string_view to_string(QuestionType t) noexcept {
    switch (t) {
        case QuestionType::What: return "what";
        case QuestionType::Who: return "who";
        case QuestionType::When: return "when";
        case QuestionType::Where: return "where";
        case QuestionType::Why: return "why";
        case QuestionType::How: return "how";
        case QuestionType::Which: return "which";
        case QuestionType::YesNo: return "yesno";
        case QuestionType::Other: return "other";
    }
    return "?";
}

std::string_view to_string(StandaloneClass c) noexcept {
    return c == StandaloneClass::Standalone ? "standalone" : "passage_dependent";
}

std::string_view to_string(DiversityScheme s) noexcept {
    return s == DiversityScheme::EightWay ? "eight_way" : "binary";
}

std::optional<DiversityScheme> parse_diversity_scheme(std::string_view s) noexcept {
    if (s == "eight_way") return DiversityScheme::EightWay;
    if (s == "binary") return DiversityScheme::Binary;
    return std::nullopt;
}

namespace {

std::vector<std::string> question_tokens(std::string_view question) {
    if (text::trim(question).empty()) throw Error(ErrorKind::EmptyQuestion, "question is empty");
    return text::tokenize(question);
}

// "what's" -> "what", "who’d" -> "who".
std::string_view before_apostrophe(std::string_view token) {
    const auto ascii = token.find('\'');
    const auto curly = token.find("’");
    return token.substr(0, std::min(ascii, curly));
}

std::optional<QuestionType> wh_type(std::string_view word) {
    static const std::unordered_map<std::string_view, QuestionType> table{
        {"what", QuestionType::What},   {"who", QuestionType::Who},     {"whom", QuestionType::Who},
        {"whose", QuestionType::Who},   {"when", QuestionType::When},   {"where", QuestionType::Where},
        {"why", QuestionType::Why},     {"how", QuestionType::How},     {"which", QuestionType::Which},
    };
    const auto it = table.find(word);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

bool is_auxiliary(std::string_view word) {
    static constexpr std::array<std::string_view, 19> aux{
        "is",     "are", "was",  "were", "do",  "does", "did",   "can",  "could", "will",
        "would", "shall", "should", "has", "have", "had", "may", "might", "must"};
    // Negative contractions, left over after the apostrophe split ("isn't" -> "isn").
    static constexpr std::array<std::string_view, 15> negated{
        "isn",   "aren",  "wasn",  "weren",  "don",  "doesn", "didn",     "couldn",
        "won",   "wouldn", "shan", "shouldn", "hasn", "haven", "hadn"};
    return std::find(aux.begin(), aux.end(), word) != aux.end() ||
           std::find(negated.begin(), negated.end(), word) != negated.end();
}

}  // namespace

QuestionType classify_question_type(std::string_view question) {
    const auto tokens = question_tokens(question);
    for (const auto& token : tokens) {
        if (const auto t = wh_type(before_apostrophe(token))) return *t;
    }
    if (!tokens.empty() && is_auxiliary(before_apostrophe(tokens.front()))) return QuestionType::YesNo;
    return QuestionType::Other;
}

StandaloneClass classify_standalone(std::string_view question) {
    const auto tokens = question_tokens(question);
    const bool dependent = std::find(tokens.begin(), tokens.end(), "passage") != tokens.end();
    return dependent ? StandaloneClass::PassageDependent : StandaloneClass::Standalone;
}

DiversityResult diversity(std::span<const std::string> questions, DiversityScheme scheme) {
    if (questions.empty()) throw Error(ErrorKind::EmptyQuestionSet, "diversity needs at least one question");

    DiversityResult result;
    result.scheme = scheme;
    std::vector<std::size_t> counts;
    if (scheme == DiversityScheme::EightWay) {
        counts.assign(9, 0);
        for (const auto& q : questions) ++counts[static_cast<std::size_t>(classify_question_type(q))];
        for (std::size_t i = 0; i < counts.size(); ++i) {
            result.histogram.emplace_back(to_string(static_cast<QuestionType>(i)), counts[i]);
        }
    } else {
        counts.assign(2, 0);
        for (const auto& q : questions) ++counts[static_cast<std::size_t>(classify_standalone(q))];
        for (std::size_t i = 0; i < counts.size(); ++i) {
            result.histogram.emplace_back(to_string(static_cast<StandaloneClass>(i)), counts[i]);
        }
    }

    const auto n = static_cast<double>(questions.size());
    std::vector<double> dist;
    dist.reserve(counts.size());
    for (auto c : counts) dist.push_back(static_cast<double>(c) / n);
    result.value_bits = entropy(dist, EntropyBase::Bits);
    return result;
}

// ---------------------------------------------------------------------------

double complexity_score(const EnsemblePrediction& p) {
    if (p.labels != label_space(Purpose::Qc)) {
        throw Error(ErrorKind::LabelSpaceMismatch, "complexity needs [easy, medium, hard] labels for question " +
                                                       p.question_id);
    }
    const auto mean = mean_distribution(p);
    const double c = 0.0 * mean[0] + 0.5 * mean[1] + 1.0 * mean[2];
    return std::clamp(c, 0.0, 1.0);
}

ScoredSet mean_complexity(const PredictionSet& set, std::span<const std::string> ids) {
    return score_set(set, ids, [](const EnsemblePrediction& p) { return complexity_score(p); });
}

// ---------------------------------------------------------------------------

int naive_grammar_errors(std::string_view question) {
    const auto trimmed = text::trim(question);
    int errors = 0;
    if (trimmed.empty() || !(trimmed.front() >= 'A' && trimmed.front() <= 'Z')) ++errors;
    if (trimmed.empty() || trimmed.back() != '?') ++errors;
    if (std::count(trimmed.begin(), trimmed.end(), '"') % 2 != 0) ++errors;

    std::vector<char> stack;
    bool balanced = true;
    for (char c : trimmed) {
        if (c == '(' || c == '[' || c == '{') {
            stack.push_back(c);
        } else if (c == ')' || c == ']' || c == '}') {
            const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
            if (stack.empty() || stack.back() != open) {
                balanced = false;
                break;
            }
            stack.pop_back();
        }
    }
    if (!balanced || !stack.empty()) ++errors;
    return errors;
}

double grammar_rate(std::span<const int> error_counts, std::size_t n_questions) {
    if (n_questions == 0) throw Error(ErrorKind::EmptyQuestionSet, "grammar rate needs at least one question");
    long long total = 0;
    for (int c : error_counts) {
        if (c < 0) throw Error(ErrorKind::InvalidArgument, "negative grammatical error count");
        total += c;
    }
    return static_cast<double>(total) / static_cast<double>(n_questions);
}

std::map<std::string, int> load_grammar_report(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    const auto source = path.string();
    std::map<std::string, int> counts;
    detail::for_each_record(in, source, [&](const nlohmann::json& record, std::size_t line) {
        const auto& id = detail::require_string(record, "question_id", source, line);
        const auto errors = record.find("errors");
        if (errors == record.end() || !errors->is_number_integer() || errors->get<long long>() < 0) {
            detail::fail_at(ErrorKind::MalformedRecord, source, line, "\"errors\" must be a non-negative integer");
        }
        if (!counts.emplace(id, errors->get<int>()).second) {
            detail::fail_at(ErrorKind::DuplicateQuestionId, source, line, "duplicate question_id " + id);
        }
    });
    return counts;
}

// ---------------------------------------------------------------------------

double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth) {
    if (predicted.size() != truth.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(predicted.size()) + " predictions for " +
                                                   std::to_string(truth.size()) + " labels");
    }
    if (truth.empty()) throw Error(ErrorKind::EmptyQuestionSet, "accuracy of an empty set");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i] ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

double macro_f1(std::span<const std::string> predicted, std::span<const std::string> truth,
                std::span<const std::string> classes) {
    if (predicted.size() != truth.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(predicted.size()) + " predictions for " +
                                                   std::to_string(truth.size()) + " labels");
    }
    if (classes.empty()) throw Error(ErrorKind::InvalidArgument, "macro F1 needs at least one class");

    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t c = 0; c < classes.size(); ++c) index.emplace(classes[c], c);
    auto lookup = [&](const std::string& label) {
        const auto it = index.find(label);
        if (it == index.end()) throw Error(ErrorKind::UnknownLabel, "label \"" + label + "\" not in class set");
        return it->second;
    };

    // confusion[true][predicted]
    const auto n = classes.size();
    std::vector<std::size_t> confusion(n * n, 0);
    for (std::size_t i = 0; i < truth.size(); ++i) ++confusion[lookup(truth[i]) * n + lookup(predicted[i])];

    double total = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t tp = confusion[c * n + c];
        std::size_t predicted_c = 0;
        std::size_t actual_c = 0;
        for (std::size_t o = 0; o < n; ++o) {
            predicted_c += confusion[o * n + c];
            actual_c += confusion[c * n + o];
        }
        const double precision = predicted_c == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted_c);
        const double recall = actual_c == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(actual_c);
        const double f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
        total += f1;
    }
    return total / static_cast<double>(n);
}

}  // namespace mcqg
