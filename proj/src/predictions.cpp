#include "mcqg/predictions.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "jsonl.hpp"
#include "mcqg/error.hpp"

namespace mcqg {

using nlohmann::json;

std::string_view to_string(Purpose purpose) noexcept {
    return purpose == Purpose::Mcmrc ? "mcmrc" : "qc";
}

std::optional<Purpose> parse_purpose(std::string_view s) noexcept {
    if (s == "mcmrc") return Purpose::Mcmrc;
    if (s == "qc") return Purpose::Qc;
    return std::nullopt;
}

const std::vector<std::string>& label_space(Purpose purpose) {
    static const std::vector<std::string> options{"A", "B", "C", "D"};
    static const std::vector<std::string> difficulty{"easy", "medium", "hard"};
    return purpose == Purpose::Mcmrc ? options : difficulty;
}

void validate_prediction(EnsemblePrediction& p) {
    if (p.members.empty()) {
        throw Error(ErrorKind::InvalidDistribution, "question " + p.question_id + " has no ensemble members");
    }
    for (std::size_t k = 0; k < p.members.size(); ++k) {
        auto& row = p.members[k];
        if (row.size() != p.labels.size()) {
            throw Error(ErrorKind::LabelSpaceMismatch, "question " + p.question_id + " member " + std::to_string(k) +
                                                           " has " + std::to_string(row.size()) + " entries for " +
                                                           std::to_string(p.labels.size()) + " labels");
        }
        double sum = 0.0;
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                std::ostringstream msg;
                msg << "question " << p.question_id << " member " << k << " has entry " << v << " outside [0, 1]";
                throw Error(ErrorKind::InvalidDistribution, msg.str());
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            std::ostringstream msg;
            msg.precision(10);
            msg << "question " << p.question_id << " member " << k << " sums to " << sum;
            throw Error(ErrorKind::RowNotNormalized, msg.str());
        }
        for (double& v : row) v /= sum;
    }
}

std::vector<double> mean_distribution(const EnsemblePrediction& p) {
    std::vector<double> mean(p.num_labels(), 0.0);
    for (const auto& row : p.members) {
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += row[i];
    }
    const auto k = static_cast<double>(p.ensemble_size());
    for (double& v : mean) v /= k;
    return mean;
}

const EnsemblePrediction& PredictionSet::at(const std::string& question_id) const {
    const auto it = predictions_.find(question_id);
    if (it == predictions_.end()) {
        throw Error(ErrorKind::MissingPrediction,
                    "no " + std::string(to_string(purpose_)) + " prediction for question " + question_id);
    }
    return it->second;
}

void PredictionSet::insert(EnsemblePrediction p) {
    if (p.labels != label_space(purpose_)) {
        throw Error(ErrorKind::LabelSpaceMismatch,
                    "question " + p.question_id + " labels do not match the " + std::string(to_string(purpose_)) +
                        " label space");
    }
    if (p.ensemble_size() != ensemble_size_) {
        throw Error(ErrorKind::EnsembleSizeMismatch, "question " + p.question_id + " has " +
                                                         std::to_string(p.ensemble_size()) + " members, expected " +
                                                         std::to_string(ensemble_size_));
    }
    validate_prediction(p);
    if (predictions_.count(p.question_id) != 0) {
        throw Error(ErrorKind::DuplicateQuestionId, "duplicate question_id " + p.question_id);
    }
    auto id = p.question_id;
    predictions_.emplace(std::move(id), std::move(p));
}

namespace {

struct Header {
    Purpose purpose;
    std::size_t ensemble_size;
};

Header parse_header(const json& record, std::string_view source, std::size_t line) {
    using detail::fail_at;
    const auto purpose = record.find("purpose");
    const auto size = record.find("ensemble_size");
    if (purpose == record.end() || !purpose->is_string() || size == record.end() || !size->is_number_integer()) {
        fail_at(ErrorKind::MalformedRecord, source, line, "first line must be a {purpose, ensemble_size} header");
    }
    const auto parsed = parse_purpose(purpose->get_ref<const std::string&>());
    if (!parsed) fail_at(ErrorKind::MalformedRecord, source, line, "unknown purpose " + purpose->dump());
    const auto k = size->get<long long>();
    if (k < 1) fail_at(ErrorKind::MalformedRecord, source, line, "ensemble_size must be >= 1");
    return {*parsed, static_cast<std::size_t>(k)};
}

EnsemblePrediction parse_record(const json& record, std::string_view source, std::size_t line) {
    using detail::fail_at;
    EnsemblePrediction p;
    p.question_id = detail::require_string(record, "question_id", source, line);

    const auto labels = record.find("labels");
    if (labels == record.end() || !labels->is_array()) {
        fail_at(ErrorKind::MalformedRecord, source, line, "missing or non-array field \"labels\"");
    }
    for (const auto& l : *labels) {
        if (!l.is_string()) fail_at(ErrorKind::MalformedRecord, source, line, "non-string label");
        p.labels.push_back(l.get<std::string>());
    }

    const auto members = record.find("members");
    if (members == record.end() || !members->is_array() || members->empty()) {
        fail_at(ErrorKind::MalformedRecord, source, line, "missing or empty \"members\" array");
    }
    for (const auto& row : *members) {
        if (!row.is_array()) fail_at(ErrorKind::MalformedRecord, source, line, "member row is not an array");
        auto& values = p.members.emplace_back();
        for (const auto& v : row) {
            if (!v.is_number()) fail_at(ErrorKind::MalformedRecord, source, line, "non-numeric probability");
            values.push_back(v.get<double>());
        }
    }
    return p;
}

}  // namespace

PredictionSet read_predictions(std::istream& in, Purpose purpose, std::string_view source) {
    std::optional<PredictionSet> set;
    detail::for_each_record(in, source, [&](const json& record, std::size_t line) {
        if (!set) {
            const auto header = parse_header(record, source, line);
            if (header.purpose != purpose) {
                detail::fail_at(ErrorKind::LabelSpaceMismatch, source, line,
                                "file purpose is " + std::string(to_string(header.purpose)) + ", expected " +
                                    std::string(to_string(purpose)));
            }
            set.emplace(header.purpose, header.ensemble_size);
            return;
        }
        try {
            set->insert(parse_record(record, source, line));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::MalformedRecord) throw;
            detail::fail_at(e.kind(), source, line, e.detail());
        }
    });
    if (!set) throw Error(ErrorKind::MalformedRecord, std::string(source) + ": missing header line");
    return std::move(*set);
}

PredictionSet load_predictions(const std::filesystem::path& path, Purpose purpose) {
    auto in = detail::open_input(path);
    return read_predictions(in, purpose, path.string());
}

void write_predictions(const PredictionSet& set, std::ostream& out) {
    nlohmann::ordered_json header;
    header["purpose"] = std::string(to_string(set.purpose()));
    header["ensemble_size"] = set.ensemble_size();
    out << header.dump() << '\n';
    for (const auto& [id, p] : set.items()) {
        nlohmann::ordered_json record;
        record["question_id"] = id;
        record["labels"] = p.labels;
        record["members"] = p.members;
        out << record.dump() << '\n';
    }
}

void write_predictions(const PredictionSet& set, const std::filesystem::path& path) {
    auto out = detail::open_output(path);
    write_predictions(set, out);
    out.flush();
    if (!out) throw Error(ErrorKind::WriteFailure, "failed writing " + path.string());
}

}  // namespace mcqg
