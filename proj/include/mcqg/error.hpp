#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcqg {

enum class ErrorKind {
    Io,
    WriteFailure,
    MalformedRecord,
    UnknownAnswerLetter,
    DuplicateExampleId,
    RowNotNormalized,
    LabelSpaceMismatch,
    EnsembleSizeMismatch,
    DuplicateQuestionId,
    InvalidDistribution,
    NotParsed,
    EmptyQuestion,
    EmptyQuestionSet,
    LengthMismatch,
    UnknownLabel,
    MissingDifficultyLabels,
    MissingPrediction,
    MissingContext,
    DomainError,
    PosteriorKindMismatch,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the toolkit. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }

    // The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

    // I/O failures map to exit code 2, everything else is a validation error.
    bool is_io() const noexcept { return kind_ == ErrorKind::Io || kind_ == ErrorKind::WriteFailure; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace mcqg
