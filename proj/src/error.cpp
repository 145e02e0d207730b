#include "mcqg/error.hpp"

namespace mcqg {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Io: return "IoError";
        case ErrorKind::WriteFailure: return "WriteFailure";
        case ErrorKind::MalformedRecord: return "MalformedRecord";
        case ErrorKind::UnknownAnswerLetter: return "UnknownAnswerLetter";
        case ErrorKind::DuplicateExampleId: return "DuplicateExampleId";
        case ErrorKind::RowNotNormalized: return "RowNotNormalized";
        case ErrorKind::LabelSpaceMismatch: return "LabelSpaceMismatch";
        case ErrorKind::EnsembleSizeMismatch: return "EnsembleSizeMismatch";
        case ErrorKind::DuplicateQuestionId: return "DuplicateQuestionId";
        case ErrorKind::InvalidDistribution: return "InvalidDistribution";
        case ErrorKind::NotParsed: return "NotParsed";
        case ErrorKind::EmptyQuestion: return "EmptyQuestion";
        case ErrorKind::EmptyQuestionSet: return "EmptyQuestionSet";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::MissingDifficultyLabels: return "MissingDifficultyLabels";
        case ErrorKind::MissingPrediction: return "MissingPrediction";
        case ErrorKind::MissingContext: return "MissingContext";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::PosteriorKindMismatch: return "PosteriorKindMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace mcqg
