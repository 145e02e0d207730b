#pragma once

// Multi-draw reference scaling: how the best score against J references drawn
// from the true output posterior grows with J, for the exact-match and the
// fixed-length unigram-overlap frameworks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcqg/metrics.hpp"

namespace mcqg {

class SimPosterior {
public:
    enum class Kind { Explicit, Positionwise };

    // A categorical distribution over M whole outputs.
    static SimPosterior explicit_distribution(std::vector<double> probs);
    // p_i proportional to 1 / (i + 1)^exponent for i in [0, M).
    static SimPosterior zipf(std::size_t num_outcomes, double exponent = 1.0);
    // T independent positions, each a categorical distribution over its alphabet.
    static SimPosterior positionwise(std::vector<std::vector<double>> positions);
    static SimPosterior uniform_positionwise(std::size_t length, std::size_t alphabet);

    Kind kind() const noexcept { return kind_; }
    // Explicit: one row. Positionwise: one row per position.
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    std::size_t length() const noexcept { return kind_ == Kind::Explicit ? 1 : rows_.size(); }

    // Modal output, lowest index on ties; one entry per position (one for explicit).
    const std::vector<std::size_t>& modal() const noexcept { return modal_; }
    // Probability of the modal output.
    double modal_probability() const noexcept { return p_star_; }
    // log of the number of possible outputs.
    double log_num_outcomes(EntropyBase base) const;

    std::string describe() const;

private:
    SimPosterior(Kind kind, std::vector<std::vector<double>> rows);

    Kind kind_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::size_t> modal_;
    double p_star_ = 0.0;
};

// Entropy of the joint output distribution; additive over positions.
double conditional_entropy(const SimPosterior& posterior, EntropyBase base);

// 1 - (1 - p_star)^J. Throws DomainError for p_star outside [0, 1] or J < 1.
double exact_match_closed_form(double p_star, int num_references);

// Fraction of positions where the sequences agree. Throws LengthMismatch.
double overlap_score(std::span<const std::size_t> prediction, std::span<const std::size_t> reference);

// Exact expected best overlap with J references via the match-count
// distribution: sum_k (1 - F(k - 1)^J) / T.
double overlap_closed_form(const SimPosterior& posterior, int num_references);

// Exact expectation by enumerating every output sequence and every J-tuple of
// match-count classes. Only defined for V^T <= 4096 and J <= 3.
std::optional<double> overlap_enumerated(const SimPosterior& posterior, int num_references);

enum class Framework { ExactMatch, Overlap };
std::string_view to_string(Framework f) noexcept;

struct SimOptions {
    std::vector<int> references{1};  // J values
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct SimResult {
    Framework framework = Framework::ExactMatch;
    std::string posterior;
    double p_star = 0.0;
    std::vector<int> references;
    std::vector<double> estimate;
    std::vector<double> standard_error;
    std::vector<std::optional<double>> closed_form;
    std::vector<std::optional<double>> exact;  // brute-force enumeration, tiny instances only
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Seed of the generator used for trial `index`; independent of thread layout.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

SimResult simulate_exact_match(const SimPosterior& posterior, const SimOptions& options);

// Throws PosteriorKindMismatch for explicit posteriors.
SimResult simulate_overlap(const SimPosterior& posterior, const SimOptions& options);

// The closed-form exact-match curve packaged as a result (no sampling).
SimResult exact_match_curve(double p_star, std::span<const int> references);

struct LinearityReport {
    bool linear = true;
    // |value(J) - J value(1)| / (J value(1)), one per J in result order.
    std::vector<double> deviation;
    // J values with J * p_star <= regime_limit, the ones the verdict covers.
    std::vector<int> checked;
    // First J whose deviation exceeds the saturation tolerance.
    std::optional<int> saturation_onset;
};

enum class CurveColumn { Estimate, ClosedForm };

// Checks value(J) ~= J * value(1) over the small-J regime. Throws InvalidArgument
// if J = 1 is missing or the requested column is empty.
LinearityReport linearity_check(const SimResult& result, double rel_tol, CurveColumn column = CurveColumn::Estimate,
                                double saturation_tol = 0.05, double regime_limit = 0.01);

}  // namespace mcqg
