#include "mcqg/refsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "mcqg/error.hpp"

namespace mcqg {

namespace {

constexpr double kPosteriorTolerance = 1e-9;

void check_row(const std::vector<double>& row, std::string_view what) {
    if (row.empty()) throw Error(ErrorKind::InvalidDistribution, std::string(what) + " is empty");
    double sum = 0.0;
    for (double v : row) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw Error(ErrorKind::InvalidDistribution, std::string(what) + " has an entry outside [0, 1]");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kPosteriorTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " sums to " << sum;
        throw Error(ErrorKind::InvalidDistribution, msg.str());
    }
}

std::size_t lowest_argmax(const std::vector<double>& row) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
        if (row[i] > row[best]) best = i;
    }
    return best;
}

// Inverse-CDF sampling from 53-bit uniforms; zero-probability outcomes are never drawn.
class Categorical {
public:
    explicit Categorical(const std::vector<double>& probs) : cdf_(probs.size()) {
        double acc = 0.0;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            cdf_[i] = acc;
            if (probs[i] > 0.0) last_positive = i;
        }
        for (std::size_t i = last_positive; i < cdf_.size(); ++i) cdf_[i] = 1.0;
    }

    std::size_t operator()(std::mt19937_64& rng) const {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

void check_references(std::span<const int> references) {
    if (references.empty()) throw Error(ErrorKind::DomainError, "no J values requested");
    for (int j : references) {
        if (j < 1) throw Error(ErrorKind::DomainError, "J must be >= 1, got " + std::to_string(j));
    }
}

// Integer tallies in units of matched positions, so any reduction order gives
// the same bits.
struct Tally {
    std::vector<std::uint64_t> sum;
    std::vector<std::uint64_t> sum_sq;
};

template <typename Trial>
Tally run_trials(const SimOptions& options, std::size_t num_j, Trial&& trial) {
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(
                                                                                  std::max<std::size_t>(1, options.trials))));
    std::vector<Tally> partial(threads, Tally{std::vector<std::uint64_t>(num_j, 0), std::vector<std::uint64_t>(num_j, 0)});

    auto work = [&](unsigned t) {
        const std::size_t begin = options.trials * t / threads;
        const std::size_t end = options.trials * (t + 1) / threads;
        std::vector<std::uint64_t> best(num_j);
        for (std::size_t i = begin; i < end; ++i) {
            std::mt19937_64 rng(substream_seed(options.seed, i));
            trial(rng, best);
            for (std::size_t j = 0; j < num_j; ++j) {
                partial[t].sum[j] += best[j];
                partial[t].sum_sq[j] += best[j] * best[j];
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    Tally total{std::vector<std::uint64_t>(num_j, 0), std::vector<std::uint64_t>(num_j, 0)};
    for (const auto& p : partial) {
        for (std::size_t j = 0; j < num_j; ++j) {
            total.sum[j] += p.sum[j];
            total.sum_sq[j] += p.sum_sq[j];
        }
    }
    return total;
}

// Mean and standard error of per-trial scores x / scale.
void summarize(const Tally& tally, std::size_t trials, double scale, SimResult& out) {
    const auto n = static_cast<double>(trials);
    for (std::size_t j = 0; j < tally.sum.size(); ++j) {
        const auto s = static_cast<double>(tally.sum[j]);
        const auto ss = static_cast<double>(tally.sum_sq[j]);
        const double mean = s / n;
        double se = 0.0;
        if (trials > 1) {
            const double var = std::max(0.0, (ss - s * mean) / (n - 1.0));
            se = std::sqrt(var / n) / scale;
        }
        out.estimate.push_back(mean / scale);
        out.standard_error.push_back(se);
    }
}

// Running best over the first J draws, recorded at each requested J.
template <typename Draw>
void best_of_prefixes(std::span<const int> references, int max_j, std::mt19937_64& rng, std::vector<std::uint64_t>& best,
                      Draw&& draw) {
    thread_local std::vector<std::uint64_t> at;
    at.assign(static_cast<std::size_t>(max_j) + 1, 0);
    std::uint64_t running = 0;
    for (int drawn = 1; drawn <= max_j; ++drawn) {
        running = std::max<std::uint64_t>(running, draw(rng));
        at[static_cast<std::size_t>(drawn)] = running;
    }
    for (std::size_t j = 0; j < references.size(); ++j) best[j] = at[static_cast<std::size_t>(references[j])];
}

SimResult make_result(Framework framework, const SimPosterior& posterior, const SimOptions& options) {
    SimResult r;
    r.framework = framework;
    r.posterior = posterior.describe();
    r.p_star = posterior.modal_probability();
    r.references = options.references;
    r.trials = options.trials;
    r.seed = options.seed;
    return r;
}

}  // namespace

SimPosterior::SimPosterior(Kind kind, std::vector<std::vector<double>> rows) : kind_(kind), rows_(std::move(rows)) {
    if (rows_.empty()) throw Error(ErrorKind::InvalidDistribution, "posterior has no positions");
    p_star_ = 1.0;
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        check_row(rows_[t], kind_ == Kind::Explicit ? "posterior" : "position " + std::to_string(t));
        modal_.push_back(lowest_argmax(rows_[t]));
        p_star_ *= rows_[t][modal_.back()];
    }
}

SimPosterior SimPosterior::explicit_distribution(std::vector<double> probs) {
    return SimPosterior(Kind::Explicit, {std::move(probs)});
}

SimPosterior SimPosterior::zipf(std::size_t num_outcomes, double exponent) {
    if (num_outcomes == 0) throw Error(ErrorKind::DomainError, "Zipf posterior needs M >= 1");
    if (!(exponent >= 0.0)) throw Error(ErrorKind::DomainError, "Zipf exponent must be >= 0");
    std::vector<double> probs(num_outcomes);
    double norm = 0.0;
    for (std::size_t i = 0; i < num_outcomes; ++i) {
        probs[i] = std::pow(static_cast<double>(i + 1), -exponent);
        norm += probs[i];
    }
    for (double& p : probs) p /= norm;
    return explicit_distribution(std::move(probs));
}

SimPosterior SimPosterior::positionwise(std::vector<std::vector<double>> positions) {
    return SimPosterior(Kind::Positionwise, std::move(positions));
}

SimPosterior SimPosterior::uniform_positionwise(std::size_t length, std::size_t alphabet) {
    if (alphabet == 0) throw Error(ErrorKind::DomainError, "alphabet must be non-empty");
    return positionwise(std::vector<std::vector<double>>(length, std::vector<double>(alphabet, 1.0 / static_cast<double>(alphabet))));
}

double SimPosterior::log_num_outcomes(EntropyBase base) const {
    double total = 0.0;
    for (const auto& row : rows_) {
        const auto m = static_cast<double>(row.size());
        total += base == EntropyBase::Bits ? std::log2(m) : std::log(m);
    }
    return total;
}

std::string SimPosterior::describe() const {
    std::ostringstream out;
    if (kind_ == Kind::Explicit) {
        out << "explicit(M=" << rows_.front().size() << ")";
    } else {
        out << "positionwise(T=" << rows_.size() << ",V=" << rows_.front().size() << ")";
    }
    return out.str();
}

double conditional_entropy(const SimPosterior& posterior, EntropyBase base) {
    double h = 0.0;
    for (const auto& row : posterior.rows()) h += entropy(row, base);
    return h;
}

double exact_match_closed_form(double p_star, int num_references) {
    if (!(p_star >= 0.0 && p_star <= 1.0)) throw Error(ErrorKind::DomainError, "p* must lie in [0, 1]");
    if (num_references < 1) throw Error(ErrorKind::DomainError, "J must be >= 1");
    return 1.0 - std::pow(1.0 - p_star, num_references);
}

double overlap_score(std::span<const std::size_t> prediction, std::span<const std::size_t> reference) {
    if (prediction.size() != reference.size()) {
        throw Error(ErrorKind::LengthMismatch, "sequences of length " + std::to_string(prediction.size()) + " and " +
                                                   std::to_string(reference.size()));
    }
    if (reference.empty()) throw Error(ErrorKind::LengthMismatch, "empty sequences");
    std::size_t same = 0;
    for (std::size_t t = 0; t < reference.size(); ++t) same += prediction[t] == reference[t] ? 1 : 0;
    return static_cast<double>(same) / static_cast<double>(reference.size());
}

namespace {

// Distribution of the number of positions matching the modal output.
std::vector<double> match_count_distribution(const SimPosterior& posterior) {
    std::vector<double> dist{1.0};
    for (std::size_t t = 0; t < posterior.rows().size(); ++t) {
        const double q = posterior.rows()[t][posterior.modal()[t]];
        std::vector<double> next(dist.size() + 1, 0.0);
        for (std::size_t k = 0; k < dist.size(); ++k) {
            next[k] += dist[k] * (1.0 - q);
            next[k + 1] += dist[k] * q;
        }
        dist = std::move(next);
    }
    return dist;
}

}  // namespace

double overlap_closed_form(const SimPosterior& posterior, int num_references) {
    if (num_references < 1) throw Error(ErrorKind::DomainError, "J must be >= 1");
    const auto dist = match_count_distribution(posterior);
    const std::size_t length = dist.size() - 1;
    double below = 0.0;  // P(matches < k)
    double total = 0.0;
    for (std::size_t k = 1; k <= length; ++k) {
        below += dist[k - 1];
        total += 1.0 - std::pow(below, num_references);
    }
    return total / static_cast<double>(length);
}

std::optional<double> overlap_enumerated(const SimPosterior& posterior, int num_references) {
    constexpr std::size_t kMaxOutcomes = 4096;
    if (num_references < 1 || num_references > 3) return std::nullopt;
    std::size_t outcomes = 1;
    for (const auto& row : posterior.rows()) {
        outcomes *= row.size();
        if (outcomes > kMaxOutcomes) return std::nullopt;
    }

    // Every sequence, as a mixed-radix counter, binned by its match count.
    const auto& rows = posterior.rows();
    const std::size_t length = posterior.length();
    std::vector<double> mass(length + 1, 0.0);
    std::vector<std::size_t> digits(rows.size(), 0);
    for (std::size_t n = 0; n < outcomes; ++n) {
        double p = 1.0;
        std::size_t matches = 0;
        for (std::size_t t = 0; t < rows.size(); ++t) {
            p *= rows[t][digits[t]];
            matches += digits[t] == posterior.modal()[t] ? 1 : 0;
        }
        mass[matches] += p;
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (++digits[t] < rows[t].size()) break;
            digits[t] = 0;
        }
    }

    // Every J-tuple of match-count classes.
    const std::size_t classes = mass.size();
    std::size_t tuples = 1;
    for (int j = 0; j < num_references; ++j) tuples *= classes;
    double expectation = 0.0;
    for (std::size_t n = 0; n < tuples; ++n) {
        std::size_t rest = n;
        double p = 1.0;
        std::size_t best = 0;
        for (int j = 0; j < num_references; ++j) {
            const std::size_t m = rest % classes;
            rest /= classes;
            p *= mass[m];
            best = std::max(best, m);
        }
        expectation += p * static_cast<double>(best) / static_cast<double>(length);
    }
    return expectation;
}

std::string_view to_string(Framework f) noexcept {
    return f == Framework::ExactMatch ? "exact_match" : "overlap";
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // SplitMix64 finalizer applied to the seed, then to the mixed trial index.
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ (index * 0xD1B54A32D192ED03ULL));
}

SimResult simulate_exact_match(const SimPosterior& posterior, const SimOptions& options) {
    check_references(options.references);
    if (options.trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");

    const int max_j = *std::max_element(options.references.begin(), options.references.end());
    std::vector<Categorical> samplers(posterior.rows().begin(), posterior.rows().end());
    const auto& modal = posterior.modal();

    auto draw = [&](std::mt19937_64& rng) -> std::uint64_t {
        bool hit = true;
        for (std::size_t t = 0; t < samplers.size(); ++t) hit = (samplers[t](rng) == modal[t]) && hit;
        return hit ? 1 : 0;
    };
    const auto tally = run_trials(options, options.references.size(), [&](std::mt19937_64& rng, std::vector<std::uint64_t>& best) {
        best_of_prefixes(options.references, max_j, rng, best, draw);
    });

    auto result = make_result(Framework::ExactMatch, posterior, options);
    summarize(tally, options.trials, 1.0, result);
    for (int j : options.references) {
        result.closed_form.emplace_back(exact_match_closed_form(result.p_star, j));
        result.exact.emplace_back(std::nullopt);
    }
    return result;
}

SimResult simulate_overlap(const SimPosterior& posterior, const SimOptions& options) {
    if (posterior.kind() != SimPosterior::Kind::Positionwise) {
        throw Error(ErrorKind::PosteriorKindMismatch, "overlap simulation needs a positionwise posterior");
    }
    check_references(options.references);
    if (options.trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");

    const int max_j = *std::max_element(options.references.begin(), options.references.end());
    std::vector<Categorical> samplers(posterior.rows().begin(), posterior.rows().end());
    const auto& modal = posterior.modal();

    auto draw = [&](std::mt19937_64& rng) -> std::uint64_t {
        std::uint64_t matches = 0;
        for (std::size_t t = 0; t < samplers.size(); ++t) matches += samplers[t](rng) == modal[t] ? 1 : 0;
        return matches;
    };
    const auto tally = run_trials(options, options.references.size(), [&](std::mt19937_64& rng, std::vector<std::uint64_t>& best) {
        best_of_prefixes(options.references, max_j, rng, best, draw);
    });

    auto result = make_result(Framework::Overlap, posterior, options);
    summarize(tally, options.trials, static_cast<double>(posterior.length()), result);
    for (int j : options.references) {
        result.closed_form.emplace_back(overlap_closed_form(posterior, j));
        result.exact.push_back(overlap_enumerated(posterior, j));
    }
    return result;
}

SimResult exact_match_curve(double p_star, std::span<const int> references) {
    check_references(references);
    SimResult r;
    r.framework = Framework::ExactMatch;
    r.posterior = "closed_form";
    r.p_star = p_star;
    r.references.assign(references.begin(), references.end());
    for (int j : references) {
        const double v = exact_match_closed_form(p_star, j);
        r.estimate.push_back(v);
        r.standard_error.push_back(0.0);
        r.closed_form.emplace_back(v);
        r.exact.emplace_back(std::nullopt);
    }
    return r;
}

LinearityReport linearity_check(const SimResult& result, double rel_tol, CurveColumn column, double saturation_tol,
                                double regime_limit) {
    const auto n = result.references.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (column == CurveColumn::Estimate) {
            values[i] = result.estimate.at(i);
        } else {
            if (i >= result.closed_form.size() || !result.closed_form[i]) {
                throw Error(ErrorKind::InvalidArgument, "result has no closed-form column");
            }
            values[i] = *result.closed_form[i];
        }
    }
    const auto one = std::find(result.references.begin(), result.references.end(), 1);
    if (one == result.references.end()) throw Error(ErrorKind::InvalidArgument, "linearity check needs J = 1");
    const double base = values[static_cast<std::size_t>(one - result.references.begin())];

    LinearityReport report;
    for (std::size_t i = 0; i < n; ++i) {
        const int j = result.references[i];
        const double linear = static_cast<double>(j) * base;
        double dev = 0.0;
        if (linear > 0.0) {
            dev = std::abs(values[i] - linear) / linear;
        } else if (values[i] != 0.0) {
            dev = std::numeric_limits<double>::infinity();
        }
        report.deviation.push_back(dev);
        if (static_cast<double>(j) * result.p_star <= regime_limit) {
            report.checked.push_back(j);
            if (!(dev <= rel_tol)) report.linear = false;
        }
    }

    // Saturation onset in ascending J order.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return result.references[a] < result.references[b]; });
    for (auto i : order) {
        if (report.deviation[i] > saturation_tol) {
            report.saturation_onset = result.references[i];
            break;
        }
    }
    return report;
}

}  // namespace mcqg
