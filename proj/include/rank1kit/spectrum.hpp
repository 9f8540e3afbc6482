#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "rank1kit/parallel.hpp"
#include "rank1kit/sl2.hpp"

namespace rank1kit {

class OracleMiss : public std::out_of_range {
public:
    explicit OracleMiss(const Word& w) : std::out_of_range("length table has no entry for word " + to_letters(w)) {}
};

/// Marked length spectrum as a queryable function. Words are looked up by
/// conjugacy class (cyclic_canonical), since length is a class function.
class LengthOracle {
public:
    /// Exact lengths of `rep`, plus deterministic per-word Gaussian noise of
    /// standard deviation `sigma` (lengths are clamped at 0).
    static LengthOracle from_rep(SL2Rep rep, double sigma = 0.0, std::uint64_t seed = 0);
    /// Throws std::invalid_argument for negative or non-finite lengths.
    static LengthOracle from_table(const std::map<Word, double>& table, int arity);

    /// Throws NotLoxodromic (rep source) or OracleMiss (table source).
    double operator()(const Word& w) const;

    int arity() const noexcept { return arity_; }
    const std::optional<SL2Rep>& rep() const noexcept { return rep_; }
    const std::map<Word, double>& table() const noexcept { return table_; }
    double noise() const noexcept { return sigma_; }

private:
    LengthOracle() = default;
    int arity_ = 0;
    std::optional<SL2Rep> rep_;
    std::map<Word, double> table_;
    double sigma_ = 0.0;
    std::uint64_t seed_ = 0;
};

/// e^{l(a^n) + l(b^n) - l(a^n b^n)} for n = 1..N.
std::vector<double> lemma1_sequence(const LengthOracle& oracle, const Word& a, const Word& b, int n_max);
/// e^{l(a^n) - l(a^n b^n)} and e^{l(b^n) - l(a^n b^n)}, both tending to 0.
std::array<std::vector<double>, 2> lemma1_companions(const LengthOracle& oracle, const Word& a, const Word& b,
                                                     int n_max);

struct Estimate {
    double value = 0.0;
    /// RMS residual of the tail fit relative to |value|; +inf when the tail
    /// does not contract.
    double confidence = 0.0;
};
/// Fits seq_n ~ c + A r^n on the last (up to 5) terms, with r the median of
/// successive difference ratios, and returns c. Needs at least 4 terms.
Estimate crossratio_estimate(const std::vector<double>& seq);

/// Trace coordinates: generators, pairs X_i X_j and triples X_i X_j X_k (i < j < k).
std::vector<Word> trace_coordinate_words(int arity);
/// Minimum over complex conjugation and sign lifts X_i -> -X_i of the largest
/// trace-coordinate deviation |t1 - t2| / max(1, |t2|).
double conjugacy_distance(const SL2Rep& r1, const SL2Rep& r2);

/// Loxodromic with the given homogeneous fixed points and eigenvalue lambda
/// (|lambda| > 1) on the attracting line.
SL2 loxodromic_from_fixed_points(const SpherePoint& attracting, const SpherePoint& repelling, cplx lambda);
/// Two loxodromics of length in [lmin, lmax] whose four fixed points are at
/// pairwise sphere distance at least 0.2.
SL2Rep random_schottky_pair(std::mt19937_64& rng, double lmin = 2.0, double lmax = 4.0);

/// Cyclic classes of length <= 4 plus a^n, b^n, a^n b^n and a^n b^-n for n <= 8
/// (the length cross-ratio words used for initialization).
std::vector<Word> default_budget(int arity);

struct ReconstructOptions {
    std::vector<Word> words;  // empty: default_budget
    int restarts = 8;
    int max_iterations = 300;
    double tolerance = 1e-8;  // RMS residual required for success
    std::uint64_t seed = 0;
    Exec exec = Exec::Parallel;
};

struct Reconstruction {
    SL2Rep rep;
    /// l_a, theta_a, l_b, theta_b, Re p, Im p, then (l, theta, Re u, Im u, Re v, Im v)
    /// per further generator with attracting point u and repelling point v.
    std::vector<double> parameters;
    std::vector<Word> words;
    std::vector<double> residuals;
    double rms = 0.0;
    int restart = 0;
    int iterations = 0;
    /// Length cross-ratio estimates of |1 - p| and |p|.
    Estimate one_minus_p, p_modulus;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double best_rms, Reconstruction best);
    double best_rms() const noexcept { return best_rms_; }
    const Reconstruction& best() const noexcept { return best_; }

private:
    double best_rms_;
    Reconstruction best_;
};

/// Generator a is normalized to fixed points 0 (repelling) and infinity,
/// b to attracting point 1 and repelling point p. Damped least squares on
/// sum_w (l_fit(w) - oracle(w))^2 from length cross-ratio initial values. Throws
/// ElementaryRepresentation when the length cross-ratio sequences show shared fixed
/// points, and ConvergenceError when no restart reaches the tolerance.
Reconstruction reconstruct(const LengthOracle& oracle, const ReconstructOptions& options = {});

/// The representation described by a parameter vector.
SL2Rep rep_from_parameters(const std::vector<double>& x, int arity);

}  // namespace rank1kit
