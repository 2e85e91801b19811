#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulek/geometry.hpp"
#include "rulek/graph.hpp"
#include "rulek/oracle.hpp"
#include "rulek/rules.hpp"
#include "rulek/stats.hpp"

namespace rulek {

struct StatToggles {
    bool rule_k = true;
    bool marking = true;
    bool local_maxima = true;
    bool grid_cds = true;
    bool oracle = false;
    bool degree_tail = false;
};

struct ScheduleCell {
    std::size_t n = 0;
    double ell = 0.0;
};

/// Side length as a function of n.
struct FamilyRule {
    enum class Kind {
        SqrtNOverLogN,  // ell = c * sqrt(n / ln n)
        Power,          // ell = c * n^beta, beta < 1/2
    };
    Kind kind = Kind::SqrtNOverLogN;
    double c = 1.0;
    double beta = 0.0;
    std::vector<std::size_t> n_values;

    [[nodiscard]] double side_for(std::size_t n) const;
};

struct ExperimentConfig {
    unsigned k = 3;
    std::size_t trials = 1;
    std::uint64_t master_seed = 0;
    std::vector<ScheduleCell> cells;
    std::optional<FamilyRule> family;
    StatToggles toggles;
    bool at_most_k = false;
    std::uint64_t work_cap = RuleKOptions{}.work_cap;
    std::size_t oracle_cap = kDefaultOracleCap;
    /// Worker threads for sweeps; 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// Measure wall time per trial. Off by default so outputs stay
    /// byte-reproducible.
    bool record_timing = false;

    /// Explicit cells followed by the family rule's cells.
    [[nodiscard]] std::vector<ScheduleCell> schedule() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct TrialRecord {
    std::size_t n = 0;
    double ell = 0.0;
    unsigned k = 0;
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;

    std::optional<std::size_t> c_k;
    std::optional<std::size_t> u_k;
    std::optional<bool> is_cds;
    std::optional<std::size_t> marking_size;
    std::optional<std::size_t> restricted_size;
    std::optional<std::size_t> local_max_count;
    std::optional<std::size_t> grid_size;
    std::optional<bool> b_event;
    std::optional<bool> grid_is_cds;
    std::optional<bool> factor81;
    std::size_t components = 0;
    std::optional<std::size_t> opt_size;
    std::optional<std::size_t> rho_first;
    std::optional<bool> degree_tail_event;
    std::optional<double> wall_ms;

    /// Non-empty for a failed trial; such records carry no statistics.
    std::string error;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// A trial failed; carries the trial's coordinates.
class TrialFailure : public std::runtime_error {
public:
    TrialFailure(std::size_t n, double ell, std::size_t trial, const std::string& cause);
};

struct TheoreticalCurves {
    double l_lower_bound = 0.0;      // (ell^2/pi)(1 - (1 - pi/ell^2)^n)
    double quarter_side_sq = 0.0;    // ell^2 / 4
    double marking_tail = 0.0;       // n exp(-n / ell^2)
    double degree_tail_bound = 0.0;  // exp(-(n-1) pi / (32 ell^2))
    double km_m = 0.0;               // (n-1) pi / (8 ell^2)
    double km_bound = 0.0;           // max(0, 1 - 4 alpha^km_m)
};

struct CellSummary {
    std::size_t n = 0;
    double ell = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::map<std::string, RunningStats> stats;
    std::optional<TheoreticalCurves> curves;
};

struct SweepSummary {
    std::vector<CellSummary> cells;
    std::size_t failures = 0;
};

struct SweepResult {
    std::vector<TrialRecord> records;
    SweepSummary summary;
};

enum class KmMode { Sufficient, Grid };

struct KmEstimate {
    std::size_t trials = 0;
    std::size_t witnessed = 0;
    double frequency = 0.0;
    double se = 0.0;
    double curve = 0.0;  // 1 - 4 alpha^m, possibly negative
    double bound = 0.0;  // max(0, curve)
};

struct DegreeTailEstimate {
    std::size_t trials = 0;
    std::size_t events = 0;
    double threshold = 0.0;  // (n - i) pi / (8 ell^2)
    double frequency = 0.0;
    double se = 0.0;
    double bound = 0.0;  // exp(-(n - i) pi / (32 ell^2))
};

/// Per-trial seed: SplitMix64 applied along the chain master, n, the IEEE-754
/// bits of ell, trial index (each step xors the next value into the state).
[[nodiscard]] std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t n, double ell,
                                              std::uint64_t trial);

/// n uniform points on [0, ell)^2 from Rng(seed): x then y per point.
[[nodiscard]] Instance generate_instance(std::size_t n, double ell, std::uint64_t seed);

[[nodiscard]] TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, double ell,
                                    std::size_t trial_index);

/// Aggregates records (any order) into per-cell summaries, ordered as in
/// `schedule`. Failed records only raise failure counts.
[[nodiscard]] SweepSummary summarize(const std::vector<ScheduleCell>& schedule,
                                     std::vector<TrialRecord> records, unsigned k = 3);

[[nodiscard]] SweepResult sweep(const ExperimentConfig& cfg);

/// Samples m uniform points in D1(p) ∩ Q per trial and counts trials where
/// the sufficient covering event holds (each delta-disk around the three
/// construction centers is hit and at least k samples lie within rho of the
/// third center). Grid mode also certifies the chosen k-point witness is
/// connected and covers D1(p) ∩ Q at the given pitch.
[[nodiscard]] KmEstimate estimate_km(unsigned k, std::size_t m, Point p, double ell,
                                     std::size_t trials, std::uint64_t seed,
                                     KmMode mode = KmMode::Sufficient, double pitch = 0.01);

/// Frequency of rho_i < (n-i) pi / (8 ell^2), rho_i = #{j > i : d(X_i, X_j) <= 1}.
[[nodiscard]] DegreeTailEstimate degree_tail_check(std::size_t n, double ell, VertexId i,
                                                   std::size_t trials, std::uint64_t seed);

struct Lemma1SuiteReport {
    std::size_t samples = 0;
    std::size_t distance_violations = 0;  // consecutive centers farther than 1 - 2 delta
    std::size_t coverage_failures = 0;    // rho-disks miss part of D1(p) ∩ Q
    std::size_t outside_square = 0;       // a center left the square
    [[nodiscard]] bool passed() const noexcept {
        return distance_violations == 0 && coverage_failures == 0 && outside_square == 0;
    }
};

/// Checks the three-point covering construction at `samples` uniform centers
/// of the square of side `ell`.
[[nodiscard]] Lemma1SuiteReport run_lemma1_suite(std::size_t samples, double ell, double pitch,
                                                 std::uint64_t seed);

/// 1 - 4 alpha^m.
[[nodiscard]] double km_curve(double m);

/// Requires ell > sqrt(pi); throws std::domain_error otherwise.
[[nodiscard]] TheoreticalCurves theoretical_curves(std::size_t n, double ell, unsigned k);

/// Runs `body(i)` for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace rulek
