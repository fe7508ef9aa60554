#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stowave {

struct LatticeEntry {
    std::int64_t cell;
    double measure;
    double value;
};

/// Finitely supported simple function on an abstract measured lattice: holds
/// `value` on a cell of measure `measure`; unlisted cells carry value 0.
/// Cells model divisible regions of an underlying measure space, so a
/// measurable subset may take a fraction of a cell.
struct LatticeFunction {
    std::vector<LatticeEntry> entries;  ///< sorted by cell id, ids unique, measures > 0
};

/// Validates (finite values, positive measures, unique ids) and sorts.
LatticeFunction make_lattice_function(std::vector<LatticeEntry> entries);

/// (sum measure * |value|^p)^(1/p).
double lp_norm(const LatticeFunction& f, double p);

/// Cellwise difference; throws if a shared cell id carries two different
/// measures (the functions would not live on the same lattice).
LatticeFunction lattice_sub(const LatticeFunction& a, const LatticeFunction& b);

struct ConditionAResult {
    bool pass = false;
    std::vector<std::int64_t> witness;  ///< union of per-member heavy-cell sets
    double witness_measure = 0.0;
    /// 1-based index of the last member that enlarged the witness (0 when
    /// every member has tail mass < epsilon with no cells at all).
    std::size_t last_growth = 0;
};

/// Uniform-tail search: each member contributes its minimal heavy-cell set
/// (largest contributions first) leaving tail mass < epsilon; the witness is
/// the union over the sequence.  Passes iff no member past ceil(len/2)
/// enlarged the witness, i.e. a single finite union works for the whole
/// tail of the sampled sequence.
ConditionAResult check_condition_a(std::span<const LatticeFunction> seq, double p, double epsilon);

struct ConditionBResult {
    /// Exact supremum of the p-mass over measurable subsets of measure <=
    /// threshold: greedy over cells by |value|^p density with fractional
    /// inclusion of the last cell.
    double sup_fractional = 0.0;
    /// Whole-cell variant: same greedy order, stops before the first cell
    /// that no longer fits.  Differs from sup_fractional by at most one
    /// cell's mass.
    double sup_atomic = 0.0;
    std::size_t worst_member = 0;  ///< argmax of the fractional supremum
    bool pass = false;             ///< max fractional supremum < bound
};

ConditionBResult check_condition_b(std::span<const LatticeFunction> seq, double p,
                                   double mu_threshold, double bound);

struct VitaliReport {
    bool pointwise_ok = false;
    std::int64_t pointwise_bad_cell = 0;  ///< meaningful when !pointwise_ok
    bool condition_a = false;
    bool condition_b = false;
    bool predicted_convergent = false;  ///< pointwise_ok && condition_a && condition_b
    std::vector<double> oracle_distances;  ///< |f_m - limit|_p per member
    bool oracle_convergent = false;
    bool agrees = false;  ///< predicted_convergent == oracle_convergent
};

/// Empirical convergence-criterion verdict for a sampled sequence against
/// its pointwise limit, cross-checked with the direct norm oracle.  The two
/// schedules are paired (equal length, tightening): condition (a) must pass
/// at every epsilon, condition (b) must hold as sup(threshold_i) < epsilon_i.
VitaliReport vitali_verdict(std::span<const LatticeFunction> seq, const LatticeFunction& limit,
                            double p, std::span<const double> epsilon_schedule,
                            std::span<const double> threshold_schedule);

struct RadonRieszReport {
    bool hypothesis_met = false;   ///< |f_m|_p converged to |limit|_p
    bool conclusion_met = false;   ///< |f_m - limit|_p converged to 0
    bool pass = false;             ///< hypothesis implies conclusion on the sample
    double correlation = 0.0;      ///< Pearson correlation of norm gap vs distance gap
    bool degenerate = false;       ///< gaps had no variance (e.g. constant sequence)
};

/// Checks the norm-convergence upgrade on the sampled prefix: if the norms
/// converge then the distances must, and reports how tightly the norm gap
/// tracks the distance gap.
RadonRieszReport radon_riesz_check(std::span<const LatticeFunction> seq,
                                   const LatticeFunction& limit, double p);

struct LatticeFamily {
    std::string name;
    std::vector<LatticeFunction> members;
    LatticeFunction limit;
};

/// f_m = prefix of a geometric profile f(k) = 2^{-k} on unit cells; limit is
/// the full profile.  Converges; both conditions hold.
LatticeFamily family_truncation(int length);
/// f_m = indicator of unit cell m; pointwise limit 0 but mass escapes, so
/// condition (a) fails.
LatticeFamily family_escaping_bump(int length);
/// f_m = single cell of measure 1/m and value m^{1/p}: unit p-mass
/// concentrates, so condition (b) fails.
LatticeFamily family_concentrating_spike(int length, double p);

}  // namespace stowave
