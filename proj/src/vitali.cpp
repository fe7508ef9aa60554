#include "stowave/vitali.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace stowave {

namespace {

double entry_mass(const LatticeEntry& e, double p) { return e.measure * std::pow(std::abs(e.value), p); }

/// Minimal heavy-cell set of one member: cells in decreasing contribution
/// order until the leftover tail mass is < epsilon.
std::vector<std::int64_t> heavy_cells(const LatticeFunction& f, double p, double epsilon) {
    std::vector<LatticeEntry> order = f.entries;
    std::stable_sort(order.begin(), order.end(), [p](const LatticeEntry& a, const LatticeEntry& b) {
        const double ma = entry_mass(a, p);
        const double mb = entry_mass(b, p);
        if (ma != mb) return ma > mb;
        return a.cell < b.cell;
    });
    double tail = 0.0;
    for (const auto& e : order) tail += entry_mass(e, p);
    std::vector<std::int64_t> cells;
    for (const auto& e : order) {
        if (tail < epsilon) break;
        cells.push_back(e.cell);
        tail -= entry_mass(e, p);
    }
    return cells;
}

double value_at(const LatticeFunction& f, std::int64_t cell) {
    const auto it = std::lower_bound(f.entries.begin(), f.entries.end(), cell,
                                     [](const LatticeEntry& e, std::int64_t c) { return e.cell < c; });
    return (it != f.entries.end() && it->cell == cell) ? it->value : 0.0;
}

}  // namespace

LatticeFunction make_lattice_function(std::vector<LatticeEntry> entries) {
    for (const auto& e : entries) {
        if (!(e.measure > 0.0) || !std::isfinite(e.measure) || !std::isfinite(e.value)) {
            throw std::invalid_argument("make_lattice_function: measures must be positive and finite");
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const LatticeEntry& a, const LatticeEntry& b) { return a.cell < b.cell; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].cell == entries[i - 1].cell) {
            throw std::invalid_argument("make_lattice_function: duplicate cell id");
        }
    }
    return {std::move(entries)};
}

double lp_norm(const LatticeFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    for (const auto& e : f.entries) s += entry_mass(e, p);
    return std::pow(s, 1.0 / p);
}

LatticeFunction lattice_sub(const LatticeFunction& a, const LatticeFunction& b) {
    std::vector<LatticeEntry> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries.size() || j < b.entries.size()) {
        if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].cell < b.entries[j].cell)) {
            out.push_back(a.entries[i++]);
        } else if (i == a.entries.size() || b.entries[j].cell < a.entries[i].cell) {
            LatticeEntry e = b.entries[j++];
            e.value = -e.value;
            out.push_back(e);
        } else {
            if (a.entries[i].measure != b.entries[j].measure) {
                throw std::invalid_argument("lattice_sub: shared cell with different measures");
            }
            out.push_back({a.entries[i].cell, a.entries[i].measure, a.entries[i].value - b.entries[j].value});
            ++i;
            ++j;
        }
    }
    return {std::move(out)};
}

ConditionAResult check_condition_a(std::span<const LatticeFunction> seq, double p, double epsilon) {
    if (seq.empty()) throw std::invalid_argument("check_condition_a: empty sequence");
    if (!(epsilon > 0.0)) throw std::invalid_argument("check_condition_a: epsilon must be positive");
    std::set<std::int64_t> witness;
    std::map<std::int64_t, double> measures;
    std::size_t last_growth = 0;
    for (std::size_t m = 0; m < seq.size(); ++m) {
        for (const auto& e : seq[m].entries) {
            const auto it = measures.find(e.cell);
            if (it == measures.end()) {
                measures.emplace(e.cell, e.measure);
            } else if (it->second != e.measure) {
                throw std::invalid_argument("check_condition_a: inconsistent cell measures across members");
            }
        }
        for (std::int64_t c : heavy_cells(seq[m], p, epsilon)) {
            if (witness.insert(c).second) last_growth = m + 1;
        }
    }
    ConditionAResult res;
    res.last_growth = last_growth;
    res.witness.assign(witness.begin(), witness.end());
    for (std::int64_t c : res.witness) res.witness_measure += measures.at(c);
    res.pass = last_growth <= (seq.size() + 1) / 2;
    return res;
}

ConditionBResult check_condition_b(std::span<const LatticeFunction> seq, double p,
                                   double mu_threshold, double bound) {
    if (seq.empty()) throw std::invalid_argument("check_condition_b: empty sequence");
    if (!(mu_threshold > 0.0)) throw std::invalid_argument("check_condition_b: threshold must be positive");
    ConditionBResult res;
    for (std::size_t m = 0; m < seq.size(); ++m) {
        std::vector<LatticeEntry> order = seq[m].entries;
        std::stable_sort(order.begin(), order.end(), [p](const LatticeEntry& a, const LatticeEntry& b) {
            const double da = std::pow(std::abs(a.value), p);
            const double db = std::pow(std::abs(b.value), p);
            if (da != db) return da > db;
            return a.cell < b.cell;
        });
        double frac = 0.0;
        double atomic = 0.0;
        double remaining = mu_threshold;
        bool atomic_open = true;
        for (const auto& e : order) {
            if (remaining <= 0.0) break;
            const double density = std::pow(std::abs(e.value), p);
            const double take = std::min(e.measure, remaining);
            frac += take * density;
            if (atomic_open && e.measure <= remaining) {
                atomic += e.measure * density;
            } else {
                atomic_open = false;
            }
            remaining -= take;
        }
        if (frac > res.sup_fractional) {
            res.sup_fractional = frac;
            res.worst_member = m;
        }
        res.sup_atomic = std::max(res.sup_atomic, atomic);
    }
    res.pass = res.sup_fractional < bound;
    return res;
}

VitaliReport vitali_verdict(std::span<const LatticeFunction> seq, const LatticeFunction& limit,
                            double p, std::span<const double> epsilon_schedule,
                            std::span<const double> threshold_schedule) {
    if (seq.empty()) throw std::invalid_argument("vitali_verdict: empty sequence");
    if (epsilon_schedule.empty() || epsilon_schedule.size() != threshold_schedule.size()) {
        throw std::invalid_argument("vitali_verdict: schedules must be paired and nonempty");
    }
    VitaliReport report;

    // Empirical pointwise check: on every listed cell the distance to the
    // limit must come back below tolerance somewhere in the trailing half
    // (a cell still "in transit" at the very end is fine, a cell pinned away
    // from the limit is not).
    report.pointwise_ok = true;
    std::set<std::int64_t> cells;
    for (const auto& f : seq) {
        for (const auto& e : f.entries) cells.insert(e.cell);
    }
    for (const auto& e : limit.entries) cells.insert(e.cell);
    const std::size_t half_start = seq.size() / 2;
    for (std::int64_t c : cells) {
        const double target = value_at(limit, c);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m = half_start; m < seq.size(); ++m) {
            best = std::min(best, std::abs(value_at(seq[m], c) - target));
        }
        if (!(best <= 1e-9 * (1.0 + std::abs(target)))) {
            report.pointwise_ok = false;
            report.pointwise_bad_cell = c;
            break;
        }
    }

    report.condition_a = true;
    report.condition_b = true;
    for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
        if (!check_condition_a(seq, p, epsilon_schedule[i]).pass) report.condition_a = false;
        if (!check_condition_b(seq, p, threshold_schedule[i], epsilon_schedule[i]).pass) {
            report.condition_b = false;
        }
    }
    report.predicted_convergent = report.pointwise_ok && report.condition_a && report.condition_b;

    report.oracle_distances.reserve(seq.size());
    for (const auto& f : seq) report.oracle_distances.push_back(lp_norm(lattice_sub(f, limit), p));
    const double eta = epsilon_schedule.back();
    report.oracle_convergent = true;
    for (std::size_t m = seq.size() - (seq.size() + 3) / 4; m < seq.size(); ++m) {
        if (!(report.oracle_distances[m] < eta)) report.oracle_convergent = false;
    }
    report.agrees = report.predicted_convergent == report.oracle_convergent;
    return report;
}

RadonRieszReport radon_riesz_check(std::span<const LatticeFunction> seq,
                                   const LatticeFunction& limit, double p) {
    if (seq.size() < 2) throw std::invalid_argument("radon_riesz_check: need at least two members");
    RadonRieszReport report;
    const double limit_norm = lp_norm(limit, p);
    std::vector<double> norm_gap;
    std::vector<double> dist_gap;
    for (const auto& f : seq) {
        norm_gap.push_back(std::abs(lp_norm(f, p) - limit_norm));
        dist_gap.push_back(lp_norm(lattice_sub(f, limit), p));
    }
    const double tol = 0.05 * (1.0 + limit_norm);
    report.hypothesis_met = norm_gap.back() <= tol;
    report.conclusion_met = dist_gap.back() <= tol;
    report.pass = !report.hypothesis_met || report.conclusion_met;

    const auto n = static_cast<double>(seq.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        ma += norm_gap[i];
        mb += dist_gap[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0;
    double va = 0.0;
    double vb = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        cov += (norm_gap[i] - ma) * (dist_gap[i] - mb);
        va += (norm_gap[i] - ma) * (norm_gap[i] - ma);
        vb += (dist_gap[i] - mb) * (dist_gap[i] - mb);
    }
    if (va <= 0.0 || vb <= 0.0) {
        report.degenerate = true;
        report.correlation = 0.0;
    } else {
        report.correlation = cov / std::sqrt(va * vb);
    }
    return report;
}

LatticeFamily family_truncation(int length) {
    if (length < 1) throw std::invalid_argument("family_truncation: length must be >= 1");
    LatticeFamily fam;
    fam.name = "truncation";
    std::vector<LatticeEntry> full;
    for (int k = 1; k <= length; ++k) {
        full.push_back({k, 1.0, std::pow(2.0, -k)});
        fam.members.push_back(make_lattice_function(full));
    }
    fam.limit = make_lattice_function(full);
    return fam;
}

LatticeFamily family_escaping_bump(int length) {
    if (length < 1) throw std::invalid_argument("family_escaping_bump: length must be >= 1");
    LatticeFamily fam;
    fam.name = "escaping-bump";
    for (int m = 1; m <= length; ++m) {
        fam.members.push_back(make_lattice_function({{m, 1.0, 1.0}}));
    }
    fam.limit = make_lattice_function({});
    return fam;
}

LatticeFamily family_concentrating_spike(int length, double p) {
    if (length < 1) throw std::invalid_argument("family_concentrating_spike: length must be >= 1");
    LatticeFamily fam;
    fam.name = "concentrating-spike";
    for (int m = 1; m <= length; ++m) {
        fam.members.push_back(make_lattice_function(
            {{m, 1.0 / static_cast<double>(m), std::pow(static_cast<double>(m), 1.0 / p)}}));
    }
    fam.limit = make_lattice_function({});
    return fam;
}

}  // namespace stowave
