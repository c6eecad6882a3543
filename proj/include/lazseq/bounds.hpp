#pragma once

// Theoretical limits for unimodular LAZ/ZAZ/ZCZ sets and the figures of merit
// measured against them.

#include "lazseq/core.hpp"
#include "lazseq/number_theory.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lazseq {

struct SetParameters {
    std::int64_t L = 0;
    std::int64_t N = 0;
    std::int64_t zx = 0;
    std::int64_t zy = 0;
};

/// Lower bound on theta_max:
///   (L / sqrt(Zy)) * sqrt((N Zx Zy / L - 1) / (N Zx - 1)).
/// A negative radicand (N Zx Zy < L) is reported as 0: that regime is governed
/// by the ZAZ ceiling instead.
inline double laz_lower_bound(std::int64_t L, std::int64_t N, std::int64_t zx, std::int64_t zy)
{
    if (L < 1 || N < 1 || zx < 1 || zy < 1) throw std::invalid_argument("bound parameters must be positive");
    if (N * zx == 1) throw std::domain_error("LAZ bound undefined for N*Zx = 1");
    const double ratio = static_cast<double>(N * zx * zy) / static_cast<double>(L);
    if (N * zx * zy <= L) return 0.0;
    const double Ld = static_cast<double>(L);
    return Ld / std::sqrt(static_cast<double>(zy)) * std::sqrt((ratio - 1.0) / static_cast<double>(N * zx - 1));
}

inline double laz_lower_bound(const SetParameters& p) { return laz_lower_bound(p.L, p.N, p.zx, p.zy); }

/// theta_max over the LAZ bound. Throws in the ZAZ regime where the bound is 0.
inline double rho_laz(double theta_max, std::int64_t L, std::int64_t N, std::int64_t zx, std::int64_t zy)
{
    const double bound = laz_lower_bound(L, N, zx, zy);
    if (bound <= 0.0) throw std::domain_error("LAZ bound is zero (ZAZ regime, use zaz_ratio)");
    return theta_max / bound;
}

/// ZAZ ceiling: N Zx Zy <= L.
constexpr bool zaz_feasible(std::int64_t L, std::int64_t N, std::int64_t zx, std::int64_t zy)
{
    return N * zx * zy <= L;
}

inline double zaz_ratio(std::int64_t L, std::int64_t N, std::int64_t zx, std::int64_t zy)
{
    if (L < 1 || N < 1) throw std::invalid_argument("zaz_ratio: L and N must be positive");
    return static_cast<double>(zx * zy) / (static_cast<double>(L) / static_cast<double>(N));
}

/// Equality in the Tang-Fan-Matsufuji bound N Z <= L.
constexpr bool tfm_optimal(std::int64_t L, std::int64_t N, std::int64_t Z) { return N * Z == L; }

/// Zone and length a construction claims for its own output.
struct ClaimedZone {
    SetParameters params;
    double theta_max = 0.0;  // 0 for the ZAZ families, p for C
};

inline std::optional<ClaimedZone> claimed_zone(const Provenance& prov)
{
    if (const auto* a = std::get_if<ProvenanceA>(&prov))
        return ClaimedZone{{a->M * a->N * a->N, a->M * a->N, a->N / a->K, a->K}, 0.0};
    if (const auto* b = std::get_if<ProvenanceB>(&prov))
        return ClaimedZone{{b->N * (b->K * b->N + b->P), b->N, b->N, b->K}, 0.0};
    if (const auto* c = std::get_if<ProvenanceC>(&prov))
        return ClaimedZone{{c->p * (c->p - 1), c->p, c->p - 1, c->p}, static_cast<double>(c->p)};
    return std::nullopt;
}

/// Closed forms: A -> (K/N) floor(N/K); B -> 1 - P/(NK+P); C -> (1 + 1/(p-1)) sqrt(1 - 1/(p(p-1))).
inline double closed_form_ratio(const Provenance& prov)
{
    if (const auto* a = std::get_if<ProvenanceA>(&prov))
        return static_cast<double>(a->K) / static_cast<double>(a->N) * static_cast<double>(a->N / a->K);
    if (const auto* b = std::get_if<ProvenanceB>(&prov))
        return 1.0 - static_cast<double>(b->P) / static_cast<double>(b->N * b->K + b->P);
    if (const auto* c = std::get_if<ProvenanceC>(&prov)) {
        const double p = static_cast<double>(c->p);
        return (1.0 + 1.0 / (p - 1.0)) * std::sqrt(1.0 - 1.0 / (p * (p - 1.0)));
    }
    throw std::invalid_argument("closed-form ratio needs construction A, B or C provenance");
}

enum class Verdict { Optimal, Asymptotic, Suboptimal, ZazFeasible, ZazInfeasible };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Optimal: return "optimal";
    case Verdict::Asymptotic: return "asymptotic";
    case Verdict::Suboptimal: return "suboptimal";
    case Verdict::ZazFeasible: return "zaz-feasible";
    case Verdict::ZazInfeasible: return "zaz-infeasible";
    }
    return "?";
}

struct OptimalityReport {
    SetParameters params;
    double measured_theta_max = 0.0;
    double bound_value = 0.0;
    double factor = 0.0;  // rho_LAZ in the LAZ regime, ZAZ_ratio otherwise
    bool is_zaz = false;
    Verdict verdict = Verdict::Suboptimal;
};

/// Classifies a measured theta_max against the bounds.
///
/// In the ZAZ regime (theta_max <= zero_tol, or a zero LAZ bound) the factor
/// is ZAZ_ratio and the verdict comes from the ceiling, with "optimal" at a
/// ratio of exactly 1. Otherwise the factor is rho_LAZ: "optimal" at 1,
/// "asymptotic" for a family whose rho tends to 1, "suboptimal" otherwise.
inline OptimalityReport optimality_report(const SetParameters& p, double theta_max, double zero_tol = 0.0,
                                          bool asymptotic_family = false, double rho_tol = 1e-9)
{
    OptimalityReport r;
    r.params = p;
    r.measured_theta_max = theta_max;
    r.bound_value = (p.N * p.zx > 1) ? laz_lower_bound(p) : 0.0;
    if (theta_max <= zero_tol || r.bound_value <= 0.0) {
        r.is_zaz = true;
        r.factor = zaz_ratio(p.L, p.N, p.zx, p.zy);
        if (!zaz_feasible(p.L, p.N, p.zx, p.zy)) r.verdict = Verdict::ZazInfeasible;
        else if (p.N * p.zx * p.zy == p.L) r.verdict = Verdict::Optimal;
        else r.verdict = Verdict::ZazFeasible;
        return r;
    }
    r.factor = theta_max / r.bound_value;
    if (std::abs(r.factor - 1.0) <= rho_tol) r.verdict = Verdict::Optimal;
    else if (asymptotic_family) r.verdict = Verdict::Asymptotic;
    else r.verdict = Verdict::Suboptimal;
    return r;
}

struct Table2Row {
    std::int64_t p = 0;
    std::int64_t L = 0;
    std::int64_t N = 0;
    std::int64_t zx = 0;  // printed as (zx, zx) x (zy, zy)
    std::int64_t zy = 0;
    std::int64_t theta_max = 0;
    double rho = 0.0;
};

inline std::vector<Table2Row> table2(const std::vector<std::int64_t>& primes)
{
    std::vector<Table2Row> rows;
    for (auto p : primes) {
        if (!is_odd_prime(p)) throw std::invalid_argument("table2: " + std::to_string(p) + " is not an odd prime");
        rows.push_back({p, p * (p - 1), p, p - 1, p, p, closed_form_ratio(ProvenanceC{p, {}, std::nullopt})});
    }
    return rows;
}

inline std::vector<std::int64_t> odd_primes_up_to(std::int64_t pmax)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = 3; p <= pmax; ++p)
        if (is_odd_prime(p)) out.push_back(p);
    return out;
}

} // namespace lazseq
