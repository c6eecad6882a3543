#pragma once

// Whole-set certification: comb-spectrum nulls for construction B, cyclic
// distinctness, and the aggregated certificate emitted by `verify`.

#include "lazseq/ambiguity.hpp"
#include "lazseq/bounds.hpp"
#include "lazseq/constructions.hpp"
#include "lazseq/core.hpp"
#include "lazseq/io.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lazseq {

/// Frequency bins on which a whole set must carry no energy.
struct SpectralNullSet {
    std::int64_t length = 0;
    std::vector<std::int64_t> forbidden;  // sorted, distinct, < length

    bool contains(std::int64_t i) const { return std::binary_search(forbidden.begin(), forbidden.end(), i); }
};

/// Null set of construction B:
///   {(KN+P) a + K b + g : a, b in Z_N, g in Z*_K} u {KN + (KN+P) a + b : a in Z_N, b in Z_P}
inline SpectralNullSet omega_for_b(std::int64_t K, std::int64_t N, std::int64_t P)
{
    if (K < 1 || N < 1 || P < 1) throw std::invalid_argument("K, N and P must be positive integers");
    if (P >= K) throw std::invalid_argument("P < K required");
    const std::int64_t Q = K * N + P;
    std::set<std::int64_t> bins;
    for (std::int64_t a = 0; a < N; ++a) {
        for (std::int64_t b = 0; b < N; ++b)
            for (std::int64_t g = 1; g < K; ++g) bins.insert(Q * a + K * b + g);
        for (std::int64_t b = 0; b < P; ++b) bins.insert(K * N + Q * a + b);
    }
    return {N * Q, {bins.begin(), bins.end()}};
}

inline double spectral_tolerance(std::int64_t length) { return 1e-9 * std::sqrt(static_cast<double>(length)); }

struct SpectralNullCheck {
    bool ok = true;
    std::int64_t worst_bin = -1;
    double worst_energy = 0.0;  // max over omega of sum_n |d_n(i)|^2
};

inline SpectralNullCheck verify_spectral_null(std::span<const FrequencyDual> duals, const SpectralNullSet& omega,
                                              double tol)
{
    SpectralNullCheck check;
    for (auto i : omega.forbidden) {
        double energy = 0.0;
        for (const auto& d : duals) energy += std::norm(d.values[static_cast<std::size_t>(i)]);
        if (energy > check.worst_energy || check.worst_bin < 0) {
            check.worst_energy = energy;
            check.worst_bin = i;
        }
    }
    check.ok = check.worst_energy <= tol;
    return check;
}

inline std::vector<FrequencyDual> set_duals(const SequenceSet& set)
{
    std::vector<FrequencyDual> duals;
    duals.reserve(static_cast<std::size_t>(set.size()));
    for (const auto& s : set.sequences()) duals.push_back(dft(s));
    return duals;
}

inline SpectralNullCheck verify_spectral_null(const SequenceSet& set, const SpectralNullSet& omega, double tol)
{
    if (omega.length != set.length()) throw std::invalid_argument("null set length does not match the set length");
    const auto duals = set_duals(set);
    return verify_spectral_null(duals, omega, tol);
}

/// Indices i with |d(i)| > tol.
inline std::vector<std::int64_t> spectral_support(const FrequencyDual& d, double tol)
{
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < d.length(); ++i)
        if (d.magnitude(i) > tol) out.push_back(i);
    return out;
}

struct CombMagnitudeCheck {
    bool ok = true;
    double expected = 0.0;                 // sqrt(K + P/N)
    double worst_deviation = 0.0;          // over bins outside omega
    std::vector<std::int64_t> support_sizes;  // nonzero bins per sequence
};

/// Every bin outside the null set has magnitude sqrt(K + P/N).
inline CombMagnitudeCheck verify_comb_magnitude(const SequenceSet& set, double tol)
{
    const auto* prov = std::get_if<ProvenanceB>(&set.provenance());
    if (!prov) throw std::invalid_argument("comb magnitude check needs construction B provenance");
    const auto omega = omega_for_b(prov->K, prov->N, prov->P);
    if (omega.length != set.length()) throw std::invalid_argument("provenance does not match the set length");

    CombMagnitudeCheck check;
    check.expected = std::sqrt(static_cast<double>(prov->K) + static_cast<double>(prov->P) / static_cast<double>(prov->N));
    for (const auto& d : set_duals(set)) {
        check.support_sizes.push_back(static_cast<std::int64_t>(spectral_support(d, tol).size()));
        for (std::int64_t i = 0; i < d.length(); ++i) {
            if (omega.contains(i)) continue;
            check.worst_deviation = std::max(check.worst_deviation, std::abs(d.magnitude(i) - check.expected));
        }
    }
    check.ok = check.worst_deviation <= tol;
    return check;
}

struct DistinctnessCheck {
    bool ok = true;
    // witness when !ok: s_n(t) = s_n2(<t + tau>_L) * omega_D^c
    std::int64_t n = -1;
    std::int64_t n2 = -1;
    std::int64_t tau = 0;
    std::int64_t c = 0;
};

/// Exact check that no member equals a cyclic shift of another up to a constant phase.
inline DistinctnessCheck verify_cyclically_distinct(const SequenceSet& set)
{
    const auto L = set.length();
    for (std::int64_t n = 0; n < set.size(); ++n)
        for (std::int64_t m = n + 1; m < set.size(); ++m)
            for (std::int64_t tau = 0; tau < L; ++tau)
                if (auto c = cyclic_shift_ratio(set[n], set[m], tau)) return {false, n, m, tau, *c};
    return {};
}

/// Regenerates the set from its provenance; nullopt for external sets or bad parameters.
inline std::optional<SequenceSet> regenerate(const Provenance& prov)
{
    try {
        if (const auto* a = std::get_if<ProvenanceA>(&prov)) {
            auto set = construct_a(a->M, a->N, a->K, PermutationSigma(a->N, a->sigma), ValidationPolicy{true});
            return SequenceSet({set.sequences().begin(), set.sequences().end()}, prov);
        }
        if (const auto* b = std::get_if<ProvenanceB>(&prov)) return construct_b(b->K, b->N, b->P, {true});
        if (const auto* c = std::get_if<ProvenanceC>(&prov)) {
            auto set = construct_c(c->p, MappingPi(c->p, c->pi), ValidationPolicy{true});
            return SequenceSet({set.sequences().begin(), set.sequences().end()}, prov);
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

struct CertifyOptions {
    double zero_factor = default_zero_factor;      // AF zero threshold = factor * L
    std::optional<DelayDopplerZone> zone;          // overrides the provenance zone
    std::optional<double> claimed_theta;           // level claimed over `zone`
    std::optional<std::int64_t> zcz;               // also claim (L, N, Z)-ZCZ
    std::int64_t extended_zone_max_length = 420;   // construction C extended-zone scan limit
};

struct Certificate {
    json claims = json::object();
    json measured = json::object();
    json verdicts = json::object();
    json tolerances = json::object();
    json witnesses = json::array();
    bool all_claims_hold = true;

    json to_json() const
    {
        json j;
        j["claims"] = claims;
        j["measured"] = measured;
        j["verdicts"] = verdicts;
        j["tolerances"] = tolerances;
        j["witnesses"] = witnesses;
        return j;
    }
};

namespace detail {

inline json location_json(const AfLocation& loc, double magnitude)
{
    return json{{"n", loc.n}, {"n2", loc.n2}, {"tau", loc.tau}, {"v", loc.v}, {"magnitude", magnitude}};
}

/// Max auto magnitude over tau in [0, zx) x |v| < zy, skipping the origin.
inline std::pair<double, AfLocation> max_auto_magnitude(const SequenceSet& set, std::int64_t zx, std::int64_t zy)
{
    const auto L = set.length();
    const auto omega = twiddle_table(L);
    double best = 0.0;
    AfLocation where;
    for (std::int64_t n = 0; n < set.size(); ++n) {
        const auto a = evaluate(set[n]);
        for (std::int64_t tau = 0; tau < zx; ++tau)
            for (std::int64_t v = -zy + 1; v < zy; ++v) {
                if (tau == 0 && v <= 0) continue;
                const double mag = std::abs(af_direct(a, a, tau, v, omega));
                if (mag > best) {
                    best = mag;
                    where = {n, n, tau, v};
                }
            }
    }
    return {best, where};
}

} // namespace detail

inline Certificate certify(const SequenceSet& set, const CertifyOptions& opts = {})
{
    Certificate cert;
    const auto L = set.length();
    const auto N = set.size();
    const double af_tol = zero_tolerance(L, opts.zero_factor);
    const double spec_tol = spectral_tolerance(L);
    const auto& prov = set.provenance();
    const auto claimed = claimed_zone(prov);

    cert.tolerances = {{"af_zero", af_tol}, {"spectral", spec_tol}};

    auto fail = [&](const char* verdict) {
        cert.verdicts[verdict] = false;
        cert.all_claims_hold = false;
    };
    auto pass = [&](const char* verdict) { cert.verdicts[verdict] = true; };

    // Zone and level under test.
    std::optional<DelayDopplerZone> zone = opts.zone;
    std::optional<double> level = opts.claimed_theta;
    if (claimed) {
        if (!zone) zone = DelayDopplerZone(claimed->params.zx, claimed->params.zy);
        if (!level) level = claimed->theta_max;
    }

    cert.claims["family"] = family_name(prov);
    cert.claims["provenance"] = provenance_to_json(prov);
    cert.measured["length"] = L;
    cert.measured["set_size"] = N;

    if (claimed) {
        const bool matches = claimed->params.L == L && claimed->params.N == N;
        cert.claims["length"] = claimed->params.L;
        cert.claims["set_size"] = claimed->params.N;
        if (matches) pass("shape_matches_provenance");
        else fail("shape_matches_provenance");
        const auto regen = regenerate(prov);
        if (regen && *regen == set) pass("matches_construction");
        else fail("matches_construction");
        if (!matches) return cert;
    }

    if (zone) {
        zone->check_fits(L);
        const auto stats = sidelobe_stats(set, *zone);
        cert.measured["zone"] = {zone->zx, zone->zy};
        cert.measured["theta_auto"] = stats.theta_auto;
        cert.measured["theta_cross"] = stats.theta_cross;
        cert.measured["theta_max"] = stats.theta_max;
        cert.measured["argmax"] = detail::location_json(stats.argmax, stats.theta_max);

        const SetParameters params{L, N, zone->zx, zone->zy};
        cert.measured["zaz_ratio"] = zaz_ratio(L, N, zone->zx, zone->zy);
        cert.measured["zaz_feasible"] = zaz_feasible(L, N, zone->zx, zone->zy);
        const double bound = (N * zone->zx > 1) ? laz_lower_bound(params) : 0.0;
        cert.measured["laz_lower_bound"] = bound;
        if (bound > 0.0) cert.measured["rho_laz"] = stats.theta_max / bound;
        const auto report = optimality_report(params, stats.theta_max, af_tol, claimed.has_value());
        cert.verdicts["optimality"] = to_string(report.verdict);

        if (stats.theta_max + 1e-9 >= bound) pass("lemma1_respected");
        else fail("lemma1_respected");

        if (level) {
            cert.claims["zone"] = {zone->zx, zone->zy};
            cert.claims["theta_max"] = *level;
            const bool holds = *level == 0.0 ? stats.theta_max <= af_tol
                                             : std::abs(stats.theta_max - *level) <= af_tol;
            if (holds) {
                pass("zone_claim");
            } else {
                fail("zone_claim");
                json w = detail::location_json(stats.argmax, stats.theta_max);
                w["check"] = "zone_claim";
                cert.witnesses.push_back(w);
            }
            if (*level == 0.0) {
                if (zaz_feasible(L, N, zone->zx, zone->zy)) pass("zaz_ceiling");
                else fail("zaz_ceiling");
            }
        }
    }

    if (claimed) {
        cert.measured["closed_form_ratio"] = closed_form_ratio(prov);
        const auto distinct = verify_cyclically_distinct(set);
        if (distinct.ok) {
            pass("cyclically_distinct");
        } else {
            fail("cyclically_distinct");
            cert.witnesses.push_back(
                {{"check", "cyclically_distinct"}, {"n", distinct.n}, {"n2", distinct.n2}, {"tau", distinct.tau}, {"c", distinct.c}});
        }
    } else {
        const auto distinct = verify_cyclically_distinct(set);
        cert.measured["cyclically_distinct"] = distinct.ok;
    }

    if (const auto* b = std::get_if<ProvenanceB>(&prov)) {
        const auto omega = omega_for_b(b->K, b->N, b->P);
        const auto nulls = verify_spectral_null(set, omega, spec_tol);
        cert.measured["omega_size"] = static_cast<std::int64_t>(omega.forbidden.size());
        cert.measured["omega_max_energy"] = nulls.worst_energy;
        if (nulls.ok) {
            pass("spectral_null");
        } else {
            fail("spectral_null");
            cert.witnesses.push_back({{"check", "spectral_null"}, {"bin", nulls.worst_bin}, {"energy", nulls.worst_energy}});
        }
        const auto comb = verify_comb_magnitude(set, spec_tol);
        cert.measured["comb_magnitude"] = comb.expected;
        cert.measured["comb_max_deviation"] = comb.worst_deviation;
        cert.measured["support_sizes"] = comb.support_sizes;
        if (comb.ok) pass("comb_magnitude");
        else fail("comb_magnitude");
    }

    if (const auto* c = std::get_if<ProvenanceC>(&prov)) {
        const std::int64_t p = c->p;
        if (L <= opts.extended_zone_max_length) {
            const auto [wide_doppler_max, wide_doppler_at] = detail::max_auto_magnitude(set, p - 1, L);
            const auto [wide_delay_max, wide_delay_at] = detail::max_auto_magnitude(set, L, p);
            cert.measured["auto_max_wide_doppler"] = wide_doppler_max;
            cert.measured["auto_max_wide_delay"] = wide_delay_max;
            const double cap = static_cast<double>(p) + af_tol;
            if (wide_doppler_max <= cap && wide_delay_max <= cap) {
                pass("auto_extended_zones");
            } else {
                fail("auto_extended_zones");
                const bool first = wide_doppler_max > cap;
                json w = detail::location_json(first ? wide_doppler_at : wide_delay_at, first ? wide_doppler_max : wide_delay_max);
                w["check"] = "auto_extended_zones";
                cert.witnesses.push_back(w);
            }
        } else {
            cert.verdicts["auto_extended_zones"] = "skipped";
        }
    }

    if (opts.zcz) {
        cert.claims["zcz"] = *opts.zcz;
        if (verify_zcz(set, *opts.zcz, af_tol)) pass("zcz");
        else fail("zcz");
        cert.measured["tfm_optimal"] = tfm_optimal(L, N, *opts.zcz);
    }

    cert.verdicts["all_claims_hold"] = cert.all_claims_hold;
    return cert;
}

} // namespace lazseq
