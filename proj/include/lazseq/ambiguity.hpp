#pragma once

// Periodic ambiguity and correlation functions.
//
//   AF_{a,b}(tau, v) = sum_{t=0}^{L-1} a(t) conj(b(<t+tau>_L)) omega_L^{v t}
//
// The direct sum is the reference. The frequency-domain route works on the
// unitary DFT duals c = DFT(a), d = DFT(b):
//
//   AF_{a,b}(tau, v) = omega_L^{-v tau} sum_i c(i) conj(d(<i+v>_L)) omega_L^{-i tau}
//
// so for a fixed Doppler v every delay comes out of one forward transform.

#include "lazseq/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lazseq {

/// Default relative zero threshold; a magnitude is "zero" iff <= factor * L.
inline constexpr double default_zero_factor = 1e-6;

inline double zero_tolerance(std::int64_t length, double factor = default_zero_factor)
{
    return factor * static_cast<double>(length);
}

/// Inclusive integer interval [lo, hi].
struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::int64_t size() const { return hi - lo + 1; }
    bool operator==(const IndexRange&) const = default;
};

namespace detail {

inline void check_lag(std::int64_t x, std::int64_t L, const char* what)
{
    if (x <= -L || x >= L)
        throw std::out_of_range(std::string(what) + " = " + std::to_string(x) + " outside (-" + std::to_string(L) +
                                ", " + std::to_string(L) + ")");
}

inline void check_range(const IndexRange& r, std::int64_t L, const char* what)
{
    if (r.size() < 1) throw std::invalid_argument(std::string(what) + " range is empty");
    check_lag(r.lo, L, what);
    check_lag(r.hi, L, what);
}

inline void check_pair(std::size_t la, std::size_t lb)
{
    if (la != lb) throw std::invalid_argument("ambiguity: sequence length mismatch");
    if (la == 0) throw std::invalid_argument("ambiguity: empty sequence");
}

/// Direct sum with a precomputed omega_L table. No range checks.
inline cplx af_direct(std::span<const cplx> a, std::span<const cplx> b, std::int64_t tau, std::int64_t v,
                      std::span<const cplx> omega)
{
    const auto L = static_cast<std::int64_t>(a.size());
    const std::int64_t vr = mod(v, L);
    std::int64_t shifted = mod(tau, L);
    std::int64_t exponent = 0;
    cplx acc{0.0, 0.0};
    for (std::int64_t t = 0; t < L; ++t) {
        acc += a[static_cast<std::size_t>(t)] * std::conj(b[static_cast<std::size_t>(shifted)]) *
               omega[static_cast<std::size_t>(exponent)];
        if (++shifted == L) shifted = 0;
        exponent += vr;
        if (exponent >= L) exponent -= L;
    }
    return acc;
}

/// out(k) = sum_i x(i) omega_L^{sign * i k}; unnormalized naive transform.
inline std::vector<cplx> naive_dft(std::span<const cplx> x, int sign, std::span<const cplx> omega)
{
    const auto L = static_cast<std::int64_t>(x.size());
    std::vector<cplx> out(x.size());
    for (std::int64_t k = 0; k < L; ++k) {
        const std::int64_t step = mod(sign * k, L);
        std::int64_t exponent = 0;
        cplx acc{0.0, 0.0};
        for (std::int64_t i = 0; i < L; ++i) {
            acc += x[static_cast<std::size_t>(i)] * omega[static_cast<std::size_t>(exponent)];
            exponent += step;
            if (exponent >= L) exponent -= L;
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

} // namespace detail

inline cplx af(std::span<const cplx> a, std::span<const cplx> b, std::int64_t tau, std::int64_t v)
{
    detail::check_pair(a.size(), b.size());
    const auto L = static_cast<std::int64_t>(a.size());
    detail::check_lag(tau, L, "tau");
    detail::check_lag(v, L, "v");
    const auto omega = twiddle_table(L);
    return detail::af_direct(a, b, tau, v, omega);
}

inline cplx af(const PhaseSequence& a, const PhaseSequence& b, std::int64_t tau, std::int64_t v)
{
    return af(evaluate(a), evaluate(b), tau, v);
}

/// Periodic correlation; the v = 0 slice of af through the same code path.
inline cplx cf(std::span<const cplx> a, std::span<const cplx> b, std::int64_t tau) { return af(a, b, tau, 0); }

inline cplx cf(const PhaseSequence& a, const PhaseSequence& b, std::int64_t tau) { return af(a, b, tau, 0); }

/// AF values on a rectangular (tau, v) grid, row-major in tau.
struct AmbiguitySurface {
    IndexRange tau_range;
    IndexRange v_range;
    std::vector<cplx> values;
    std::pair<std::int64_t, std::int64_t> source{0, 0};

    cplx at(std::int64_t tau, std::int64_t v) const
    {
        if (tau < tau_range.lo || tau > tau_range.hi || v < v_range.lo || v > v_range.hi)
            throw std::out_of_range("surface index out of range");
        return values[static_cast<std::size_t>((tau - tau_range.lo) * v_range.size() + (v - v_range.lo))];
    }

    double max_magnitude(bool skip_origin = false) const
    {
        double best = 0.0;
        for (std::int64_t tau = tau_range.lo; tau <= tau_range.hi; ++tau)
            for (std::int64_t v = v_range.lo; v <= v_range.hi; ++v) {
                if (skip_origin && tau == 0 && v == 0) continue;
                best = std::max(best, std::abs(at(tau, v)));
            }
        return best;
    }
};

inline AmbiguitySurface af_surface(std::span<const cplx> a, std::span<const cplx> b, IndexRange tau_range,
                                   IndexRange v_range, std::pair<std::int64_t, std::int64_t> source = {0, 0})
{
    detail::check_pair(a.size(), b.size());
    const auto L = static_cast<std::int64_t>(a.size());
    detail::check_range(tau_range, L, "tau");
    detail::check_range(v_range, L, "v");
    const auto omega = twiddle_table(L);

    AmbiguitySurface surface{tau_range, v_range, {}, source};
    surface.values.reserve(static_cast<std::size_t>(tau_range.size() * v_range.size()));
    // Same terms and summation order as af_direct; v and v - L share a sum.
    std::vector<cplx> product(static_cast<std::size_t>(L));
    std::vector<cplx> by_residue(static_cast<std::size_t>(L));
    std::vector<char> done(static_cast<std::size_t>(L));
    for (std::int64_t tau = tau_range.lo; tau <= tau_range.hi; ++tau) {
        std::int64_t shifted = mod(tau, L);
        for (std::int64_t t = 0; t < L; ++t) {
            product[static_cast<std::size_t>(t)] = a[static_cast<std::size_t>(t)] * std::conj(b[static_cast<std::size_t>(shifted)]);
            if (++shifted == L) shifted = 0;
        }
        std::fill(done.begin(), done.end(), 0);
        for (std::int64_t v = v_range.lo; v <= v_range.hi; ++v) {
            const auto r = static_cast<std::size_t>(mod(v, L));
            if (!done[r]) {
                std::int64_t exponent = 0;
                cplx acc{0.0, 0.0};
                for (std::int64_t t = 0; t < L; ++t) {
                    acc += product[static_cast<std::size_t>(t)] * omega[static_cast<std::size_t>(exponent)];
                    exponent += static_cast<std::int64_t>(r);
                    if (exponent >= L) exponent -= L;
                }
                by_residue[r] = acc;
                done[r] = 1;
            }
            surface.values.push_back(by_residue[r]);
        }
    }
    return surface;
}

inline AmbiguitySurface af_surface(const PhaseSequence& a, const PhaseSequence& b, IndexRange tau_range,
                                   IndexRange v_range, std::pair<std::int64_t, std::int64_t> source = {0, 0})
{
    return af_surface(evaluate(a), evaluate(b), tau_range, v_range, source);
}

/// Unitary DFT of a sequence: d(i) = L^{-1/2} sum_t a(t) omega_L^{-i t}.
struct FrequencyDual {
    std::vector<cplx> values;

    std::int64_t length() const { return static_cast<std::int64_t>(values.size()); }
    double magnitude(std::int64_t i) const { return std::abs(values[static_cast<std::size_t>(mod(i, length()))]); }

    double energy() const
    {
        double e = 0.0;
        for (const auto& x : values) e += std::norm(x);
        return e;
    }
};

inline FrequencyDual dft(std::span<const cplx> a)
{
    if (a.empty()) throw std::invalid_argument("dft: empty sequence");
    const auto L = static_cast<std::int64_t>(a.size());
    const auto omega = twiddle_table(L);
    auto out = detail::naive_dft(a, -1, omega);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    for (auto& x : out) x *= scale;
    return {std::move(out)};
}

inline FrequencyDual dft(const PhaseSequence& a) { return dft(evaluate(a)); }

/// Every delay tau in [0, L) of AF_{a,b}(., v), computed from the duals.
inline std::vector<cplx> doppler_cut_via_frequency(const FrequencyDual& c, const FrequencyDual& d, std::int64_t v)
{
    detail::check_pair(c.values.size(), d.values.size());
    const auto L = c.length();
    detail::check_lag(v, L, "v");
    const auto omega = twiddle_table(L);
    std::vector<cplx> product(static_cast<std::size_t>(L));
    for (std::int64_t i = 0; i < L; ++i)
        product[static_cast<std::size_t>(i)] =
            c.values[static_cast<std::size_t>(i)] * std::conj(d.values[static_cast<std::size_t>(mod(i + v, L))]);
    auto cut = detail::naive_dft(product, -1, omega);
    for (std::int64_t tau = 0; tau < L; ++tau)
        cut[static_cast<std::size_t>(tau)] *= omega[static_cast<std::size_t>(mod(-v * tau, L))];
    return cut;
}

inline cplx af_via_frequency(const FrequencyDual& c, const FrequencyDual& d, std::int64_t tau, std::int64_t v)
{
    detail::check_pair(c.values.size(), d.values.size());
    const auto L = c.length();
    detail::check_lag(tau, L, "tau");
    detail::check_lag(v, L, "v");
    cplx acc{0.0, 0.0};
    for (std::int64_t i = 0; i < L; ++i)
        acc += c.values[static_cast<std::size_t>(i)] *
               std::conj(d.values[static_cast<std::size_t>(mod(i + v, L))]) * root_of_unity(-i * tau, L);
    return acc * root_of_unity(-v * tau, L);
}

inline cplx af_via_frequency(const PhaseSequence& a, const PhaseSequence& b, std::int64_t tau, std::int64_t v)
{
    return af_via_frequency(dft(a), dft(b), tau, v);
}

/// Same grid as af_surface, filled one Doppler cut at a time from the duals.
inline AmbiguitySurface af_surface_via_frequency(const FrequencyDual& c, const FrequencyDual& d, IndexRange tau_range,
                                                 IndexRange v_range,
                                                 std::pair<std::int64_t, std::int64_t> source = {0, 0})
{
    detail::check_pair(c.values.size(), d.values.size());
    const auto L = c.length();
    detail::check_range(tau_range, L, "tau");
    detail::check_range(v_range, L, "v");
    AmbiguitySurface surface{tau_range, v_range, {}, source};
    surface.values.resize(static_cast<std::size_t>(tau_range.size() * v_range.size()));
    for (std::int64_t v = v_range.lo; v <= v_range.hi; ++v) {
        const auto cut = doppler_cut_via_frequency(c, d, v);
        for (std::int64_t tau = tau_range.lo; tau <= tau_range.hi; ++tau)
            surface.values[static_cast<std::size_t>((tau - tau_range.lo) * v_range.size() + (v - v_range.lo))] =
                cut[static_cast<std::size_t>(mod(tau, L))];
    }
    return surface;
}

/// Where a maximum was found: sequence indices and grid point.
struct AfLocation {
    std::int64_t n = -1;
    std::int64_t n2 = -1;
    std::int64_t tau = 0;
    std::int64_t v = 0;
    bool operator==(const AfLocation&) const = default;
};

struct SidelobeStats {
    double theta_auto = 0.0;
    double theta_cross = 0.0;
    double theta_max = 0.0;
    AfLocation auto_argmax;
    AfLocation cross_argmax;
    AfLocation argmax;
};

/// Maximum auto sidelobe and cross magnitude over the zone.
///
/// Uses |AF_a(tau, v)| = |AF_a(-tau, -v)| to scan only tau >= 0 of auto
/// surfaces, and |AF_{a,b}(tau, v)| = |AF_{b,a}(-tau, -v)| to scan only n < n'.
inline SidelobeStats sidelobe_stats(const SequenceSet& set, const DelayDopplerZone& zone)
{
    const auto L = set.length();
    zone.check_fits(L);
    const auto omega = twiddle_table(L);
    std::vector<std::vector<cplx>> seqs;
    seqs.reserve(static_cast<std::size_t>(set.size()));
    for (const auto& s : set.sequences()) seqs.push_back(evaluate(s));

    SidelobeStats stats;
    for (std::int64_t n = 0; n < set.size(); ++n) {
        const auto& a = seqs[static_cast<std::size_t>(n)];
        for (std::int64_t tau = 0; tau < zone.zx; ++tau)
            for (std::int64_t v = -zone.zy + 1; v < zone.zy; ++v) {
                if (tau == 0 && v <= 0) continue;  // origin, and (0,-v) mirrors (0,v)
                const double mag = std::abs(detail::af_direct(a, a, tau, v, omega));
                if (mag > stats.theta_auto) {
                    stats.theta_auto = mag;
                    stats.auto_argmax = {n, n, tau, v};
                }
            }
    }
    for (std::int64_t n = 0; n < set.size(); ++n)
        for (std::int64_t m = n + 1; m < set.size(); ++m) {
            const auto& a = seqs[static_cast<std::size_t>(n)];
            const auto& b = seqs[static_cast<std::size_t>(m)];
            for (std::int64_t tau = -zone.zx + 1; tau < zone.zx; ++tau)
                for (std::int64_t v = -zone.zy + 1; v < zone.zy; ++v) {
                    const double mag = std::abs(detail::af_direct(a, b, tau, v, omega));
                    if (mag > stats.theta_cross) {
                        stats.theta_cross = mag;
                        stats.cross_argmax = {n, m, tau, v};
                    }
                }
        }
    stats.theta_max = std::max(stats.theta_auto, stats.theta_cross);
    stats.argmax = stats.theta_cross > stats.theta_auto ? stats.cross_argmax : stats.auto_argmax;
    return stats;
}

/// (L, N, Z)-ZCZ check: CF = L at the in-phase auto point, 0 elsewhere for |tau| < Z.
inline bool verify_zcz(const SequenceSet& set, std::int64_t Z, double tol)
{
    const auto L = set.length();
    if (Z < 1 || Z > L) throw std::invalid_argument("ZCZ width must satisfy 1 <= Z <= L");
    const auto omega = twiddle_table(L);
    std::vector<std::vector<cplx>> seqs;
    for (const auto& s : set.sequences()) seqs.push_back(evaluate(s));
    const auto N = set.size();
    for (std::int64_t n = 0; n < N; ++n)
        for (std::int64_t m = 0; m < N; ++m)
            for (std::int64_t tau = -Z + 1; tau < Z; ++tau) {
                const cplx value =
                    detail::af_direct(seqs[static_cast<std::size_t>(n)], seqs[static_cast<std::size_t>(m)], tau, 0, omega);
                const cplx expected = (n == m && tau == 0) ? cplx(static_cast<double>(L), 0.0) : cplx(0.0, 0.0);
                if (std::abs(value - expected) > tol) return false;
            }
    return true;
}

inline bool verify_zcz(const SequenceSet& set, std::int64_t Z) { return verify_zcz(set, Z, zero_tolerance(set.length())); }

/// CSV: header `tau,v,re,im,mag`, one row per grid point, row-major in tau.
inline void write_surface_csv(std::ostream& os, const AmbiguitySurface& surface)
{
    os << "tau,v,re,im,mag\n";
    char buf[160];
    for (std::int64_t tau = surface.tau_range.lo; tau <= surface.tau_range.hi; ++tau)
        for (std::int64_t v = surface.v_range.lo; v <= surface.v_range.hi; ++v) {
            const cplx x = surface.at(tau, v);
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.15g,%.15g,%.15g\n", static_cast<long long>(tau),
                          static_cast<long long>(v), x.real() + 0.0, x.imag() + 0.0, std::abs(x));
            os << buf;
        }
}

} // namespace lazseq
