#pragma once

// The three sequence-set families:
//
//   A: s_n(t) = omega_N^{K t2 t0 + n0 sigma(t0)} * omega_M^{n1 t1}
//      length M N^2, M N sequences, zero zone (-floor(N/K), floor(N/K)) x (-K, K)
//   B: s_n(t) = omega_N^{n t0} * omega_{KN+P}^{K t1 t0}
//      length N (KN+P), N sequences, zero zone (-N, N) x (-K, K), comb spectrum
//   C: s_n(t) = omega_p^{t1 pi(t0) + n t0}
//      length p (p-1), p sequences, low zone (-p+1, p-1) x (-p, p) with level p
//
// plus the permutation / mapping machinery they need.

#include "lazseq/core.hpp"
#include "lazseq/number_theory.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lazseq {

/// Largest modulus the O(n^3) brute-force validators run on unless told otherwise.
inline constexpr std::int64_t brute_force_cap = 257;

struct ValidationPolicy {
    bool allow_large = false;  // run brute force past brute_force_cap
};

/// A permutation of Z_N used by construction A.
class PermutationSigma {
public:
    PermutationSigma() = default;

    PermutationSigma(std::int64_t n, std::vector<std::int64_t> table, bool certified_non_affine = false)
        : n_(n), table_(std::move(table)), certified_(certified_non_affine)
    {
        if (n_ < 1) throw std::invalid_argument("sigma modulus must be positive");
        if (static_cast<std::int64_t>(table_.size()) != n_)
            throw std::invalid_argument("sigma table must have exactly N entries");
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        for (auto x : table_) {
            if (x < 0 || x >= n_) throw std::invalid_argument("sigma entry outside Z_N");
            if (seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("sigma is not a permutation of Z_N");
            seen[static_cast<std::size_t>(x)] = true;
        }
    }

    std::int64_t n() const { return n_; }
    std::span<const std::int64_t> table() const { return table_; }
    std::int64_t operator()(std::int64_t x) const { return table_[static_cast<std::size_t>(mod(x, n_))]; }
    bool certified() const { return certified_; }

private:
    std::int64_t n_ = 1;
    std::vector<std::int64_t> table_{0};
    bool certified_ = false;
};

/// First (a, b) for which sigma(x) = <a x + b>_N for every x, if any.
inline std::optional<std::pair<std::int64_t, std::int64_t>> affine_witness(const PermutationSigma& sigma)
{
    const auto N = sigma.n();
    for (std::int64_t a = 0; a < N; ++a) {
        // b is forced by x = 0
        const std::int64_t b = sigma(0);
        bool affine = true;
        for (std::int64_t x = 1; x < N && affine; ++x) affine = sigma(x) == mod(a * x + b, N);
        if (affine) return std::pair{a, b};
    }
    return std::nullopt;
}

inline void require_non_affine(const PermutationSigma& sigma, const ValidationPolicy& policy = {})
{
    if (sigma.n() > brute_force_cap && !policy.allow_large) {
        if (sigma.certified()) return;
        throw std::invalid_argument("sigma modulus " + std::to_string(sigma.n()) + " exceeds the brute-force cap " +
                                    std::to_string(brute_force_cap) + " (use --no-validation-cap)");
    }
    if (auto w = affine_witness(sigma))
        throw std::invalid_argument("sigma must not be affine: sigma(x) = " + std::to_string(w->first) + "x + " +
                                    std::to_string(w->second) + " mod N");
}

/// sigma(x) = <x^a>_N for an odd prime N, 1 < a < N, gcd(a, N-1) = 1.
inline PermutationSigma power_permutation(std::int64_t N, std::int64_t a)
{
    if (!is_odd_prime(N)) throw std::invalid_argument("power permutation needs N an odd prime (got " + std::to_string(N) + ")");
    if (a <= 1 || a >= N) throw std::invalid_argument("sigma exponent a must satisfy 1 < a < N");
    if (std::gcd(a, N - 1) != 1) throw std::invalid_argument("gcd(a, N-1) must be 1");
    std::vector<std::int64_t> table(static_cast<std::size_t>(N));
    for (std::int64_t x = 0; x < N; ++x) table[static_cast<std::size_t>(x)] = pow_mod(x, a, N);
    PermutationSigma sigma(N, std::move(table), true);
    if (N <= brute_force_cap) require_non_affine(sigma);
    return sigma;
}

/// Smallest a with 1 < a < N and gcd(a, N-1) = 1, if one exists.
inline std::optional<std::int64_t> default_sigma_exponent(std::int64_t N)
{
    for (std::int64_t a = 2; a < N; ++a)
        if (std::gcd(a, N - 1) == 1) return a;
    return std::nullopt;
}

/// Index split t = M N t2 + N t1 + t0 used by construction A.
struct IndexA {
    std::int64_t t2, t1, t0;
};

constexpr IndexA decompose_a(std::int64_t t, std::int64_t M, std::int64_t N)
{
    return {t / (M * N), (t / N) % M, t % N};
}

constexpr std::int64_t compose_a(IndexA idx, std::int64_t M, std::int64_t N)
{
    return M * N * idx.t2 + N * idx.t1 + idx.t0;
}

inline void check_a_parameters(std::int64_t M, std::int64_t N, std::int64_t K)
{
    if (M < 1) throw std::invalid_argument("M must be a positive integer");
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (K < 1) throw std::invalid_argument("K must be a positive integer");
    if (K >= N) throw std::invalid_argument("K < N required");
    if (std::gcd(K, N) != 1) throw std::invalid_argument("gcd(K,N) must be 1");
}

inline SequenceSet construct_a(std::int64_t M, std::int64_t N, std::int64_t K, const PermutationSigma& sigma,
                               const ValidationPolicy& policy = {})
{
    check_a_parameters(M, N, K);
    if (sigma.n() != N) throw std::invalid_argument("sigma must be a permutation of Z_N (modulus mismatch)");
    require_non_affine(sigma, policy);

    const std::int64_t D = std::lcm(N, M);
    const std::int64_t L = M * N * N;
    std::vector<PhaseSequence> seqs;
    seqs.reserve(static_cast<std::size_t>(M * N));
    for (std::int64_t n = 0; n < M * N; ++n) {
        const std::int64_t n1 = n / N, n0 = n % N;
        std::vector<std::int64_t> phases(static_cast<std::size_t>(L));
        for (std::int64_t t = 0; t < L; ++t) {
            const auto [t2, t1, t0] = decompose_a(t, M, N);
            const std::int64_t over_n = mod(K * t2 * t0 + n0 * sigma(t0), N);
            const std::int64_t over_m = mod(n1 * t1, M);
            phases[static_cast<std::size_t>(t)] = mod((D / N) * over_n + (D / M) * over_m, D);
        }
        seqs.emplace_back(D, std::move(phases));
    }
    ProvenanceA prov{M, N, K, {sigma.table().begin(), sigma.table().end()}, std::nullopt};
    return SequenceSet(std::move(seqs), std::move(prov));
}

struct ConstructionBOptions {
    bool relaxed = false;  // skip the gcd(P, NK) = 1 requirement
};

inline SequenceSet construct_b(std::int64_t K, std::int64_t N, std::int64_t P, ConstructionBOptions opts = {})
{
    if (K < 1 || N < 1 || P < 1) throw std::invalid_argument("K, N and P must be positive integers");
    if (P >= K) throw std::invalid_argument("P < K required");
    if (!opts.relaxed && std::gcd(P, N * K) != 1) throw std::invalid_argument("gcd(P,NK) must be 1");

    const std::int64_t Q = K * N + P;
    const std::int64_t L = N * Q;
    const std::int64_t D = L;
    std::vector<PhaseSequence> seqs;
    seqs.reserve(static_cast<std::size_t>(N));
    for (std::int64_t n = 0; n < N; ++n) {
        std::vector<std::int64_t> phases(static_cast<std::size_t>(L));
        for (std::int64_t t = 0; t < L; ++t) {
            const std::int64_t t1 = t / N, t0 = t % N;
            phases[static_cast<std::size_t>(t)] = mod(Q * n * t0 + N * K * t1 * t0, D);
        }
        seqs.emplace_back(D, std::move(phases));
    }
    return SequenceSet(std::move(seqs), ProvenanceB{K, N, P});
}

/// pi : Z_{p-1} -> Z_p used by construction C.
class MappingPi {
public:
    MappingPi() = default;

    MappingPi(std::int64_t p, std::vector<std::int64_t> table, bool certified = false)
        : p_(p), table_(std::move(table)), certified_(certified)
    {
        if (p_ < 3) throw std::invalid_argument("mapping modulus p must be at least 3");
        if (static_cast<std::int64_t>(table_.size()) != p_ - 1)
            throw std::invalid_argument("mapping table must have exactly p-1 entries");
        for (auto x : table_)
            if (x < 0 || x >= p_) throw std::invalid_argument("mapping entry outside Z_p");
    }

    std::int64_t p() const { return p_; }
    std::span<const std::int64_t> table() const { return table_; }
    std::int64_t operator()(std::int64_t x) const { return table_[static_cast<std::size_t>(mod(x, p_ - 1))]; }
    bool certified() const { return certified_; }

private:
    std::int64_t p_ = 3;
    std::vector<std::int64_t> table_{0, 0};
    bool certified_ = false;
};

struct MappingCheck {
    bool ok = true;
    std::int64_t a = 0;          // first violating shift
    std::int64_t b = 0;          // and offset
    std::int64_t solutions = 0;  // number of x solving it
};

/// Brute force: for every a in Z*_{p-1}, b in Z_p, pi(<x+a>_{p-1}) = pi(x) + b has at most one solution.
inline MappingCheck validate_mapping(const MappingPi& pi)
{
    const auto p = pi.p();
    std::vector<std::int64_t> count(static_cast<std::size_t>(p));
    for (std::int64_t a = 1; a < p - 1; ++a) {
        std::fill(count.begin(), count.end(), 0);
        // each x contributes to exactly one b
        for (std::int64_t x = 0; x < p - 1; ++x) ++count[static_cast<std::size_t>(mod(pi(x + a) - pi(x), p))];
        for (std::int64_t b = 0; b < p; ++b)
            if (count[static_cast<std::size_t>(b)] > 1) return {false, a, b, count[static_cast<std::size_t>(b)]};
    }
    return {};
}

/// pi(x) = alpha^x mod p with alpha the smallest primitive element, or the override.
inline MappingPi exp_mapping(std::int64_t p, std::optional<std::int64_t> alpha_override = std::nullopt)
{
    const std::int64_t alpha = find_primitive_element(p, alpha_override);
    std::vector<std::int64_t> table(static_cast<std::size_t>(p - 1));
    for (std::int64_t x = 0; x < p - 1; ++x) table[static_cast<std::size_t>(x)] = pow_mod(alpha, x, p);
    MappingPi pi(p, std::move(table), true);
    if (p <= 101) {
        const auto check = validate_mapping(pi);
        if (!check.ok) throw std::logic_error("exponential mapping failed its own invariant");
    }
    return pi;
}

inline SequenceSet construct_c(std::int64_t p, const MappingPi& pi, const ValidationPolicy& policy = {},
                               std::optional<std::int64_t> alpha = std::nullopt)
{
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime (got " + std::to_string(p) + ")");
    if (pi.p() != p) throw std::invalid_argument("mapping modulus does not match p");
    if (!pi.certified() || p <= brute_force_cap || policy.allow_large) {
        if (p > brute_force_cap && !policy.allow_large)
            throw std::invalid_argument("p exceeds the brute-force cap " + std::to_string(brute_force_cap) +
                                        " (use --no-validation-cap)");
        const auto check = validate_mapping(pi);
        if (!check.ok)
            throw std::invalid_argument("mapping pi violates the at-most-one-solution condition at a = " +
                                        std::to_string(check.a) + ", b = " + std::to_string(check.b));
    }

    const std::int64_t L = p * (p - 1);
    std::vector<PhaseSequence> seqs;
    seqs.reserve(static_cast<std::size_t>(p));
    for (std::int64_t n = 0; n < p; ++n) {
        std::vector<std::int64_t> phases(static_cast<std::size_t>(L));
        for (std::int64_t t = 0; t < L; ++t) {
            const std::int64_t t1 = t / (p - 1), t0 = t % (p - 1);
            phases[static_cast<std::size_t>(t)] = mod(t1 * pi(t0) + n * t0, p);
        }
        seqs.emplace_back(p, std::move(phases));
    }
    return SequenceSet(std::move(seqs), ProvenanceC{p, {pi.table().begin(), pi.table().end()}, alpha});
}

/// Construction C with the exponential mapping of a primitive element.
inline SequenceSet construct_c(std::int64_t p, std::optional<std::int64_t> alpha_override = std::nullopt)
{
    const std::int64_t alpha = find_primitive_element(p, alpha_override);
    return construct_c(p, exp_mapping(p, alpha), {}, alpha);
}

/// Construction A with a power-map sigma; the exponent defaults to the smallest valid one.
inline SequenceSet construct_a(std::int64_t M, std::int64_t N, std::int64_t K,
                               std::optional<std::int64_t> sigma_exp = std::nullopt)
{
    check_a_parameters(M, N, K);
    const auto a = sigma_exp ? sigma_exp : default_sigma_exponent(N);
    if (!a) throw std::invalid_argument("no power permutation exists for N = " + std::to_string(N));
    auto set = construct_a(M, N, K, power_permutation(N, *a));
    auto prov = std::get<ProvenanceA>(set.provenance());
    prov.sigma_exp = *a;
    return SequenceSet({set.sequences().begin(), set.sequences().end()}, std::move(prov));
}

} // namespace lazseq
