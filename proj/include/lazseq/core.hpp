#pragma once

// Exact unimodular sequences stored as integer phase numerators over a
// root-of-unity order, plus the set/zone value types shared by the analyzers.

#include "lazseq/number_theory.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lazseq {

using cplx = std::complex<double>;

/// exp(2*pi*i * k / n), with k reduced mod n first so large exponents keep full precision.
inline cplx root_of_unity(std::int64_t k, std::int64_t n)
{
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(k, n)) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

/// Table of omega_n^k for k in [0, n).
inline std::vector<cplx> twiddle_table(std::int64_t n)
{
    std::vector<cplx> table(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) table[static_cast<std::size_t>(k)] = root_of_unity(k, n);
    return table;
}

/// A unimodular sequence a(t) = omega_D^{phases[t]}.
class PhaseSequence {
public:
    PhaseSequence() = default;

    PhaseSequence(std::int64_t denom, std::vector<std::int64_t> phases)
        : denom_(denom), phases_(std::move(phases))
    {
        if (denom_ < 1) throw std::invalid_argument("denominator must be positive");
        if (phases_.empty()) throw std::invalid_argument("sequence must be non-empty");
        for (auto p : phases_)
            if (p < 0 || p >= denom_)
                throw std::invalid_argument("phase " + std::to_string(p) + " outside Z_" + std::to_string(denom_));
    }

    /// Reduces arbitrary integer phases into Z_D.
    static PhaseSequence from_unreduced(std::int64_t denom, std::vector<std::int64_t> phases)
    {
        if (denom < 1) throw std::invalid_argument("denominator must be positive");
        for (auto& p : phases) p = mod(p, denom);
        return {denom, std::move(phases)};
    }

    std::int64_t length() const { return static_cast<std::int64_t>(phases_.size()); }
    std::int64_t denom() const { return denom_; }
    std::span<const std::int64_t> phases() const { return phases_; }
    std::int64_t operator[](std::int64_t t) const { return phases_[static_cast<std::size_t>(t)]; }

    /// Cyclic shift: result(t) = this(<t + tau>_L).
    PhaseSequence shifted(std::int64_t tau) const
    {
        std::vector<std::int64_t> out(phases_.size());
        const auto L = length();
        for (std::int64_t t = 0; t < L; ++t) out[static_cast<std::size_t>(t)] = (*this)[mod(t + tau, L)];
        return {denom_, std::move(out)};
    }

    /// Multiplies every element by omega_D^c.
    PhaseSequence rotated(std::int64_t c) const
    {
        std::vector<std::int64_t> out(phases_);
        for (auto& p : out) p = mod(p + c, denom_);
        return {denom_, std::move(out)};
    }

    bool operator==(const PhaseSequence&) const = default;

private:
    std::int64_t denom_ = 1;
    std::vector<std::int64_t> phases_;
};

inline std::vector<cplx> evaluate(const PhaseSequence& seq)
{
    std::vector<cplx> out(static_cast<std::size_t>(seq.length()));
    for (std::int64_t t = 0; t < seq.length(); ++t) out[static_cast<std::size_t>(t)] = root_of_unity(seq[t], seq.denom());
    return out;
}

/// If a(t) = b(<t+tau>_L) * omega_D^c for all t, returns c in Z_D.
inline std::optional<std::int64_t> cyclic_shift_ratio(const PhaseSequence& a, const PhaseSequence& b, std::int64_t tau)
{
    if (a.length() != b.length()) throw std::invalid_argument("cyclic_shift_ratio: length mismatch");
    if (a.denom() != b.denom()) throw std::invalid_argument("cyclic_shift_ratio: denominator mismatch");
    const auto L = a.length();
    const auto D = a.denom();
    const std::int64_t c = mod(a[0] - b[mod(tau, L)], D);
    for (std::int64_t t = 1; t < L; ++t)
        if (mod(a[t] - b[mod(t + tau, L)], D) != c) return std::nullopt;
    return c;
}

// Construction provenance. External sets carry no claims.
struct ProvenanceA {
    std::int64_t M = 1, N = 0, K = 0;
    std::vector<std::int64_t> sigma;
    std::optional<std::int64_t> sigma_exp;
    bool operator==(const ProvenanceA&) const = default;
};

struct ProvenanceB {
    std::int64_t K = 0, N = 0, P = 0;
    bool operator==(const ProvenanceB&) const = default;
};

struct ProvenanceC {
    std::int64_t p = 0;
    std::vector<std::int64_t> pi;
    std::optional<std::int64_t> alpha;
    bool operator==(const ProvenanceC&) const = default;
};

struct ProvenanceExternal {
    bool operator==(const ProvenanceExternal&) const = default;
};

using Provenance = std::variant<ProvenanceExternal, ProvenanceA, ProvenanceB, ProvenanceC>;

inline std::string family_name(const Provenance& prov)
{
    switch (prov.index()) {
    case 1: return "A";
    case 2: return "B";
    case 3: return "C";
    default: return "external";
    }
}

/// N >= 1 sequences sharing one length and one denominator.
class SequenceSet {
public:
    SequenceSet() = default;

    explicit SequenceSet(std::vector<PhaseSequence> sequences, Provenance provenance = ProvenanceExternal{})
        : sequences_(std::move(sequences)), provenance_(std::move(provenance))
    {
        if (sequences_.empty()) throw std::invalid_argument("sequence set must contain at least one sequence");
        for (const auto& s : sequences_) {
            if (s.length() != sequences_.front().length())
                throw std::invalid_argument("all sequences in a set must share the same length");
            if (s.denom() != sequences_.front().denom())
                throw std::invalid_argument("all sequences in a set must share the same denominator");
        }
    }

    std::int64_t size() const { return static_cast<std::int64_t>(sequences_.size()); }
    std::int64_t length() const { return sequences_.front().length(); }
    std::int64_t denom() const { return sequences_.front().denom(); }
    const PhaseSequence& operator[](std::int64_t n) const { return sequences_.at(static_cast<std::size_t>(n)); }
    std::span<const PhaseSequence> sequences() const { return sequences_; }
    const Provenance& provenance() const { return provenance_; }

    bool operator==(const SequenceSet&) const = default;

private:
    std::vector<PhaseSequence> sequences_;
    Provenance provenance_;
};

/// The open rectangle (-zx, zx) x (-zy, zy) in the delay-Doppler plane.
struct DelayDopplerZone {
    std::int64_t zx = 1;
    std::int64_t zy = 1;

    DelayDopplerZone() = default;
    DelayDopplerZone(std::int64_t zx_, std::int64_t zy_) : zx(zx_), zy(zy_)
    {
        if (zx < 1 || zy < 1) throw std::invalid_argument("zone half-widths must be positive");
    }

    void check_fits(std::int64_t length) const
    {
        if (zx > length || zy > length)
            throw std::invalid_argument("zone (" + std::to_string(zx) + "," + std::to_string(zy) +
                                        ") exceeds sequence length " + std::to_string(length));
    }

    bool contains(std::int64_t tau, std::int64_t v) const
    {
        return tau > -zx && tau < zx && v > -zy && v < zy;
    }

    bool operator==(const DelayDopplerZone&) const = default;
};

} // namespace lazseq
