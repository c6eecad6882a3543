#pragma once

// Small integer helpers: modular reduction, primality, modular powers and
// primitive elements of F_p.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lazseq {

/// Mathematical modulo: result is always in [0, m).
constexpr std::int64_t mod(std::int64_t x, std::int64_t m)
{
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

constexpr bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

constexpr bool is_odd_prime(std::int64_t n) { return n > 2 && is_prime(n); }

constexpr std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Multiplicative order of g modulo prime p (g must be a unit).
inline std::int64_t multiplicative_order(std::int64_t g, std::int64_t p)
{
    g = mod(g, p);
    if (g == 0) throw std::invalid_argument("0 has no multiplicative order");
    std::int64_t order = p - 1;
    for (std::int64_t q : prime_factors(p - 1))
        while (order % q == 0 && pow_mod(g, order / q, p) == 1) order /= q;
    return order;
}

inline bool is_primitive_element(std::int64_t g, std::int64_t p)
{
    return mod(g, p) != 0 && multiplicative_order(g, p) == p - 1;
}

/// Smallest primitive element of F_p in [2, p), or the validated override.
/// For p = 3 the answer is 2; 1 is never returned.
inline std::int64_t find_primitive_element(std::int64_t p, std::optional<std::int64_t> override_alpha = std::nullopt)
{
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime (got " + std::to_string(p) + ")");
    if (override_alpha) {
        if (*override_alpha < 2 || *override_alpha >= p || !is_primitive_element(*override_alpha, p))
            throw std::invalid_argument("alpha = " + std::to_string(*override_alpha) +
                                        " is not a primitive element of F_" + std::to_string(p));
        return *override_alpha;
    }
    for (std::int64_t g = 2; g < p; ++g)
        if (is_primitive_element(g, p)) return g;
    throw std::logic_error("no primitive element found");  // unreachable for prime p
}

} // namespace lazseq
