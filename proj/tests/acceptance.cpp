// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "lazseq/analysis.hpp"
#include "lazseq/bounds.hpp"
#include "lazseq/cli.hpp"
#include "lazseq/constructions.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace lazseq;

namespace {

constexpr double af_zero_factor = 1e-6;      // AF magnitudes <= 1e-6 * L count as zero
constexpr double energy_tol = 1e-9;          // summed |d_n(i)|^2 on Omega
constexpr double comb_tol = 1e-9;            // per-bin magnitude
constexpr double table_tol = 1e-6;           // printed 6-decimal values
constexpr double identity_tol = 1e-9;        // closed form vs generic factor

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

const std::vector<std::vector<std::int64_t>> example3_listing{
    {0, 0, 0, 0, 1, 3, 4, 2, 2, 1, 3, 4, 3, 4, 2, 1, 4, 2, 1, 3},
    {0, 1, 2, 3, 1, 4, 1, 0, 2, 2, 0, 2, 3, 0, 4, 4, 4, 3, 3, 1},
    {0, 2, 4, 1, 1, 0, 3, 3, 2, 3, 2, 0, 3, 1, 1, 2, 4, 4, 0, 4},
    {0, 3, 1, 4, 1, 1, 0, 1, 2, 4, 4, 3, 3, 2, 3, 0, 4, 0, 2, 2},
    {0, 4, 3, 2, 1, 2, 2, 4, 2, 0, 1, 1, 3, 3, 0, 3, 4, 1, 4, 0}};

const std::vector<std::pair<std::int64_t, double>> table2_printed{
    {3, 1.369306},  {5, 1.218349},  {7, 1.152694},  {11, 1.094989}, {13, 1.079856}, {17, 1.060545},
    {19, 1.054011}, {23, 1.044421}, {29, 1.035076}, {31, 1.032778}, {37, 1.027392}, {41, 1.024687}};

SequenceSet example1() { return construct_a(1, 13, 3, power_permutation(13, 5)); }
SequenceSet example2() { return construct_b(4, 5, 1); }
SequenceSet example3() { return construct_c(5, 3); }

double max_auto_over(const SequenceSet& set, IndexRange taus, IndexRange vs)
{
    double best = 0.0;
    for (std::int64_t n = 0; n < set.size(); ++n) {
        const auto s = af_surface(set[n], set[n], taus, vs);
        for (std::int64_t tau = taus.lo; tau <= taus.hi; ++tau)
            for (std::int64_t v = vs.lo; v <= vs.hi; ++v)
                if (tau != 0 || v != 0) best = std::max(best, std::abs(s.at(tau, v)));
    }
    return best;
}

// Largest |direct - frequency| over the full grid (-L, L)^2 for one pair.
double full_grid_gap(std::span<const cplx> a, std::span<const cplx> b)
{
    const auto L = static_cast<std::int64_t>(a.size());
    const auto c = dft(a);
    const auto d = dft(b);
    const auto direct = af_surface(a, b, {-L + 1, L - 1}, {-L + 1, L - 1});
    const auto fast = af_surface_via_frequency(c, d, {-L + 1, L - 1}, {-L + 1, L - 1});
    double gap = 0.0;
    for (std::size_t k = 0; k < direct.values.size(); ++k) gap = std::max(gap, std::abs(direct.values[k] - fast.values[k]));
    return gap;
}

Outcome criterion1()
{
    const char* argv[] = {"lazseq", "gen", "c", "--p", "5", "--alpha", "3"};
    std::ostringstream out, err;
    const int code = cli::run_cli(7, argv, out, err);
    if (code != 0) return {false, "gen exited with " + std::to_string(code) + ": " + err.str()};
    std::istringstream in(out.str());
    const auto set = read_set(in);
    if (set.size() != 5) return {false, "expected 5 sequences, got " + std::to_string(set.size())};
    for (std::int64_t n = 0; n < 5; ++n) {
        const auto ph = set[n].phases();
        if (std::vector<std::int64_t>(ph.begin(), ph.end()) != example3_listing[static_cast<std::size_t>(n)])
            return {false, "s_" + std::to_string(n) + " differs from the listing"};
    }
    return {true, "5/5 phase vectors identical"};
}

Outcome criterion2()
{
    const auto set = example1();
    const double tol = af_zero_factor * 169;
    const auto st = sidelobe_stats(set, DelayDopplerZone(4, 3));
    const double ratio = zaz_ratio(set.length(), set.size(), 4, 3);
    const bool ok = st.theta_max <= tol && std::abs(ratio - 0.923077) <= 1e-6;
    return {ok, "theta_max=" + fmt("%.3e", st.theta_max) + " (tol " + fmt("%.3e", tol) + "), ZAZ_ratio=" + fmt("%.6f", ratio)};
}

Outcome criterion3()
{
    const auto set = example2();
    const double tol = af_zero_factor * 105;
    const auto st = sidelobe_stats(set, DelayDopplerZone(5, 4));
    const auto omega = omega_for_b(4, 5, 1);
    const auto duals = set_duals(set);

    double worst_energy = 0.0;
    for (auto i : omega.forbidden) {
        double e = 0.0;
        for (const auto& d : duals) e += std::norm(d.values[static_cast<std::size_t>(i)]);
        worst_energy = std::max(worst_energy, e);
    }
    double worst_dev = 0.0;
    std::int64_t min_support = 105, max_support = 0;
    for (const auto& d : duals) {
        std::int64_t support = 0;
        for (std::int64_t i = 0; i < 105; ++i) {
            const double mag = d.magnitude(i);
            if (mag <= spectral_tolerance(105)) continue;
            ++support;
            worst_dev = std::max(worst_dev, std::abs(mag - std::sqrt(4.2)));
        }
        min_support = std::min(min_support, support);
        max_support = std::max(max_support, support);
    }
    const bool ok = st.theta_max <= tol && omega.forbidden.size() == 80 && worst_energy <= energy_tol &&
                    worst_dev <= comb_tol && min_support == 25 && max_support == 25;
    return {ok, "theta_max=" + fmt("%.3e", st.theta_max) + ", |Omega|=" + std::to_string(omega.forbidden.size()) +
                    ", max Omega energy=" + fmt("%.3e", worst_energy) + ", max |d|-sqrt(4.2)=" + fmt("%.3e", worst_dev) +
                    ", support=" + std::to_string(min_support) + " bins/sequence"};
}

Outcome criterion4()
{
    const auto set = example3();
    const double tol = af_zero_factor * 20;
    const auto st = sidelobe_stats(set, DelayDopplerZone(4, 5));
    const bool level_ok = std::abs(st.theta_max - 5.0) <= tol;

    const double wide_doppler = max_auto_over(set, {-3, 3}, {-19, 19});
    const double wide_delay = max_auto_over(set, {-19, 19}, {-4, 4});
    const bool extended_ok = wide_doppler <= 5.0 + tol && wide_delay <= 5.0 + tol;

    const auto cross = af_surface(set[0], set[1], {-3, 3}, {-4, 4});
    const double cross_max = cross.max_magnitude();
    const bool cross_ok = cross_max <= tol;
    std::int64_t at_tau = 0, at_v = 0;
    for (std::int64_t tau = -3; tau <= 3; ++tau)
        for (std::int64_t v = -4; v <= 4; ++v)
            if (std::abs(cross.at(tau, v)) == cross_max) at_tau = tau, at_v = v;
    const double cross_oracle = std::abs(oracle::af(set[0], set[1], at_tau, at_v));

    const double rho = rho_laz(st.theta_max, 20, 5, 4, 5);
    const bool rho_ok = std::abs(rho - 1.218349) <= 1e-6;

    std::string detail = "theta_max=" + fmt("%.6f", st.theta_max) + (level_ok ? "" : " [fails]") +
                         ", auto extended zones max=" + fmt("%.6f", std::max(wide_doppler, wide_delay)) +
                         (extended_ok ? "" : " [fails]") + ", cross s0/s1 max=" + fmt("%.6f", cross_max) +
                         " at (tau,v)=(" + std::to_string(at_tau) + "," + std::to_string(at_v) + "), oracle " + fmt("%.6f", cross_oracle) +
                         (cross_ok ? "" : " [fails: bound " + fmt("%.1e", tol) + "]") + ", rho_LAZ=" + fmt("%.6f", rho) +
                         (rho_ok ? "" : " [fails]");
    return {level_ok && extended_ok && cross_ok && rho_ok, detail};
}

Outcome criterion5()
{
    const auto rows = table2(odd_primes_up_to(41));
    if (rows.size() != table2_printed.size()) return {false, "row count " + std::to_string(rows.size())};
    double worst = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].p != table2_printed[k].first) return {false, "prime mismatch at row " + std::to_string(k)};
        worst = std::max(worst, std::abs(rows[k].rho - table2_printed[k].second));
    }
    std::string scanned;
    double worst_theta = 0.0;
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        const auto set = construct_c(p);
        const auto st = sidelobe_stats(set, DelayDopplerZone(p - 1, p));
        const double gap = std::abs(st.theta_max - static_cast<double>(p));
        if (gap > af_zero_factor * set.length()) return {false, "p=" + std::to_string(p) + " theta_max=" + fmt("%.6f", st.theta_max)};
        worst_theta = std::max(worst_theta, gap);
    }
    return {worst <= table_tol, "12 rows, max |rho - printed|=" + fmt("%.2e", worst) +
                                    "; scanned theta_max=p for p<=13 (max gap " + fmt("%.2e", worst_theta) + ")"};
}

Outcome criterion6()
{
    for (auto [M, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 5}, {2, 5}, {1, 7}, {3, 5}}) {
        const auto set = construct_a(M, N, 1);
        if (!verify_zcz(set, N, af_zero_factor * set.length()))
            return {false, "(M,N)=(" + std::to_string(M) + "," + std::to_string(N) + ") ZCZ fails"};
        if (!tfm_optimal(M * N * N, M * N, N)) return {false, "TFM equality fails"};
    }
    return {true, "4/4 parameter pairs are optimal ZCZ sets"};
}

Outcome criterion7()
{
    double worst = 0.0;
    for (auto [N, K] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 2}, {7, 3}, {13, 3}}) {
        const auto set = construct_a(1, N, K);
        for (std::int64_t n = 0; n < set.size(); ++n)
            for (std::int64_t tau = 1; tau < set.length(); ++tau) {
                const double mag = std::abs(cf(set[n], set[n], tau));
                worst = std::max(worst, mag / static_cast<double>(N * N));
                if (mag > af_zero_factor * N * N)
                    return {false, "N=" + std::to_string(N) + " n=" + std::to_string(n) + " tau=" + std::to_string(tau)};
            }
    }
    return {true, "max |cf|/N^2 off-peak=" + fmt("%.2e", worst)};
}

Outcome criterion8()
{
    for (const auto& set : {example1(), example2(), example3()})
        if (!verify_cyclically_distinct(set).ok) return {false, "an example set is not cyclically distinct"};

    const auto base = example3();
    std::vector<PhaseSequence> seqs(base.sequences().begin(), base.sequences().end());
    seqs.push_back(base[1].shifted(-7).rotated(2));  // s_1 delayed by 7, times w_5^2
    const auto check = verify_cyclically_distinct(SequenceSet(seqs));
    // witness convention: s_n(t) = s_n2(t + tau) * w^c
    const bool witness_ok = !check.ok && check.n == 1 && check.n2 == 5 && check.tau == 7 && check.c == mod(-2, 5);
    return {witness_ok, "examples 1-3 distinct; planted copy -> (n=" + std::to_string(check.n) + ", n2=" +
                            std::to_string(check.n2) + ", tau=" + std::to_string(check.tau) + ", c=" + std::to_string(check.c) + ")"};
}

Outcome criterion9()
{
    double worst_rel = 0.0;
    for (const auto& set : {example1(), example2(), example3()}) {
        std::vector<std::vector<cplx>> seqs;
        for (const auto& s : set.sequences()) seqs.push_back(evaluate(s));
        const double tol = af_zero_factor * set.length();
        for (const auto& a : seqs)
            for (const auto& b : seqs) {
                const double gap = full_grid_gap(a, b);
                worst_rel = std::max(worst_rel, gap / tol);
                if (gap > tol) return {false, "example set length " + std::to_string(set.length()) + " gap " + fmt("%.3e", gap)};
            }
    }
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::int64_t L : {16, 105, 169}) {
        std::vector<std::vector<cplx>> seqs(20);
        for (auto& s : seqs) {
            s.resize(static_cast<std::size_t>(L));
            for (auto& x : s) x = std::polar(1.0, angle(rng));
        }
        const double tol = af_zero_factor * L;
        for (std::size_t k = 0; k < seqs.size(); ++k) {
            const double gap = std::max(full_grid_gap(seqs[k], seqs[k]), full_grid_gap(seqs[k], seqs[(k + 1) % seqs.size()]));
            worst_rel = std::max(worst_rel, gap / tol);
            if (gap > tol) return {false, "random L=" + std::to_string(L) + " gap " + fmt("%.3e", gap)};
        }
    }
    return {true, "all pairs of examples 1-3 and 60 random sequences; max gap/tol=" + fmt("%.2e", worst_rel)};
}

Outcome criterion10()
{
    std::vector<SequenceSet> matrix{example1(), example2(), example3()};
    for (std::int64_t p : {3, 7, 11, 13}) matrix.push_back(construct_c(p));
    for (auto [M, N, K] : std::vector<std::array<std::int64_t, 3>>{{1, 5, 1}, {2, 5, 1}, {1, 7, 1}, {3, 5, 1}, {1, 5, 2}, {1, 7, 3}, {2, 7, 2}})
        matrix.push_back(construct_a(M, N, K));
    for (auto [K, N, P] : std::vector<std::array<std::int64_t, 3>>{{2, 3, 1}, {3, 2, 1}, {3, 4, 1}, {5, 3, 2}})
        matrix.push_back(construct_b(K, N, P));

    int zero_zones = 0;
    for (const auto& set : matrix) {
        const auto claim = claimed_zone(set.provenance());
        if (!claim) return {false, "missing provenance"};
        const auto& p = claim->params;
        const double measured = sidelobe_stats(set, DelayDopplerZone(p.zx, p.zy)).theta_max;
        const double bound = p.N * p.zx > 1 ? laz_lower_bound(p) : 0.0;
        if (measured < bound - 1e-9)
            return {false, family_name(set.provenance()) + " L=" + std::to_string(p.L) + " beats the lower bound"};
        if (claim->theta_max == 0.0) {
            ++zero_zones;
            if (!zaz_feasible(p.L, p.N, p.zx, p.zy)) return {false, "claimed zero zone violates N Zx Zy <= L"};
        }
    }
    return {true, std::to_string(matrix.size()) + " sets, " + std::to_string(zero_zones) + " zero zones feasible"};
}

Outcome criterion11()
{
    int combos = 0;
    double worst = 0.0;
    auto record = [&](double closed, double generic) {
        ++combos;
        worst = std::max(worst, std::abs(closed - generic));
    };
    for (auto [M, N, K] : std::vector<std::array<std::int64_t, 3>>{
             {1, 13, 3}, {1, 5, 1}, {1, 5, 2}, {1, 5, 3}, {1, 5, 4}, {2, 7, 2}, {2, 7, 3}, {3, 11, 4}, {1, 11, 7}, {4, 9, 2},
             {1, 17, 5}, {2, 19, 6}, {5, 23, 7}, {1, 29, 8}, {3, 31, 9}, {1, 12, 5}, {2, 16, 3}}) {
        const SetParameters s{M * N * N, M * N, N / K, K};
        record(closed_form_ratio(ProvenanceA{M, N, K, {}, {}}), zaz_ratio(s.L, s.N, s.zx, s.zy));
    }
    for (auto [K, N, P] : std::vector<std::array<std::int64_t, 3>>{
             {4, 5, 1}, {2, 3, 1}, {3, 2, 1}, {3, 4, 1}, {5, 3, 2}, {5, 4, 3}, {6, 5, 1}, {7, 2, 3}, {7, 6, 5}, {8, 3, 5},
             {9, 4, 5}, {10, 7, 3}, {11, 2, 9}, {12, 5, 7}, {13, 6, 11}, {16, 3, 5}, {4, 9, 3}}) {
        const std::int64_t L = N * (K * N + P);
        record(closed_form_ratio(ProvenanceB{K, N, P}), zaz_ratio(L, N, N, K));
    }
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}) {
        record(closed_form_ratio(ProvenanceC{p, {}, {}}), rho_laz(static_cast<double>(p), p * (p - 1), p, p - 1, p));
    }
    return {combos >= 50 && worst <= identity_tol, std::to_string(combos) + " combinations, max gap " + fmt("%.2e", worst)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 golden vectors (gen c --p 5 --alpha 3)", criterion1},
        {"2 Example 1 ZAZ", criterion2},
        {"3 Example 2 ZAZ + spectrum", criterion3},
        {"4 Example 3 LAZ", criterion4},
        {"5 Table II reproduction", criterion5},
        {"6 ZCZ optimality (K=1)", criterion6},
        {"7 ideal autocorrelation (M=1)", criterion7},
        {"8 cyclic distinctness", criterion8},
        {"9 frequency-path equivalence", criterion9},
        {"10 bound sanity sweep", criterion10},
        {"11 closed-form identity sweep", criterion11},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
        if (!o.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
