#pragma once

// Command-line front end. `run_cli` is the whole program; tools/lazseq.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 success / claims hold, 1 a claim fails, 2 usage or validation error.

#include "lazseq/ambiguity.hpp"
#include "lazseq/analysis.hpp"
#include "lazseq/bounds.hpp"
#include "lazseq/constructions.hpp"
#include "lazseq/core.hpp"
#include "lazseq/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lazseq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_claim_failed = 1;
inline constexpr int exit_usage = 2;

/// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// AF zero-tolerance factor: --tol wins over ZAZ_TOL, which wins over the default.
inline double tolerance_factor(std::optional<double> flag)
{
    if (flag) return *flag;
    if (const char* env = std::getenv("ZAZ_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) throw UsageError("ZAZ_TOL must be a positive number");
        return v;
    }
    return default_zero_factor;
}

inline std::string fixed6(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string general(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x + 0.0);
    return buf;
}

struct Options {
    // gen
    std::string family;
    std::optional<std::int64_t> M, N, K, P, p, sigma_exp, alpha;
    bool relaxed = false;
    bool no_cap = false;
    // shared
    std::string input;
    std::string output;
    std::string format;
    std::optional<double> tol;
    // af
    std::int64_t seq = 0;
    std::optional<std::int64_t> seq2;
    std::vector<std::int64_t> tau_range, v_range;
    // verify
    std::vector<std::int64_t> zone;
    std::optional<std::int64_t> zcz;
    std::optional<double> theta;
    // bounds
    std::optional<std::int64_t> L, Zx, Zy;
    std::optional<std::int64_t> table2_pmax;
};

/// Writes to the --output file when given, else to `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

inline int cmd_gen(const Options& o, std::ostream& out)
{
    SequenceSet set;
    const ValidationPolicy policy{o.no_cap};
    if (o.family == "a") {
        if (!o.M || !o.N || !o.K) throw UsageError("gen a needs --M, --N and --K");
        check_a_parameters(*o.M, *o.N, *o.K);
        if (o.sigma_exp) {
            auto sigma = power_permutation(*o.N, *o.sigma_exp);
            set = construct_a(*o.M, *o.N, *o.K, sigma, policy);
            auto prov = std::get<ProvenanceA>(set.provenance());
            prov.sigma_exp = *o.sigma_exp;
            set = SequenceSet({set.sequences().begin(), set.sequences().end()}, prov);
        } else {
            set = construct_a(*o.M, *o.N, *o.K);
        }
    } else if (o.family == "b") {
        if (!o.K || !o.N || !o.P) throw UsageError("gen b needs --K, --N and --P");
        set = construct_b(*o.K, *o.N, *o.P, {o.relaxed});
    } else if (o.family == "c") {
        if (!o.p) throw UsageError("gen c needs --p");
        const auto alpha = find_primitive_element(*o.p, o.alpha);
        set = construct_c(*o.p, exp_mapping(*o.p, alpha), policy, alpha);
    } else {
        throw UsageError("family must be one of a, b, c");
    }
    Sink sink(o.output, out);
    write_set(sink.stream(), set);
    return exit_ok;
}

inline IndexRange parse_range(const std::vector<std::int64_t>& r, const char* flag)
{
    if (r.size() != 2) throw UsageError(std::string(flag) + " takes two integers LO HI");
    if (r[1] < r[0]) throw UsageError(std::string(flag) + " is empty (HI < LO)");
    return {r[0], r[1]};
}

inline int cmd_af(const Options& o, std::ostream& out)
{
    const auto set = read_set_file(o.input);
    const auto n2 = o.seq2.value_or(o.seq);
    if (o.seq < 0 || o.seq >= set.size() || n2 < 0 || n2 >= set.size())
        throw UsageError("sequence index out of range (set has " + std::to_string(set.size()) + " sequences)");
    const auto L = set.length();
    const auto tau = o.tau_range.empty() ? IndexRange{-(L - 1), L - 1} : parse_range(o.tau_range, "--tau-range");
    const auto v = o.v_range.empty() ? IndexRange{-(L - 1), L - 1} : parse_range(o.v_range, "--v-range");
    if (tau.lo <= -L || tau.hi >= L || v.lo <= -L || v.hi >= L)
        throw UsageError("ranges must lie inside (-L, L) with L = " + std::to_string(L));
    const auto surface = af_surface(set[o.seq], set[n2], tau, v, {o.seq, n2});
    Sink sink(o.output, out);
    write_surface_csv(sink.stream(), surface);
    return exit_ok;
}

inline void print_certificate_text(std::ostream& os, const Certificate& cert)
{
    os << "family: " << cert.claims.value("family", std::string("external")) << "\n";
    for (const auto& [key, value] : cert.measured.items()) os << "measured." << key << " = " << value.dump() << "\n";
    for (const auto& [key, value] : cert.verdicts.items()) os << "verdict." << key << " = " << value.dump() << "\n";
    for (const auto& w : cert.witnesses) os << "witness: " << w.dump() << "\n";
}

inline int cmd_verify(const Options& o, std::ostream& out)
{
    const auto set = read_set_file(o.input);
    CertifyOptions copts;
    copts.zero_factor = tolerance_factor(o.tol);
    if (!o.zone.empty()) {
        if (o.zone.size() != 2) throw UsageError("--zone takes two integers ZX ZY");
        if (o.zone[0] < 1 || o.zone[1] < 1 || o.zone[0] > set.length() || o.zone[1] > set.length())
            throw UsageError("--zone half-widths must lie in [1, L]");
        copts.zone = DelayDopplerZone(o.zone[0], o.zone[1]);
    }
    if (o.zcz) {
        if (*o.zcz < 1 || *o.zcz > set.length()) throw UsageError("--zcz must lie in [1, L]");
        copts.zcz = *o.zcz;
    }
    copts.claimed_theta = o.theta;
    const bool external = std::holds_alternative<ProvenanceExternal>(set.provenance());
    if (external && !copts.zone && !copts.zcz)
        throw UsageError("set has no provenance: pass --zone ZX ZY or --zcz Z");

    const auto cert = certify(set, copts);
    Sink sink(o.output, out);
    if (o.format == "text") print_certificate_text(sink.stream(), cert);
    else sink.stream() << cert.to_json().dump(2) << "\n";
    return cert.all_claims_hold ? exit_ok : exit_claim_failed;
}

inline int cmd_spectrum(const Options& o, std::ostream& out)
{
    const auto set = read_set_file(o.input);
    std::optional<SpectralNullSet> omega;
    if (const auto* b = std::get_if<ProvenanceB>(&set.provenance())) {
        omega = omega_for_b(b->K, b->N, b->P);
        if (omega->length != set.length()) omega.reset();
    }
    Sink sink(o.output, out);
    auto& os = sink.stream();
    os << "n,i,mag" << (omega ? ",in_omega" : "") << "\n";
    for (std::int64_t n = 0; n < set.size(); ++n) {
        const auto d = dft(set[n]);
        for (std::int64_t i = 0; i < d.length(); ++i) {
            os << n << ',' << i << ',' << general(d.magnitude(i));
            if (omega) os << ',' << (omega->contains(i) ? 1 : 0);
            os << '\n';
        }
    }
    return exit_ok;
}

inline void print_report_text(std::ostream& os, const OptimalityReport& r, std::optional<double> theta)
{
    const auto& p = r.params;
    const auto volume = p.N * p.zx * p.zy;
    os << "L=" << p.L << " N=" << p.N << " Zx=" << p.zx << " Zy=" << p.zy << "\n";
    if (zaz_feasible(p.L, p.N, p.zx, p.zy))
        os << "ZAZ feasible: NZxZy=" << volume << " <= L=" << p.L << "\n";
    else
        os << "ZAZ infeasible: NZxZy=" << volume << " > L=" << p.L << "\n";
    os << "zaz_ratio=" << fixed6(zaz_ratio(p.L, p.N, p.zx, p.zy)) << "\n";
    os << "laz_lower_bound=" << fixed6(r.bound_value) << "\n";
    if (theta) {
        os << "theta_max=" << general(*theta) << "\n";
        if (!r.is_zaz) os << "rho_laz=" << fixed6(r.factor) << "\n";
    }
    os << "verdict=" << to_string(r.verdict) << "\n";
}

inline json report_json(const OptimalityReport& r, std::optional<double> theta)
{
    const auto& p = r.params;
    json j{{"L", p.L}, {"N", p.N}, {"Zx", p.zx}, {"Zy", p.zy},
           {"zaz_feasible", zaz_feasible(p.L, p.N, p.zx, p.zy)},
           {"zaz_ratio", zaz_ratio(p.L, p.N, p.zx, p.zy)},
           {"laz_lower_bound", r.bound_value}};
    if (theta) {
        j["theta_max"] = *theta;
        if (!r.is_zaz) j["rho_laz"] = r.factor;
    }
    j["verdict"] = to_string(r.verdict);
    return j;
}

inline int cmd_bounds(const Options& o, std::ostream& out)
{
    const bool explicit_params = o.L || o.N || o.Zx || o.Zy || o.theta;
    const int modes = (o.table2_pmax ? 1 : 0) + (explicit_params ? 1 : 0) + (!o.input.empty() ? 1 : 0);
    if (modes != 1) throw UsageError("bounds takes exactly one of --table2 PMAX, explicit --L --N --Zx --Zy, or an input file");

    Sink sink(o.output, out);
    auto& os = sink.stream();

    if (o.table2_pmax) {
        if (*o.table2_pmax < 3) throw UsageError("--table2 needs PMAX >= 3");
        const auto rows = table2(odd_primes_up_to(*o.table2_pmax));
        if (o.format == "text") {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%4s %6s %4s %-18s %9s %10s\n", "p", "L", "N", "Pi", "theta_max", "rho_LAZ");
            os << buf;
            for (const auto& r : rows) {
                const std::string zone = "(" + std::to_string(r.zx) + "," + std::to_string(r.zx) + ")x(" +
                                         std::to_string(r.zy) + "," + std::to_string(r.zy) + ")";
                std::snprintf(buf, sizeof buf, "%4lld %6lld %4lld %-18s %9lld %10s\n", static_cast<long long>(r.p),
                              static_cast<long long>(r.L), static_cast<long long>(r.N), zone.c_str(),
                              static_cast<long long>(r.theta_max), fixed6(r.rho).c_str());
                os << buf;
            }
        } else {
            os << "p,L,N,Pi,theta_max,rho_laz\n";
            for (const auto& r : rows)
                os << r.p << ',' << r.L << ',' << r.N << ",\"(" << r.zx << ',' << r.zx << ")x(" << r.zy << ','
                   << r.zy << ")\"," << r.theta_max << ',' << fixed6(r.rho) << '\n';
        }
        return exit_ok;
    }

    SetParameters params;
    std::optional<double> theta = o.theta;
    bool family_known = false;
    if (explicit_params) {
        if (!o.L || !o.N || !o.Zx || !o.Zy) throw UsageError("explicit bounds need all of --L --N --Zx --Zy");
        if (*o.L < 1 || *o.N < 1 || *o.Zx < 1 || *o.Zy < 1) throw UsageError("bound parameters must be positive");
        params = {*o.L, *o.N, *o.Zx, *o.Zy};
    } else {
        const auto set = read_set_file(o.input);
        const auto claimed = claimed_zone(set.provenance());
        if (!claimed) throw UsageError("input set has no provenance; use explicit --L --N --Zx --Zy");
        params = claimed->params;
        if (params.L != set.length() || params.N != set.size())
            throw UsageError("input set does not match its provenance");
        theta = sidelobe_stats(set, DelayDopplerZone(params.zx, params.zy)).theta_max;
        family_known = true;
    }
    if (params.N * params.zx == 1) throw UsageError("bounds undefined for N*Zx = 1");
    const double zero_tol = zero_tolerance(params.L, tolerance_factor(o.tol));
    const auto report = theta ? optimality_report(params, *theta, zero_tol, family_known)
                              : optimality_report(params, 0.0, 0.0, family_known);
    if (o.format == "json") os << report_json(report, theta).dump(2) << "\n";
    else print_report_text(os, report, theta);
    return exit_ok;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Construct and certify low/zero ambiguity zone sequence sets", "lazseq"};
    app.require_subcommand(1, 1);
    Options o;

    auto* gen = app.add_subcommand("gen", "Generate a sequence set (families a, b, c)");
    gen->add_option("family", o.family, "Construction family: a, b or c")->required()->check(CLI::IsMember({"a", "b", "c"}));
    gen->add_option("--M", o.M, "Construction A: M");
    gen->add_option("--N", o.N, "Constructions A and B: N");
    gen->add_option("--K", o.K, "Constructions A and B: K");
    gen->add_option("--P", o.P, "Construction B: P");
    gen->add_option("--p", o.p, "Construction C: odd prime p");
    gen->add_option("--sigma-exp", o.sigma_exp, "Construction A: sigma(x) = x^a mod N");
    gen->add_option("--alpha", o.alpha, "Construction C: primitive element (default: smallest)");
    gen->add_flag("--relaxed", o.relaxed, "Construction B: do not require gcd(P, NK) = 1");
    gen->add_flag("--no-validation-cap", o.no_cap, "Run brute-force validators past N, p = 257");
    gen->add_option("-o,--output", o.output, "Output file (default stdout)");

    auto* afc = app.add_subcommand("af", "Export an ambiguity surface as CSV");
    afc->add_option("input", o.input, "Sequence-set JSON file")->required();
    afc->add_option("--seq", o.seq, "First sequence index")->default_val(0);
    afc->add_option("--seq2", o.seq2, "Second sequence index (default: auto-surface)");
    afc->add_option("--tau-range", o.tau_range, "Delay range LO HI (inclusive)")->expected(2)->allow_extra_args(false);
    afc->add_option("--v-range", o.v_range, "Doppler range LO HI (inclusive)")->expected(2)->allow_extra_args(false);
    afc->add_option("-o,--output", o.output, "Output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "Certify a set's claimed properties");
    ver->add_option("input", o.input, "Sequence-set JSON file")->required();
    ver->add_option("--zone", o.zone, "Zone half-widths ZX ZY")->expected(2)->allow_extra_args(false);
    ver->add_option("--zcz", o.zcz, "Also verify the (L, N, Z)-ZCZ property");
    ver->add_option("--theta", o.theta, "Level claimed over --zone");
    ver->add_option("--tol", o.tol, "AF zero-tolerance factor (threshold = factor * L)");
    ver->add_option("--format", o.format, "json (default) or text")->check(CLI::IsMember({"json", "text"}));
    ver->add_option("-o,--output", o.output, "Output file (default stdout)");

    auto* spec = app.add_subcommand("spectrum", "Export frequency-dual magnitudes as CSV");
    spec->add_option("input", o.input, "Sequence-set JSON file")->required();
    spec->add_option("-o,--output", o.output, "Output file (default stdout)");

    auto* bnd = app.add_subcommand("bounds", "Evaluate bounds and optimality factors");
    bnd->add_option("input", o.input, "Sequence-set JSON file with provenance");
    bnd->add_option("--L", o.L, "Sequence length");
    bnd->add_option("--N", o.N, "Set size");
    bnd->add_option("--Zx", o.Zx, "Delay half-width");
    bnd->add_option("--Zy", o.Zy, "Doppler half-width");
    bnd->add_option("--theta", o.theta, "Measured maximum ambiguity magnitude");
    bnd->add_option("--table2", o.table2_pmax, "Emit the LAZ parameter table for odd primes up to PMAX");
    bnd->add_option("--tol", o.tol, "AF zero-tolerance factor");
    bnd->add_option("--format", o.format, "text (default), json; csv (default) for --table2")->check(CLI::IsMember({"text", "json", "csv"}));
    bnd->add_option("-o,--output", o.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*gen) return cmd_gen(o, out);
        if (*afc) return cmd_af(o, out);
        if (*ver) return cmd_verify(o, out);
        if (*spec) return cmd_spectrum(o, out);
        if (*bnd) return cmd_bounds(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace lazseq::cli
