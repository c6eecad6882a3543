#pragma once

// JSON interchange format for sequence sets:
//
//   { "length": L, "denom": D,
//     "provenance": { "family": "A" | "B" | "C" | "external", ...parameters },
//     "sequences": [[int, ...], ...] }
//
// Phases are integers in Z_D.

#include "lazseq/core.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lazseq {

using json = nlohmann::ordered_json;

/// Thrown for malformed set files.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json provenance_to_json(const Provenance& prov)
{
    json j;
    if (const auto* a = std::get_if<ProvenanceA>(&prov)) {
        j["family"] = "A";
        j["M"] = a->M;
        j["N"] = a->N;
        j["K"] = a->K;
        j["sigma"] = a->sigma;
        if (a->sigma_exp) j["sigma_exp"] = *a->sigma_exp;
    } else if (const auto* b = std::get_if<ProvenanceB>(&prov)) {
        j["family"] = "B";
        j["K"] = b->K;
        j["N"] = b->N;
        j["P"] = b->P;
    } else if (const auto* c = std::get_if<ProvenanceC>(&prov)) {
        j["family"] = "C";
        j["p"] = c->p;
        j["pi"] = c->pi;
        if (c->alpha) j["alpha"] = *c->alpha;
    } else {
        j["family"] = "external";
    }
    return j;
}

namespace detail {

inline std::int64_t require_int(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw FormatError(std::string("provenance field '") + key + "' missing or not an integer");
    return j.at(key).get<std::int64_t>();
}

inline std::optional<std::int64_t> optional_int(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
    return j.at(key).get<std::int64_t>();
}

inline std::vector<std::int64_t> int_array(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
    std::vector<std::int64_t> out;
    for (const auto& x : j.at(key)) {
        if (!x.is_number_integer()) throw FormatError(std::string("field '") + key + "' must contain integers");
        out.push_back(x.get<std::int64_t>());
    }
    return out;
}

} // namespace detail

inline Provenance provenance_from_json(const json& j)
{
    if (j.is_null()) return ProvenanceExternal{};
    if (!j.is_object()) throw FormatError("provenance must be an object");
    const std::string family = j.value("family", std::string("external"));
    if (family == "A")
        return ProvenanceA{detail::require_int(j, "M"), detail::require_int(j, "N"), detail::require_int(j, "K"),
                           detail::int_array(j, "sigma"), detail::optional_int(j, "sigma_exp")};
    if (family == "B")
        return ProvenanceB{detail::require_int(j, "K"), detail::require_int(j, "N"), detail::require_int(j, "P")};
    if (family == "C")
        return ProvenanceC{detail::require_int(j, "p"), detail::int_array(j, "pi"), detail::optional_int(j, "alpha")};
    if (family == "external") return ProvenanceExternal{};
    throw FormatError("unknown provenance family '" + family + "'");
}

inline json to_json(const SequenceSet& set)
{
    json j;
    j["length"] = set.length();
    j["denom"] = set.denom();
    j["provenance"] = provenance_to_json(set.provenance());
    json seqs = json::array();
    for (const auto& s : set.sequences()) seqs.push_back(std::vector<std::int64_t>(s.phases().begin(), s.phases().end()));
    j["sequences"] = std::move(seqs);
    return j;
}

inline SequenceSet set_from_json(const json& j)
{
    if (!j.is_object()) throw FormatError("sequence-set document must be a JSON object");
    for (const char* key : {"length", "denom", "sequences"})
        if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    const auto L = detail::require_int(j, "length");
    const auto D = detail::require_int(j, "denom");
    if (!j.at("sequences").is_array() || j.at("sequences").empty())
        throw FormatError("'sequences' must be a non-empty array");

    std::vector<PhaseSequence> seqs;
    for (const auto& row : j.at("sequences")) {
        if (!row.is_array()) throw FormatError("each sequence must be an array of integers");
        std::vector<std::int64_t> phases;
        phases.reserve(row.size());
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw FormatError("phases must be integers");
            phases.push_back(x.get<std::int64_t>());
        }
        if (static_cast<std::int64_t>(phases.size()) != L)
            throw FormatError("sequence length " + std::to_string(phases.size()) + " does not match 'length' " +
                              std::to_string(L));
        try {
            seqs.emplace_back(D, std::move(phases));
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    Provenance prov = j.contains("provenance") ? provenance_from_json(j.at("provenance")) : Provenance{};
    return SequenceSet(std::move(seqs), std::move(prov));
}

/// One sequence per line inside the "sequences" array keeps files diff-friendly.
inline void write_set(std::ostream& os, const SequenceSet& set)
{
    const json j = to_json(set);
    os << "{\n";
    os << "  \"length\": " << j["length"].dump() << ",\n";
    os << "  \"denom\": " << j["denom"].dump() << ",\n";
    os << "  \"provenance\": " << j["provenance"].dump() << ",\n";
    os << "  \"sequences\": [\n";
    const auto& seqs = j["sequences"];
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        os << "    " << seqs[i].dump();
        os << (i + 1 < seqs.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

inline SequenceSet read_set(std::istream& is)
{
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return set_from_json(j);
}

inline SequenceSet read_set_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_set(in);
}

} // namespace lazseq
