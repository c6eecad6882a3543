#include <catch2/catch_amalgamated.hpp>

#include "lazseq/constructions.hpp"
#include "lazseq/io.hpp"
#include "oracle.hpp"

#include <sstream>

using namespace lazseq;

namespace {

SequenceSet round_trip(const SequenceSet& set)
{
    std::stringstream ss;
    write_set(ss, set);
    return read_set(ss);
}

} // namespace

TEST_CASE("sets survive a write/read round trip")
{
    for (const auto& set : {construct_a(2, 5, 2), construct_a(1, 13, 3, 5), construct_b(4, 5, 1), construct_c(5, 3)}) {
        const auto back = round_trip(set);
        CHECK(back == set);
        CHECK(provenance_to_json(back.provenance()) == provenance_to_json(set.provenance()));
    }
}

TEST_CASE("random external sets round-trip")
{
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        const auto L = std::uniform_int_distribution<std::int64_t>(1, 30)(rng);
        const auto D = std::uniform_int_distribution<std::int64_t>(1, 1 << 20)(rng);
        std::vector<PhaseSequence> seqs;
        for (int n = 0; n < 1 + trial % 4; ++n) seqs.push_back(oracle::random_sequence(rng, L, D));
        const SequenceSet set(seqs);
        CHECK(round_trip(set) == set);
    }
}

TEST_CASE("write_set layout")
{
    const SequenceSet set({PhaseSequence(3, {0, 1, 2}), PhaseSequence(3, {2, 2, 2})});
    std::ostringstream os;
    write_set(os, set);
    CHECK(os.str() == "{\n"
                      "  \"length\": 3,\n"
                      "  \"denom\": 3,\n"
                      "  \"provenance\": {\"family\":\"external\"},\n"
                      "  \"sequences\": [\n"
                      "    [0,1,2],\n"
                      "    [2,2,2]\n"
                      "  ]\n"
                      "}\n");
}

TEST_CASE("malformed documents are rejected")
{
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return read_set(is);
    };
    CHECK_THROWS_AS(parse("not json"), FormatError);
    CHECK_THROWS_AS(parse("[]"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3})"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3, "sequences": []})"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3, "sequences": [[0, 1, 2]]})"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3, "sequences": [[0, 3]]})"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3, "sequences": [[0, 1.5]]})"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3, "provenance": {"family": "Z"}, "sequences": [[0, 1]]})"), FormatError);
    CHECK_THROWS_AS(parse(R"({"length": 2, "denom": 3, "provenance": {"family": "B", "K": 2}, "sequences": [[0, 1]]})"),
                    FormatError);
    CHECK_NOTHROW(parse(R"({"length": 2, "denom": 3, "sequences": [[0, 1]]})"));
    CHECK_THROWS_AS(read_set_file("/nonexistent/set.json"), FormatError);
}
