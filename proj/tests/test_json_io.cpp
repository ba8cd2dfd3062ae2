#include "tracealg/json_io.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace tracealg;

namespace {

const std::string samples = TRACEALG_SAMPLES_DIR;

std::string sample(const std::string& name) { return samples + "/" + name; }

std::string error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(JsonSamples, EveryAlgebraSampleLoads)
{
    for (const char* name : {"dual_numbers.json", "half_trace.json", "m2.json", "m2_doubled.json", "m2_plus_q.json",
                             "qq_weights_1_2.json", "strange_trace.json"}) {
        auto in = algebra_from_json(read_json_file(sample(name)));
        EXPECT_GT(in.algebra.dim(), 0u) << name;
    }
    auto dual = algebra_from_json(read_json_file(sample("dual_numbers.json")));
    EXPECT_EQ(dual.algebra.dim(), 2u);
    EXPECT_FALSE(dual.blocks.has_value());
    auto qq = algebra_from_json(read_json_file(sample("qq_weights_1_2.json")));
    ASSERT_TRUE(qq.blocks.has_value());
    EXPECT_EQ(qq.blocks->size(), 2u);
    auto half = algebra_from_json(read_json_file(sample("half_trace.json")));
    EXPECT_EQ(half.algebra.trace_vector()[0], make_rational(1, 2));
}

TEST(JsonSamples, GroupsAndCharacters)
{
    auto s3 = group_from_json(read_json_file(sample("s3_group.json")));
    EXPECT_EQ(s3.order, 6u);
    EXPECT_EQ(s3.name(3), "231");
    auto chi = character_from_json(read_json_file(sample("s3_standard_char.json")), s3);
    EXPECT_EQ(chi.n, 2u);
    EXPECT_EQ(chi.values[3], -1);

    auto z2 = group_from_json(read_json_file(sample("z2_group.json")));
    EXPECT_THROW(character_from_json(read_json_file(sample("s3_standard_char.json")), z2), InputError);
    EXPECT_NO_THROW(character_from_json(read_json_file(sample("z2_bad_char.json")), z2));
}

TEST(JsonErrors, SyntaxErrorsReportLineAndColumn)
{
    auto msg = error_of([] { parse_json_text("{\n  \"dim\": 2,\n  \"mul\": [,]\n}", "alg.json"); });
    EXPECT_NE(msg.find("alg.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
    EXPECT_THROW(read_json_file(sample("does_not_exist.json")), InputError);
}

TEST(JsonErrors, MissingAndMalformedFields)
{
    EXPECT_NE(error_of([] { algebra_from_json(Json::parse(R"({"dim": 1, "unit": [1], "trace": [1]})")); })
                  .find("missing field \"mul\""),
              std::string::npos);
    EXPECT_NE(error_of([] { algebra_from_json(Json::parse(R"({"dim": 0})")); }).find("dim"), std::string::npos);
    EXPECT_NE(error_of([] {
                  algebra_from_json(Json::parse(R"({"dim": 1, "mul": [[[[1, 1]]]], "unit": [1], "trace": [1]})"));
              }).find("out of range"),
              std::string::npos);
    EXPECT_NE(error_of([] {
                  algebra_from_json(Json::parse(R"({"dim": 1, "mul": [[[[0, "1/0"]]]], "unit": [1], "trace": [1]})"));
              }),
              "");
    EXPECT_NE(error_of([] {
                  algebra_from_json(Json::parse(R"({"dim": 1, "mul": [[[[0, 1.5]]]], "unit": [1], "trace": [1]})"));
              }).find("mul[0][0][0][1]"),
              std::string::npos);
    // a unit that is not the identity is rejected by the algebra constructor
    EXPECT_NE(error_of([] {
                  algebra_from_json(Json::parse(R"({"dim": 1, "mul": [[[[0, 1]]]], "unit": [2], "trace": [1]})"));
              }).find("algebra:"),
              std::string::npos);
    EXPECT_THROW(group_from_json(Json::parse(R"({"order": 2, "table": [[0, 1], [1, 1]], "identity": 0})")), InputError);
    EXPECT_THROW(group_from_json(Json::parse(R"({"order": 2, "table": [[0, 1]], "identity": 0})")), InputError);
}

TEST(JsonRoundTrip, Algebras)
{
    for (const char* name : {"m2_plus_q.json", "qq_weights_1_2.json", "strange_trace.json", "half_trace.json"}) {
        auto in = algebra_from_json(read_json_file(sample(name)));
        Json out = algebra_to_json(in.algebra, in.blocks ? &*in.blocks : nullptr);
        auto again = algebra_from_json(out);
        EXPECT_EQ(again.algebra.labels(), in.algebra.labels()) << name;
        EXPECT_EQ(again.algebra.table(), in.algebra.table()) << name;
        EXPECT_EQ(again.algebra.unit(), in.algebra.unit()) << name;
        EXPECT_EQ(again.algebra.trace_vector(), in.algebra.trace_vector()) << name;
        EXPECT_EQ(again.blocks.has_value(), in.blocks.has_value()) << name;
        EXPECT_EQ(algebra_to_json(again.algebra, again.blocks ? &*again.blocks : nullptr), out) << name;
    }
}

TEST(JsonRoundTrip, GroupsCharactersPosets)
{
    auto s3 = group_from_json(read_json_file(sample("s3_group.json")));
    auto g2 = group_from_json(group_to_json(s3));
    EXPECT_EQ(g2.table, s3.table);
    EXPECT_EQ(g2.names, s3.names);

    PseudoCharTable half{s3, 1, {make_rational(1, 2), 0, 0, 0, 0, 0}};
    Json cj = character_to_json(half);
    EXPECT_EQ(cj["values"][0], "1/2");
    auto back = character_from_json(cj, s3);
    EXPECT_EQ(back.values, half.values);

    Json pj = poset_to_json(stratification_poset(3, 2));
    EXPECT_EQ(pj["nodes"].size(), 5u);
    EXPECT_EQ(pj["codim_one_edges"], 1);
    EXPECT_TRUE(pj["codim_one_rule_holds"].get<bool>());
    EXPECT_EQ(pj["nodes"][0]["label"], "3/1");
    EXPECT_EQ(pj["nodes"][0]["stratum_dim"], 10);
}
