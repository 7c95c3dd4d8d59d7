#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gen.hpp"
#include "wb/measures.hpp"

using namespace wb;

TEST(Rational, ParseAndPrintLowestTerms) {
    EXPECT_EQ(parse_rational("50/9"), Rational(50, 9));
    EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(to_string(Rational(100, 18)), "50/9");
    EXPECT_EQ(to_string(Rational(9, 1)), "9");
    EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
}

TEST(Rational, RejectsDecimalsAndJunk) {
    for (const char* s : {"0.5", "1e3", "", "1/0", "abc", "1/2/3", " 1"}) EXPECT_THROW(parse_rational(s), ParseError) << s;
}

TEST(Rational, RoundTripProperty) {
    wbtest::Gen g(11);
    for (int it = 0; it < 500; ++it) {
        Rational r = g.rational(1'000'000, 1'000'000);
        EXPECT_EQ(parse_rational(to_string(r)), r);
    }
}

TEST(Instance, ValidationFlagsBadMass) {
    ProblemInstance inst;
    inst.d = 1;
    inst.weights = {Rational(1)};
    inst.measures = {{{{{Rational(0)}, Rational(1, 2)}}}};
    EXPECT_FALSE(validate_instance(inst).ok());
    inst.measures[0].points[0].mass = 1;
    EXPECT_TRUE(validate_instance(inst).ok());
    inst.weights = {Rational(2)};
    EXPECT_FALSE(validate_instance(inst).ok());
}

TEST(Instance, WrongDimensionIsReported) {
    auto inst = gen_square_example(Rational(6));
    inst.measures[1].points[0].coords.push_back(0);
    auto rep = validate_instance(inst);
    ASSERT_FALSE(rep.ok());
    EXPECT_NE(rep.str().find("dimension"), std::string::npos) << rep.str();
}

TEST(Instance, SquareExampleMatchesDescription) {
    auto inst = gen_square_example(Rational(6));
    ASSERT_EQ(inst.m(), 2u);
    EXPECT_EQ(inst.measures[0].points[0].coords, (Point{0, 0}));
    EXPECT_EQ(inst.measures[0].points[1].coords, (Point{6, 6}));
    EXPECT_EQ(inst.measures[1].points[0].coords, (Point{6, 0}));
    EXPECT_EQ(inst.measures[1].points[1].coords, (Point{0, 6}));
    for (const auto& mu : inst.measures)
        for (const auto& s : mu.points) EXPECT_EQ(s.mass, Rational(1, 2));
    EXPECT_TRUE(validate_instance(inst).ok());
    auto partial = gen_square_example(Rational(6), Rational(1, 4));
    EXPECT_TRUE(validate_instance(partial).ok());
    EXPECT_EQ(partial.measures[0].size(), 3u);
}

TEST(Instance, WeightedMeanOfOppositeCorners) {
    auto inst = gen_square_example(Rational(6));
    EXPECT_EQ(weighted_mean({0, 0}, inst), (Point{3, 0}));
    EXPECT_EQ(weighted_mean({1, 1}, inst), (Point{3, 6}));
}

TEST(Tuples, LexicographicOrderAndCount) {
    wbtest::Gen g(3);
    auto inst = g.instance(3, 1, 3);
    auto all = enumerate_tuples(inst, 1000);
    EXPECT_EQ(Integer(static_cast<unsigned long>(all.size())), tuple_space_size(inst));
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
    std::vector<Tuple> seen;
    for_each_tuple(inst, 1000, [&](const Tuple& t) { seen.push_back(t); });
    EXPECT_EQ(seen, all);
}

TEST(Tuples, CapIsEnforced) {
    wbtest::Gen g(4);
    auto inst = g.instance(4, 1, 3);
    auto size = tuple_space_size(inst);
    if (size > 1) EXPECT_THROW(enumerate_tuples(inst, size.get_ui() - 1), CapExceeded);
    EXPECT_NO_THROW(enumerate_tuples(inst, size.get_ui()));
}

TEST(Normalize, MergesCoincidentSlots) {
    ProblemInstance inst;
    inst.d = 1;
    inst.weights = {Rational(1)};
    inst.measures = {{{{{Rational(2)}, Rational(1, 3)}, {{Rational(2)}, Rational(1, 3)}, {{Rational(5)}, Rational(1, 3)}}}};
    auto n = normalize(inst);
    ASSERT_EQ(n.measures[0].size(), 2u);
    Rational total = 0;
    for (const auto& s : n.measures[0].points) total += s.mass;
    EXPECT_EQ(total, 1);
}

TEST(Json, InstanceRoundTripProperty) {
    wbtest::Gen g(5);
    for (int it = 0; it < 50; ++it) {
        auto inst = g.instance(static_cast<std::size_t>(g.integer(1, 4)), static_cast<std::size_t>(g.integer(1, 3)), 4);
        auto back = instance_from_json(nlohmann::json::parse(instance_to_json(inst).dump()));
        EXPECT_EQ(back, inst);
    }
}

TEST(Json, RationalsAreStrings) {
    auto j = instance_to_json(gen_square_example(Rational(6)));
    EXPECT_EQ(j["weights"][0], "1/2");
    EXPECT_EQ(j["measures"][0]["points"][1]["coords"][0], "6");
    j["weights"][0] = 0.5;
    EXPECT_THROW(instance_from_json(j), ParseError);
}

TEST(Json, CombinationAndPlanRoundTrip) {
    CombinationMeasure P{{{{0, 1}, Rational(1, 4)}, {{1, 0}, Rational(3, 4)}}};
    EXPECT_EQ(combination_from_json(combination_to_json(P)), P);
    TransportPlan T{{{0, 1, 2, Rational(1, 7)}}};
    EXPECT_EQ(plan_from_json(plan_to_json(T)), T);
}

TEST(Json, MissingFieldNamed) {
    try {
        instance_from_json(nlohmann::json::parse(R"({"d":2,"weights":["1"]})"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("measures"), std::string::npos);
    }
}

TEST(Files, AtomicWriteAndReadBack) {
    auto dir = std::filesystem::temp_directory_path() / "wb_measures_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "x.json").string();
    write_text_atomic(path, R"({"a": 1})");
    EXPECT_EQ(read_json_file(path)["a"], 1);
    std::ofstream(path) << "{\n  \"a\": ,\n}";
    try {
        read_json_file(path);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    std::filesystem::remove_all(dir);
}

TEST(Generators, RandomIsDeterministicAndValid) {
    auto a = gen_random({2, 3, 1}, 2, 10, 42);
    auto b = gen_random({2, 3, 1}, 2, 10, 42);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(validate_instance(a).ok());
    EXPECT_NE(a, gen_random({2, 3, 1}, 2, 10, 43));
}
