#include <doctest.h>

#include "maslovkit/io.hpp"

using namespace maslov;
using nlohmann::json;

TEST_CASE("scenario round trip: generate -> serialize -> parse -> compute") {
    SUBCASE("sphere disk") {
        const ScenarioFile gen = generate_scenario("sphere", 1, 0, 96, 1);
        const ResultRecord direct = compute_scenario(gen);
        const json wire = scenario_to_json(gen);
        const ScenarioFile parsed = parse_scenario(wire);
        const ResultRecord via_file = compute_scenario(parsed);
        CHECK(via_file.value == direct.value);  // bit-exact round trip
        CHECK(direct.value == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(direct.is_integer);
        CHECK(direct.rounded == 2);
        REQUIRE(direct.area.has_value());
        CHECK(*via_file.area == *direct.area);
    }
    SUBCASE("clutching z^2") {
        const ScenarioFile gen = generate_scenario("clutching", 1, 2, 128, 1);
        const json wire = scenario_to_json(gen);
        const ResultRecord rec = compute_scenario(parse_scenario(wire));
        CHECK(rec.is_integer);
        CHECK(rec.rounded == 2);
        CHECK(rec.value == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("lagrangian half turn") {
        const ScenarioFile gen = generate_scenario("lagrangian-half-turn", 1, 0, 64, 1);
        const ResultRecord rec = compute_scenario(parse_scenario(scenario_to_json(gen)));
        CHECK(rec.is_integer);
        CHECK(rec.rounded == 1);
    }
    SUBCASE("random framed loop") {
        const ScenarioFile gen = generate_scenario("framed-loop", 2, 3, 96, 17);
        const ResultRecord direct = compute_scenario(gen);
        const ResultRecord via = compute_scenario(parse_scenario(scenario_to_json(gen)));
        CHECK(via.value == direct.value);
    }
    SUBCASE("group action and planar") {
        const ScenarioFile ga = generate_scenario("group-action", 2, 1, 96, 1);
        const ResultRecord rga = compute_scenario(parse_scenario(scenario_to_json(ga)));
        CHECK(rga.value == doctest::Approx(4.0).epsilon(1e-9));
        const ScenarioFile pl = generate_scenario("planar", 1, 1, 96, 1);
        const ResultRecord rpl = compute_scenario(parse_scenario(scenario_to_json(pl)));
        CHECK(rpl.value == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("validation errors carry field paths") {
    json j;
    j["kind"] = "clutching";
    j["dimension"] = 2;
    j["grid"] = {0.0, 0.5, 0.4, 1.0};
    j["loop"] = json::array();
    try {
        parse_scenario(j);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("grid") != std::string::npos);
    }

    json ok;
    ok["kind"] = "disk";
    ok["dimension"] = 3;  // odd
    CHECK_THROWS_AS(parse_scenario(ok), ValidationError);

    json unknown;
    unknown["kind"] = "donut";
    unknown["dimension"] = 2;
    CHECK_THROWS_AS(parse_scenario(unknown), ValidationError);
    CHECK_THROWS_AS(generate_scenario("donut", 1, 0, 32, 1), ValidationError);
}

TEST_CASE("subspace payload validation") {
    // A rank-deficient basis inside a framed-loop file is rejected with the
    // offending field in the message.
    const ScenarioFile gen = generate_scenario("framed-loop", 2, 3, 24, 3);
    json wire = scenario_to_json(gen);
    std::vector<double> bad(4 * 3, 0.0);
    bad[0 * 3 + 0] = 1.0;  // e1
    bad[0 * 3 + 1] = 2.0;  // 2 e1 (dependent)
    bad[1 * 3 + 2] = 1.0;  // e2
    wire["subspaces"][5] = bad;
    try {
        parse_scenario(wire);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("subspaces[5]") != std::string::npos);
    }

    // A symplectic (non-coisotropic) plane in a Lagrangian-loop file.
    const ScenarioFile lag = generate_scenario("lagrangian-half-turn", 2, 0, 24, 1);
    const ScenarioFile parsed = parse_scenario(scenario_to_json(lag));
    const auto* ll = std::get_if<LagrangianLoopScenario>(&parsed.payload);
    REQUIRE(ll != nullptr);
    auto bases = ll->bases;
    Mat sympl = Mat::Zero(4, 2);
    sympl(0, 0) = 1.0;
    sympl(2, 1) = 1.0;  // span(e1, f1)
    bases[3] = sympl;
    CHECK_THROWS_AS(lagrangian_loop_index(ll->space, ll->grid, bases), ValidationError);
}

TEST_CASE("tolerances round trip and unknown names are rejected") {
    Tolerances t;
    t.eps_circle = 3e-7;
    t.near_integer = 5e-6;
    const json j = tolerances_to_json(t);
    const Tolerances back = tolerances_from_json(j, Tolerances{});
    CHECK(back.eps_circle == t.eps_circle);
    CHECK(back.near_integer == t.near_integer);
    json badj = {{"nope", 1.0}};
    CHECK_THROWS_AS(tolerances_from_json(badj, Tolerances{}), ValidationError);
}

TEST_CASE("record schema") {
    const ResultRecord rec = compute_scenario(generate_scenario("clutching", 1, -2, 96, 1));
    const json j = record_to_json(rec);
    for (const char* key : {"id", "kind", "value", "integer", "warnings", "timing_ms",
                            "tolerances"})
        CHECK(j.contains(key));
    CHECK(j["rounded"] == -2);
    CHECK(j["integer"] == true);
}

TEST_CASE("verify report is deterministic for a fixed seed") {
    VerifyConfig cfg;
    cfg.trials = 4;
    cfg.loop_trials = 2;
    cfg.family_trials = 1;
    cfg.max_dim = 6;
    cfg.seed = 5;
    const auto r1 = run_all_suites(cfg);
    const auto r2 = run_all_suites(cfg);
    const json j1 = verify_report(r1, cfg);
    const json j2 = verify_report(r2, cfg);
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["all_pass"] == true);

    VerifyConfig empty;
    empty.trials = 0;
    empty.loop_trials = 0;
    empty.family_trials = 0;
    CHECK(run_all_suites(empty).empty());
}
