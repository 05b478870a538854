#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "holint/analysis.hpp"
#include "holint/field_parse.hpp"
#include "test_support.hpp"

using namespace holint;
using holint::testing::Rng;
using G = GaussianRational;
using nlohmann::json;

TEST_CASE("parsing the reference descriptions") {
    auto X = parse_field("lambda = 1, 2, -3; a1 = 0; a2 = 0; a3 = 0; order = 6");
    CHECK(X.lambda() == std::array<G, 3>{G(1), G(2), G(-3)});
    CHECK(X.order() == 6);
    for (int j = 0; j < 3; ++j) CHECK(X.a(j).is_zero());

    auto Y = parse_field("lambda = 1, 1, -2;\na1 = 1/2*z + x*y;\norder = 5;\n");
    CHECK(Y.a(0).terms().size() == 2);
    CHECK(Y.a(0).coeff(Index3{{0, 0, 1}}) == G(make_rational(1, 2)));
    CHECK(Y.a(0).coeff(Index3{{1, 1, 0}}) == G(1));
    CHECK(Y.a(1).is_zero());

    // complex eigenvalues and coefficients
    auto Z = parse_field("lambda = 1+2i, -i, 3/4; a2 = (1/2-3/4i)*x^2*z; order = 4");
    CHECK(Z.lambda()[0] == G(Rational(1), Rational(2)));
    CHECK(Z.lambda()[1] == G(Rational(0), Rational(-1)));
    CHECK(Z.a(1).coeff(Index3{{2, 0, 1}}) == G(make_rational(1, 2), make_rational(-3, 4)));
}

TEST_CASE("parser rejects invalid inputs with positions") {
    CHECK_THROWS_AS(parse_field("lambda = 1, 0, -3; order = 4"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1, -1; a1 = 1 + x; order = 4"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1, -1; a1 = x^9; order = 4"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1, -1; order = 1"), ParseError);
    CHECK_THROWS_AS(parse_field("order = 4"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1, -1"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1, -1; a4 = x; order = 4"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1; order = 4"), ParseError);
    CHECK_THROWS_AS(parse_field("lambda = 1, 1, -1; a1 = w; order = 4"), ParseError);

    try {
        parse_field("lambda = 1, 2, -3;\na1 = x @ y;\norder = 4;");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("2:") == 0);
    }
}

TEST_CASE("print/parse round trip is exact") {
    Rng rng(51);
    for (int t = 0; t < 20; ++t) {
        VectorFieldGerm X = rng.field(5, 4, 4, true);
        VectorFieldGerm Y = parse_field(print_field(X));
        CHECK(X == Y);
    }
    // order override re-truncates
    auto X = parse_field("lambda = 1, 1, -1; a1 = z; order = 6");
    auto Y = parse_field(print_field(X), 4);
    CHECK(Y.order() == 4);
    CHECK(Y.a(0) == Series3::variable(4, 2));
}

TEST_CASE("scalar literals") {
    CHECK(parse_gaussian_literal("-3/4") == G(make_rational(-3, 4)));
    CHECK(parse_gaussian_literal("1/2+1/3i") == G(make_rational(1, 2), make_rational(1, 3)));
    CHECK(parse_gaussian_literal("-i") == -G::i());
    CHECK(parse_gaussian_literal("0") == G(0));
    CHECK_THROWS_AS(parse_gaussian_literal("1/2 3"), ParseError);
}

TEST_CASE("analysis pipeline on the integrable linear field") {
    AnalysisRequest req(parse_field("lambda = 1, 2, -3; order = 6"));
    req.z0 = {G(0), G(make_rational(1, 4))};
    AnalysisReport rep = run(req);
    CHECK(!rep.budget_hit);
    json root = json::parse(rep.structured);

    CHECK(root["tasks"]["star"]["holds"] == true);
    CHECK(root["tasks"]["star"]["lambda_X"] == "-3");
    CHECK(root["tasks"]["star"]["distinguished_index"] == 3);

    CHECK(root["tasks"]["resonances"]["count"] == 4);

    auto& fi = root["tasks"]["first_integral"];
    CHECK(fi["N"] == json::array({3, 0, 1}));
    CHECK(fi["M"] == json::array({0, 3, 2}));
    CHECK(fi["transversal"] == true);
    CHECK(fi["linear_residuals"][0] == "0");
    CHECK(fi["field_residuals_zero"] == true);

    auto& mi = root["tasks"]["meromorphic_invariant"];
    CHECK(mi["exponent"] == json::array({6, -3, 0}));
    CHECK(mi["adapted"] == true);

    auto& dist = root["tasks"]["distribution"];
    CHECK(dist["status"] == "ok");
    CHECK(dist["obstructions"].empty());
    CHECK(dist["tangency_residual_zero"] == true);

    auto& res = root["tasks"]["resolution"];
    CHECK(res["dicritical"].size() == 2);
    CHECK(res["dicritical"][0]["blowups"] == 2);

    auto& hol = root["tasks"]["holonomy"];
    CHECK(hol["verdict"] == "periodic");
    CHECK(hol["period"] == 3);

    CHECK(root["provenance"]["version"] == kVersion);
    CHECK(rep.text.find("condition holds: yes") != std::string::npos);
    CHECK(rep.text.find("periodic with period 3") != std::string::npos);
}

TEST_CASE("non-integrable eigenvalues degrade gracefully") {
    AnalysisRequest req(parse_field("lambda = 1, 2, 3; order = 5"));
    AnalysisReport rep = run(req);
    json root = json::parse(rep.structured);
    CHECK(root["tasks"]["star"]["holds"] == false);
    CHECK(root["tasks"]["first_integral"]["status"] == "not_applicable");
    std::string msg = root["tasks"]["first_integral"]["message"];
    CHECK(msg.find("necessary condition") != std::string::npos);
    CHECK(root["tasks"]["holonomy"]["status"] == "skipped");
    CHECK(root["tasks"]["resolution"]["status"] == "skipped");
}

TEST_CASE("resolution budget is reported, other tasks complete") {
    AnalysisRequest req(parse_field("lambda = 5, 3, -1; order = 6"));
    req.max_blowups = 1;
    req.z0 = {G(0)};
    AnalysisReport rep = run(req);
    CHECK(rep.budget_hit);
    json root = json::parse(rep.structured);
    CHECK(root["tasks"]["resolution"]["status"] == "budget");
    CHECK(root["tasks"]["resolution"]["failures"][0]["budget"] == true);
    CHECK(root["tasks"]["star"]["holds"] == true);
    CHECK(root["tasks"]["holonomy"]["verdict"] == "periodic");
}

TEST_CASE("reports are byte-identical across runs") {
    auto make = [] {
        AnalysisRequest req(parse_field("lambda = 2, 4, -6; a1 = 1/3*x*y; order = 6"));
        req.seed = 7;
        return run(req);
    };
    AnalysisReport a = make();
    AnalysisReport b = make();
    CHECK(a.structured == b.structured);
    CHECK(a.text == b.text);

    // different seed changes the provenance hash only
    AnalysisRequest req2(parse_field("lambda = 2, 4, -6; a1 = 1/3*x*y; order = 6"));
    req2.seed = 8;
    AnalysisReport c = run(req2);
    CHECK(json::parse(c.structured)["provenance"]["input_hash"] !=
          json::parse(a.structured)["provenance"]["input_hash"]);
}

TEST_CASE("task selection") {
    CHECK(task_from_name("holonomy") == Task::holonomy);
    CHECK_THROWS_AS(task_from_name("nope"), ConfigError);
    AnalysisRequest req(parse_field("lambda = 1, 1, -2; order = 4"));
    req.tasks = {Task::star};
    json root = json::parse(run(req).structured);
    CHECK(root["tasks"].size() == 1);
    CHECK(root["tasks"].contains("star"));

    req.tasks = {};
    CHECK_THROWS_AS(run(req), ConfigError);
}
