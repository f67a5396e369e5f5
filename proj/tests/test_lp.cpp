#include "graph_entropy/bounds.hpp"
#include "graph_entropy/lp.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace graph_entropy;

TEST_CASE("rationals stay canonical", "[lp][rational]")
{
    CHECK(to_string(make_rational(6, 4)) == "3/2");
    CHECK(to_string(make_rational(4, 2)) == "2");
    CHECK(to_string(make_rational(3, -6)) == "-1/2");
    CHECK(parse_rational("10/13") == make_rational(10, 13));
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("4/6") == make_rational(2, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("single bound", "[lp]")
{
    LinearProgram lp(1);
    lp.set_objective({1});
    lp.add_constraint(std::vector<Rational>{1}, Relation::LessEqual, 1);
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == 1);
    CHECK(verify_certificates(lp, s));
}

TEST_CASE("binding sum constraint", "[lp]")
{
    LinearProgram lp(2);
    lp.set_objective({1, 1});
    lp.add_constraint(std::vector<Rational>{1, 1}, Relation::LessEqual, make_rational(3, 2));
    lp.add_constraint(std::vector<Rational>{1, 0}, Relation::LessEqual, 1);
    lp.add_constraint(std::vector<Rational>{0, 1}, Relation::LessEqual, 1);
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == make_rational(3, 2));
    CHECK(verify_certificates(lp, s));
}

TEST_CASE("statuses and dimension errors", "[lp]")
{
    LinearProgram inf(1);
    inf.set_objective({1});
    inf.add_constraint(std::vector<Rational>{1}, Relation::GreaterEqual, 2);
    inf.add_constraint(std::vector<Rational>{1}, Relation::LessEqual, 1);
    CHECK(solve(inf).status == LpStatus::Infeasible);

    LinearProgram unb(2);
    unb.set_objective({1, 0});
    unb.add_constraint(std::vector<Rational>{0, 1}, Relation::LessEqual, 1);
    CHECK(solve(unb).status == LpStatus::Unbounded);

    LinearProgram bad(2);
    CHECK_THROWS_AS(bad.add_constraint(std::vector<Rational>{1}, Relation::Equal, 0),
                    std::invalid_argument);

    LinearProgram freevar(1, Sense::Minimize, Domain::Free);
    freevar.set_objective({1});
    freevar.add_constraint(std::vector<Rational>{1}, Relation::GreaterEqual, -5);
    LpSolution s = solve(freevar);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == -5);
    CHECK(verify_certificates(freevar, s));
}

TEST_CASE("certificate checks reject perturbations", "[lp]")
{
    LinearProgram lp(2);
    lp.set_objective({1, 1});
    lp.add_constraint(std::vector<Rational>{1, 1}, Relation::LessEqual, make_rational(3, 2));
    lp.add_constraint(std::vector<Rational>{1, 0}, Relation::LessEqual, 1);
    LpSolution s = solve(lp);
    REQUIRE(verify_certificates(lp, s));

    LpSolution primal = s;
    primal.primal[0] += 1;
    CHECK_FALSE(verify_certificates(lp, primal));

    LpSolution value = s;
    value.objective += 1;
    CHECK_FALSE(verify_certificates(lp, value));

    LpSolution dual = s;
    dual.dual[0] = -1;
    CHECK_FALSE(verify_certificates(lp, dual));
}

TEST_CASE("fractional cover LP of G1", "[lp]")
{
    Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}, {5, 0}, {5, 1}, {6, 3}});
    LinearProgram lp = fractional_cover_lp(g, maximal_cliques(g));
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == make_rational(10, 3));
    CHECK(verify_certificates(lp, s));
}

TEST_CASE("random LPs match vertex enumeration", "[lp][property]")
{
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> coeff(-3, 4), rhs(0, 9), nv(1, 5), nr(1, 6), rel(0, 2);
    int optimal = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = nv(rng), m = nr(rng);
        LinearProgram lp(n, trial % 2 ? Sense::Maximize : Sense::Minimize);
        std::vector<Rational> c(n);
        for (auto& x : c)
            x = coeff(rng);
        lp.set_objective(c);
        for (int r = 0; r < m; ++r) {
            std::vector<Rational> a(n);
            for (auto& x : a)
                x = coeff(rng);
            auto relation = static_cast<Relation>(rel(rng));
            lp.add_constraint(a, relation, relation == Relation::Equal ? Rational(rhs(rng) - 3)
                                                                       : Rational(rhs(rng)));
        }
        // Box keeps the oracle's vertex set finite.
        for (int j = 0; j < n; ++j) {
            std::vector<Rational> e(n, 0);
            e[j] = 1;
            lp.add_constraint(e, Relation::LessEqual, 6);
        }
        LpSolution s = solve(lp);
        auto expect = oracle::vertex_optimum(lp);
        if (!expect) {
            CHECK(s.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.objective == *expect);
        CHECK(verify_certificates(lp, s));
        CHECK(solve(lp).primal == s.primal);
        ++optimal;
    }
    CHECK(optimal > 50);
}

TEST_CASE("LP text output", "[lp]")
{
    LinearProgram lp(2, Sense::Minimize);
    lp.set_var_name(0, "a");
    lp.set_objective({make_rational(1, 2), 1});
    lp.add_constraint(std::vector<LpTerm>{{0, 1}, {1, make_rational(-2, 3)}}, Relation::GreaterEqual,
                      1, "row");
    std::ostringstream os;
    write_lp_text(os, lp);
    const std::string text = os.str();
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("1/2 a") != std::string::npos);
    CHECK(text.find("row:") != std::string::npos);
    CHECK(text.find("2/3 x1") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("larger programs certify through the warm-started route", "[lp][property]")
{
    // x = 0 is always feasible and the box keeps every program bounded.
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> mixed(-2, 3), plain(0, 3), rhs(1, 12);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 50 + trial, m = 60;
        LinearProgram lp(n, trial % 2 ? Sense::Maximize : Sense::Minimize);
        std::vector<Rational> c(n);
        for (auto& x : c)
            x = mixed(rng);
        lp.set_objective(c);
        for (std::size_t r = 0; r < m; ++r) {
            std::vector<Rational> a(n);
            bool cover = r % 4 == 0;
            for (auto& x : a)
                x = cover ? mixed(rng) : plain(rng);
            if (cover)
                lp.add_constraint(a, Relation::GreaterEqual, 0);
            else
                lp.add_constraint(a, Relation::LessEqual, Rational(rhs(rng)));
        }
        for (std::size_t j = 0; j < n; ++j)
            lp.add_constraint(std::vector<LpTerm>{{j, Rational(1)}}, Relation::LessEqual, 5);
        LpSolution s = solve(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(verify_certificates(lp, s));
    }
}
