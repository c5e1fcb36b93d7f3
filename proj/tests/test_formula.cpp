#include <catch2/catch_amalgamated.hpp>

#include "pswidth/pswidth.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace psw;
using psw::testing::clauses;
using psw::testing::vars;

namespace {
std::vector<long long> dimacs_literals(const Clause& c) {
    std::vector<long long> out;
    for (Literal l : c.literals) out.push_back(l.to_dimacs());
    return out;
}
} // namespace

TEST_CASE("parse_cnf reads clauses in file order", "[dimacs]") {
    const Formula f = parse_cnf("p cnf 2 2\n1 2 0\n-1 0\n");
    REQUIRE(f.clause_count() == 2);
    CHECK(f.declared_vars() == 2);
    CHECK_FALSE(f.has_weights());
    CHECK(dimacs_literals(f.clause(0)) == std::vector<long long>{1, 2});
    CHECK(dimacs_literals(f.clause(1)) == std::vector<long long>{-1});
}

TEST_CASE("parse_cnf keeps an empty clause", "[dimacs]") {
    const Formula f = parse_cnf("p cnf 1 1\n0\n");
    REQUIRE(f.clause_count() == 1);
    CHECK(f.clause(0).empty());
    CHECK(f.occurring_vars().none());
}

TEST_CASE("parse_cnf keeps duplicate clause lines as distinct clauses", "[dimacs]") {
    const Formula f = parse_cnf("c dup\np cnf 3 2\n1 -2 0\n1 -2 0\n");
    REQUIRE(f.clause_count() == 2);
    CHECK(f.clause(0).literals == f.clause(1).literals);
    CHECK(f.clause(0).id != f.clause(1).id);
}

TEST_CASE("parse_cnf merges repeated literals and keeps tautologies", "[dimacs]") {
    const Formula f = parse_cnf("p cnf 2 1\n1 1 -1 2 0\n");
    CHECK(dimacs_literals(f.clause(0)) == std::vector<long long>{1, -1, 2});
}

TEST_CASE("parse_cnf reports the offending line", "[dimacs]") {
    auto line_of = [](const char* text) {
        try {
            parse_cnf(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        FAIL("no error for: " << text);
        return std::size_t{0};
    };
    CHECK(line_of("p cnf x 1\n1 0\n") == 1);
    CHECK(line_of("p cnf 2\n") == 1);
    CHECK(line_of("p cnf 2 1\n3 0\n") == 2);
    CHECK(line_of("p cnf 2 1\n1 2\n") == 2);
    CHECK(line_of("p cnf 2 2\n1 0\n") == 2);
    CHECK(line_of("p cnf 2 1\n1 0\n2 0\n") == 3);
    CHECK(line_of("1 0\np cnf 1 1\n") == 1);
    CHECK(line_of("p cnf 2 1\n1 0 2 0\n") == 2);
    CHECK_THROWS_AS(parse_cnf("p wcnf 1 1\n1 1 0\n"), ParseError);
}

TEST_CASE("parse_wcnf stores weights exactly", "[dimacs]") {
    const Formula f = parse_wcnf("p wcnf 1 2\n5 1 0\n7 -1 0\n");
    REQUIRE(f.has_weights());
    CHECK(f.weight(0) == 5);
    CHECK(f.weight(1) == 7);
    CHECK(dimacs_literals(f.clause(1)) == std::vector<long long>{-1});

    CHECK(parse_wcnf("p wcnf 1 1\n0 1 0\n").weight(0) == 0);

    const Formula big = parse_wcnf("p wcnf 2 1\n340282366920938463463374607431768211456 1 2 0\n");
    BigInt two_128 = 1;
    mpz_mul_2exp(two_128.get_mpz_t(), two_128.get_mpz_t(), 128);
    CHECK(big.weight(0) == two_128);
}

TEST_CASE("parse_wcnf accepts a top token and rejects negative weights", "[dimacs]") {
    CHECK(parse_wcnf("p wcnf 1 1 100\n3 1 0\n").weight(0) == 3);
    CHECK_THROWS_AS(parse_wcnf("p wcnf 1 1\n-3 1 0\n"), ParseError);
}

TEST_CASE("parse_dimacs picks the format from the header", "[dimacs]") {
    CHECK_FALSE(parse_dimacs("p cnf 1 1\n1 0\n").has_weights());
    CHECK(parse_dimacs("p wcnf 1 1\n4 1 0\n").has_weights());
}

TEST_CASE("induce_clause keeps literals over the given variables", "[formula]") {
    const Formula f = parse_cnf(testing::worked_cnf);
    const Clause c3 = induce_clause(f.clause(2), vars(5, {3, 4, 5}));
    CHECK(c3.id == 2);
    CHECK(dimacs_literals(c3) == std::vector<long long>{-4, 5});
    CHECK(induce_clause(f.clause(0), vars(5, {3, 4, 5})).empty());
    for (const Clause& c : f.clauses()) {
        VariableSet own(6);
        for (Literal l : c.literals) own.set(l.variable);
        CHECK(induce_clause(c, own) == c);
    }
}

TEST_CASE("induce_clause is idempotent", "[formula][property]") {
    testing::Rng rng(11);
    for (int round = 0; round < 200; ++round) {
        const Formula f = testing::random_formula(rng);
        VariableSet x(f.declared_vars() + 1);
        for (std::size_t v = 1; v <= f.declared_vars(); ++v)
            if (rng() & 1U) x.set(v);
        for (const Clause& c : f.clauses()) CHECK(induce_clause(induce_clause(c, x), x) == induce_clause(c, x));
    }
}

TEST_CASE("induce_formula retains ids", "[formula]") {
    const Formula f = parse_cnf(testing::worked_cnf);
    const Formula fv = induce_formula(f, clauses(4, {1, 3}), vars(5, {1, 2}));
    REQUIRE(fv.clause_count() == 2);
    CHECK(dimacs_literals(fv.clause(1)) == std::vector<long long>{1, -2});
    CHECK(dimacs_literals(fv.clause(3)) == std::vector<long long>{2});
    CHECK(fv.universe() == 4);

    const Formula same = induce_formula(f, f.clause_ids(), f.occurring_vars());
    CHECK(same.clauses() == f.clauses());
    CHECK(induce_formula(f, ClauseSet(4), f.occurring_vars()).clause_count() == 0);
    CHECK_THROWS_AS(induce_formula(f, ClauseSet(3), f.occurring_vars()), ValidationError);
}

TEST_CASE("satisfied_clauses on partial assignments", "[formula]") {
    const Formula f = parse_cnf(testing::worked_cnf);
    const Formula fv = induce_formula(f, clauses(4, {1, 3}), vars(5, {1, 2}));
    Assignment tau(5);
    tau.assign(1, true);
    tau.assign(2, true);
    CHECK(satisfied_clauses(fv, tau) == clauses(4, {1, 3}));
    CHECK(satisfied_clauses(f, Assignment(5)).none());
    const Formula empty_clause = parse_cnf("p cnf 1 1\n0\n");
    Assignment one(1);
    one.assign(1, true);
    CHECK(satisfied_clauses(empty_clause, one).none());
}

TEST_CASE("weight_of sums clause weights", "[formula]") {
    const Formula unit = parse_cnf("p cnf 1 2\n1 0\n-1 0\n");
    CHECK(weight_of(unit, clauses(2, {0, 1})) == 2);
    const Formula w = parse_wcnf("p wcnf 1 2\n5 1 0\n7 -1 0\n");
    CHECK(weight_of(w, clauses(2, {1})) == 7);

    BigInt two_100 = 1;
    mpz_mul_2exp(two_100.get_mpz_t(), two_100.get_mpz_t(), 100);
    const Formula huge = unit.with_weights({two_100, two_100});
    CHECK(weight_of(huge, clauses(2, {0, 1})) == two_100 * 2);
}

TEST_CASE("full assignments split clauses into satisfied and unsatisfied", "[formula][property]") {
    testing::Rng rng(12);
    for (int round = 0; round < 200; ++round) {
        const Formula f = testing::random_formula(rng);
        Assignment tau(f.declared_vars());
        for (auto v : f.variables()) tau.assign(v, rng() & 1U);
        const ClauseSet sat = satisfied_clauses(f, tau);
        const ClauseSet unsat = f.clause_ids() - sat;
        CHECK(sat.count() + unsat.count() == f.clause_count());
        for (const Clause& c : f.clauses()) {
            const bool expected = std::any_of(c.literals.begin(), c.literals.end(),
                                              [&](Literal l) { return tau.value(l.variable) != l.negated; });
            CHECK(sat.test(c.id) == expected);
        }
    }
}

TEST_CASE("a clause is satisfied iff one side of any cut satisfies it", "[formula][property]") {
    testing::Rng rng(13);
    for (int round = 0; round < 200; ++round) {
        const Formula f = testing::random_formula(rng);
        VariableSet x(f.declared_vars() + 1);
        for (auto v : f.variables())
            if (rng() & 1U) x.set(v);
        const VariableSet xbar = f.occurring_vars() - x;
        Assignment tau(f.declared_vars());
        for (auto v : f.variables()) tau.assign(v, rng() & 1U);
        const Assignment on_x(x, tau.values), on_xbar(xbar, tau.values);
        const ClauseSet all = f.clause_ids();
        const ClauseSet split = satisfied_clauses(induce_formula(f, all, x), on_x) |
                                satisfied_clauses(induce_formula(f, all, xbar), on_xbar);
        CHECK(split == satisfied_clauses(f, tau));
    }
}

TEST_CASE("formula rejects out-of-range variables and negative weights", "[formula]") {
    CHECK_THROWS_AS(Formula::from_dimacs(1, {{2}}), ValidationError);
    CHECK_THROWS_AS(Formula::from_dimacs(1, {{1}}, std::vector<BigInt>{BigInt(-1)}), ValidationError);
    CHECK(Formula::from_dimacs(3, {{1, -2}}).size() == 3);
}
