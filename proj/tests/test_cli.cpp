#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pswidth/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = psw::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(PSWIDTH_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("pswidth_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("count prints the model count", "[cli]") {
    CHECK(run({"count", data("contradiction.cnf"), "--auto", "file-order"}).out == "0\n");
    const auto r = run({"count", data("cut_example.cnf"), "--decomp", data("cut_example.dec")});
    CHECK(r.code == 0);
    CHECK(r.out == "13\n");
    CHECK(run({"count", data("cut_example.cnf")}).out == "13\n");
    CHECK(run({"count", data("sparse.cnf"), "--all-vars"}).out == "950737950171172051122527404032\n");
    CHECK(run({"count", data("sparse.cnf")}).out == "3\n");
}

TEST_CASE("maxsat prints the weight and a witness", "[cli]") {
    const auto r = run({"maxsat", data("two_unit.wcnf"), "--auto", "file-order"});
    CHECK(r.code == 0);
    CHECK(r.out == "o 7\nv -1\n");
    const auto big = run({"maxsat", data("huge_weight.wcnf")});
    CHECK(big.out.rfind("o 340282366920938463463374607431768211457\nv ", 0) == 0);
}

TEST_CASE("psw prints the width and the per-node report", "[cli]") {
    const auto r = run({"psw", data("cut_example.cnf"), "--decomp", data("cut_example.dec"), "--verbose"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("3\n", 0) == 0);
    CHECK(r.out.find("\n1\t3\t2\n") != std::string::npos);
}

TEST_CASE("order verify and find", "[cli]") {
    const auto good = run({"order", "verify", data("two_units.cnf"), data("good.ord")});
    CHECK(good.code == 0);
    CHECK(good.out == "VALID\n");
    const auto bad = run({"order", "verify", data("two_units.cnf"), data("bad.ord")});
    CHECK(bad.code == psw::cli::invalid_structure);
    CHECK(bad.out == "INVALID v1 c0 v2\n");

    const auto none = run({"order", "find", data("six_cycle.cnf")});
    CHECK(none.code == 0);
    CHECK(none.out == "NONE\n");
    const auto found = run({"order", "find", data("two_units.cnf")});
    CHECK(found.out == "v1 c0 v2 c1\n");
    CHECK(run({"order", "find", data("six_cycle.cnf"), "--limit", "4"}).code == psw::cli::limit_refused);
}

TEST_CASE("order files drive linear decompositions", "[cli]") {
    CHECK(run({"count", data("two_units.cnf"), "--order", data("good.ord")}).out == "1\n");
    CHECK(run({"count", data("two_units.cnf"), "--order", data("bad.ord")}).out == "1\n");
}

TEST_CASE("mim prints per-node values and the maximum", "[cli]") {
    const auto r = run({"mim", data("cut_example.cnf"), "--decomp", data("cut_example.dec")});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n1\t1\t") != std::string::npos);
    CHECK(r.out.find("max\t") != std::string::npos);
}

TEST_CASE("decomp output parses back to the same tree", "[cli]") {
    const auto r = run({"decomp", data("cut_example.cnf"), "--decomp", data("cut_example.dec")});
    const psw::Formula f = psw::parse_cnf(std::string_view(
        "p cnf 5 4\n1 2 0\n1 -2 3 0\n-2 -4 5 0\n2 -3 0\n"));
    std::ifstream in(data("cut_example.dec"));
    CHECK(psw::parse_decomposition(r.out, f) == psw::parse_decomposition(in, f));
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(run({}).code == psw::cli::usage);
    CHECK(run({"count"}).code == psw::cli::usage);
    CHECK(run({"frobnicate", data("two_units.cnf")}).code == psw::cli::usage);
    CHECK(run({"count", data("two_units.cnf"), "--auto", "best"}).code == psw::cli::usage);
    CHECK(run({"count", data("two_units.cnf"), "--auto", "file-order", "--order", data("good.ord")}).code ==
          psw::cli::usage);

    const auto parse = run({"count", data("malformed.cnf")});
    CHECK(parse.code == psw::cli::parse_failure);
    CHECK(parse.err.find("line 2") != std::string::npos);
    CHECK(run({"count", data("does_not_exist.cnf")}).code == psw::cli::parse_failure);

    const auto dec = temp_file("bad.dec", "nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\nleaf 2 c5\n");
    const auto bad_tree = run({"count", data("two_units.cnf"), "--decomp", dec});
    CHECK(bad_tree.code == psw::cli::invalid_structure);
    CHECK_FALSE(bad_tree.err.empty());

    const auto short_ord = temp_file("short.ord", "v1 c0\n");
    CHECK(run({"count", data("two_units.cnf"), "--order", short_ord}).code == psw::cli::invalid_structure);
    CHECK(run({"order", "verify", data("two_units.cnf"), short_ord}).code == psw::cli::invalid_structure);
}

TEST_CASE("output is deterministic", "[cli]") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"maxsat", data("cut_example.cnf")},
             {"psw", data("cut_example.cnf"), "--verbose"},
             {"decomp", data("cut_example.cnf"), "--auto", "greedy-ps"},
         })
        CHECK(run(args).out == run(args).out);
}
