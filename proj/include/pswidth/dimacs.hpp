#pragma once

#include <cctype>
#include <cstddef>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pswidth/formula.hpp"

namespace psw {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
    if (!all_digits(tok) || tok.size() > 18) throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return static_cast<std::size_t>(std::stoull(std::string(tok)));
}

inline long long parse_literal(std::string_view tok, std::size_t line, std::size_t declared) {
    std::string_view digits = tok;
    bool neg = false;
    if (!digits.empty() && digits.front() == '-') {
        neg = true;
        digits.remove_prefix(1);
    }
    if (!all_digits(digits) || digits.size() > 18) throw ParseError(line, "bad literal '" + std::string(tok) + "'");
    const auto v = std::stoll(std::string(digits));
    if (v != 0 && static_cast<std::size_t>(v) > declared)
        throw ParseError(line, "literal " + std::string(tok) + " exceeds declared variable count " + std::to_string(declared));
    return neg ? -v : v;
}

enum class DimacsKind { cnf, wcnf };

inline Formula parse_dimacs_impl(std::istream& in, std::optional<DimacsKind> expected) {
    std::string raw;
    std::size_t lineno = 0;
    std::optional<DimacsKind> kind;
    std::size_t declared = 0, expected_clauses = 0, header_line = 0;
    std::vector<Clause> clauses;
    std::vector<BigInt> weights;

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto toks = split_ws(raw);
        if (toks.empty() || toks.front() == "c" || toks.front().front() == 'c') continue;

        if (toks.front() == "p") {
            if (kind) throw ParseError(lineno, "second header");
            if (toks.size() < 4) throw ParseError(lineno, "malformed header");
            if (toks[1] == "cnf" && toks.size() == 4) kind = DimacsKind::cnf;
            else if (toks[1] == "wcnf" && (toks.size() == 4 || toks.size() == 5)) kind = DimacsKind::wcnf;
            else throw ParseError(lineno, "malformed header");
            if (expected && *expected != *kind)
                throw ParseError(lineno, *expected == DimacsKind::cnf ? "expected 'p cnf' header" : "expected 'p wcnf' header");
            declared = parse_count(toks[2], lineno, "variable count");
            expected_clauses = parse_count(toks[3], lineno, "clause count");
            if (toks.size() == 5) parse_count(toks[4], lineno, "top weight");
            header_line = lineno;
            continue;
        }
        if (!kind) throw ParseError(lineno, "clause before header");

        std::size_t first = 0;
        BigInt weight(1);
        if (*kind == DimacsKind::wcnf) {
            if (toks.front().front() == '-') throw ParseError(lineno, "negative weight");
            if (!all_digits(toks.front())) throw ParseError(lineno, "bad weight '" + std::string(toks.front()) + "'");
            weight = BigInt(std::string(toks.front()), 10);
            first = 1;
        }
        if (toks.size() <= first || toks.back() != "0") throw ParseError(lineno, "clause not terminated by 0");

        Clause c{clauses.size(), {}};
        for (std::size_t i = first; i + 1 < toks.size(); ++i) {
            const long long lit = parse_literal(toks[i], lineno, declared);
            if (lit == 0) throw ParseError(lineno, "0 inside clause");
            c.literals.push_back(Literal::from_dimacs(lit));
        }
        if (clauses.size() == expected_clauses)
            throw ParseError(lineno, "more clauses than the " + std::to_string(expected_clauses) + " declared");
        clauses.push_back(std::move(c));
        weights.push_back(std::move(weight));
    }
    if (!kind) throw ParseError(lineno, "missing header");
    if (clauses.size() != expected_clauses)
        throw ParseError(lineno == 0 ? header_line : lineno, "expected " + std::to_string(expected_clauses) +
                                                                 " clauses, found " + std::to_string(clauses.size()));
    if (*kind == DimacsKind::cnf) return Formula(declared, std::move(clauses));
    return Formula(declared, std::move(clauses), std::nullopt, std::move(weights));
}

} // namespace detail

/// DIMACS CNF. Duplicate literals in a line merge; duplicate lines stay
/// separate clauses.
inline Formula parse_cnf(std::istream& in) { return detail::parse_dimacs_impl(in, detail::DimacsKind::cnf); }
inline Formula parse_cnf(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_cnf(in);
}

/// DIMACS WCNF: `p wcnf n m [top]`, each clause line led by a weight in N.
inline Formula parse_wcnf(std::istream& in) { return detail::parse_dimacs_impl(in, detail::DimacsKind::wcnf); }
inline Formula parse_wcnf(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_wcnf(in);
}

/// Either format, chosen by the header.
inline Formula parse_dimacs(std::istream& in) { return detail::parse_dimacs_impl(in, std::nullopt); }
inline Formula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

} // namespace psw
