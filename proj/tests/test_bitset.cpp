#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "pswidth/bitset.hpp"
#include "support/generators.hpp"

using psw::Bitset;

namespace {
Bitset from(std::size_t width, std::initializer_list<std::size_t> ids) {
    Bitset b(width);
    for (auto i : ids) b.set(i);
    return b;
}
} // namespace

TEST_CASE("set, reset and count across word boundaries", "[bitset]") {
    Bitset b(130);
    b.set(0).set(63).set(64).set(129);
    CHECK(b.count() == 4);
    CHECK(b.test(63));
    CHECK(b.test(64));
    b.reset(63);
    CHECK_FALSE(b.test(63));
    CHECK(b.ones() == std::vector<std::size_t>{0, 64, 129});
    CHECK(b.to_string("c") == "{c0,c64,c129}");
}

TEST_CASE("set algebra", "[bitset]") {
    const Bitset a = from(70, {1, 2, 65});
    const Bitset b = from(70, {2, 3, 65, 69});
    CHECK((a | b) == from(70, {1, 2, 3, 65, 69}));
    CHECK((a & b) == from(70, {2, 65}));
    CHECK((a - b) == from(70, {1}));
    CHECK(from(70, {2}).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(b));
    CHECK(a.intersects(b));
    CHECK_FALSE(from(70, {1}).intersects(from(70, {3})));
    CHECK(Bitset(70).none());
}

TEST_CASE("complement stays inside the width", "[bitset]") {
    const Bitset c = from(67, {0, 66}).complement();
    CHECK(c.count() == 65);
    CHECK_FALSE(c.test(0));
    CHECK(c.complement() == from(67, {0, 66}));
}

TEST_CASE("ordering is total and consistent with equality", "[bitset][property]") {
    psw::testing::Rng rng(1);
    std::vector<Bitset> pool;
    for (int i = 0; i < 300; ++i) {
        Bitset b(9);
        for (std::size_t j = 0; j < 9; ++j)
            if (rng() % 3 == 0) b.set(j);
        pool.push_back(b);
    }
    std::set<Bitset> as_set(pool.begin(), pool.end());
    std::set<std::string> strings;
    for (const auto& b : pool) strings.insert(b.to_string());
    CHECK(as_set.size() == strings.size());
    for (const auto& a : pool)
        for (const auto& b : pool) {
            CHECK(((a <=> b) == 0) == (a == b));
            if (a == b) CHECK(a.hash() == b.hash());
        }
}

TEST_CASE("for_each visits members in increasing order", "[bitset]") {
    std::vector<std::size_t> seen;
    from(200, {5, 199, 64, 128}).for_each([&](std::size_t i) { seen.push_back(i); });
    CHECK(seen == std::vector<std::size_t>{5, 64, 128, 199});
}
