#include <doctest.h>

#include <stdexcept>

#include <random>

#include "rglt/multiindex.hpp"

using namespace rglt;

TEST_SUITE("multiindex") {

TEST_CASE("lex_compare orders left to right") {
    CHECK(lex_compare({1, 2}, {1, 3}) == std::strong_ordering::less);
    CHECK(lex_compare({2, 1}, {1, 3}) == std::strong_ordering::greater);
    CHECK(lex_compare({1, 1}, {1, 1}) == std::strong_ordering::equal);
    CHECK_THROWS_AS(lex_compare({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("linearize matches the lexicographic enumeration") {
    const GridSize n{3, 3};
    CHECK(linearize({1, 1}, n) == 1);
    CHECK(linearize({3, 3}, n) == 9);

    // oracle: position of (2,3) in the explicitly generated lex order
    std::int64_t position = 0, expected = -1;
    for (const MultiIndex& i : iter_range({1, 1}, {3, 3})) {
        ++position;
        if (i == MultiIndex{2, 3}) expected = position;
    }
    CHECK(expected == 6);
    CHECK(linearize({2, 3}, n) == expected);

    CHECK_THROWS_AS(linearize({0, 1}, n), std::out_of_range);
    CHECK_THROWS_AS(linearize({1, 4}, n), std::out_of_range);
}

TEST_CASE("delinearize inverts linearize") {
    const GridSize n{3, 3};
    CHECK(delinearize(1, n) == MultiIndex{1, 1});
    CHECK(delinearize(6, n) == MultiIndex{2, 3});
    CHECK(delinearize(9, n) == MultiIndex{3, 3});
    CHECK_THROWS_AS(delinearize(0, n), std::out_of_range);
    CHECK_THROWS_AS(delinearize(10, n), std::out_of_range);
}

TEST_CASE("iter_range emits the documented orders") {
    std::vector<MultiIndex> got;
    for (const MultiIndex& i : iter_range({1, 1}, {1, 2})) got.push_back(i);
    CHECK(got == std::vector<MultiIndex>{{1, 1}, {1, 2}});

    got.clear();
    for (const MultiIndex& i : iter_range({1, 1}, {2, 2})) got.push_back(i);
    CHECK(got == std::vector<MultiIndex>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});

    CHECK(iter_range({2, 2}, {1, 1}).empty());
    CHECK(iter_range({2, 2}, {1, 1}).begin() == iter_range({2, 2}, {1, 1}).end());
}

TEST_CASE("grid size carries N and the steps") {
    const GridSize n{4, 2, 3};
    CHECK(n.count() == 24);
    CHECK(n.step(0) == doctest::Approx(0.2));
    CHECK(n.max_step() == doctest::Approx(1.0 / 3.0));
    for (int r = 0; r < 3; ++r) {
        CHECK(n.step(r) > 0.0);
        CHECK(n.step(r) <= 0.5);
    }
    CHECK_THROWS_AS(GridSize({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(GridSize(MultiIndex::uniform(4, std::int64_t{1} << 40)), std::overflow_error);
}

TEST_CASE("round trip and lex isomorphism over random grids") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 4);
        std::vector<std::int64_t> extents;
        for (int r = 0; r < d; ++r) extents.push_back(1 + static_cast<std::int64_t>(rng() % 30));
        const GridSize n((MultiIndex(extents)));
        if (n.count() > 1'000'000) continue;

        std::uniform_int_distribution<std::int64_t> pick(1, n.count());
        for (int rep = 0; rep < 20; ++rep) {
            const std::int64_t k = pick(rng);
            CHECK(linearize(delinearize(k, n), n) == k);
        }
        for (int rep = 0; rep < 20; ++rep) {
            const MultiIndex h = delinearize(pick(rng), n);
            const MultiIndex k = delinearize(pick(rng), n);
            const bool le_lex = lex_compare(h, k) != std::strong_ordering::greater;
            CHECK(le_lex == (linearize(h, n) <= linearize(k, n)));
        }
    }
}

TEST_CASE("iter_range linearization is strictly increasing") {
    const GridSize n{4, 3, 2};
    std::int64_t previous = 0, emitted = 0;
    for (const MultiIndex& i : iter_range(MultiIndex{1, 1, 1}, n.extents())) {
        const std::int64_t flat = linearize(i, n);
        CHECK(flat > previous);
        previous = flat;
        ++emitted;
    }
    CHECK(emitted == n.count());
}

}  // TEST_SUITE
