#include <algorithm>
#include <random>

#include "comove/similarity.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace comove;

namespace {

WindowSlice slice_of(const std::vector<std::vector<double>>& vectors) {
    std::vector<double> flat;
    for (const auto& v : vectors) flat.insert(flat.end(), v.begin(), v.end());
    return WindowSlice(0, vectors.front().size() / 2, vectors.size(), flat);
}

SimilarityPair pair_of(double cos, double dist) {
    SimilarityPair p{SquareMatrix(2), SquareMatrix(2)};
    p.cosine(0, 0) = p.cosine(1, 1) = 1.0;
    p.cosine(0, 1) = p.cosine(1, 0) = cos;
    p.distance(0, 1) = p.distance(1, 0) = dist;
    return p;
}

}  // namespace

TEST_CASE("cosine matrix examples") {
    CHECK(cosine_matrix(slice_of({{1, 2, 3, 4}, {1, 2, 3, 4}}))(0, 1) == doctest::Approx(1.0));
    CHECK(cosine_matrix(slice_of({{1, 0, 0, 0}, {0, 1, 0, 0}}))(0, 1) == doctest::Approx(0.0));
    CHECK(cosine_matrix(slice_of({{1, 1}, {-1, -1}}))(0, 1) == doctest::Approx(-1.0));
    SUBCASE("zero-norm vector has cosine 0") {
        const auto m = cosine_matrix(slice_of({{0, 0, 0, 0}, {1, 2, 3, 4}}));
        CHECK(m(0, 1) == 0.0);
        CHECK(m(0, 0) == 0.0);
        CHECK(m(1, 1) == 1.0);
    }
}

TEST_CASE("distance matrix examples") {
    const auto same = distance_matrix(slice_of({{1, 2, 3, 4}, {1, 2, 3, 4}}));
    CHECK(same == SquareMatrix(2, 0.0));

    // Window vectors along a line at offsets 0, d, 2d.
    const auto line = distance_matrix(slice_of({{0, 0}, {3, 4}, {6, 8}}));
    CHECK(line(0, 1) == doctest::Approx(0.5));
    CHECK(line(1, 2) == doctest::Approx(0.5));
    CHECK(line(0, 2) == doctest::Approx(1.0));
    CHECK(line(0, 0) == 0.0);
}

TEST_CASE("distance matrix matches a brute-force pairwise oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = testing::random_tensor(rng, 10, 30);
        const auto w = extract_window(t, rng() % 20, 10);
        std::vector<std::vector<double>> vecs;
        for (std::size_t a = 0; a < w.num_agents(); ++a) vecs.emplace_back(w.agent(a).begin(), w.agent(a).end());
        auto expected = oracle::euclidean(vecs);
        double max = 0;
        for (auto& r : expected) max = std::max(max, *std::max_element(r.begin(), r.end()));
        const auto got = distance_matrix(w);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j) REQUIRE(std::abs(got(i, j) - expected[i][j] / max) <= 1e-12);
        CHECK(got.max_entry() == 1.0);
        CHECK(got.is_symmetric());
    }
}

TEST_CASE("combine examples") {
    CHECK(combine(pair_of(1.0, 0.5))(0, 1) == 0.0);
    CHECK(combine(pair_of(0.0, 0.5))(0, 1) == doctest::Approx(0.5));
    CHECK(combine(pair_of(-1.0, 0.3))(0, 1) == 0.0);
    CHECK(combine(pair_of(0.5, 0.4))(0, 1) == doctest::Approx(0.2));
    SimilarityPair bad{SquareMatrix(2), SquareMatrix(3)};
    CHECK_THROWS_AS((void)combine(bad), std::invalid_argument);
}

TEST_CASE("combine is monotone in distance for fixed cosine") {
    for (double c : {-0.9, -0.2, 0.0, 0.3, 0.99}) {
        double prev = -1.0;
        for (double d = 0.0; d <= 1.0; d += 0.05) {
            const double v = combine(pair_of(c, d))(0, 1);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("identical agents are doubly zero and matrices permute consistently") {
    std::mt19937_64 rng(9);
    const auto t = testing::random_tensor(rng, 6, 12);
    std::vector<Point> pts(t.positions().begin(), t.positions().end());
    for (std::size_t s = 0; s < t.num_steps(); ++s) pts[s * 6 + 5] = pts[s * 6 + 2];  // agent 5 shadows agent 2
    const TrajectoryTensor twin(6, 12, t.world(), pts);
    const auto w = extract_window(twin, 0, 12);
    const auto p = similarity_pair(w);
    CHECK(p.cosine(2, 5) == doctest::Approx(1.0));
    CHECK(p.distance(2, 5) == 0.0);
    CHECK(combine(p)(2, 5) == 0.0);

    // Reverse agent order and compare.
    std::vector<Point> rev(pts.size());
    for (std::size_t s = 0; s < 12; ++s)
        for (std::size_t a = 0; a < 6; ++a) rev[s * 6 + a] = pts[s * 6 + (5 - a)];
    const auto m1 = combine(similarity_pair(w));
    const auto m2 = combine(similarity_pair(extract_window(TrajectoryTensor(6, 12, t.world(), rev), 0, 12)));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(m1(i, j) == doctest::Approx(m2(5 - i, 5 - j)).epsilon(1e-12));
}

TEST_CASE("dissimilarity matrix validates its invariants") {
    SquareMatrix m(2);
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(DissimilarityMatrix{m}, std::invalid_argument);  // asymmetric
    m(1, 0) = 0.5;
    CHECK_NOTHROW(DissimilarityMatrix{m});
    m(0, 0) = 0.1;
    CHECK_THROWS_AS(DissimilarityMatrix{m}, std::invalid_argument);
    SquareMatrix big(2);
    big(0, 1) = big(1, 0) = 1.5;
    CHECK_THROWS_AS(DissimilarityMatrix{big}, std::invalid_argument);
}
