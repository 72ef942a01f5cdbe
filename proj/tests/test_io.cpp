#include <catch2/catch_amalgamated.hpp>

#include <projcalc/fixtures.hpp>
#include <projcalc/io.hpp>

using namespace projcalc;

TEST_CASE("matrix JSON round trip preserves entries") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(mix_seed(9911, static_cast<std::uint64_t>(trial)));
        int n = rng.uniform_int(1, 9);
        Mat m = rng.gaussian_matrix(n);
        Mat back = matrix_from_json(matrix_to_json(m));
        CHECK(operator_norm(m - back) == 0.0);
    }
    json j = matrix_to_json(Mat::Identity(2, 2));
    CHECK(j["dim"] == 2);
    CHECK(j["re"][0][0] == 1.0);
    CHECK(j["im"][0][0] == 0.0);

    // real-only input is accepted
    json real{{"dim", 2}, {"re", {{1.0, 0.0}, {0.0, 1.0}}}};
    CHECK(operator_norm(matrix_from_json(real) - Mat::Identity(2, 2)) == 0.0);
    CHECK_THROWS_AS(matrix_from_json(json{{"dim", 3}, {"re", {{1.0}}}}), DomainError);
}

TEST_CASE("scalar function and state JSON round trips") {
    for (const auto& f : {ScalarFunction::identity(), ScalarFunction::chi(),
                          ScalarFunction::cap(0.35), ScalarFunction::constant(0.6)}) {
        auto g = scalar_function_from_json(scalar_function_to_json(f));
        for (double s : {0.0, 0.1, 0.35, 0.5, 0.99, 1.0}) CHECK(f(s) == g(s));
        CHECK(f.jump_at_zero == g.jump_at_zero);
    }
    CHECK_THROWS_AS(ScalarFunction::parse("nope"), DomainError);

    Rng rng(5);
    PureState phi(random_unit_vector(6, rng));
    PureState back = pure_state_from_json(pure_state_to_json(phi));
    CHECK((phi.vector - back.vector).norm() == 0.0);
}

TEST_CASE("block algebra and quotient map JSON") {
    BlockAlgebra a({2, 3, 2});
    auto a2 = block_algebra_from_json(block_algebra_to_json(a));
    CHECK(a == a2);

    QuotientMap pi(a, {2, 0});
    auto pi2 = quotient_map_from_json(quotient_map_to_json(pi), a);
    CHECK(pi2.kept_blocks == pi.kept_blocks);
    CHECK(pi2.target.block_dims == pi.target.block_dims);
}

TEST_CASE("homotopy path JSON carries parameters and steps") {
    auto [q, r] = pair_from_angles({0.7}, 0, 0, 0, 31);
    auto path = homotopy_close(q, r, 5);
    json j = homotopy_path_to_json(path);
    REQUIRE(j["steps"].size() == 5);
    REQUIRE(j["parameters"].size() == 5);
    Mat first = matrix_from_json(j["steps"][0]);
    CHECK(operator_norm(first - r) < 1e-9);
}
