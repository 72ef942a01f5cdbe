#include <catch2/catch_amalgamated.hpp>

#include <projcalc/block.hpp>
#include <projcalc/fixtures.hpp>
#include <projcalc/lifting.hpp>

using namespace projcalc;

TEST_CASE("block algebra shape checks") {
    BlockAlgebra a({2, 3, 2});
    CHECK(a.total_dim() == 7);
    CHECK(a.offset(2) == 5);
    CHECK_THROWS_AS(BlockAlgebra({2, 0}), AlgebraMismatch);

    Mat full = Mat::Ones(7, 7);
    CHECK(a.off_block_mass(full) == 1.0);
    CHECK(a.off_block_mass(a.clean(full)) == 0.0);
    CHECK_THROWS_AS(BlockElement(a, full), AlgebraMismatch);

    Mat ind = a.block_indicator(1);
    CHECK(ind(2, 2).real() == 1.0);
    CHECK(ind(0, 0).real() == 0.0);
}

TEST_CASE("quotient map is a *-homomorphism onto the target") {
    BlockAlgebra a({2, 2, 3});
    QuotientMap pi(a, {2, 0});
    CHECK(pi.target.block_dims == std::vector<int>{3, 2});

    // identity when every block is kept
    QuotientMap all(a, {0, 1, 2});
    Rng rng(41);
    Mat x = a.clean(rng.gaussian_matrix(7));
    CHECK(operator_norm(all.apply_matrix(x) - x) < 1e-14);

    // block selection
    BlockAlgebra two({2, 2});
    QuotientMap keep1(two, {0});
    Mat y = two.clean(rng.gaussian_matrix(4));
    CHECK(operator_norm(keep1.apply_matrix(y) - y.block(0, 0, 2, 2)) < 1e-14);

    for (int trial = 0; trial < 30; ++trial) {
        Rng r2(mix_seed(515, static_cast<std::uint64_t>(trial)));
        Mat s = a.clean(r2.gaussian_matrix(7));
        Mat t = a.clean(r2.gaussian_matrix(7));
        CHECK(operator_norm(pi.apply_matrix(s * t) - pi.apply_matrix(s) * pi.apply_matrix(t)) <
              1e-10);
        CHECK(operator_norm(pi.apply_matrix(s + t) - pi.apply_matrix(s) - pi.apply_matrix(t)) <
              1e-12);
        CHECK(operator_norm(pi.apply_matrix(Mat(s.adjoint())) -
                            pi.apply_matrix(s).adjoint()) < 1e-12);
        // embed is a right inverse
        CHECK(operator_norm(pi.apply_matrix(pi.embed_matrix(pi.apply_matrix(s))) -
                            pi.apply_matrix(s)) < 1e-12);
    }

    CHECK_THROWS_AS(QuotientMap(a, {0, 0}), AlgebraMismatch);
    CHECK_THROWS_AS(QuotientMap(a, {3}), AlgebraMismatch);
    CHECK_THROWS_AS(pi.apply_matrix(Mat::Zero(5, 5)), AlgebraMismatch);
}

TEST_CASE("spectral sandwich") {
    BlockAlgebra a({4});
    Rng rng(77);
    Mat p = random_projection(4, 2, rng);
    BlockElement pe(a, p);
    auto s = spectral_sandwich(pe, 1.0 / 3.0, 2.0 / 3.0);
    CHECK(operator_norm(s.matrix - p) < 1e-10);

    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 0.1;
    d(1, 1) = 0.9;
    BlockAlgebra a2({2});
    auto s2 = spectral_sandwich(BlockElement(a2, d), 0.3, 0.7);
    Mat e = Mat::Zero(2, 2);
    e(1, 1) = 1.0;
    CHECK(operator_norm(s2.matrix - e) < 1e-12);

    // eigenvalue inside the window: either ordering satisfies the sandwich
    Mat d3 = Mat::Zero(3, 3);
    d3(0, 0) = 0.1;
    d3(1, 1) = 0.5;
    d3(2, 2) = 0.9;
    BlockAlgebra a3({3});
    Mat mid = spectral_sandwich(BlockElement(a3, d3), 0.3, 0.7).matrix;
    Mat hi = spectral_projection_above(d3, 0.7 + 1e-3, false);
    Mat lo = spectral_projection_above(d3, 0.3 - 1e-3, false);
    CHECK(operator_norm(mid * hi - hi) < 1e-10);   // E_perp(s) <= P
    CHECK(operator_norm(lo * mid - mid) < 1e-10);  // P <= E_perp(t)

    CHECK_THROWS_AS(spectral_sandwich(BlockElement(a3, d3), 0.7, 0.3), BadInterval);
    CHECK_THROWS_AS(spectral_sandwich(BlockElement(a3, d3), -0.1, 0.2), BadInterval);
}

TEST_CASE("block fixtures stay block-diagonal and reproducible") {
    BlockAlgebra a({3, 2, 4});
    Rng r1(88), r2(88);
    Mat p1 = random_block_projection(a, r1);
    Mat p2 = random_block_projection(a, r2);
    CHECK(operator_norm(p1 - p2) == 0.0);
    CHECK(a.off_block_mass(p1) == 0.0);
    CHECK(is_projection(p1));

    auto [bp, bq] = random_block_pair(a, r1);
    CHECK(is_projection(bp));
    CHECK(is_projection(bq));
    CHECK(a.off_block_mass(bp) == 0.0);

    QuotientMap pi(a, {1});
    Mat tgt = random_projection(2, 1, r1);
    Mat lift = noisy_lift_projection(pi, tgt, r1);
    CHECK(is_projection(lift));
    CHECK(operator_norm(pi.apply_matrix(lift) - tgt) < 1e-12);
}
