#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <projcalc/calculus.hpp>
#include <projcalc/fixtures.hpp>

using namespace projcalc;

namespace {
constexpr double pi = std::numbers::pi;

ScalarFunction random_function(Rng& rng) {
    switch (rng.uniform_int(0, 4)) {
        case 0: return ScalarFunction::identity();
        case 1: return ScalarFunction::chi();
        case 2: return ScalarFunction::cap(rng.uniform(0.1, 0.95));
        case 3: return ScalarFunction::constant(rng.uniform(0.0, 0.9));
        default: return ScalarFunction::homotopy_line(rng.uniform(0.0, 1.0));
    }
}

std::pair<Mat, Mat> pair_without_one(Rng& rng, int max_pairs = 3) {
    std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, max_pairs)));
    for (auto& a : angles) a = rng.uniform(0.2, pi / 2 - 0.2);
    return pair_from_angles(angles, rng.uniform_int(0, 1), rng.uniform_int(0, 1),
                            rng.uniform_int(0, 1), rng.gen());
}
} // namespace

TEST_CASE("x_f and y_f pointwise values") {
    auto [x1, y1] = xf_yf(ScalarFunction::identity(), {0.0, 0.5, 1.0});
    CHECK(x1[0] == 0.0);
    CHECK(x1[1] == Catch::Approx(1.0));
    CHECK(x1[2] == Catch::Approx(1.0));
    CHECK(y1[0] == Catch::Approx(1.0));
    CHECK(y1[1] == Catch::Approx(1.0));
    CHECK(y1[2] == 0.0);

    auto [x2, y2] = xf_yf(ScalarFunction::chi(), {0.0, 0.25});
    CHECK(x2[0] == 0.0);
    CHECK(x2[1] == Catch::Approx(2.0));
    CHECK(y2[0] == Catch::Approx(1.0));
    CHECK(y2[1] == Catch::Approx(0.0).margin(1e-12));

    // f(s) = s^2 through breakpoints at the spectrum: x = sqrt(1/2), y = sqrt(3/2)
    ScalarFunction sq({{0.0, 0.0}, {0.5, 0.25}, {1.0, 1.0}});
    auto [x3, y3] = xf_yf(sq, {0.5});
    CHECK(x3[0] == Catch::Approx(std::sqrt(0.5)));
    CHECK(y3[0] == Catch::Approx(std::sqrt(1.5)));

    CHECK_THROWS_AS(xf_yf(ScalarFunction::cap(0.5), {1.0}), Inadmissible);
}

TEST_CASE("pc_build identity function returns R") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(mix_seed(2020, static_cast<std::uint64_t>(trial)));
        auto [q, r] = pair_without_one(rng);
        auto res = pc_build(q, r, ScalarFunction::identity());
        CHECK(operator_norm(res.P - r) < 1e-8);
        CHECK(operator_norm(res.U - r) < 1e-8);
    }
}

TEST_CASE("pc_build chi recovers Q for close pairs") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(mix_seed(2121, static_cast<std::uint64_t>(trial)));
        std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, 3)));
        for (auto& a : angles) a = rng.uniform(0.2, pi / 2 - 0.2);
        auto [q, r] = pair_from_angles(angles, 0, 0, rng.uniform_int(0, 2), rng.gen());
        REQUIRE(operator_norm(q - r) < 1.0 - 1e-6);
        auto res = pc_build(q, r, ScalarFunction::chi());
        CHECK(operator_norm(res.P - q) < 1e-8);
    }
}

TEST_CASE("pc_build hand-computed 2x2 example") {
    // Q onto e1, R at angle pi/3, sigma(QR) = {1/4}; f(1/4) = 1/2
    double th = pi / 3;
    Mat q(2, 2), r(2, 2);
    q << 1.0, 0.0, 0.0, 0.0;
    r << std::cos(th) * std::cos(th), std::cos(th) * std::sin(th),
        std::cos(th) * std::sin(th), std::sin(th) * std::sin(th);
    ScalarFunction f({{0.0, 0.0}, {0.25, 0.5}, {1.0, 1.0}});
    auto res = pc_build(q, r, f);
    Mat qpq = q * res.P * q;
    Mat expect = Mat::Zero(2, 2);
    expect(0, 0) = 0.5;
    CHECK(operator_norm(qpq - expect) < 1e-10);
    double dist = operator_norm(res.P - r);
    CHECK(dist == Catch::Approx((std::sqrt(3.0) - 1.0) / (2.0 * std::sqrt(2.0))));
}

TEST_CASE("core identity QPQ = f(QRQ) over random data") {
    for (int trial = 0; trial < 120; ++trial) {
        Rng rng(mix_seed(2222, static_cast<std::uint64_t>(trial)));
        auto [q, r] = pair_without_one(rng);
        ScalarFunction f = random_function(rng);
        auto res = pc_build(q, r, f);
        CHECK(operator_norm(res.U.adjoint() * res.U - r) < 1e-7);
        CHECK(operator_norm(res.P * res.P - res.P) < 1e-7);
        CHECK(operator_norm(q * res.P * q - apply_function(hermitize(q * r * q), f)) < 1e-7);
        CHECK(numeric_rank(res.P) == numeric_rank(r));
        CHECK(operator_norm(res.U * res.U.adjoint() - res.P) < 1e-8);
    }
}

TEST_CASE("pc_constant gives exact corner scaling when RQR is full on R") {
    // dim 2, Q onto e1, R at angle pi/3, t = 1/2: PQP = P/2
    double th = pi / 3;
    Mat q(2, 2), r(2, 2);
    q << 1.0, 0.0, 0.0, 0.0;
    r << std::cos(th) * std::cos(th), std::cos(th) * std::sin(th),
        std::cos(th) * std::sin(th), std::sin(th) * std::sin(th);
    auto res = pc_constant(q, r, 0.5);
    CHECK(operator_norm(res.P * q * res.P - 0.5 * res.P) < 1e-9);

    // t = phi-value on a rank-1 R reproduces R
    Rng rng(51);
    Vec v = random_unit_vector(4, rng);
    Mat rr = v * v.adjoint();
    Mat qq = random_projection(4, 2, rng);
    double t = ((v.adjoint() * qq * v)(0, 0)).real();
    auto res2 = pc_constant(qq, rr, t);
    CHECK(operator_norm(res2.P - rr) < 1e-7);

    // t = 0: QPQ = 0
    auto res3 = pc_constant(qq, rr, 0.0);
    CHECK(operator_norm(qq * res3.P * qq) < 1e-9);

    // admissibility: 1 in sigma(QR) and t < 1 must fail
    Mat id = Mat::Identity(3, 3);
    CHECK_THROWS_AS(pc_constant(id, id, 0.5), Inadmissible);
}

TEST_CASE("closed-form distances match direct norms") {
    for (int trial = 0; trial < 120; ++trial) {
        Rng rng(mix_seed(2323, static_cast<std::uint64_t>(trial)));
        auto [q, r] = pair_without_one(rng);
        ScalarFunction f = random_function(rng), g = random_function(rng);
        auto rf = pc_build(q, r, f);
        auto rg = pc_build(q, r, g);
        double du = pc_unitary_distance(q, r, f, g);
        double dp = pc_projection_distance(q, r, f, g);
        CHECK(std::abs(du - operator_norm(rf.U - rg.U)) < 1e-7);
        CHECK(std::abs(dp - operator_norm(rf.P - rg.P)) < 1e-7);
        CHECK(std::abs(dp - pc_projection_distance(q, r, g, f)) < 1e-12);
        // b-formula: U_f* U_g = b_{f,g}(RQR) R
        CHECK(operator_norm(rf.U.adjoint() * rg.U - pc_b_product(q, r, f, g)) < 1e-7);
    }
}

TEST_CASE("distance specializations") {
    Rng rng(83);
    auto [q, r] = pair_without_one(rng);
    ScalarFunction f = ScalarFunction::cap(0.6);
    CHECK(pc_unitary_distance(q, r, f, f) == 0.0);
    CHECK(pc_projection_distance(q, r, f, f) == 0.0);

    // sigma = {1/2}: f = 1/2, g = 1 at the point: sqrt(2(1 - sqrt(1/2)))
    Mat q2(2, 2), r2(2, 2);
    double th = pi / 4;
    q2 << 1.0, 0.0, 0.0, 0.0;
    r2 << std::cos(th) * std::cos(th), std::cos(th) * std::sin(th),
        std::cos(th) * std::sin(th), std::sin(th) * std::sin(th);
    ScalarFunction fh({{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}});
    ScalarFunction gh = ScalarFunction::chi();
    double du = pc_unitary_distance(q2, r2, fh, gh);
    CHECK(du == Catch::Approx(std::sqrt(2.0 * (1.0 - std::sqrt(0.5)))));

    // sigma = {1/4}: f = chi, g = id: |c| = sqrt(3)/2
    Mat r3(2, 2);
    double t3 = pi / 3;
    r3 << std::cos(t3) * std::cos(t3), std::cos(t3) * std::sin(t3),
        std::cos(t3) * std::sin(t3), std::sin(t3) * std::sin(t3);
    double dp = pc_projection_distance(q2, r3, ScalarFunction::chi(),
                                       ScalarFunction::identity());
    CHECK(dp == Catch::Approx(std::sqrt(3.0) / 2.0));

    // g = id reproduces the ||P - R|| formula
    for (int trial = 0; trial < 30; ++trial) {
        Rng r4(mix_seed(2424, static_cast<std::uint64_t>(trial)));
        auto [qq, rr] = pair_without_one(r4);
        ScalarFunction f4 = random_function(r4);
        auto res = pc_build(qq, rr, f4);
        CHECK(std::abs(operator_norm(res.P - rr) -
                       pc_projection_distance(qq, rr, f4, ScalarFunction::identity())) <
              1e-7);
    }
}

TEST_CASE("perturbing R moves the result continuously") {
    Rng rng(97);
    auto [q, r] = pair_from_angles({0.7, 1.1}, 0, 0, 1, 4242);
    ScalarFunction f = ScalarFunction::cap(0.5);
    Mat p0 = pc_build(q, r, f).P;
    double prev = 0.0;
    bool monotone = true;
    for (double eps : {0.08, 0.04, 0.02, 0.01}) {
        // rotate R by a fixed small unitary of size eps
        Rng inner(12345);
        Mat h = hermitize(inner.gaussian_matrix(static_cast<int>(r.rows())));
        h *= eps / operator_norm(h);
        auto hdec = hermitian_eig(h);
        Mat rot = Mat::Zero(r.rows(), r.cols());
        for (int k = 0; k < r.rows(); ++k)
            rot += std::exp(cx(0.0, hdec.eigenvalues[static_cast<size_t>(k)])) *
                   hdec.eigenvectors.col(k) * hdec.eigenvectors.col(k).adjoint();
        Mat rp = hermitize(rot * r * rot.adjoint());
        double moved = operator_norm(pc_build(q, rp, f).P - p0);
        if (prev > 0.0 && moved > prev + 1e-9) monotone = false;
        prev = moved;
    }
    CHECK(monotone);
}
