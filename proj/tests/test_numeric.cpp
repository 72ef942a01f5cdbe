#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <projcalc/fixtures.hpp>
#include <projcalc/numeric.hpp>

using namespace projcalc;

namespace {
constexpr double pi = std::numbers::pi;

Mat mat2(cx a, cx b, cx c, cx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}
} // namespace

TEST_CASE("hermitian_eig on diagonal and rank-one inputs") {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    auto dec = hermitian_eig(d);
    CHECK(dec.eigenvalues[0] == Catch::Approx(1.0));
    CHECK(dec.eigenvalues[1] == Catch::Approx(3.0));
    CHECK(operator_norm(dec.reconstruct() - d) < 1e-12);

    Mat z = Mat::Zero(4, 4);
    auto zdec = hermitian_eig(z);
    for (double v : zdec.eigenvalues) CHECK(std::abs(v) < 1e-14);

    // half of the all-ones 2x2: eigenvalues 0 and 1, eigenvector (1,1)/sqrt2
    Mat h = mat2(0.5, 0.5, 0.5, 0.5);
    auto hdec = hermitian_eig(h);
    CHECK(hdec.eigenvalues[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(hdec.eigenvalues[1] == Catch::Approx(1.0));
    Vec top = hdec.eigenvectors.col(1);
    CHECK(std::abs(std::abs(top(0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(top(0) - top(1)) < 1e-12);

    Mat nh = mat2(0.0, 1.0, 0.0, 0.0);
    CHECK_THROWS_AS(hermitian_eig(nh), NotSelfAdjoint);
}

TEST_CASE("operator_norm basics") {
    CHECK(operator_norm(Mat::Identity(5, 5)) == Catch::Approx(1.0));
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    CHECK(operator_norm(d) == Catch::Approx(3.0));
    // T*T = diag(0,4)
    CHECK(operator_norm(mat2(0.0, 2.0, 0.0, 0.0)) == Catch::Approx(2.0));
}

TEST_CASE("pair_from_angles realizes the requested principal angles") {
    auto [p0, q0] = pair_from_angles({}, 1, 1, 0, 7);
    CHECK(operator_norm(p0 * q0) < 1e-12);
    CHECK(operator_norm(p0 - q0) == Catch::Approx(1.0));

    // PQ has rank 1 in dim 2, so 0 joins the half coming from the angle
    auto [p1, q1] = pair_from_angles({pi / 4}, 0, 0, 0, 11);
    auto spec1 = spectrum_of_pair(p1, q1);
    REQUIRE(spec1.size() == 2);
    CHECK(spec1[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(spec1[1] == Catch::Approx(0.5));
    CHECK(operator_norm(p1 * q1) == Catch::Approx(std::sqrt(2.0) / 2.0));

    auto [p2, q2] = pair_from_angles({pi / 6, pi / 3}, 0, 0, 0, 13);
    auto spec2 = spectrum_of_pair(p2, q2);
    REQUIRE(spec2.size() == 3);  // 0 joins because PQ is singular in dim 4
    CHECK(spec2[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(spec2[1] == Catch::Approx(0.25));
    CHECK(spec2[2] == Catch::Approx(0.75));

    CHECK_THROWS_AS(pair_from_angles({0.0}, 0, 0, 0, 1), InvalidAngle);
    CHECK_THROWS_AS(pair_from_angles({pi / 2}, 0, 0, 0, 1), InvalidAngle);
}

TEST_CASE("spectrum_of_pair endpoints") {
    Mat id = Mat::Identity(3, 3);
    auto spec = spectrum_of_pair(id, id);
    REQUIRE(spec.size() == 1);
    CHECK(spec[0] == Catch::Approx(1.0));

    auto [p, q] = pair_from_angles({}, 2, 1, 1, 5);
    auto spec0 = spectrum_of_pair(p, q);
    REQUIRE(spec0.size() == 1);
    CHECK(spec0[0] == Catch::Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(spectrum_of_pair(mat2(0.3, 0.0, 0.0, 0.0), id.topLeftCorner(2, 2)),
                    NotProjection);
}

TEST_CASE("sigma(ST) and sigma(TS) share nonzero spectrum across random pairs") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(mix_seed(101, static_cast<std::uint64_t>(trial)));
        auto [p, q] = random_pair(8, rng);
        auto pq = hermitian_eig(hermitize(p * q * p)).eigenvalues;
        auto qp = hermitian_eig(hermitize(q * p * q)).eigenvalues;
        std::vector<double> a, b;
        for (double v : pq)
            if (v > 1e-9) a.push_back(v);
        for (double v : qp)
            if (v > 1e-9) b.push_back(v);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
    }
}

TEST_CASE("norm of the difference decomposes over the two corners") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(mix_seed(202, static_cast<std::uint64_t>(trial)));
        auto [p, q] = random_pair(9, rng);
        Mat id = Mat::Identity(p.rows(), p.cols());
        double lhs = operator_norm(p - q);
        double rhs = std::max(operator_norm(p * (id - q)), operator_norm((id - p) * q));
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
}

TEST_CASE("complement spectrum mirrors the unit interval") {
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(mix_seed(303, static_cast<std::uint64_t>(trial)));
        auto [p, q] = random_pair(8, rng);
        Mat id = Mat::Identity(p.rows(), p.cols());
        auto inner = [](const std::vector<double>& spec) {
            std::vector<double> out;
            for (double v : spec)
                if (v > 1e-6 && v < 1.0 - 1e-6) out.push_back(v);
            return out;
        };
        auto s1 = inner(spectrum_of_pair(p, q));
        auto s2 = inner(spectrum_of_pair(p, Mat(id - q)));
        std::vector<double> mirrored;
        for (auto it = s2.rbegin(); it != s2.rend(); ++it) mirrored.push_back(1.0 - *it);
        REQUIRE(s1.size() == mirrored.size());
        for (size_t i = 0; i < s1.size(); ++i) CHECK(std::abs(s1[i] - mirrored[i]) < 1e-7);
    }
}

TEST_CASE("haar unitaries are unitary and seeded deterministically") {
    Mat u1 = haar_unitary(6, 99);
    Mat u2 = haar_unitary(6, 99);
    CHECK(operator_norm(u1 - u2) == 0.0);
    CHECK(operator_norm(u1 * u1.adjoint() - Mat::Identity(6, 6)) < 1e-12);
}
