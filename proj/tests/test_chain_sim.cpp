#include <cmath>
#include <string>

#include "chainlab/chain_sim.hpp"
#include "doctest.h"

using namespace chainlab;

namespace {

DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    DenseMatrix M(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
    return M;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

}  // namespace

TEST_SUITE("chain_sim") {

TEST_CASE("dense matrix basics") {
    const auto A = from_rows({{1, 2}, {3, 4}});
    const auto B = from_rows({{0, 1}, {1, 0}});
    CHECK(A * B == from_rows({{2, 1}, {4, 3}}));
    CHECK(A + B == from_rows({{1, 3}, {4, 4}}));
    CHECK(A - A == DenseMatrix(2, 2));
    CHECK(A.norm_1() == 6.0);
    CHECK(A.norm_frobenius() == doctest::Approx(std::sqrt(30.0)));
    const auto y = A.apply({Scalar{1.0}, Scalar{0.0, 1.0}});
    CHECK(y[0] == Scalar{1.0, 2.0});
    CHECK(y[1] == Scalar{3.0, 4.0});
    CHECK_THROWS_AS((void)(A * DenseMatrix(3, 3)), std::invalid_argument);
}

TEST_CASE("boundary rules") {
    const auto base = LaurentOperator::serial_pursuit();
    const auto free = build_matrix({3, base, Boundary::Free});
    CHECK(free == from_rows({{-1, 0, 0}, {1, -1, 0}, {0, 1, -1}}));
    CHECK(build_matrix({3, base, Boundary::Tethered}) == from_rows({{0, 0, 0}, {1, -1, 0}, {0, 1, -1}}));
    CHECK(build_matrix({3, base, Boundary::OriginSeeking}) == from_rows({{-1, 0, 0}, {1, -1, 0}, {0, 1, -1}}));
    CHECK(build_matrix({3, base, Boundary::Cyclic}) == from_rows({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}}));
    const auto sym = build_matrix({4, LaurentOperator::symmetric_chain(), Boundary::Cyclic});
    CHECK(sym == from_rows({{-2, 1, 0, 1}, {1, -2, 1, 0}, {0, 1, -2, 1}, {1, 0, 1, -2}}));
    CHECK_THROWS_AS((void)build_matrix({1, base, Boundary::Free}), std::invalid_argument);
    CHECK(parse_boundary("origin") == Boundary::OriginSeeking);
    CHECK(to_string(Boundary::Cyclic) == "cyclic");
    CHECK_THROWS_AS((void)parse_boundary("loose"), std::invalid_argument);
}

TEST_CASE("expm closed forms") {
    const auto R = from_rows({{0, -1}, {1, 0}});
    for (double t : {0.3, 2.0, 10.0}) {
        const auto E = expm(R, t);
        CHECK(max_abs_diff(E, from_rows({{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}})) < 1e-13);
    }
    const auto D = from_rows({{-3, 0}, {0, 0.5}});
    const auto E = expm(D, 4.0);
    CHECK(E(0, 0) == doctest::Approx(std::exp(-12.0)).epsilon(1e-13));
    CHECK(E(1, 1) == doctest::Approx(std::exp(2.0)).epsilon(1e-13));
    // nilpotent Jordan block
    const auto J = expm(from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), 3.0);
    CHECK(max_abs_diff(J, from_rows({{1, 3, 4.5}, {0, 1, 3}, {0, 0, 1}})) < 1e-13);
    CHECK(expm(R, 0.0) == DenseMatrix::identity(2));
    CHECK_THROWS_AS((void)expm(R, -1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)expm(DenseMatrix(2, 3), 1.0), std::invalid_argument);
}

TEST_CASE("expm semigroup and row-sum conservation") {
    for (auto b : {Boundary::Cyclic, Boundary::Tethered}) {
        const auto A = build_matrix({12, LaurentOperator::serial_pursuit(), b});
        const auto E = expm(A, 7.5);
        for (std::size_t i = 0; i < 12; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < 12; ++j) s += E(i, j);
            CHECK(std::abs(s - 1.0) < 1e-13);
        }
        CHECK(max_abs_diff(expm(A, 3.0) * expm(A, 4.5), E) < 1e-13);
    }
    const auto S = build_matrix({10, LaurentOperator::symmetric_chain(), Boundary::Cyclic});
    const auto ES = expm(S, 20.0);
    for (std::size_t j = 0; j < 10; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 10; ++i) s += ES(i, j);
        CHECK(std::abs(s - 1.0) < 1e-13);
    }
}

TEST_CASE("three car limits") {
    std::vector<double> times;
    for (int i = 0; i <= 50; ++i) times.push_back(i);
    auto run = [&](Boundary b, std::vector<Scalar> q0) {
        return rendezvous_report(simulate_finite({3, LaurentOperator::serial_pursuit(), b}, Window{0, q0}, times));
    };
    const auto teth = run(Boundary::Tethered, {5.0, 0.0, 0.0});
    CHECK(teth.rendezvous);
    CHECK(std::abs(*teth.rendezvous_point - 5.0) < 1e-8);
    const auto orig = run(Boundary::OriginSeeking, {5.0, -2.0, 7.0});
    CHECK(orig.rendezvous);
    CHECK(std::abs(*orig.rendezvous_point) < 1e-8);
    const auto cyc = run(Boundary::Cyclic, {0.0, 1.0, 2.0});
    CHECK(cyc.rendezvous);
    CHECK(std::abs(*cyc.rendezvous_point - 1.0) < 1e-8);
    // a free chain keeps car 0 decaying to zero while the others chase it
    const auto free = run(Boundary::Free, {5.0, 1.0, 2.0});
    CHECK(free.rendezvous);
    CHECK(std::abs(*free.rendezvous_point) < 1e-8);

    const auto early = simulate_finite({3, LaurentOperator::serial_pursuit(), Boundary::Cyclic},
                                       Window{0, {0.0, 1.0, 2.0}}, {0.0, 1.0, 2.0, 3.0});
    CHECK_THROWS_AS((void)rendezvous_report(early), std::invalid_argument);
    CHECK_THROWS_AS((void)simulate_finite({3, LaurentOperator::serial_pursuit(), Boundary::Cyclic},
                                          Window{0, {1.0}}, times),
                    std::invalid_argument);
}

TEST_CASE("truncation agrees with the infinite chain inside the margin") {
    const std::vector<double> times = {0.0, 2.0, 10.0};
    for (auto chain : {ChainKind::Serial, ChainKind::Symmetric}) {
        const auto rep = truncation_compare(ic::RandomBounded{3, -1.0, 1.0}, chain, 200, 80, times);
        CHECK(rep.interior_len == 40);
        CHECK(rep.rows.size() == 3);
        CHECK(rep.max_error() < 1e-10);
    }
}

TEST_CASE("margin rule") {
    CHECK(required_margin(20.0) == 120);
    CHECK(required_margin(0.0) == 40);
    try {
        (void)truncation_compare(ic::Impulse{0}, ChainKind::Serial, 200, 50, {5.0, 20.0});
        FAIL("margin violation accepted");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("4t+40") != std::string::npos);
    }
    CHECK_THROWS_AS((void)truncation_compare(ic::Impulse{0}, ChainKind::Serial, 100, 50, {0.0}), std::invalid_argument);
}

TEST_CASE("boundary artifacts shrink as the margin grows") {
    // symmetric chain, constant data: a free truncation leaks mass at both ends
    const double t = 10.0;
    double prev = INFINITY;
    for (Index margin : {2, 10, 20, 40}) {
        const auto rep = truncation_compare_unchecked(ic::Constant{1.0}, ChainKind::Symmetric, 2 * margin + 20, margin, {t});
        CHECK(rep.max_error() < prev);
        prev = rep.max_error();
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("matrix csv") {
    const auto csv = matrix_csv(from_rows({{1, 0.5}, {0, -1}}));
    CHECK(csv == "i,j,value\n0,0,1\n0,1,0.5\n1,0,0\n1,1,-1\n");
}

}
