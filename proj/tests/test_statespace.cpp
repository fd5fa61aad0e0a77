#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "slocc/statespace.hpp"

using namespace slocc;

namespace {

CMatrix hadamard() {
    CMatrix H(2, 2);
    H << 1, 1, 1, -1;
    return H / std::sqrt(2.0);
}

}  // namespace

TEST_SUITE("statespace") {
    TEST_CASE("sector dimensions") {
        CHECK(Sector::distinguishable(3, 2).dim() == 8);
        CHECK(Sector::bosonic(3, 4).dim() == 20);
        CHECK(Sector::fermionic(2, 5).dim() == 10);
        CHECK(Sector::fermionic(0, 4).dim() == 1);
        CHECK_THROWS_AS(Sector::fermionic(3, 2), InvalidArgument);
        CHECK_THROWS_AS(Sector::distinguishable(0, 2), InvalidArgument);
    }

    TEST_CASE("basis orderings") {
        const Sector bs = Sector::bosonic(2, 3);
        const auto& b = bs.labels();
        REQUIRE(b.size() == 6);
        CHECK(b[0] == std::vector<int>{2, 0, 0});
        CHECK(b[1] == std::vector<int>{1, 1, 0});
        CHECK(b[5] == std::vector<int>{0, 0, 2});
        const Sector fs = Sector::fermionic(2, 4);
        const auto& f = fs.labels();
        CHECK(f[0] == std::vector<int>{0, 1});
        CHECK(f[1] == std::vector<int>{0, 2});
        CHECK(f[5] == std::vector<int>{2, 3});
        CHECK(Sector::distinguishable(2, 3).labels()[5] == std::vector<int>{1, 2});
    }

    TEST_CASE("identical-particle basis matches the brute-force symmetrizer") {
        for (int sign : {+1, -1}) {
            const int N = 3, L = 3;
            const Sector s = sign > 0 ? Sector::bosonic(L, N) : Sector::fermionic(L, N);
            const CMatrix B = s.isometry();
            CHECK((B.adjoint() * B - CMatrix::Identity(B.cols(), B.cols())).norm() < 1e-12);
            const CMatrix P = oracle::symmetrizer(N, L, sign);
            CHECK((P * B - B).norm() < 1e-12);
            CHECK(std::abs(P.trace().real() - static_cast<double>(s.dim())) < 1e-10);
        }
    }

    TEST_CASE("normalize") {
        const Sector s = Sector::distinguishable(2, 2);
        CVector a = CVector::Zero(4);
        a[0] = 2.0;
        CHECK(std::abs(normalize(PureState(s, a)).amplitudes()[0] - 1.0) < 1e-15);
        a << 1, 0, 0, 1;
        const PureState n = normalize(PureState(s, a));
        CHECK(std::abs(n.amplitudes()[3] - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK_THROWS_AS(normalize(PureState(s, CVector::Zero(4))), ZeroState);
    }

    TEST_CASE("inner products") {
        const PureState ghz = ghz_state(3);
        const PureState zero = from_kets(2, {{"000", 1.0}});
        CHECK(std::abs(inner(ghz, ghz) - 1.0) < 1e-15);
        CHECK(std::abs(inner(zero, ghz) - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(inner(from_kets(2, {{"00", 1.0}}), from_kets(2, {{"11", 1.0}}))) < 1e-15);
        CHECK_THROWS_AS(inner(ghz, w_state(2)), SectorMismatch);
        Rng rng(3);
        const auto s = Sector::bosonic(3, 3);
        const PureState a = random_state(s, rng), b = random_state(s, rng);
        CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-14);
    }

    TEST_CASE("local action") {
        const PureState v2 = ghz_state(3);
        const PureState out = apply_local({hadamard(), hadamard(), hadamard()}, v2);
        const PureState v1 = from_kets(2, {{"011", 1.0}, {"101", 1.0}, {"110", 1.0}, {"000", 1.0}});
        CHECK((out.amplitudes() - v1.amplitudes()).norm() < 1e-14);

        const double a = 0.7;
        CMatrix D = CMatrix::Zero(2, 2);
        D(0, 0) = std::exp(a);
        D(1, 1) = std::exp(-a);
        const Sector s2 = Sector::distinguishable(2, 2);
        CVector c(4);
        c << 0, 1, 1, 0;
        const PureState r = apply_local({CMatrix::Identity(2, 2), D}, PureState(s2, c));
        CHECK(std::abs(r.amplitudes()[1] - std::exp(-a)) < 1e-14);  // |01>: party 1 on level 1
        CHECK(std::abs(r.amplitudes()[2] - std::exp(a)) < 1e-14);

        CHECK_THROWS_AS(apply_local({CMatrix::Identity(3, 3), D}, PureState(s2, c)), ShapeMismatch);
        CHECK_THROWS_AS(apply_local({D}, PureState(s2, c)), ShapeMismatch);
    }

    TEST_CASE("local action matches dense Kronecker products") {
        Rng rng(11);
        for (auto s : {Sector::distinguishable(3, 2), Sector::distinguishable(2, 3)}) {
            const PureState v = random_state(s, rng);
            std::vector<CMatrix> ops;
            CMatrix K = CMatrix::Identity(1, 1);
            for (int p = 0; p < s.parties(); ++p) {
                ops.push_back(random_special_linear(s.local_dim(), rng));
                K = oracle::kron(K, ops.back());
            }
            CHECK((apply_local(ops, v).amplitudes() - K * v.amplitudes()).norm() < 1e-12);
        }
        const Sector b = Sector::bosonic(3, 2);
        const PureState v = random_state(b, rng);
        const CMatrix g = random_special_linear(2, rng);
        const CMatrix K = oracle::kron(oracle::kron(g, g), g);
        CHECK((apply_local({g}, v).tensor() - K * v.tensor()).norm() < 1e-12);
    }

    TEST_CASE("unitaries preserve norm and the action composes") {
        Rng rng(5);
        const Sector s = Sector::distinguishable(3, 2);
        for (int i = 0; i < 20; ++i) {
            const PureState v = random_state(s, rng);
            std::vector<CMatrix> U, g, h, hg;
            for (int p = 0; p < 3; ++p) {
                U.push_back(random_unitary(2, rng));
                g.push_back(random_special_linear(2, rng));
                h.push_back(random_special_linear(2, rng));
                hg.push_back(h.back() * g.back());
            }
            CHECK(std::abs(apply_local(U, v).norm() - 1.0) < 1e-12);
            CHECK((apply_local(h, apply_local(g, v)).amplitudes() - apply_local(hg, v).amplitudes()).norm() < 1e-12);
        }
    }

    TEST_CASE("dicke states") {
        CHECK(dicke(0, 3).amplitudes()[0] == cplx(1.0));
        const CVector t = dicke(1, 2).tensor();
        CHECK(std::abs(t[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(t[2] - 1.0 / std::sqrt(2.0)) < 1e-15);
        for (int j = 0; j <= 5; ++j)
            for (int k = 0; k <= 5; ++k)
                CHECK(std::abs(inner(dicke(j, 5), dicke(k, 5)) - (j == k ? 1.0 : 0.0)) < 1e-15);
        CHECK_THROWS_AS(dicke(4, 3), IndexOutOfRange);
    }

    TEST_CASE("hodge dual") {
        const Sector s = Sector::fermionic(2, 4);
        const std::vector<int> l01{0, 1};
        const PureState d = hodge_dual(basis_state(s, l01));
        const std::vector<int> l23{2, 3};
        CHECK(std::abs(d.amplitudes()[static_cast<Eigen::Index>(d.sector().index_of(l23))] - 1.0) < 1e-15);

        const Sector top = Sector::fermionic(4, 4);
        const std::vector<int> all{0, 1, 2, 3};
        const PureState scalar = hodge_dual(basis_state(top, all));
        CHECK(scalar.dim() == 1);
        CHECK(std::abs(scalar.amplitudes()[0] - 1.0) < 1e-15);

        Rng rng(2);
        const PureState v = random_state(s, rng);
        const PureState dd = hodge_dual(hodge_dual(v));
        CHECK(std::abs(std::abs(inner(v, dd)) - 1.0) < 1e-12);
        CHECK_THROWS_AS(hodge_dual(ghz_state(3)), SectorMismatch);
    }

    TEST_CASE("coefficient matrices") {
        CMatrix M(2, 2);
        M << 0, 1, 1, 0;
        const PureState b = from_coefficient_matrix(SectorKind::bosonic, M);
        CHECK((b.amplitudes() - dicke(1, 2).amplitudes()).norm() < 1e-14);
        CHECK_THROWS_AS(from_coefficient_matrix(SectorKind::fermionic, M), NotAntisymmetric);
        M << 0, 1, 2, 0;
        CHECK_THROWS_AS(from_coefficient_matrix(SectorKind::bosonic, M), NotSymmetric);
    }
}
