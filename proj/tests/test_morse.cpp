#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "slocc/demos.hpp"
#include "slocc/morse.hpp"

using namespace slocc;

namespace {

int fd_index(const PureState& v) {
    if (mu_norm_sq(v) <= 1e-8) return 0;
    return negative_count(hessian_fd_oracle(v, orbit_tangent_frame(v)));
}

}  // namespace

TEST_SUITE("morse") {
    TEST_CASE("tangent frames") {
        const TangentFrame w = orbit_tangent_frame(w_state(3));
        REQUIRE(w.complement_basis.size() == 1);
        CHECK(std::abs(std::abs(w.complement_basis[0][7]) - 1.0) < 1e-12);  // |111>
        CHECK(orbit_tangent_frame(ghz_state(3)).complement_basis.empty());

        for (int N = 2; N <= 4; ++N)
            for (int k = 1; k <= N; ++k) {
                const TangentFrame f = orbit_tangent_frame(bipartite_vk(N, k));
                CHECK(f.complement_real_dim() == 2 * (N - k) * (N - k));
                CHECK(f.orbit_real_dim() + f.complement_real_dim() == 2 * (N * N - 1));
                for (const auto& u : f.complement_basis)
                    for (int m = 0; m < N; ++m)
                        for (int n = 0; n < N; ++n)
                            if (m < k || n < k) CHECK(std::abs(u[m * N + n]) < 1e-10);
            }
    }

    TEST_CASE("frames are orthonormal under the real metric") {
        Rng rng(1);
        const TangentFrame f = orbit_tangent_frame(random_state(Sector::distinguishable(3, 3), rng));
        std::vector<CVector> all;
        for (const auto& u : f.orbit_basis) {
            all.push_back(u);
            all.push_back(cplx(0, 1) * u);
        }
        for (const auto& u : f.complement_real_directions()) all.push_back(u);
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = 0; b < all.size(); ++b)
                CHECK(std::abs(all[a].dot(all[b]).real() - (a == b ? 1.0 : 0.0)) < 1e-10);
        CHECK(static_cast<int>(all.size()) == 2 * (27 - 1));
    }

    TEST_CASE("index examples") {
        CHECK(morse_index(w_state(3)) == 2);
        CHECK(morse_index(from_kets(2, {{"000", 1.0}, {"011", 1.0}})) == 6);
        CHECK(morse_index(product_zero(3)) == 8);
        CHECK(morse_index(ghz_state(3)) == 0);
        for (int N = 2; N <= 5; ++N)
            for (int k = 1; k <= N; ++k) CHECK(morse_index(bipartite_vk(N, k)) == 2 * (N - k) * (N - k));
        CHECK_THROWS_AS(morse_index(from_kets(2, {{"000", 2.0}, {"111", 1.0}, {"001", 1.0}})), NotCritical);
    }

    TEST_CASE("finite-difference oracle") {
        const PureState w = w_state(3);
        const RMatrix H = hessian_fd_oracle(w, orbit_tangent_frame(w));
        REQUIRE(H.rows() == 2);
        CHECK(std::abs(H(0, 0) + 4.0 / 3) < 1e-6);
        CHECK(std::abs(H(1, 1) + 4.0 / 3) < 1e-6);
        CHECK(std::abs(H(0, 1)) < 1e-6);
        CHECK(hessian_fd_oracle(ghz_state(3), orbit_tangent_frame(ghz_state(3))).size() == 0);
        const RMatrix S = hessian_fd_oracle(product_zero(3), orbit_tangent_frame(product_zero(3)));
        REQUIRE(S.rows() == 8);
        for (int i = 0; i < 8; ++i) CHECK(S(i, i) < 0);
    }

    TEST_CASE("spectral and finite-difference indices agree, are even and LU invariant") {
        Rng rng(3);
        std::vector<PureState> states{w_state(3), product_zero(3), from_kets(2, {{"000", 1.0}, {"101", 1.0}}),
                                      bipartite_vk(3, 1), bipartite_vk(4, 2), dicke(1, 4), dicke(0, 3)};
        for (const auto& v : states) {
            const int idx = morse_index(v);
            CHECK(idx % 2 == 0);
            CHECK(idx == fd_index(v));
            std::vector<CMatrix> U;
            for (int p = 0; p < v.sector().block_count(); ++p) U.push_back(random_unitary(v.sector().local_dim(), rng));
            CHECK(morse_index(apply_local(U, v)) == idx);
        }
    }

    TEST_CASE("separable qubit states have maximal index") {
        for (int L = 2; L <= 4; ++L) {
            const PureState v = product_zero(L);
            const int dim_p = 2 * ((1 << L) - 1);
            CHECK(morse_index(v) == dim_p - orbit_tangent_frame(v).orbit_real_dim());
        }
    }
}
