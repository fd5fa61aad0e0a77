#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "slocc/canonical.hpp"
#include "slocc/critical.hpp"
#include "slocc/demos.hpp"

using namespace slocc;

namespace {

SpectrumPoint qubit_alpha(const Sector& s, const std::vector<double>& lambdas) {
    std::vector<RVector> sp;
    for (double l : lambdas) {
        RVector a(2);
        a << l, -l;
        sp.push_back(a);
    }
    return SpectrumPoint{s, sp};
}

const Sector kThree = Sector::distinguishable(3, 2);

}  // namespace

TEST_SUITE("critical") {
    TEST_CASE("criticality") {
        auto g = is_critical(ghz_state(3));
        CHECK(g.critical);
        CHECK(std::abs(g.lambda) < 1e-15);
        auto w = is_critical(w_state(3));
        CHECK(w.critical);
        CHECK(std::abs(w.lambda - 1.0 / 6) < 1e-15);
        CHECK_FALSE(is_critical(from_kets(2, {{"000", 2.0}, {"111", 1.0}})).critical);
    }

    TEST_CASE("alpha* eigenspaces") {
        const double l = 1.0 / 6;
        const auto reps = alpha_star_eigenspaces(qubit_alpha(kThree, {l, l, l}));
        auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) { return std::abs(r.eigenvalue - l) < 1e-12; });
        REQUIRE(it != reps.end());
        CHECK(it->multiplicity == 3);
        std::vector<int> idx;
        for (const auto& b : it->basis) {
            Eigen::Index i = 0;
            b.cwiseAbs().maxCoeff(&i);
            idx.push_back(static_cast<int>(i));
        }
        CHECK(idx == std::vector<int>{1, 2, 4});  // |001>, |010>, |100>

        const auto sep = alpha_star_eigenspaces(qubit_alpha(kThree, {0.5, 0, 0}));
        CHECK(sep.front().multiplicity == 4);
        CHECK(std::abs(sep.front().eigenvalue - 0.5) < 1e-15);
        for (const auto& b : sep.front().basis) CHECK(b.head(4).norm() == 1.0);  // |0> x anything

        for (const auto& r : alpha_star_eigenspaces(qubit_alpha(kThree, {0.3, 0.1, 0.05}))) CHECK(r.multiplicity == 1);

        int total = 0;
        const auto any = alpha_star_eigenspaces(qubit_alpha(kThree, {0.25, 0.25, 0}));
        for (const auto& r : any) total += r.multiplicity;
        CHECK(total == 8);
        CHECK_THROWS_AS(alpha_star_eigenspaces(qubit_alpha(kThree, {-0.1, 0, 0})), NotInWeylChamber);
    }

    TEST_CASE("alpha* diagonal matches the dense mu* of a diagonal point") {
        for (const auto& s : {Sector::distinguishable(2, 3), Sector::bosonic(3, 3), Sector::fermionic(2, 4)}) {
            RVector a(s.local_dim());
            a.setLinSpaced(s.local_dim(), 0.4, -0.4);
            SpectrumPoint sp{s, std::vector<RVector>(static_cast<std::size_t>(s.block_count()), a)};
            const CMatrix M = mu_star_matrix(sp);
            CHECK((M - CMatrix(alpha_star_diagonal(sp).cast<cplx>().asDiagonal())).norm() < 1e-12);
        }
    }

    TEST_CASE("self-consistency") {
        const double l = 1.0 / 6;
        const auto reps = alpha_star_eigenspaces(qubit_alpha(kThree, {l, l, l}));
        auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) { return std::abs(r.eigenvalue - l) < 1e-12; });
        const auto sols = self_consistent_critical(*it);
        REQUIRE_FALSE(sols.empty());
        for (const auto& v : sols) {
            for (int i : {1, 2, 4}) CHECK(std::abs(std::abs(v.amplitudes()[i]) - 1.0 / std::sqrt(3.0)) < 1e-8);
            CHECK(is_critical(v, 1e-8).critical);
        }

        // lambda_2 case: party 1 pure, parties 0 and 2 maximally mixed
        const auto r2 = alpha_star_eigenspaces(qubit_alpha(kThree, {0, 0.5, 0}));
        const auto s2 = self_consistent_critical(r2.front());
        REQUIRE_FALSE(s2.empty());
        const PureState ref = from_kets(2, {{"000", 1.0}, {"101", 1.0}});
        for (const auto& v : s2) {
            const auto a = psi(v), b = psi(ref);
            for (int p = 0; p < 3; ++p) CHECK((a.spectra[p] - b.spectra[p]).norm() < 1e-8);
            CHECK(v.amplitudes()(Eigen::seq(2, 3)).norm() < 1e-12);  // party 1 in |0>
        }
    }

    TEST_CASE("orbit dimensions") {
        CHECK(orbit_dimension(product_zero(3)) == 6);
        CHECK(orbit_dimension(ghz_state(3)) == 14);
        CHECK(orbit_dimension(bipartite_vk(2, 2)) == 6);
        CHECK(orbit_dimension(w_state(3)) == 12);
        Rng rng(6);
        for (const auto& s : {Sector::distinguishable(3, 2), Sector::distinguishable(2, 3), Sector::bosonic(3, 2),
                              Sector::fermionic(2, 4), Sector::distinguishable(4, 2)}) {
            for (int i = 0; i < 3; ++i) {
                PureState v = random_state(s, rng);
                if (i == 1) v = w_state(3).sector() == s ? w_state(3) : v;
                const int d = orbit_dimension(v);
                CHECK(d == oracle::orbit_dimension(v.tensor(), s.local_dim(), s.parties(), s.identical()));
                std::vector<CMatrix> U;
                for (int p = 0; p < s.block_count(); ++p) U.push_back(random_unitary(s.local_dim(), rng));
                CHECK(orbit_dimension(apply_local(U, v)) == d);
            }
        }
    }

    TEST_CASE("stability") {
        FlowConfig cfg;
        CHECK(stability_class(gabcd({0.9, cplx(0.2, 0.3), -0.5, cplx(0.1, -0.7)}), cfg) == Stability::stable);
        CHECK(stability_class(w_state(3), cfg) == Stability::nullcone);
        CHECK(stability_class(ghz_state(3), cfg) == Stability::semistable);
    }

    TEST_CASE("classify") {
        FlowConfig cfg;
        const CriticalRecord w = classify(w_state(3), cfg);
        CHECK(std::abs(w.lambda - 1.0 / 6) < 1e-12);
        CHECK(std::abs(w.d_value - std::sqrt(1.0 / 6)) < 1e-12);
        CHECK(w.morse_index == 2);
        CHECK(w.stability == Stability::nullcone);
        const CriticalRecord g = classify(ghz_state(3), cfg);
        CHECK(g.d_value == 0.0);
        CHECK(g.morse_index == 0);
        CHECK(g.stability == Stability::semistable);
        const CriticalRecord z = classify(product_zero(3), cfg);
        CHECK(std::abs(z.d_value - std::sqrt(1.5)) < 1e-12);
        CHECK(z.morse_index == 8);
        for (const auto& r : {w, g, z}) CHECK(std::abs(r.d_value * r.d_value - r.lambda) < 1e-8);
        CHECK(std::abs(w.variance + w.lambda - 4.5) < 1e-10);
    }

    TEST_CASE("grid") {
        const auto g2 = spectrum_grid(2, 12);
        for (const auto& a : g2) CHECK(a[0] >= a[1]);
        CHECK(std::any_of(g2.begin(), g2.end(), [](const RVector& a) { return std::abs(a[0] - 1.0 / 6) < 1e-15; }));
        const auto g3 = spectrum_grid(3, 6);
        for (std::size_t i = 0; i < g3.size(); ++i)
            for (std::size_t j = i + 1; j < g3.size(); ++j) CHECK((g3[i] - g3[j]).norm() > 1e-12);
    }

    TEST_CASE("no eigenspace of multiplicity 5 or more away from the origin") {
        for (const auto& a : alpha_grid(kThree, ScanConfig{})) {
            if (mu_norm_sq(a) < 1e-14) continue;
            for (const auto& r : alpha_star_eigenspaces(a)) CHECK(r.multiplicity < 5);
        }
    }

    TEST_CASE("three-qubit families") {
        auto fams = critical_families(kThree);
        REQUIRE(fams.size() == 6);
        std::vector<int> idx;
        for (const auto& f : fams) idx.push_back(f.morse_index);
        std::sort(idx.begin(), idx.end());
        CHECK(idx == std::vector<int>{0, 2, 6, 6, 6, 8});
    }

    TEST_CASE("fermionic zero family") {
        for (int N = 2; N <= 6; ++N) CHECK(zero_family(Sector::fermionic(2, N)).has_value() == (N % 2 == 0));
    }

    TEST_CASE("dicke ray families") {
        for (int L = 2; L <= 6; ++L) {
            const auto fams = dicke_critical_families(L);
            CHECK(static_cast<int>(fams.size()) == L / 2 + 1);
            for (std::size_t k = 0; k < fams.size(); ++k)
                CHECK(std::abs(inner(fams[k].representatives.front(), dicke(static_cast<int>(k), L))) > 1 - 1e-12);
        }
    }
}
