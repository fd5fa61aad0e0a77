// Acceptance checks, one line per criterion. Usage: acceptance [criterion...]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slocc/canonical.hpp"
#include "slocc/critical.hpp"
#include "slocc/demos.hpp"

using namespace slocc;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

const FlowConfig kFlow{};

// Critical states collected across criteria for the finite-difference comparison.
std::vector<std::pair<std::string, PureState>>& critical_pool() {
    static std::vector<std::pair<std::string, PureState>> pool;
    return pool;
}

void remember(const std::string& name, const PureState& v) { critical_pool().emplace_back(name, v); }

double bipartite_d(int N, int k) { return std::sqrt(2.0 * (k * (N - k) * (N - k) + k * k * (N - k))) / (N * k); }

Outcome criterion1() {
    Outcome o;
    double worst = 0.0;
    for (int N = 2; N <= 6; ++N)
        for (int k = 1; k <= N; ++k) {
            const double err = std::abs(slocc_distance(bipartite_vk(N, k), kFlow) - bipartite_d(N, k));
            worst = std::max(worst, err);
            o.require(err <= 1e-6, "N=" + std::to_string(N) + " k=" + std::to_string(k) + " error " + fmt(err));
        }
    o.notes.insert(o.notes.begin(), "max |d - formula| = " + fmt(worst));
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (int N = 2; N <= 6; ++N)
        for (int k = 1; k <= N; ++k) {
            const PureState v = bipartite_vk(N, k);
            remember("bipartite N=" + std::to_string(N) + " k=" + std::to_string(k), v);
            const int got = morse_index(v);
            o.require(got == 2 * (N - k) * (N - k), "N=" + std::to_string(N) + " k=" + std::to_string(k) + " index " +
                                                       std::to_string(got));
        }
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto fams = critical_families(Sector::distinguishable(3, 2));
    std::sort(fams.begin(), fams.end(), [](const auto& a, const auto& b) { return a.d_value < b.d_value; });
    o.require(fams.size() == 6, "found " + std::to_string(fams.size()) + " families");
    if (fams.size() != 6) return o;
    const double ds[6] = {0.0, std::sqrt(1.0 / 6), std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5), std::sqrt(1.5)};
    const int ind[6] = {0, 2, 6, 6, 6, 8};
    for (int i = 0; i < 6; ++i) {
        o.require(std::abs(fams[i].d_value - ds[i]) <= 1e-6, "family " + std::to_string(i) + " d " + fmt(fams[i].d_value));
        o.require(fams[i].morse_index == ind[i], "family " + std::to_string(i) + " index " + std::to_string(fams[i].morse_index));
        const PureState& rep = fams[i].representatives.front();
        remember("three-qubit family " + std::to_string(i), rep);
        // each representative must be LU-equivalent to the named state: compare local spectra
        const std::vector<PureState> named{ghz_state(3), w_state(3), three_qubit_biseparable(0),
                                           three_qubit_biseparable(1), three_qubit_biseparable(2), product_zero(3)};
        bool matched = false;
        const auto pr = psi(rep);
        for (const auto& n : named) {
            const auto pn = psi(n);
            bool same = true;
            for (int p = 0; p < 3; ++p) same = same && (pr.spectra[p] - pn.spectra[p]).norm() < 1e-8;
            matched = matched || same;
        }
        o.require(matched, "family " + std::to_string(i) + " representative is not GHZ/W/B/SEP-like");
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    int checked = 0, worst = 0;
    for (const auto& a : alpha_grid(Sector::distinguishable(3, 2), ScanConfig{})) {
        if (mu_norm_sq(a) < 1e-14) continue;
        ++checked;
        for (const auto& r : alpha_star_eigenspaces(a)) worst = std::max(worst, r.multiplicity);
    }
    o.require(worst < 5, "largest multiplicity " + std::to_string(worst));
    o.notes.insert(o.notes.begin(), std::to_string(checked) + " grid points, largest multiplicity " + std::to_string(worst));
    return o;
}

Outcome criterion5() {
    Outcome o;
    Rng rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CVector c = random_gaussian(4, rng);
        worst = std::max(worst, mu_norm_sq(gabcd({c[0], c[1], c[2], c[3]})));
    }
    o.require(worst <= 1e-12, "max mu_norm_sq " + fmt(worst));
    for (int i = 0; i < 3; ++i) {
        const CVector c = random_gaussian(4, rng);
        const PureState g = gabcd({c[0], c[1], c[2], c[3]});
        remember("generic G_abcd " + std::to_string(i), g);
        const int dim = orbit_dimension(g);
        const Stability s = stability_class(g, kFlow);
        o.require(dim == 24, "orbit dimension " + std::to_string(dim));
        o.require(s == Stability::stable, "stability " + std::string(to_string(s)));
    }
    o.notes.insert(o.notes.begin(), "max mu_norm_sq over 100 states " + fmt(worst));
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (Family f : all_families()) {
        const std::string name(to_string(f));
        const PureState s = four_qubit_family(f, default_family_params(f));
        const LimitResult lim = one_param_limit(s, closure_generators(f));
        const double dist = distance_to_gabcd(lim.limit);
        const double d = slocc_distance(s, kFlow);
        remember(name + " limit", lim.limit);
        o.require(lim.final_step < 1e-8, name + " limit step " + fmt(lim.final_step));
        o.require(dist < 1e-8, name + " distance to G_abcd " + fmt(dist));
        o.require(d < 1e-4, name + " d " + fmt(d));
        o.notes.push_back(name + ": step " + fmt(lim.final_step) + ", span distance " + fmt(dist) + ", d " + fmt(d));
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (int N = 2; N <= 6; ++N) {
        for (int k = 1; k <= N; ++k) {
            const PureState v = boson_pair_vk(N, k);
            remember("boson N=" + std::to_string(N) + " k=" + std::to_string(k), v);
            const int got = morse_index(v);
            o.require(got == (N - k) * (N - k + 1), "boson N=" + std::to_string(N) + " k=" + std::to_string(k) +
                                                         " index " + std::to_string(got));
        }
        for (int k = 1; 2 * k <= N; ++k) {
            const PureState v = fermion_pair_vk(N, k);
            remember("fermion N=" + std::to_string(N) + " k=" + std::to_string(k), v);
            const int got = morse_index(v);
            o.require(got == (N - 2 * k) * (N - 2 * k - 1), "fermion N=" + std::to_string(N) + " k=" +
                                                                  std::to_string(k) + " index " + std::to_string(got));
        }
        const bool zero = zero_family(Sector::fermionic(2, N)).has_value();
        o.require(zero == (N % 2 == 0), "fermion N=" + std::to_string(N) + " mu^-1(0) " + (zero ? "nonempty" : "empty"));
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    bool list_ok = true, rho_ok = true;
    std::ostringstream got_idx, extra;
    for (int L = 2; L <= 8; ++L) {
        const std::string tag = "L=" + std::to_string(L);
        const auto fams = dicke_critical_families(L);
        const bool size_ok = static_cast<int>(fams.size()) == L / 2 + 1;
        list_ok = list_ok && size_ok;
        o.require(size_ok, tag + ": " + std::to_string(fams.size()) + " families");
        // the general scan must see the same d values; it may also report the mu = 0 family
        const auto scanned = critical_families(Sector::bosonic(L, 2));
        int unmatched = 0;
        for (const auto& g : scanned) {
            bool hit = false;
            for (const auto& f : fams) hit = hit || std::abs(f.d_value - g.d_value) < 1e-8;
            if (!hit) ++unmatched;
        }
        if (unmatched) extra << ' ' << tag << ":+" << unmatched;
        got_idx << ' ' << tag << ":";
        for (std::size_t i = 0; i < fams.size(); ++i) {
            const int k = static_cast<int>(i);
            const PureState& v = fams[i].representatives.front();
            const bool is_dicke = std::abs(inner(v, dicke(k, L))) > 1 - 1e-10;
            bool seen = false;
            for (const auto& g : scanned) seen = seen || std::abs(fams[i].d_value - g.d_value) < 1e-8;
            list_ok = list_ok && is_dicke && seen;
            o.require(is_dicke, tag + " family " + std::to_string(k) + " is not |k,L>");
            o.require(seen, tag + " family " + std::to_string(k) + " missing from the general scan");
            remember("dicke " + tag + " k=" + std::to_string(k), v);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(reduced_density(v, 0));
            const double hi = es.eigenvalues()[1], lo = es.eigenvalues()[0];
            const bool r = std::abs(hi - double(L - k) / L) <= 1e-10 && std::abs(lo - double(k) / L) <= 1e-10;
            rho_ok = rho_ok && r;
            o.require(r, tag + " k=" + std::to_string(k) + " rho spectrum");
            const int idx = morse_index(v);
            got_idx << ' ' << idx;
            o.require(idx == 2 * ((L + 1) / 2), tag + " k=" + std::to_string(k) + " index " + std::to_string(idx) +
                                                    " (expected " + std::to_string(2 * ((L + 1) / 2)) + ")");
        }
    }
    o.notes.insert(o.notes.begin(), std::string("family lists ") + (list_ok ? "ok" : "WRONG") + ", rho spectra " +
                                        (rho_ok ? "ok" : "WRONG") + ", indices" + got_idx.str() +
                                        (extra.str().empty() ? "" : "; scan-only mu=0 families" + extra.str()));
    return o;
}

std::vector<Sector> property_sectors() {
    return {Sector::distinguishable(2, 2), Sector::distinguishable(3, 2), Sector::distinguishable(4, 2),
            Sector::distinguishable(5, 2), Sector::distinguishable(6, 2), Sector::distinguishable(2, 3),
            Sector::distinguishable(3, 3), Sector::distinguishable(2, 4), Sector::distinguishable(3, 4),
            Sector::distinguishable(2, 8), Sector::bosonic(2, 3),         Sector::bosonic(3, 3),
            Sector::bosonic(6, 2),        Sector::bosonic(4, 4),         Sector::bosonic(3, 5),
            Sector::fermionic(2, 4),      Sector::fermionic(3, 6),       Sector::fermionic(2, 8),
            Sector::fermionic(4, 8)};
}

Outcome criterion9() {
    Outcome o;
    Rng rng(99);
    // (a) and (e)
    double worst_a = 0.0, worst_e = 0.0;
    for (const auto& s : property_sectors()) {
        if (s.dim() > 64) continue;
        for (int i = 0; i < 100; ++i) {
            const PureState v = random_state(s, rng);
            const double m2 = mu_norm_sq(v);
            worst_a = std::max(worst_a, std::abs(total_variance(v) + m2 - casimir_constant(s)));
            if (i < 20) worst_e = std::max(worst_e, std::abs(casimir_vee_expectation(v) - 2 * casimir_constant(s) - 2 * m2));
        }
    }
    o.require(worst_a <= 1e-10, "(a) constancy error " + fmt(worst_a));
    o.require(worst_e <= 1e-10, "(e) Casimir identity error " + fmt(worst_e));

    // (b)
    FlowConfig cfg;
    cfg.record_every = 1;
    cfg.max_iterations = 300;
    const std::vector<Sector> flow_sectors{Sector::distinguishable(3, 2), Sector::distinguishable(4, 2),
                                           Sector::distinguishable(2, 3), Sector::bosonic(4, 2), Sector::fermionic(2, 5)};
    double worst_b = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Sector& s = flow_sectors[static_cast<std::size_t>(i) % flow_sectors.size()];
        const FlowTrace t = integrate_flow(random_state(s, rng), cfg);
        for (std::size_t k = 1; k < t.samples.size(); ++k)
            worst_b = std::max(worst_b, t.samples[k].mu_norm_sq - t.samples[k - 1].mu_norm_sq);
    }
    o.require(worst_b <= 1e-12, "(b) largest increase " + fmt(worst_b));

    // (c)
    int compared = 0;
    for (const auto& [name, v] : critical_pool()) {
        const int spectral = morse_index(v);
        const int fd = mu_norm_sq(v) <= kFlow.zero_threshold ? 0 : negative_count(hessian_fd_oracle(v, orbit_tangent_frame(v)));
        ++compared;
        o.require(spectral == fd, "(c) " + name + ": spectral " + std::to_string(spectral) + ", finite differences " +
                                      std::to_string(fd));
    }
    if (compared == 0) o.require(false, "(c) no critical states collected (run criteria 1-8 first)");

    // (d)
    double worst_d = 0.0;
    for (const auto& s : property_sectors()) {
        if (s.identical() || s.dim() > 64) continue;
        for (int i = 0; i < 10; ++i) {
            const PureState v = random_state(s, rng);
            std::vector<CMatrix> U;
            for (int p = 0; p < s.parties(); ++p) U.push_back(random_unitary(s.local_dim(), rng));
            const auto a = momentum(v), b = momentum(apply_local(U, v));
            for (int p = 0; p < s.parties(); ++p)
                worst_d = std::max(worst_d, (b.blocks[p] - U[p] * a.blocks[p] * U[p].adjoint()).norm());
        }
    }
    o.require(worst_d <= 1e-10, "(d) equivariance error " + fmt(worst_d));
    o.notes.insert(o.notes.begin(), "(a) " + fmt(worst_a) + " (b) " + fmt(worst_b) + " (c) " + std::to_string(compared) +
                                        " states (d) " + fmt(worst_d) + " (e) " + fmt(worst_e));
    return o;
}

const char* kTitles[9] = {"bipartite distances",      "bipartite Morse indices", "three-qubit classification",
                          "three-qubit degeneracy",   "four-qubit zero fibre",   "four-qubit closure limits",
                          "bosons and fermions",      "Dicke systems",           "property suites"};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                    criterion6, criterion7, criterion8, criterion9};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int c = std::atoi(argv[i]);
        if (c < 1 || c > 9) {
            std::cerr << "unknown criterion '" << argv[i] << "'\n";
            return 2;
        }
        selected.push_back(c);
    }
    if (selected.empty())
        for (int c = 1; c <= 9; ++c) selected.push_back(c);
    // criterion 9 (c) checks the critical states gathered by 1-8
    if (std::find(selected.begin(), selected.end(), 9) != selected.end() && selected.size() == 1) {
        std::cout << "(collecting critical states from criteria 1-8)\n";
        for (int c = 1; c <= 8; ++c)
            if (c == 2 || c == 3 || c == 5 || c == 6 || c == 7 || c == 8) all[static_cast<std::size_t>(c - 1)]();
    }
    int failed = 0;
    for (int c : selected) {
        Outcome o;
        try {
            o = all[static_cast<std::size_t>(c - 1)]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << c << " (" << kTitles[c - 1] << "): " << (o.pass ? "PASS" : "FAIL");
        if (!o.notes.empty()) std::cout << "  " << o.notes.front();
        std::cout << '\n';
        for (std::size_t i = 1; i < o.notes.size() && i < 40; ++i) std::cout << "    " << o.notes[i] << '\n';
    }
    return failed == 0 ? 0 : 1;
}
