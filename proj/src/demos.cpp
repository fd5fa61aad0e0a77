#include "slocc/demos.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace slocc {

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string num(int x) { return std::to_string(x); }

std::string idx(const std::optional<int>& i) { return i ? std::to_string(*i) : "n/a"; }

void close_row(DemoResult& r, const std::string& item, const std::string& what, double got, double want, double tol) {
    r.rows.push_back({item, what, num(got), num(want), std::abs(got - want) <= tol});
}

void exact_row(DemoResult& r, const std::string& item, const std::string& what, const std::optional<int>& got, int want) {
    r.rows.push_back({item, what, idx(got), num(want), got && *got == want});
}

void bound_row(DemoResult& r, const std::string& item, const std::string& what, double got, double bound) {
    r.rows.push_back({item, what, num(got), "< " + num(bound), got < bound});
}

void text_row(DemoResult& r, const std::string& item, const std::string& what, const std::string& got,
              const std::string& want) {
    r.rows.push_back({item, what, got, want, got == want});
}

int arg(const std::vector<int>& args, std::size_t i, int fallback, const std::string& demo) {
    if (i < args.size()) return args[i];
    if (fallback < 0) throw InvalidArgument("demo '" + demo + "' needs more arguments");
    return fallback;
}

DemoResult demo_bipartite(int N, const DemoOptions& o) {
    if (N < 2) throw InvalidArgument("bipartite demo needs N >= 2");
    DemoResult r{"bipartite " + std::to_string(N), {}, json::array()};
    for (int k = 1; k <= N; ++k) {
        const PureState v = bipartite_vk(N, k);
        const CriticalRecord rec = classify(v, o.flow);
        const std::string item = "v_" + std::to_string(k);
        const double want = std::sqrt(2.0 * (k * (N - k) * (N - k) + k * k * (N - k))) / (N * k);
        close_row(r, item, "d", rec.d_value, want, 1e-6);
        exact_row(r, item, "morse index", rec.morse_index, 2 * (N - k) * (N - k));
        r.details.push_back({{"item", item}, {"record", to_json(rec)}});
    }
    return r;
}

DemoResult demo_three_qubit(const DemoOptions& o) {
    DemoResult r{"three-qubit", {}, json::array()};
    ScanConfig scan;
    scan.search.seed = o.seed;
    auto fams = critical_families(Sector::distinguishable(3, 2), scan);
    std::sort(fams.begin(), fams.end(), [](const auto& a, const auto& b) { return a.d_value < b.d_value; });
    r.rows.push_back({"scan", "families", num(static_cast<int>(fams.size())), "6", fams.size() == 6});
    const double ds[6] = {0.0, std::sqrt(1.0 / 6), std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5), std::sqrt(1.5)};
    const int ind[6] = {0, 2, 6, 6, 6, 8};
    for (std::size_t i = 0; i < fams.size() && i < 6; ++i) {
        const std::string item = "family " + std::to_string(i + 1);
        close_row(r, item, "d", fams[i].d_value, ds[i], 1e-6);
        exact_row(r, item, "morse index", fams[i].morse_index, ind[i]);
        r.details.push_back({{"item", item},
                             {"alpha", to_json(fams[i].alpha)},
                             {"multiplicity", fams[i].multiplicity},
                             {"representative", to_json(fams[i].representatives.front())}});
    }
    struct Named {
        std::string name;
        PureState state;
        double d;
        int index;
        Stability stab;
    };
    const std::vector<Named> named{
        {"GHZ", ghz_state(3), 0.0, 0, Stability::semistable},
        {"W", w_state(3), std::sqrt(1.0 / 6), 2, Stability::nullcone},
        {"B1", three_qubit_biseparable(0), std::sqrt(0.5), 6, Stability::nullcone},
        {"B2", three_qubit_biseparable(1), std::sqrt(0.5), 6, Stability::nullcone},
        {"B3", three_qubit_biseparable(2), std::sqrt(0.5), 6, Stability::nullcone},
        {"SEP", product_zero(3), std::sqrt(1.5), 8, Stability::nullcone},
    };
    for (const auto& n : named) {
        const CriticalRecord rec = classify(n.state, o.flow);
        close_row(r, n.name, "d", rec.d_value, n.d, 1e-6);
        exact_row(r, n.name, "morse index", rec.morse_index, n.index);
        text_row(r, n.name, "stability", std::string(to_string(rec.stability)), std::string(to_string(n.stab)));
    }
    return r;
}

DemoResult demo_four_qubit(const DemoOptions& o) {
    DemoResult r{"four-qubit-families", {}, json::array()};
    for (Family f : all_families()) {
        const std::string item(to_string(f));
        const PureState s = four_qubit_family(f, default_family_params(f));
        const LimitResult lim = one_param_limit(s, closure_generators(f));
        bound_row(r, item, "limit step at t=20", lim.final_step, 1e-8);
        bound_row(r, item, "limit distance to G_abcd", distance_to_gabcd(lim.limit), 1e-8);
        const CriticalRecord rec = classify(s, o.flow);
        bound_row(r, item, "d", rec.d_value, 1e-4);
        text_row(r, item, "stability", std::string(to_string(rec.stability)), "semistable");
        r.details.push_back({{"item", item}, {"limit", to_json(lim.limit)}, {"record", to_json(rec)}});
    }
    const PureState g = gabcd({0.9, cplx(0.2, 0.3), -0.5, cplx(0.1, -0.7)});
    const CriticalRecord rec = classify(g, o.flow);
    r.rows.push_back({"generic G_abcd", "orbit dimension", num(rec.orbit_dimension), "24", rec.orbit_dimension == 24});
    text_row(r, "generic G_abcd", "stability", std::string(to_string(rec.stability)), "stable");
    return r;
}

DemoResult demo_bosons(int N, int L, const DemoOptions& o) {
    if (N < 2 || L < 2) throw InvalidArgument("bosons demo needs N >= 2 and L >= 2");
    DemoResult r{"bosons " + std::to_string(N) + " " + std::to_string(L), {}, json::array()};
    if (L == 2) {
        for (int k = 1; k <= N; ++k) {
            const PureState v = boson_pair_vk(N, k);
            const CriticalRecord rec = describe_critical(v, o.flow);
            const std::string item = "v_" + std::to_string(k);
            r.rows.push_back({item, "critical", is_critical(v).critical ? "yes" : "no", "yes", is_critical(v).critical});
            exact_row(r, item, "morse index", rec.morse_index, (N - k) * (N - k + 1));
            r.details.push_back({{"item", item}, {"takagi", to_json(boson_pair_form(v))}});
        }
        return r;
    }
    ScanConfig scan;
    scan.search.seed = o.seed;
    for (const auto& fam : critical_families(Sector::bosonic(L, N), scan)) {
        std::ostringstream item;
        item << "alpha " << fam.alpha.spectra[0].transpose().format(Eigen::IOFormat(6, 0, ",", ",", "", "", "(", ")"));
        r.rows.push_back({item.str(), "d / index", num(fam.d_value) + " / " + num(fam.morse_index), "-", true});
    }
    return r;
}

DemoResult demo_fermions(int N, const DemoOptions& o) {
    if (N < 2) throw InvalidArgument("fermions demo needs N >= 2");
    DemoResult r{"fermions " + std::to_string(N), {}, json::array()};
    for (int k = 1; 2 * k <= N; ++k) {
        const PureState v = fermion_pair_vk(N, k);
        const CriticalRecord rec = describe_critical(v, o.flow);
        const std::string item = "v_" + std::to_string(k);
        exact_row(r, item, "morse index", rec.morse_index, (N - 2 * k) * (N - 2 * k - 1));
        r.details.push_back({{"item", item}, {"slater", to_json(fermion_pair_form(v))}});
    }
    SearchConfig search;
    search.seed = o.seed;
    const bool found = zero_family(Sector::fermionic(2, N), search).has_value();
    text_row(r, "mu^-1(0)", "nonempty", found ? "yes" : "no", N % 2 == 0 ? "yes" : "no");
    return r;
}

DemoResult demo_dicke(int L, const DemoOptions& o) {
    if (L < 1) throw InvalidArgument("dicke demo needs L >= 1");
    DemoResult r{"dicke " + std::to_string(L), {}, json::array()};
    const auto fams = dicke_critical_families(L);
    r.rows.push_back({"ray scan", "families", num(static_cast<int>(fams.size())), num(L / 2 + 1),
                      static_cast<int>(fams.size()) == L / 2 + 1});
    ScanConfig scan;
    scan.search.seed = o.seed;
    const auto grid = critical_families(Sector::bosonic(L, 2), scan);
    r.rows.push_back({"grid scan", "families", num(static_cast<int>(grid.size())), num(L / 2 + 1),
                      static_cast<int>(grid.size()) == L / 2 + 1});
    for (const auto& fam : fams) {
        const PureState& v = fam.representatives.front();
        int kk = 0;  // the occupation basis is ordered by excitation number
        v.amplitudes().cwiseAbs().maxCoeff(&kk);
        const std::string item = "|" + std::to_string(kk) + "," + std::to_string(L) + ">";
        const CMatrix rho = reduced_density(v, 0);
        close_row(r, item, "rho_00", rho(0, 0).real(), static_cast<double>(L - kk) / L, 1e-10);
        close_row(r, item, "rho_11", rho(1, 1).real(), static_cast<double>(kk) / L, 1e-10);
        exact_row(r, item, "morse index (complement count)", fam.morse_index, 2 * std::max(0, L - kk - 1) * (2 * kk != L));
        exact_row(r, item, "morse index (2 ceil(L/2))", fam.morse_index, 2 * ((L + 1) / 2));
    }
    return r;
}

}  // namespace

PureState bipartite_vk(int N, int k) {
    if (k < 1 || k > N) throw IndexOutOfRange("v_k needs 1 <= k <= N");
    const Sector s = Sector::distinguishable(2, N);
    CVector c = CVector::Zero(static_cast<Eigen::Index>(s.dim()));
    for (int i = 0; i < k; ++i) c[i * N + i] = 1.0;
    return normalize(PureState(s, c));
}

PureState boson_pair_vk(int N, int k) {
    if (k < 1 || k > N) throw IndexOutOfRange("v_k needs 1 <= k <= N");
    CMatrix M = CMatrix::Zero(N, N);
    for (int i = 0; i < k; ++i) M(i, i) = 1.0;
    return from_coefficient_matrix(SectorKind::bosonic, M);
}

PureState fermion_pair_vk(int N, int k) {
    if (k < 1 || 2 * k > N) throw IndexOutOfRange("fermionic v_k needs 1 <= k <= N/2");
    CMatrix M = CMatrix::Zero(N, N);
    for (int i = 0; i < k; ++i) {
        M(2 * i, 2 * i + 1) = 1.0;
        M(2 * i + 1, 2 * i) = -1.0;
    }
    return from_coefficient_matrix(SectorKind::fermionic, M);
}

PureState three_qubit_biseparable(int lone) {
    if (lone < 0 || lone > 2) throw PartyOutOfRange("three qubits have parties 0, 1, 2");
    std::string b = "000";
    for (int p = 0; p < 3; ++p)
        if (p != lone) b[p] = '1';
    return from_kets(2, {{"000", 1.0}, {b, 1.0}});
}

PureState product_zero(int parties, int N) {
    const Sector s = Sector::distinguishable(parties, N);
    CVector c = CVector::Zero(static_cast<Eigen::Index>(s.dim()));
    c[0] = 1.0;
    return PureState(s, c);
}

int DemoResult::failures() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const DemoRow& r) { return !r.pass; }));
}

const std::vector<std::string>& demo_usage() {
    static const std::vector<std::string> u{"bipartite N",   "three-qubit", "four-qubit-families",
                                            "bosons N [L]", "fermions N",  "dicke L"};
    return u;
}

DemoResult run_demo(const std::string& name, const std::vector<int>& args, const DemoOptions& options) {
    if (name == "bipartite") return demo_bipartite(arg(args, 0, -1, name), options);
    if (name == "three-qubit") return demo_three_qubit(options);
    if (name == "four-qubit-families") return demo_four_qubit(options);
    if (name == "bosons") return demo_bosons(arg(args, 0, -1, name), arg(args, 1, 2, name), options);
    if (name == "fermions") return demo_fermions(arg(args, 0, -1, name), options);
    if (name == "dicke") return demo_dicke(arg(args, 0, -1, name), options);
    throw UnknownDemo("unknown demo '" + name + "'");
}

void print_demo_table(std::ostream& os, const DemoResult& result) {
    std::size_t w[4] = {4, 8, 8, 8};
    for (const auto& row : result.rows) {
        w[0] = std::max(w[0], row.item.size());
        w[1] = std::max(w[1], row.quantity.size());
        w[2] = std::max(w[2], row.computed.size());
        w[3] = std::max(w[3], row.expected.size());
    }
    auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                    const std::string& e) {
        os << std::left << std::setw(static_cast<int>(w[0]) + 2) << a << std::setw(static_cast<int>(w[1]) + 2) << b
           << std::setw(static_cast<int>(w[2]) + 2) << c << std::setw(static_cast<int>(w[3]) + 2) << d << e << '\n';
    };
    os << "demo: " << result.name << '\n';
    line("item", "quantity", "computed", "expected", "status");
    for (const auto& row : result.rows)
        line(row.item, row.quantity, row.computed, row.expected, row.pass ? "ok" : "MISMATCH");
    os << result.rows.size() - static_cast<std::size_t>(result.failures()) << "/" << result.rows.size()
       << " rows match\n";
}

void write_demo_csv(std::ostream& os, const DemoResult& result) {
    auto q = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
        return out + "\"";
    };
    os << "demo,item,quantity,computed,expected,pass\n";
    for (const auto& row : result.rows)
        os << q(result.name) << ',' << q(row.item) << ',' << q(row.quantity) << ',' << q(row.computed) << ','
           << q(row.expected) << ',' << (row.pass ? "true" : "false") << '\n';
}

}  // namespace slocc
