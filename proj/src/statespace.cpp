#include "slocc/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "slocc/tensor_ops.hpp"

namespace slocc {

namespace {

constexpr std::size_t kMaxTensorDim = std::size_t{1} << 22;

struct Entry {
    std::size_t index;
    double coeff;
};

int permutation_parity(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::size_t digits_to_index(const std::vector<int>& digits, int N) {
    std::size_t idx = 0;
    for (int d : digits) idx = idx * N + static_cast<std::size_t>(d);
    return idx;
}

void occupations_rec(int N, int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    const auto pos = static_cast<int>(current.size());
    if (pos == N - 1) {
        current.push_back(remaining);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        current.push_back(n);
        occupations_rec(N, remaining - n, current, out);
        current.pop_back();
    }
}

void subsets_rec(int N, int L, int start, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == L) {
        out.push_back(current);
        return;
    }
    for (int j = start; j < N; ++j) {
        current.push_back(j);
        subsets_rec(N, L, j + 1, current, out);
        current.pop_back();
    }
}

}  // namespace

struct Sector::Basis {
    std::vector<std::vector<int>> labels;
    std::vector<std::vector<Entry>> vectors;  // empty for distinguishable (identity embedding)
    std::map<std::vector<int>, std::size_t> lookup;
};

std::string_view to_string(SectorKind kind) {
    switch (kind) {
        case SectorKind::distinguishable: return "distinguishable";
        case SectorKind::bosonic: return "bosonic";
        case SectorKind::fermionic: return "fermionic";
    }
    return "unknown";
}

SectorKind sector_kind_from_string(std::string_view name) {
    if (name == "distinguishable") return SectorKind::distinguishable;
    if (name == "bosonic") return SectorKind::bosonic;
    if (name == "fermionic") return SectorKind::fermionic;
    throw InvalidArgument("unknown sector kind '" + std::string(name) + "'");
}

Sector::Sector(SectorKind kind, int parties, int local_dim)
    : kind_(kind), parties_(parties), local_dim_(local_dim) {
    if (local_dim < 1) throw InvalidArgument("local dimension must be positive");
    if (parties < 1 && !(kind == SectorKind::fermionic && parties == 0))
        throw InvalidArgument("number of parties must be positive");
    if (kind == SectorKind::fermionic && local_dim < parties)
        throw InvalidArgument("fermionic sector requires local_dim >= parties");
    // overflow-safe size check
    std::size_t total = 1;
    for (int i = 0; i < parties; ++i) {
        total *= static_cast<std::size_t>(local_dim);
        if (total > kMaxTensorDim) throw InvalidArgument("sector too large: " + std::to_string(local_dim) +
                                                         "^" + std::to_string(parties));
    }

    auto basis = std::make_shared<Basis>();
    const int N = local_dim;
    const int L = parties;
    switch (kind) {
        case SectorKind::distinguishable: {
            basis->labels.reserve(total);
            std::vector<int> digits(L, 0);
            for (std::size_t idx = 0; idx < total; ++idx) {
                std::size_t rest = idx;
                for (int p = L - 1; p >= 0; --p) {
                    digits[p] = static_cast<int>(rest % N);
                    rest /= N;
                }
                basis->labels.push_back(digits);
            }
            break;
        }
        case SectorKind::bosonic: {
            std::vector<int> current;
            occupations_rec(N, L, current, basis->labels);
            for (const auto& occ : basis->labels) {
                std::vector<int> word;
                for (int j = 0; j < N; ++j) word.insert(word.end(), occ[j], j);
                std::vector<Entry> entries;
                do {
                    entries.push_back({digits_to_index(word, N), 0.0});
                } while (std::next_permutation(word.begin(), word.end()));
                const double c = 1.0 / std::sqrt(static_cast<double>(entries.size()));
                for (auto& e : entries) e.coeff = c;
                basis->vectors.push_back(std::move(entries));
            }
            break;
        }
        case SectorKind::fermionic: {
            std::vector<int> current;
            subsets_rec(N, L, 0, current, basis->labels);
            for (const auto& subset : basis->labels) {
                std::vector<int> perm(L);
                std::iota(perm.begin(), perm.end(), 0);
                std::vector<Entry> entries;
                do {
                    std::vector<int> word(L);
                    for (int i = 0; i < L; ++i) word[i] = subset[perm[i]];
                    entries.push_back({digits_to_index(word, N), static_cast<double>(permutation_parity(perm))});
                } while (std::next_permutation(perm.begin(), perm.end()));
                const double c = 1.0 / std::sqrt(static_cast<double>(entries.size()));
                for (auto& e : entries) e.coeff *= c;
                basis->vectors.push_back(std::move(entries));
            }
            break;
        }
    }
    for (std::size_t i = 0; i < basis->labels.size(); ++i) basis->lookup.emplace(basis->labels[i], i);
    basis_ = std::move(basis);
}

Sector Sector::distinguishable(int parties, int local_dim) { return {SectorKind::distinguishable, parties, local_dim}; }
Sector Sector::bosonic(int parties, int local_dim) { return {SectorKind::bosonic, parties, local_dim}; }
Sector Sector::fermionic(int parties, int local_dim) { return {SectorKind::fermionic, parties, local_dim}; }

std::size_t Sector::dim() const { return basis_->labels.size(); }

std::size_t Sector::tensor_dim() const { return tensor::ipow(local_dim_, parties_); }

const std::vector<std::vector<int>>& Sector::labels() const { return basis_->labels; }

std::size_t Sector::index_of(std::span<const int> label) const {
    auto it = basis_->lookup.find(std::vector<int>(label.begin(), label.end()));
    if (it == basis_->lookup.end()) throw IndexOutOfRange("label not in the " + describe() + " basis");
    return it->second;
}

CVector Sector::embed(const CVector& amplitudes) const {
    if (static_cast<std::size_t>(amplitudes.size()) != dim())
        throw ShapeMismatch("amplitude vector length does not match sector dimension");
    if (!identical()) return amplitudes;
    CVector out = CVector::Zero(static_cast<Eigen::Index>(tensor_dim()));
    for (std::size_t b = 0; b < basis_->vectors.size(); ++b)
        for (const auto& e : basis_->vectors[b]) out[e.index] += e.coeff * amplitudes[b];
    return out;
}

CVector Sector::project(const CVector& tensor) const {
    if (static_cast<std::size_t>(tensor.size()) != tensor_dim())
        throw ShapeMismatch("tensor length does not match sector tensor dimension");
    if (!identical()) return tensor;
    CVector out = CVector::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t b = 0; b < basis_->vectors.size(); ++b)
        for (const auto& e : basis_->vectors[b]) out[b] += e.coeff * tensor[e.index];
    return out;
}

CMatrix Sector::isometry() const {
    CMatrix B = CMatrix::Zero(static_cast<Eigen::Index>(tensor_dim()), static_cast<Eigen::Index>(dim()));
    if (!identical()) return CMatrix::Identity(B.rows(), B.cols());
    for (std::size_t b = 0; b < basis_->vectors.size(); ++b)
        for (const auto& e : basis_->vectors[b]) B(e.index, b) += e.coeff;
    return B;
}

int Sector::group_real_dim() const {
    const int per_copy = 2 * (local_dim_ * local_dim_ - 1);
    return identical() ? per_copy : parties_ * per_copy;
}

std::string Sector::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << "(L=" << parties_ << ", N=" << local_dim_ << ")";
    return os.str();
}

PureState::PureState(Sector sector, CVector amplitudes) : sector_(std::move(sector)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != sector_.dim())
        throw ShapeMismatch("amplitude vector has length " + std::to_string(amplitudes_.size()) + ", sector " +
                            sector_.describe() + " has dimension " + std::to_string(sector_.dim()));
}

PureState PureState::from_tensor(const Sector& sector, const CVector& tensor) {
    return PureState(sector, sector.project(tensor));
}

PureState normalize(const PureState& state) {
    const double n = state.norm();
    if (!(n >= kZeroNorm)) throw ZeroState("cannot normalize a zero state");
    return PureState(state.sector(), state.amplitudes() / n);
}

cplx inner(const PureState& a, const PureState& b) {
    if (!(a.sector() == b.sector())) throw SectorMismatch("inner product across different sectors");
    return a.amplitudes().dot(b.amplitudes());  // conjugate-linear in the first argument
}

PureState apply_local(std::span<const LocalOperator> ops, const PureState& state) {
    const Sector& s = state.sector();
    const int N = s.local_dim();
    const int L = s.parties();
    for (const auto& op : ops)
        if (op.matrix.rows() != N || op.matrix.cols() != N)
            throw ShapeMismatch("local operator must be " + std::to_string(N) + "x" + std::to_string(N));

    if (s.identical()) {
        if (ops.size() != 1) throw ShapeMismatch("identical particles take exactly one (diagonal) operator");
        CVector psi = s.embed(state.amplitudes());
        CVector scratch;
        for (int p = 0; p < L; ++p) {
            tensor::apply_on_party(ops[0].matrix, p, N, L, psi, scratch);
            psi.swap(scratch);
        }
        return PureState(s, s.project(psi));
    }

    if (static_cast<int>(ops.size()) != L)
        throw ShapeMismatch("expected one operator per party (" + std::to_string(L) + "), got " +
                            std::to_string(ops.size()));
    std::vector<bool> seen(L, false);
    CVector psi = state.amplitudes();
    CVector scratch;
    for (const auto& op : ops) {
        if (op.party < 0 || op.party >= L) throw PartyOutOfRange("operator party index out of range");
        if (seen[op.party]) throw ShapeMismatch("two operators for the same party");
        seen[op.party] = true;
        tensor::apply_on_party(op.matrix, op.party, N, L, psi, scratch);
        psi.swap(scratch);
    }
    return PureState(s, psi);
}

PureState apply_local(const std::vector<CMatrix>& ops, const PureState& state) {
    std::vector<LocalOperator> wrapped;
    wrapped.reserve(ops.size());
    for (std::size_t p = 0; p < ops.size(); ++p) wrapped.push_back({static_cast<int>(p), ops[p]});
    return apply_local(std::span<const LocalOperator>(wrapped), state);
}

PureState dicke(int k, int L) {
    if (L < 1 || k < 0 || k > L) throw IndexOutOfRange("Dicke state requires 0 <= k <= L");
    Sector s = Sector::bosonic(L, 2);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(s.dim()));
    const std::vector<int> occ{L - k, k};
    amps[static_cast<Eigen::Index>(s.index_of(occ))] = 1.0;
    return PureState(s, amps);
}

PureState hodge_dual(const PureState& state) {
    const Sector& s = state.sector();
    if (s.kind() != SectorKind::fermionic) throw SectorMismatch("Hodge dual is defined on fermionic sectors only");
    const int N = s.local_dim();
    const int L = s.parties();
    Sector dual(SectorKind::fermionic, N - L, N);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(dual.dim()));
    const auto& labels = s.labels();
    for (std::size_t b = 0; b < labels.size(); ++b) {
        const auto& subset = labels[b];
        std::vector<int> complement;
        for (int j = 0; j < N; ++j)
            if (!std::binary_search(subset.begin(), subset.end(), j)) complement.push_back(j);
        std::vector<int> perm(subset);
        perm.insert(perm.end(), complement.begin(), complement.end());
        const double sign = permutation_parity(perm);
        out[static_cast<Eigen::Index>(dual.index_of(complement))] += sign * state.amplitudes()[b];
    }
    return PureState(dual, out);
}

PureState basis_state(const Sector& sector, std::span<const int> label) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(sector.dim()));
    amps[static_cast<Eigen::Index>(sector.index_of(label))] = 1.0;
    return PureState(sector, amps);
}

PureState from_kets(int local_dim, const std::vector<std::pair<std::string, cplx>>& terms) {
    if (terms.empty()) throw ZeroState("empty superposition");
    const int L = static_cast<int>(terms.front().first.size());
    Sector s = Sector::distinguishable(L, local_dim);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(s.dim()));
    for (const auto& [ket, coeff] : terms) {
        if (static_cast<int>(ket.size()) != L) throw ShapeMismatch("ket '" + ket + "' has the wrong length");
        std::vector<int> digits;
        for (char c : ket) {
            const int d = c - '0';
            if (d < 0 || d >= local_dim) throw IndexOutOfRange("ket '" + ket + "' has a digit out of range");
            digits.push_back(d);
        }
        amps[static_cast<Eigen::Index>(s.index_of(digits))] += coeff;
    }
    return normalize(PureState(s, amps));
}

PureState ghz_state(int parties) {
    return from_kets(2, {{std::string(parties, '0'), 1.0}, {std::string(parties, '1'), 1.0}});
}

PureState w_state(int parties) {
    std::vector<std::pair<std::string, cplx>> terms;
    for (int p = 0; p < parties; ++p) {
        std::string ket(parties, '0');
        ket[p] = '1';
        terms.emplace_back(ket, 1.0);
    }
    return from_kets(2, terms);
}

PureState from_coefficient_matrix(SectorKind kind, const CMatrix& M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("coefficient matrix must be square");
    const auto N = static_cast<int>(M.rows());
    const double scale = std::max(1.0, M.norm());
    if (kind == SectorKind::bosonic && (M - M.transpose()).norm() > 1e-10 * scale)
        throw NotSymmetric("bosonic coefficient matrix must be symmetric");
    if (kind == SectorKind::fermionic && (M + M.transpose()).norm() > 1e-10 * scale)
        throw NotAntisymmetric("fermionic coefficient matrix must be antisymmetric");
    CVector t(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) t[i * N + j] = M(i, j);
    Sector s(kind, 2, N);
    return normalize(PureState::from_tensor(s, t));
}

CMatrix coefficient_matrix(const PureState& state) {
    const Sector& s = state.sector();
    if (s.parties() != 2) throw SectorMismatch("coefficient matrix requires a two-particle state");
    const int N = s.local_dim();
    const CVector t = state.tensor();
    CMatrix M(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) M(i, j) = t[i * N + j];
    return M;
}

CVector random_gaussian(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = cplx(g(rng), g(rng));
    return v;
}

PureState random_state(const Sector& sector, Rng& rng) {
    return normalize(PureState(sector, random_gaussian(sector.dim(), rng)));
}

CMatrix random_unitary(int n, Rng& rng) {
    CMatrix Z(n, n);
    Z.reshaped() = random_gaussian(static_cast<std::size_t>(n * n), rng);
    Eigen::HouseholderQR<CMatrix> qr(Z);
    CMatrix Q = qr.householderQ();
    const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const cplx d = R(i, i);
        if (std::abs(d) > 0) Q.col(i) *= d / std::abs(d);
    }
    return Q;
}

CMatrix random_special_linear(int n, Rng& rng, double scale) {
    CMatrix X(n, n);
    X.reshaped() = random_gaussian(static_cast<std::size_t>(n * n), rng);
    X -= (X.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
    X *= scale / std::sqrt(static_cast<double>(n));
    return X.exp();
}

}  // namespace slocc
