#include "qdamp/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdamp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

Mat2 Mat2::dagger() const {
    Mat2 out;
    out(0, 0) = std::conj((*this)(0, 0));
    out(0, 1) = std::conj((*this)(1, 0));
    out(1, 0) = std::conj((*this)(0, 1));
    out(1, 1) = std::conj((*this)(1, 1));
    return out;
}

Mat2 Mat2::times(const Mat2& other) const {
    Mat2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out(r, c) = (*this)(r, 0) * other(0, c) + (*this)(r, 1) * other(1, c);
        }
    }
    return out;
}

Mat2 Mat2::plus(const Mat2& other) const {
    Mat2 out;
    for (int i = 0; i < 4; ++i) out.a[i] = a[i] + other.a[i];
    return out;
}

Mat2 Mat2::scaled(cplx factor) const {
    Mat2 out;
    for (int i = 0; i < 4; ++i) out.a[i] = a[i] * factor;
    return out;
}

double Mat2::max_abs_diff(const Mat2& other) const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - other.a[i]));
    return m;
}

QuantumState QuantumState::computational_basis(int num_qubits, std::uint64_t bits) {
    if (num_qubits < 0 || num_qubits > 30) {
        throw std::invalid_argument("unsupported qubit count");
    }
    QuantumState st;
    st.num_qubits_ = num_qubits;
    st.data_.assign(std::uint64_t{1} << num_qubits, cplx{});
    st.data_[bits] = cplx{1, 0};
    return st;
}

QuantumState QuantumState::from_vector(int num_qubits, std::vector<cplx> amplitudes) {
    if (amplitudes.size() != (std::uint64_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude count does not match qubit count");
    }
    QuantumState st;
    st.num_qubits_ = num_qubits;
    st.data_ = std::move(amplitudes);
    return st;
}

QuantumState QuantumState::density_of(const QuantumState& pure) {
    if (pure.density_) return pure;
    QuantumState st;
    st.num_qubits_ = pure.num_qubits_;
    st.density_ = true;
    st.norm_is_weight_ = pure.norm_is_weight_;
    const std::uint64_t d = pure.dim();
    st.data_.assign(d * d, cplx{});
    for (std::uint64_t r = 0; r < d; ++r) {
        if (pure.data_[r] == cplx{}) continue;
        for (std::uint64_t c = 0; c < d; ++c) {
            st.data_[r * d + c] = pure.data_[r] * std::conj(pure.data_[c]);
        }
    }
    return st;
}

double QuantumState::weight() const {
    if (density_) {
        const std::uint64_t d = dim();
        double tr = 0.0;
        for (std::uint64_t i = 0; i < d; ++i) tr += data_[i * d + i].real();
        return tr;
    }
    double n2 = 0.0;
    for (const cplx& a : data_) n2 += std::norm(a);
    return n2;
}

void QuantumState::normalize() {
    const double w = weight();
    if (w <= 0.0) {
        throw std::runtime_error("cannot normalize zero-weight state");
    }
    const double f = density_ ? 1.0 / w : 1.0 / std::sqrt(w);
    for (cplx& a : data_) a *= f;
}

void QuantumState::scale(cplx factor) {
    for (cplx& a : data_) a *= factor;
}

cplx QuantumState::density_entry(std::uint64_t row, std::uint64_t col) const {
    if (!density_) throw std::logic_error("not a density matrix");
    return data_[row * dim() + col];
}

QuantumState QuantumState::tensor(const QuantumState& other) const {
    if (density_ || other.density_) {
        const QuantumState lo = density_ ? *this : density_of(*this);
        const QuantumState hi = other.density_ ? other : density_of(other);
        QuantumState st;
        st.num_qubits_ = lo.num_qubits_ + hi.num_qubits_;
        st.density_ = true;
        st.norm_is_weight_ = norm_is_weight_;
        const std::uint64_t d0 = lo.dim();
        const std::uint64_t d1 = hi.dim();
        const std::uint64_t d = d0 * d1;
        st.data_.assign(d * d, cplx{});
        for (std::uint64_t rh = 0; rh < d1; ++rh) {
            for (std::uint64_t ch = 0; ch < d1; ++ch) {
                const cplx h = hi.data_[rh * d1 + ch];
                if (h == cplx{}) continue;
                for (std::uint64_t rl = 0; rl < d0; ++rl) {
                    for (std::uint64_t cl = 0; cl < d0; ++cl) {
                        st.data_[((rh << lo.num_qubits_) | rl) * d +
                                 ((ch << lo.num_qubits_) | cl)] =
                            h * lo.data_[rl * d0 + cl];
                    }
                }
            }
        }
        return st;
    }
    QuantumState st;
    st.num_qubits_ = num_qubits_ + other.num_qubits_;
    st.norm_is_weight_ = norm_is_weight_;
    const std::uint64_t d0 = dim();
    st.data_.assign(std::uint64_t{1} << st.num_qubits_, cplx{});
    for (std::uint64_t hi = 0; hi < other.dim(); ++hi) {
        if (other.data_[hi] == cplx{}) continue;
        for (std::uint64_t lo = 0; lo < d0; ++lo) {
            st.data_[(hi << num_qubits_) | lo] = other.data_[hi] * data_[lo];
        }
    }
    return st;
}

QuantumState QuantumState::with_appended_zero_qubit() const {
    QuantumState out;
    out.num_qubits_ = num_qubits_ + 1;
    out.density_ = density_;
    out.norm_is_weight_ = norm_is_weight_;
    const std::uint64_t d = dim();
    if (!density_) {
        out.data_.assign(2 * d, cplx{});
        std::copy(data_.begin(), data_.end(), out.data_.begin());
        return out;
    }
    out.data_.assign(4 * d * d, cplx{});
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            out.data_[r * 2 * d + c] = data_[r * d + c];
        }
    }
    return out;
}

void QuantumState::check_vector() const {
    if (density_) throw std::logic_error("operation requires state-vector form");
}

void QuantumState::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::invalid_argument("qubit index out of range");
    }
}

void QuantumState::pauli_on_vector(std::vector<cplx>& vec, const PauliString& p) {
    const std::uint64_t n = vec.size();
    const std::uint64_t x = p.x_mask;
    if (x == 0) {
        for (std::uint64_t s = 0; s < n; ++s) vec[s] *= p.phase_on(s);
        return;
    }
    for (std::uint64_t s = 0; s < n; ++s) {
        const std::uint64_t t = s ^ x;
        if (t < s) continue;
        const cplx ps = p.phase_on(s);
        const cplx pt = p.phase_on(t);
        const cplx vs = vec[s];
        vec[s] = pt * vec[t];
        vec[t] = ps * vs;
    }
}

void QuantumState::gate_on_vector(std::vector<cplx>& vec, int num_qubits, const GateOp& op) {
    const std::uint64_t n = vec.size();
    switch (op.kind) {
        case GateKind::CNOT: {
            const std::uint64_t cm = std::uint64_t{1} << op.a;
            const std::uint64_t tm = std::uint64_t{1} << op.b;
            for (std::uint64_t s = 0; s < n; ++s) {
                if ((s & cm) && !(s & tm)) {
                    std::swap(vec[s], vec[s | tm]);
                }
            }
            break;
        }
        case GateKind::CPHASE: {
            const std::uint64_t both =
                (std::uint64_t{1} << op.a) | (std::uint64_t{1} << op.b);
            for (std::uint64_t s = 0; s < n; ++s) {
                if ((s & both) == both) vec[s] = -vec[s];
            }
            break;
        }
        case GateKind::H: {
            const std::uint64_t qm = std::uint64_t{1} << op.a;
            for (std::uint64_t s = 0; s < n; ++s) {
                if (s & qm) continue;
                const cplx a0 = vec[s];
                const cplx a1 = vec[s | qm];
                vec[s] = (a0 + a1) * kInvSqrt2;
                vec[s | qm] = (a0 - a1) * kInvSqrt2;
            }
            break;
        }
    }
    (void)num_qubits;
}

void QuantumState::kraus_on_vector(std::vector<cplx>& vec, int num_qubits, int qubit,
                                   const Mat2& k) {
    const std::uint64_t qm = std::uint64_t{1} << qubit;
    const std::uint64_t n = vec.size();
    for (std::uint64_t s = 0; s < n; ++s) {
        if (s & qm) continue;
        const cplx a0 = vec[s];
        const cplx a1 = vec[s | qm];
        vec[s] = k(0, 0) * a0 + k(0, 1) * a1;
        vec[s | qm] = k(1, 0) * a0 + k(1, 1) * a1;
    }
    (void)num_qubits;
}

template <typename Kernel>
void QuantumState::on_density(Kernel&& kernel) {
    const std::uint64_t d = dim();
    std::vector<cplx> scratch(d);
    // Ket side: transform each column, rho -> A rho.
    for (std::uint64_t c = 0; c < d; ++c) {
        for (std::uint64_t r = 0; r < d; ++r) scratch[r] = data_[r * d + c];
        kernel(scratch);
        for (std::uint64_t r = 0; r < d; ++r) data_[r * d + c] = scratch[r];
    }
    // Bra side: rho -> rho A^dagger. Conjugating before and after the kernel
    // turns the applied matrix into its entrywise conjugate, which is exactly
    // the factor needed on the right.
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) scratch[c] = std::conj(data_[r * d + c]);
        kernel(scratch);
        for (std::uint64_t c = 0; c < d; ++c) data_[r * d + c] = std::conj(scratch[c]);
    }
}

void QuantumState::apply_pauli(const PauliString& p) {
    if (p.num_qubits != num_qubits_) {
        throw std::invalid_argument("PauliString size does not match state");
    }
    if (!density_) {
        pauli_on_vector(data_, p);
        return;
    }
    on_density([&](std::vector<cplx>& v) { pauli_on_vector(v, p); });
}

void QuantumState::apply_gate(const GateOp& op) {
    check_qubit(op.a);
    if (op.kind != GateKind::H) {
        check_qubit(op.b);
        if (op.a == op.b) throw std::invalid_argument("gate targets must be distinct");
    }
    if (!density_) {
        gate_on_vector(data_, num_qubits_, op);
        return;
    }
    on_density([&](std::vector<cplx>& v) { gate_on_vector(v, num_qubits_, op); });
}

void QuantumState::apply_single_qubit_kraus(int qubit, const Mat2& k) {
    check_qubit(qubit);
    if (!density_) {
        kraus_on_vector(data_, num_qubits_, qubit, k);
        return;
    }
    on_density([&](std::vector<cplx>& v) { kraus_on_vector(v, num_qubits_, qubit, k); });
}

void QuantumState::apply_single_qubit_channel(int qubit, std::span<const Mat2> kraus) {
    if (!density_) {
        throw std::logic_error("channel application requires density form");
    }
    check_qubit(qubit);
    QuantumState acc = *this;
    bool first = true;
    for (const Mat2& k : kraus) {
        QuantumState term = *this;
        term.apply_single_qubit_kraus(qubit, k);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            for (std::uint64_t i = 0; i < acc.data_.size(); ++i) {
                acc.data_[i] += term.data_[i];
            }
        }
    }
    data_ = std::move(acc.data_);
}

void QuantumState::project_pauli(const PauliString& p, int sign) {
    if (p.num_qubits != num_qubits_) {
        throw std::invalid_argument("PauliString size does not match state");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("measured Pauli must have phase +1 or -1");
    }
    const double s = sign >= 0 ? 1.0 : -1.0;
    if (!density_) {
        std::vector<cplx> pv = data_;
        pauli_on_vector(pv, p);
        for (std::uint64_t i = 0; i < data_.size(); ++i) {
            data_[i] = 0.5 * (data_[i] + s * pv[i]);
        }
        return;
    }
    on_density([&](std::vector<cplx>& v) {
        std::vector<cplx> pv = v;
        pauli_on_vector(pv, p);
        for (std::uint64_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + s * pv[i]);
    });
}

void QuantumState::project_qubit(int qubit, int bit) {
    check_qubit(qubit);
    const std::uint64_t qm = std::uint64_t{1} << qubit;
    const std::uint64_t want = bit ? qm : 0;
    if (!density_) {
        for (std::uint64_t s = 0; s < data_.size(); ++s) {
            if ((s & qm) != want) data_[s] = cplx{};
        }
        return;
    }
    const std::uint64_t d = dim();
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            if ((r & qm) != want || (c & qm) != want) data_[r * d + c] = cplx{};
        }
    }
}

double QuantumState::qubit_weight(int qubit, int bit) const {
    check_qubit(qubit);
    const std::uint64_t qm = std::uint64_t{1} << qubit;
    const std::uint64_t want = bit ? qm : 0;
    double w = 0.0;
    if (!density_) {
        for (std::uint64_t s = 0; s < data_.size(); ++s) {
            if ((s & qm) == want) w += std::norm(data_[s]);
        }
        return w;
    }
    const std::uint64_t d = dim();
    for (std::uint64_t i = 0; i < d; ++i) {
        if ((i & qm) == want) w += data_[i * d + i].real();
    }
    return w;
}

cplx QuantumState::expectation(const PauliString& p) const {
    if (p.num_qubits != num_qubits_) {
        throw std::invalid_argument("PauliString size does not match state");
    }
    cplx acc{};
    if (!density_) {
        // <psi|P|psi> = sum_s conj(psi[s ^ x]) phase(s) psi[s]
        for (std::uint64_t s = 0; s < data_.size(); ++s) {
            if (data_[s] == cplx{}) continue;
            acc += std::conj(data_[s ^ p.x_mask]) * p.phase_on(s) * data_[s];
        }
        return acc;
    }
    // Tr(P rho) = sum_s phase(s) rho[s ^ x, s] ... P|s> lands on row s ^ x.
    const std::uint64_t d = dim();
    for (std::uint64_t s = 0; s < d; ++s) {
        acc += p.phase_on(s) * data_[s * d + (s ^ p.x_mask)];
    }
    return acc;
}

cplx QuantumState::inner(const QuantumState& other) const {
    check_vector();
    other.check_vector();
    if (num_qubits_ != other.num_qubits_) {
        throw std::invalid_argument("state size mismatch");
    }
    cplx acc{};
    for (std::uint64_t i = 0; i < data_.size(); ++i) {
        acc += std::conj(data_[i]) * other.data_[i];
    }
    return acc;
}

double QuantumState::max_abs_diff(const QuantumState& other) const {
    if (density_ != other.density_ || num_qubits_ != other.num_qubits_) {
        throw std::invalid_argument("states are not comparable");
    }
    double m = 0.0;
    for (std::uint64_t i = 0; i < data_.size(); ++i) {
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    }
    return m;
}

QuantumState QuantumState::permute_qubits(std::span<const int> perm) const {
    check_vector();
    if (static_cast<int>(perm.size()) != num_qubits_) {
        throw std::invalid_argument("permutation size mismatch");
    }
    QuantumState out;
    out.num_qubits_ = num_qubits_;
    out.norm_is_weight_ = norm_is_weight_;
    out.data_.assign(data_.size(), cplx{});
    for (std::uint64_t s = 0; s < data_.size(); ++s) {
        if (data_[s] == cplx{}) continue;
        std::uint64_t t = 0;
        for (int q = 0; q < num_qubits_; ++q) {
            if ((s >> q) & 1) t |= std::uint64_t{1} << perm[q];
        }
        out.data_[t] = data_[s];
    }
    return out;
}

QuantumState QuantumState::extract_contiguous(int start, int count) const {
    check_vector();
    if (start < 0 || count < 0 || start + count > num_qubits_) {
        throw std::invalid_argument("extract range out of bounds");
    }
    // Locate the definite value of every dropped qubit.
    const std::uint64_t keep_mask = ((std::uint64_t{1} << count) - 1) << start;
    std::uint64_t outside = 0;
    bool found = false;
    double best = 0.0;
    for (std::uint64_t s = 0; s < data_.size(); ++s) {
        const double w = std::norm(data_[s]);
        if (w > best) {
            best = w;
            outside = s & ~keep_mask;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("cannot extract from zero state");
    const double total = weight();
    double kept = 0.0;
    QuantumState out;
    out.num_qubits_ = count;
    out.norm_is_weight_ = norm_is_weight_;
    out.data_.assign(std::uint64_t{1} << count, cplx{});
    for (std::uint64_t sub = 0; sub < out.data_.size(); ++sub) {
        const cplx a = data_[outside | (sub << start)];
        out.data_[sub] = a;
        kept += std::norm(a);
    }
    if (kept < total * (1.0 - 1e-9)) {
        throw std::runtime_error("dropped qubits are not in a definite basis state");
    }
    return out;
}

std::pair<MeasurementBranch, MeasurementBranch> measure_pauli(const QuantumState& state,
                                                              const PauliString& p) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("measured Pauli must have phase +1 or -1");
    }
    MeasurementBranch plus;
    plus.outcomes = {+1};
    plus.post_state = state;
    plus.post_state.project_pauli(p, +1);
    plus.post_state.set_norm_is_weight(true);
    plus.weight = plus.post_state.weight();

    MeasurementBranch minus;
    minus.outcomes = {-1};
    minus.post_state = state;
    minus.post_state.project_pauli(p, -1);
    minus.post_state.set_norm_is_weight(true);
    minus.weight = minus.post_state.weight();
    return {std::move(plus), std::move(minus)};
}

double entanglement_fidelity(const QuantumState& rho) {
    if (rho.num_qubits() != 2) {
        throw std::invalid_argument("entanglement fidelity expects a two-qubit state");
    }
    if (!rho.is_density()) {
        const cplx overlap = (rho.amplitude(0) + rho.amplitude(3)) * kInvSqrt2;
        return std::norm(overlap);
    }
    const cplx v = 0.5 * (rho.density_entry(0, 0) + rho.density_entry(0, 3) +
                          rho.density_entry(3, 0) + rho.density_entry(3, 3));
    return v.real();
}

}  // namespace qdamp
