#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qdamp/pauli.hpp"

namespace qdamp {

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> a{};

    cplx operator()(int r, int c) const { return a[2 * r + c]; }
    cplx& operator()(int r, int c) { return a[2 * r + c]; }

    static Mat2 zero() { return Mat2{}; }
    static Mat2 identity() { return Mat2{{cplx{1, 0}, {}, {}, cplx{1, 0}}}; }

    Mat2 dagger() const;
    Mat2 times(const Mat2& other) const;
    Mat2 plus(const Mat2& other) const;
    Mat2 scaled(cplx factor) const;
    double max_abs_diff(const Mat2& other) const;
};

enum class GateKind { CNOT, CPHASE, H };

struct GateOp {
    GateKind kind;
    int a = 0;  // control for CNOT, first qubit otherwise
    int b = 0;  // target / second qubit; unused for H
};

/// Dense quantum state: either a state vector of length 2^n or a density
/// matrix of size 2^n x 2^n. Branch probabilities are carried in the norm
/// (squared norm for vectors, trace for densities) when norm_is_weight is set.
class QuantumState {
public:
    QuantumState() = default;

    static QuantumState computational_basis(int num_qubits, std::uint64_t bits);
    static QuantumState from_vector(int num_qubits, std::vector<cplx> amplitudes);
    static QuantumState density_of(const QuantumState& pure);

    int num_qubits() const { return num_qubits_; }
    bool is_density() const { return density_; }
    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }

    bool norm_is_weight() const { return norm_is_weight_; }
    void set_norm_is_weight(bool flag) { norm_is_weight_ = flag; }

    /// <psi|psi> for vectors, Tr(rho) for densities.
    double weight() const;
    void normalize();
    void scale(cplx factor);

    const std::vector<cplx>& data() const { return data_; }
    cplx amplitude(std::uint64_t index) const { return data_[index]; }
    cplx density_entry(std::uint64_t row, std::uint64_t col) const;

    /// Places `other`'s qubits above this state's qubits.
    QuantumState tensor(const QuantumState& other) const;

    /// Appends one qubit in |0> above the existing register; works in both
    /// vector and density form.
    QuantumState with_appended_zero_qubit() const;

    void apply_pauli(const PauliString& p);
    void apply_gate(const GateOp& op);
    void apply_single_qubit_kraus(int qubit, const Mat2& k);
    /// Density form only: rho -> sum_k K rho K^dagger.
    void apply_single_qubit_channel(int qubit, std::span<const Mat2> kraus);

    /// Keeps the (I + sign*P)/2 component; sign is +1 or -1.
    void project_pauli(const PauliString& p, int sign);
    void project_qubit(int qubit, int bit);

    /// Probability mass with the given qubit equal to `bit` (unnormalized).
    double qubit_weight(int qubit, int bit) const;

    /// Unnormalized expectation <psi|P|psi> or Tr(P rho).
    cplx expectation(const PauliString& p) const;
    /// Vector form only.
    cplx inner(const QuantumState& other) const;

    double max_abs_diff(const QuantumState& other) const;

    /// Reorders qubits: new index of old qubit q is perm[q].
    QuantumState permute_qubits(std::span<const int> perm) const;

    /// Extracts qubits [start, start+count); every other qubit must be in a
    /// definite computational-basis state.
    QuantumState extract_contiguous(int start, int count) const;

private:
    void check_vector() const;
    void check_qubit(int qubit) const;
    // Applies a single-qubit matrix to a raw state vector.
    static void kraus_on_vector(std::vector<cplx>& vec, int num_qubits, int qubit,
                                const Mat2& k);
    static void gate_on_vector(std::vector<cplx>& vec, int num_qubits, const GateOp& op);
    static void pauli_on_vector(std::vector<cplx>& vec, const PauliString& p);
    // Runs a vector kernel over every column (ket side), then the conjugated
    // kernel over every row (bra side) of the density matrix.
    template <typename Kernel>
    void on_density(Kernel&& kernel);

    int num_qubits_ = 0;
    bool density_ = false;
    bool norm_is_weight_ = false;
    std::vector<cplx> data_;
};

/// One leaf of a measurement-branch enumeration.
struct MeasurementBranch {
    std::vector<int> outcomes;  // +1 / -1 per measurement, in program order
    double weight = 0.0;
    QuantumState post_state;
};

/// Projective Pauli measurement; returns the +1 branch first. Post-states are
/// left unnormalized with norm_is_weight set.
std::pair<MeasurementBranch, MeasurementBranch> measure_pauli(const QuantumState& state,
                                                              const PauliString& p);

/// <Phi+|rho|Phi+> for a two-qubit state, |Phi+> = (|00> + |11>)/sqrt(2).
double entanglement_fidelity(const QuantumState& rho);

}  // namespace qdamp
