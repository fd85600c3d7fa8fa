#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qdamp/code_lattice.hpp"
#include "qdamp/program.hpp"

namespace qdamp {

/// Stages at which a single damping fault can be inserted. The CNOT stages
/// belong to the ZZ-measurement gadget, the others to the decoders.
enum class FaultStage { BeforeAll, AfterZtilde, AfterZZGauge, AfterFirstCNOT, AfterSecondCNOT };

struct FaultInjection {
    FaultStage stage = FaultStage::BeforeAll;
    int qubit = 0;
    double gamma = 0.0;
};

/// Minimum-weight repetition-code decoding from adjacent-pair syndromes.
/// Returns the flip pattern of length syndromes.size() + 1; the tie between
/// a pattern and its complement is broken toward leaving position 0 alone.
std::vector<char> repetition_decode(std::span<const int> syndromes);

/// Majority of +-1 values; ties (including the empty set) go to +1.
int majority_vote(std::span<const int> values);

struct RecoveryReport {
    std::vector<int> damped_rows;
    int undamped_count = 0;
    bool logical_flip_applied = false;
    bool failed = false;  // all rows damped: encoded information is gone
    std::vector<PauliString> corrections;
    std::vector<int> outcomes;
};

struct TeleportRecord {
    std::vector<int> ztilde_per_column;
    std::vector<int> damped_rows;
    int ell = 0;
    int xbar_majority = +1;
    int chosen_column = 0;
    bool good_column_found = true;
    std::vector<int> outcomes;
};

struct DecodedLeaf {
    QuantumState state;
    double weight = 0.0;
    RecoveryReport report;
};

struct CliffordLeaf {
    QuantumState state;
    double weight = 0.0;
    int logical_qubit = -1;
    RecoveryReport report;
};

struct TeleportLeaf {
    QuantumState state;
    double weight = 0.0;
    int block_b_offset = 0;
    TeleportRecord record;
};

/// Standard correction: measures the X- and Z-type stabilizer generators and
/// applies per-axis repetition-code corrections. Works in either gauge; the
/// block occupies qubits [0, n*m).
std::vector<DecodedLeaf> standard_correct(const QuantumState& state, const CodeSpec& spec);
DecodedLeaf standard_correct_sampled(const QuantumState& state, const CodeSpec& spec,
                                     RngStream& rng);

/// Damping-adapted Clifford decoder (Z gauge): flags damped rows from the ZZ
/// gauge checks, phase-corrects the surviving subcode, undoes the row-parity
/// bit flip, and reverses the subcode encoding circuit. The decoded qubit of
/// each leaf is leaf.logical_qubit; every other block qubit is measured out.
std::vector<CliffordLeaf> clifford_decode(const QuantumState& state, const CodeSpec& spec,
                                          const FaultInjection* fault = nullptr);
CliffordLeaf clifford_decode_sampled(const QuantumState& state, const CodeSpec& spec,
                                     RngStream& rng, const FaultInjection* fault = nullptr);

/// One-bit teleportation correction (Z gauge). Allocates a fresh block B in
/// |+bar>, measures Z-tilde (all columns in multi-column mode), the ZZ gauge
/// on A, then reads A out qubit by qubit and fixes up B with logical Paulis.
std::vector<TeleportLeaf> teleport_correct(const QuantumState& state, const CodeSpec& spec,
                                           bool multi_column,
                                           const FaultInjection* fault = nullptr);
TeleportLeaf teleport_correct_sampled(const QuantumState& state, const CodeSpec& spec,
                                      bool multi_column, RngStream& rng,
                                      const FaultInjection* fault = nullptr);

/// Syndrome-only correction (Z gauge): stabilizer/gauge measurements plus
/// Pauli corrections, using the ZZ checks for bit-flip error correction and
/// resetting leftover X syndromes on the damaged rows.
std::vector<DecodedLeaf> syndrome_correct(const QuantumState& state, const CodeSpec& spec);
DecodedLeaf syndrome_correct_sampled(const QuantumState& state, const CodeSpec& spec,
                                     RngStream& rng);

/// Z pattern on the first qubits of the damaged rows that returns every
/// X-stabilizer generator to +1, given the generator values left after the
/// undamaged-row phase correction. The row-pair adjacency graph is a path, so
/// a sweep always finds the unique solution; inconsistent inputs throw.
PauliString reset_pattern(const CodeSpec& spec, std::span<const int> damaged_rows,
                          std::span<const int> x_syndromes);

}  // namespace qdamp
