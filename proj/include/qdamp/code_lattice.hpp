#pragma once

#include <utility>
#include <vector>

#include "qdamp/state.hpp"

namespace qdamp {

enum class Gauge { Z, X };

/// (n, m) Bacon-Shor code on an n x m grid. Grid cell (r, c) is qubit
/// r*cols + c (row-major, zero-based).
struct CodeSpec {
    int rows = 1;
    int cols = 1;
    Gauge gauge = Gauge::Z;

    int num_qubits() const { return rows * cols; }
    int qubit(int r, int c) const { return r * cols + c; }

    void validate() const;
};

/// X-type generators on neighboring row pairs, then Z-type generators on
/// neighboring column pairs. All phases +1.
std::vector<PauliString> stabilizer_generators(const CodeSpec& spec);

/// Z gauge: ZZ on horizontally adjacent pairs, row-major.
/// X gauge: XX on vertically adjacent pairs, row-major over (row, col).
std::vector<PauliString> gauge_generators(const CodeSpec& spec);

/// (X-bar, Z-bar) = (X on all of row 0, Z on all of column 0).
std::pair<PauliString, PauliString> logical_operators(const CodeSpec& spec);

/// Fixed-gauge codeword |b-bar>, normalized.
QuantumState codeword(const CodeSpec& spec, int bit);

/// alpha |0-bar> + beta |1-bar>; input must be normalized to 1e-12.
QuantumState encode(const CodeSpec& spec, cplx alpha, cplx beta);

/// Gate-level encoder for the Z-gauge code restricted to `rows` (ascending).
/// The logical input sits at (rows.back(), 0); remaining listed-row qubits
/// start in |0>. Gates are listed first-applied-first and are self-inverse,
/// so the reversed list is the unencoding circuit.
std::vector<GateOp> encoding_circuit(const CodeSpec& spec, std::span<const int> rows);

/// Qubit holding the logical state before encoding / after unencoding.
int encoding_logical_qubit(const CodeSpec& spec, std::span<const int> rows);

}  // namespace qdamp
