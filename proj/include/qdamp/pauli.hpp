#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace qdamp {

using cplx = std::complex<double>;

/// Signed Pauli operator on up to 64 qubits in symplectic (X/Z bit-mask) form.
///
/// The operator represented is i^phase_exp * prod_q X_q^{x_q} Z_q^{z_q},
/// where x_q / z_q are the bits of x_mask / z_mask. Qubit q maps to bit q
/// of a basis-state index. A qubit with both bits set carries X*Z = -iY,
/// so a conventional +Y on qubit q is stored with phase_exp = 1.
struct PauliString {
    int num_qubits = 0;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    std::uint8_t phase_exp = 0;  // power of i, mod 4

    static PauliString identity(int num_qubits);
    static PauliString x_on(int num_qubits, std::uint64_t mask);
    static PauliString z_on(int num_qubits, std::uint64_t mask);
    // axis is one of 'X', 'Y', 'Z'.
    static PauliString single(int num_qubits, int qubit, char axis);

    PauliString times(const PauliString& other) const;
    bool commutes_with(const PauliString& other) const;

    // Multiplies the stored phase by i^k.
    PauliString with_extra_phase(int k) const;

    // Scalar in front of the conventional tensor product of I/X/Y/Z factors.
    cplx sign() const;
    // True when the operator is Hermitian (sign is +1 or -1).
    bool is_hermitian() const;
    bool is_identity() const;

    // Phase picked up on basis state |index>: P|index> = phase_on(index)|index ^ x_mask>.
    cplx phase_on(std::uint64_t index) const;

    // Rendering like "+XXIZ" (qubit 0 leftmost); Y printed for overlapping X,Z bits.
    std::string to_string() const;

    bool operator==(const PauliString& other) const = default;
};

}  // namespace qdamp
