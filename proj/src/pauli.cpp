#include "qdamp/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qdamp {

namespace {

void check_qubit_count(int n) {
    if (n < 0 || n > 64) {
        throw std::invalid_argument("PauliString supports 0..64 qubits");
    }
}

constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString PauliString::identity(int num_qubits) {
    check_qubit_count(num_qubits);
    return PauliString{num_qubits, 0, 0, 0};
}

PauliString PauliString::x_on(int num_qubits, std::uint64_t mask) {
    check_qubit_count(num_qubits);
    return PauliString{num_qubits, mask, 0, 0};
}

PauliString PauliString::z_on(int num_qubits, std::uint64_t mask) {
    check_qubit_count(num_qubits);
    return PauliString{num_qubits, 0, mask, 0};
}

PauliString PauliString::single(int num_qubits, int qubit, char axis) {
    check_qubit_count(num_qubits);
    if (qubit < 0 || qubit >= num_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    switch (axis) {
        case 'X':
            return PauliString{num_qubits, bit, 0, 0};
        case 'Z':
            return PauliString{num_qubits, 0, bit, 0};
        case 'Y':
            // Y = i * X * Z
            return PauliString{num_qubits, bit, bit, 1};
        default:
            throw std::invalid_argument("axis must be 'X', 'Y' or 'Z'");
    }
}

PauliString PauliString::times(const PauliString& other) const {
    if (num_qubits != other.num_qubits) {
        throw std::invalid_argument("PauliString size mismatch");
    }
    // Z^a X^b = (-1)^{|a&b|} X^b Z^a, so commuting our Z part past the other
    // X part contributes i^{2 * overlap}.
    const int overlap = std::popcount(z_mask & other.x_mask);
    PauliString out;
    out.num_qubits = num_qubits;
    out.x_mask = x_mask ^ other.x_mask;
    out.z_mask = z_mask ^ other.z_mask;
    out.phase_exp = static_cast<std::uint8_t>((phase_exp + other.phase_exp + 2 * overlap) & 3);
    return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
    const int anti =
        std::popcount(x_mask & other.z_mask) + std::popcount(z_mask & other.x_mask);
    return (anti & 1) == 0;
}

PauliString PauliString::with_extra_phase(int k) const {
    PauliString out = *this;
    out.phase_exp = static_cast<std::uint8_t>((phase_exp + (k % 4 + 4)) & 3);
    return out;
}

cplx PauliString::sign() const {
    // Per overlapping qubit, X*Z = -i Y, so the conventional sign gains i^{-1}.
    const int k = (phase_exp - std::popcount(x_mask & z_mask)) & 3;
    return kPhases[k];
}

bool PauliString::is_hermitian() const {
    const cplx s = sign();
    return s.imag() == 0.0;
}

bool PauliString::is_identity() const { return x_mask == 0 && z_mask == 0; }

cplx PauliString::phase_on(std::uint64_t index) const {
    const int k = (phase_exp + 2 * (std::popcount(z_mask & index) & 1)) & 3;
    return kPhases[k];
}

std::string PauliString::to_string() const {
    const cplx s = sign();
    std::string out;
    if (s == cplx{1, 0}) {
        out = "+";
    } else if (s == cplx{-1, 0}) {
        out = "-";
    } else if (s == cplx{0, 1}) {
        out = "+i";
    } else {
        out = "-i";
    }
    for (int q = 0; q < num_qubits; ++q) {
        const bool x = (x_mask >> q) & 1;
        const bool z = (z_mask >> q) & 1;
        out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
}

}  // namespace qdamp
