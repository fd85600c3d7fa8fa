#include "qdamp/code_lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace qdamp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::uint64_t row_mask(const CodeSpec& spec, int r) {
    return ((std::uint64_t{1} << spec.cols) - 1) << (r * spec.cols);
}

std::uint64_t col_mask(const CodeSpec& spec, int c) {
    std::uint64_t m = 0;
    for (int r = 0; r < spec.rows; ++r) m |= std::uint64_t{1} << spec.qubit(r, c);
    return m;
}

// Z-gauge codewords via the row recursion: the (n,m) word is
// |0..0> (x) |phi'> + |1..1> (x) Xbar' |phi'> over the (n-1,m) word.
std::vector<cplx> codeword_z_vector(int rows, int cols, int bit) {
    const std::uint64_t base_ones = (std::uint64_t{1} << cols) - 1;
    if (rows == 1) {
        std::vector<cplx> v(std::uint64_t{1} << cols, cplx{});
        v[bit ? base_ones : 0] = cplx{1, 0};
        return v;
    }
    const std::vector<cplx> prev = codeword_z_vector(rows - 1, cols, bit);
    std::vector<cplx> v(std::uint64_t{1} << (rows * cols), cplx{});
    for (std::uint64_t i = 0; i < prev.size(); ++i) {
        // Row 0 all zeros carries |phi'>, row 0 all ones carries Xbar'|phi'>;
        // Xbar' flips the low m bits of the remaining rows.
        v[i << cols] += prev[i] * kInvSqrt2;
        v[(i << cols) | base_ones] += prev[i ^ base_ones] * kInvSqrt2;
    }
    return v;
}

// X-gauge codeword: Hadamard image of the transposed Z-gauge |b-tilde> with
// the logical basis rotated, |b-hat> = H^(x)nm T (|0-bar> + (-1)^b |1-bar>)/sqrt(2).
QuantumState codeword_x(const CodeSpec& spec, int bit) {
    const CodeSpec transposed{spec.cols, spec.rows, Gauge::Z};
    const double sign = bit ? -1.0 : 1.0;
    QuantumState st = encode(transposed, kInvSqrt2, sign * kInvSqrt2);
    for (int q = 0; q < spec.num_qubits(); ++q) {
        st.apply_gate(GateOp{GateKind::H, q, 0});
    }
    // Transpose the grid: qubit (c, r) of the transposed code becomes (r, c).
    std::vector<int> perm(spec.num_qubits());
    for (int c = 0; c < transposed.rows; ++c) {
        for (int r = 0; r < transposed.cols; ++r) {
            perm[transposed.qubit(c, r)] = spec.qubit(r, c);
        }
    }
    return st.permute_qubits(perm);
}

}  // namespace

void CodeSpec::validate() const {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("code dimensions must be positive");
    }
    if (rows * cols > 26) {
        throw std::invalid_argument("code too large for dense simulation");
    }
}

std::vector<PauliString> stabilizer_generators(const CodeSpec& spec) {
    spec.validate();
    const int n = spec.num_qubits();
    std::vector<PauliString> out;
    out.reserve(spec.rows + spec.cols - 2);
    for (int r = 0; r + 1 < spec.rows; ++r) {
        out.push_back(PauliString::x_on(n, row_mask(spec, r) | row_mask(spec, r + 1)));
    }
    for (int c = 0; c + 1 < spec.cols; ++c) {
        out.push_back(PauliString::z_on(n, col_mask(spec, c) | col_mask(spec, c + 1)));
    }
    return out;
}

std::vector<PauliString> gauge_generators(const CodeSpec& spec) {
    spec.validate();
    const int n = spec.num_qubits();
    std::vector<PauliString> out;
    if (spec.gauge == Gauge::Z) {
        out.reserve(spec.rows * (spec.cols - 1));
        for (int r = 0; r < spec.rows; ++r) {
            for (int c = 0; c + 1 < spec.cols; ++c) {
                const std::uint64_t m = (std::uint64_t{1} << spec.qubit(r, c)) |
                                        (std::uint64_t{1} << spec.qubit(r, c + 1));
                out.push_back(PauliString::z_on(n, m));
            }
        }
    } else {
        out.reserve((spec.rows - 1) * spec.cols);
        for (int r = 0; r + 1 < spec.rows; ++r) {
            for (int c = 0; c < spec.cols; ++c) {
                const std::uint64_t m = (std::uint64_t{1} << spec.qubit(r, c)) |
                                        (std::uint64_t{1} << spec.qubit(r + 1, c));
                out.push_back(PauliString::x_on(n, m));
            }
        }
    }
    return out;
}

std::pair<PauliString, PauliString> logical_operators(const CodeSpec& spec) {
    spec.validate();
    const int n = spec.num_qubits();
    return {PauliString::x_on(n, row_mask(spec, 0)),
            PauliString::z_on(n, col_mask(spec, 0))};
}

QuantumState codeword(const CodeSpec& spec, int bit) {
    spec.validate();
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    if (spec.gauge == Gauge::X) return codeword_x(spec, bit);
    return QuantumState::from_vector(spec.num_qubits(),
                                     codeword_z_vector(spec.rows, spec.cols, bit));
}

QuantumState encode(const CodeSpec& spec, cplx alpha, cplx beta) {
    spec.validate();
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("encode requires a normalized amplitude pair");
    }
    QuantumState zero = codeword(spec, 0);
    const QuantumState one = codeword(spec, 1);
    std::vector<cplx> amps(zero.dim());
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        amps[i] = alpha * zero.amplitude(i) + beta * one.amplitude(i);
    }
    return QuantumState::from_vector(spec.num_qubits(), amps);
}

std::vector<GateOp> encoding_circuit(const CodeSpec& spec, std::span<const int> rows) {
    spec.validate();
    if (spec.gauge != Gauge::Z) {
        throw std::invalid_argument("encoding circuit is defined for the Z gauge");
    }
    if (rows.empty()) throw std::invalid_argument("need at least one row");
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= spec.rows ||
            (i > 0 && rows[i] <= rows[i - 1])) {
            throw std::invalid_argument("rows must be ascending and in range");
        }
    }
    std::vector<GateOp> ops;
    const int base = rows.back();
    // Base row: fan the logical bit out across the row.
    for (int c = 1; c < spec.cols; ++c) {
        ops.push_back({GateKind::CNOT, spec.qubit(base, 0), spec.qubit(base, c)});
    }
    // Stack rows on top, innermost first.
    for (int i = static_cast<int>(rows.size()) - 2; i >= 0; --i) {
        const int r = rows[i];
        const int below = rows[i + 1];
        ops.push_back({GateKind::H, spec.qubit(r, 0), 0});
        for (int c = 1; c < spec.cols; ++c) {
            ops.push_back({GateKind::CNOT, spec.qubit(r, 0), spec.qubit(r, c)});
        }
        for (int c = 0; c < spec.cols; ++c) {
            ops.push_back({GateKind::CNOT, spec.qubit(r, 0), spec.qubit(below, c)});
        }
    }
    return ops;
}

int encoding_logical_qubit(const CodeSpec& spec, std::span<const int> rows) {
    if (rows.empty()) throw std::invalid_argument("need at least one row");
    return spec.qubit(rows.back(), 0);
}

}  // namespace qdamp
