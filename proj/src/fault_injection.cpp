#include "qdamp/fault_injection.hpp"

#include <cmath>
#include <stdexcept>

#include "qdamp/channel.hpp"

namespace qdamp {

namespace {

// Applies the gadget circuit to a state with the ancilla at `anc`. `damp`
// selects the A0 (false) or A1 (true) branch at the fault location; with
// GadgetFault::None no Kraus factor is inserted at all.
void run_gadget_circuit(QuantumState& st, int q1, int q2, int anc, double gamma,
                        GadgetFault where, bool damp) {
    st.apply_gate(GateOp{GateKind::CNOT, q1, anc});
    if (where == GadgetFault::AfterFirstCNOT) {
        st.apply_single_qubit_kraus(anc, damp ? damping_a1(gamma) : damping_a0(gamma));
    }
    st.apply_gate(GateOp{GateKind::CNOT, q2, anc});
    if (where == GadgetFault::AfterSecondCNOT) {
        st.apply_single_qubit_kraus(anc, damp ? damping_a1(gamma) : damping_a0(gamma));
    }
}

}  // namespace

GadgetOutcome zz_gadget(const QuantumState& state, int q1, int q2, double gamma,
                        GadgetFault fault) {
    if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= state.num_qubits() ||
        q2 >= state.num_qubits()) {
        throw std::invalid_argument("gadget needs two distinct in-range data qubits");
    }
    validate_gamma(gamma);
    QuantumState joint = state.tensor(QuantumState::computational_basis(1, 0));
    const int anc = joint.num_qubits() - 1;
    run_gadget_circuit(joint, q1, q2, anc, gamma, fault, /*damp=*/true);

    GadgetOutcome out;
    for (int bit = 0; bit < 2; ++bit) {
        QuantumState branch = joint;
        branch.project_qubit(anc, bit);
        branch.set_norm_is_weight(true);
        const double w = branch.weight();
        if (w <= 0.0 && fault != GadgetFault::None) continue;
        GadgetBranch gb;
        gb.syndrome = bit == 0 ? +1 : -1;
        gb.absorbed = fault != GadgetFault::None;
        gb.weight = w;
        gb.state = w > 0.0 ? branch.extract_contiguous(0, state.num_qubits())
                           : QuantumState::computational_basis(state.num_qubits(), 0);
        if (w <= 0.0) gb.state.scale(0.0);
        gb.state.set_norm_is_weight(true);
        out.branches.push_back(std::move(gb));
    }
    return out;
}

std::array<cplx, 8> gadget_fault_operator(double gamma) {
    std::array<cplx, 8> op{};
    for (int d = 0; d < 2; ++d) {
        QuantumState st = QuantumState::computational_basis(2, static_cast<std::uint64_t>(d));
        // data qubit 0, ancilla qubit 1
        st.apply_gate(GateOp{GateKind::CNOT, 0, 1});
        st.apply_single_qubit_kraus(1, damping_a1(gamma));
        for (int data = 0; data < 2; ++data) {
            for (int a = 0; a < 2; ++a) {
                op[(2 * data + a) * 2 + d] =
                    st.amplitude(static_cast<std::uint64_t>(data) |
                                 (static_cast<std::uint64_t>(a) << 1));
            }
        }
    }
    return op;
}

std::vector<std::array<cplx, 16>> gadget_branch_operators(double gamma, GadgetFault where) {
    if (where == GadgetFault::None) {
        throw std::invalid_argument("branch operators are defined for a fault location");
    }
    std::vector<std::array<cplx, 16>> ops;
    for (int damp = 0; damp < 2; ++damp) {
        for (int bit = 0; bit < 2; ++bit) {
            std::array<cplx, 16> k{};
            bool nonzero = false;
            for (int in = 0; in < 4; ++in) {
                QuantumState st =
                    QuantumState::computational_basis(3, static_cast<std::uint64_t>(in));
                run_gadget_circuit(st, 0, 1, 2, gamma, where, damp == 1);
                st.project_qubit(2, bit);
                for (int out_basis = 0; out_basis < 4; ++out_basis) {
                    const cplx a = st.amplitude(static_cast<std::uint64_t>(out_basis) |
                                                (static_cast<std::uint64_t>(bit) << 2));
                    k[out_basis * 4 + in] = a;
                    if (std::abs(a) > 0.0) nonzero = true;
                }
            }
            if (nonzero) ops.push_back(k);
        }
    }
    return ops;
}

PropagationResult ancilla_phase_propagation(const CodeSpec& spec, int row, double gamma,
                                            cplx alpha, cplx beta) {
    spec.validate();
    if (spec.gauge != Gauge::Z) {
        throw std::invalid_argument("ancilla propagation analysis assumes the Z gauge");
    }
    if (row < 0 || row >= spec.rows || spec.cols < 2) {
        throw std::invalid_argument("row out of range or row too short for a ZZ check");
    }
    const QuantumState in = encode(spec, alpha, beta);
    const GadgetOutcome out = zz_gadget(in, spec.qubit(row, 0), spec.qubit(row, 1), gamma,
                                        GadgetFault::AfterFirstCNOT);
    PropagationResult res;
    res.state = QuantumState::computational_basis(spec.num_qubits(), 0);
    res.state.scale(0.0);
    res.state.set_norm_is_weight(true);
    for (const GadgetBranch& b : out.branches) {
        if (b.weight > res.weight) {
            res.weight = b.weight;
            res.state = b.state;
        }
    }
    if (res.weight > 0.0) res.state.normalize();
    return res;
}

InjectionResult inject_and_run(const CodeSpec& spec, DecoderKind procedure,
                               const FaultInjection& fault, cplx alpha, cplx beta) {
    spec.validate();
    const QuantumState input = encode(spec, alpha, beta);
    const std::array<double, 3> bloch{2.0 * (std::conj(alpha) * beta).real(),
                                      2.0 * (std::conj(alpha) * beta).imag(),
                                      std::norm(alpha) - std::norm(beta)};

    double weight = 0.0;
    double fidelity = 0.0;
    auto score_logical = [&](const QuantumState& st, const PauliString& x,
                             const PauliString& y, const PauliString& z) {
        double acc = st.weight();
        acc += bloch[0] * st.expectation(x).real();
        acc += bloch[1] * st.expectation(y).real();
        acc += bloch[2] * st.expectation(z).real();
        return 0.5 * acc;
    };

    switch (procedure) {
        case DecoderKind::Clifford: {
            for (const CliffordLeaf& leaf : clifford_decode(input, spec, &fault)) {
                const int n = leaf.state.num_qubits();
                fidelity += score_logical(
                    leaf.state, PauliString::single(n, leaf.logical_qubit, 'X'),
                    PauliString::single(n, leaf.logical_qubit, 'Y'),
                    PauliString::single(n, leaf.logical_qubit, 'Z'));
                weight += leaf.weight;
            }
            break;
        }
        case DecoderKind::Teleport:
        case DecoderKind::TeleportMulti: {
            const bool multi = procedure == DecoderKind::TeleportMulti;
            for (const TeleportLeaf& leaf : teleport_correct(input, spec, multi, &fault)) {
                const int n = leaf.state.num_qubits();
                const int off = leaf.block_b_offset;
                std::uint64_t row0 = ((std::uint64_t{1} << spec.cols) - 1) << off;
                std::uint64_t col0 = 0;
                for (int r = 0; r < spec.rows; ++r) {
                    col0 |= std::uint64_t{1} << (off + spec.qubit(r, 0));
                }
                const PauliString x = PauliString::x_on(n, row0);
                const PauliString z = PauliString::z_on(n, col0);
                const PauliString y = x.times(z).with_extra_phase(1);
                fidelity += score_logical(leaf.state, x, y, z);
                weight += leaf.weight;
            }
            break;
        }
        default:
            throw std::invalid_argument(
                "fault injection targets the clifford or teleportation procedures");
    }

    InjectionResult res;
    res.branch_weight = weight;
    if (weight <= 1e-300) {
        res.zero_weight = true;
        return res;
    }
    res.fidelity = fidelity / weight;
    return res;
}

}  // namespace qdamp
