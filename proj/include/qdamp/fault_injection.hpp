#pragma once

#include <array>
#include <vector>

#include "qdamp/analysis.hpp"
#include "qdamp/decoders.hpp"

namespace qdamp {

enum class GadgetFault { None, AfterFirstCNOT, AfterSecondCNOT };

/// One branch of the single-ancilla ZZ-measurement gadget. The ancilla is
/// measured out and dropped; `state` is the remaining register.
struct GadgetBranch {
    int syndrome = +1;      // ancilla readout as +-1
    bool absorbed = false;  // the fault consumed the parity information
    double weight = 0.0;
    QuantumState state;
};

struct GadgetOutcome {
    std::vector<GadgetBranch> branches;
};

/// Measures Z_{q1} Z_{q2} with one ancilla prepared in |0> and two CNOTs.
/// With a fault, the conditioned single-A1 branch is returned (weight tracks
/// the branch probability).
GadgetOutcome zz_gadget(const QuantumState& state, int q1, int q2, double gamma,
                        GadgetFault fault = GadgetFault::None);

/// Effective operator of the AfterFirstCNOT ancilla fault, mapping the
/// control-qubit input space into (data (x) ancilla). Entry layout is
/// out[(2*data + ancilla) * 2 + data_in]; ideally sqrt(gamma)|1><1| (x) |0>.
std::array<cplx, 8> gadget_fault_operator(double gamma);

/// Effective 4x4 operators of every gadget branch on the data pair when the
/// fault location carries a full damping channel (A0 and A1 branches times
/// the ancilla readout); these satisfy sum K^dag K = I.
std::vector<std::array<cplx, 16>> gadget_branch_operators(double gamma, GadgetFault where);

/// Data-block state conditioned on ancilla damping after the first CNOT of a
/// ZZ gauge check inside `row` (columns 0 and 1); the undamaged codeword
/// collapses to |1...1>_row (x) Xbar'|phi'>.
struct PropagationResult {
    QuantumState state;  // normalized unless weight is zero
    double weight = 0.0;
};
PropagationResult ancilla_phase_propagation(const CodeSpec& spec, int row, double gamma,
                                            cplx alpha = {1, 0}, cplx beta = {0, 0});

struct InjectionResult {
    double fidelity = 0.0;
    double branch_weight = 0.0;
    bool zero_weight = false;
};

/// Runs a decoder with a single conditioned A1 insertion at the fault
/// location and reports the decoded fidelity against the ideal input.
InjectionResult inject_and_run(const CodeSpec& spec, DecoderKind procedure,
                               const FaultInjection& fault, cplx alpha, cplx beta);

}  // namespace qdamp
