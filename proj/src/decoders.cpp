#include "qdamp/decoders.hpp"

#include <algorithm>
#include <stdexcept>

#include "qdamp/channel.hpp"

namespace qdamp {

namespace {

std::uint64_t row_mask(const CodeSpec& spec, int r, int offset) {
    return ((std::uint64_t{1} << spec.cols) - 1) << (offset + r * spec.cols);
}

std::uint64_t col_mask(const CodeSpec& spec, int c, int offset) {
    std::uint64_t m = 0;
    for (int r = 0; r < spec.rows; ++r) {
        m |= std::uint64_t{1} << (offset + spec.qubit(r, c));
    }
    return m;
}

std::uint64_t pair_mask(int qa, int qb, int offset) {
    return (std::uint64_t{1} << (offset + qa)) | (std::uint64_t{1} << (offset + qb));
}

// ZZ gauge outcomes are recorded row-major: row r, columns (c, c+1).
std::vector<int> damped_rows_from_gauge(const CodeSpec& spec, std::span<const int> outcomes,
                                        int base) {
    std::vector<int> damped;
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c + 1 < spec.cols; ++c) {
            if (outcomes[base + r * (spec.cols - 1) + c] < 0) {
                damped.push_back(r);
                break;
            }
        }
    }
    return damped;
}

std::vector<int> complement_rows(const CodeSpec& spec, std::span<const int> damped) {
    std::vector<int> undamped;
    for (int r = 0; r < spec.rows; ++r) {
        if (!std::binary_search(damped.begin(), damped.end(), r)) undamped.push_back(r);
    }
    return undamped;
}

void require_z_gauge(const CodeSpec& spec, const char* who) {
    if (spec.gauge != Gauge::Z) {
        throw std::invalid_argument(std::string(who) + " requires a Z-gauge code");
    }
}

void check_decoder_fault(const FaultInjection* fault, bool teleport) {
    if (!fault) return;
    switch (fault->stage) {
        case FaultStage::BeforeAll:
        case FaultStage::AfterZZGauge:
            return;
        case FaultStage::AfterZtilde:
            if (teleport) return;
            throw std::invalid_argument("AfterZtilde faults only apply to teleportation");
        default:
            throw std::invalid_argument("CNOT-stage faults belong to the ZZ gadget");
    }
}

template <typename Leaf, typename Interpret>
std::vector<Leaf> run_decoder(const QuantumState& state, const MeasurementProgram& prog,
                              Interpret&& interpret) {
    std::vector<Leaf> leaves;
    run_exact(state, prog, [&](MeasurementBranch&& b) {
        leaves.push_back(interpret(std::move(b)));
    });
    return leaves;
}

}  // namespace

std::vector<char> repetition_decode(std::span<const int> syndromes) {
    const int length = static_cast<int>(syndromes.size()) + 1;
    std::vector<char> flips(length, 0);
    int weight = 0;
    for (int i = 0; i + 1 < length; ++i) {
        flips[i + 1] = flips[i] ^ (syndromes[i] < 0 ? 1 : 0);
        weight += flips[i + 1];
    }
    if (2 * weight > length) {
        for (char& f : flips) f ^= 1;
    }
    return flips;
}

int majority_vote(std::span<const int> values) {
    int sum = 0;
    for (int v : values) sum += (v >= 0) ? 1 : -1;
    return sum >= 0 ? +1 : -1;
}

// ---------------------------------------------------------------------------
// Standard correction
// ---------------------------------------------------------------------------

namespace {

struct StandardPlan {
    std::vector<char> row_phase_flips;  // Z on (r, 0)
    std::vector<char> col_bit_flips;    // X on (0, c)
    std::vector<PauliString> corrections(const CodeSpec& spec, int total_qubits) const {
        std::vector<PauliString> out;
        for (int r = 0; r < spec.rows; ++r) {
            if (row_phase_flips[r]) {
                out.push_back(PauliString::z_on(
                    total_qubits, std::uint64_t{1} << spec.qubit(r, 0)));
            }
        }
        for (int c = 0; c < spec.cols; ++c) {
            if (col_bit_flips[c]) {
                out.push_back(PauliString::x_on(
                    total_qubits, std::uint64_t{1} << spec.qubit(0, c)));
            }
        }
        return out;
    }
};

StandardPlan standard_plan(const CodeSpec& spec, std::span<const int> outcomes) {
    StandardPlan plan;
    const std::span<const int> x_synd = outcomes.subspan(0, spec.rows - 1);
    const std::span<const int> z_synd = outcomes.subspan(spec.rows - 1, spec.cols - 1);
    plan.row_phase_flips = repetition_decode(x_synd);
    plan.col_bit_flips = repetition_decode(z_synd);
    return plan;
}

MeasurementProgram build_standard_program(const CodeSpec& spec, int total_qubits) {
    MeasurementProgram prog;
    for (int r = 0; r + 1 < spec.rows; ++r) {
        prog.steps.push_back(step::MeasurePauli{PauliString::x_on(
            total_qubits, row_mask(spec, r, 0) | row_mask(spec, r + 1, 0))});
    }
    for (int c = 0; c + 1 < spec.cols; ++c) {
        prog.steps.push_back(step::MeasurePauli{PauliString::z_on(
            total_qubits, col_mask(spec, c, 0) | col_mask(spec, c + 1, 0))});
    }
    prog.steps.push_back(step::Adaptive{[spec, total_qubits](std::span<const int> outcomes) {
        std::vector<Step> steps;
        for (const PauliString& p : standard_plan(spec, outcomes).corrections(spec, total_qubits)) {
            steps.push_back(step::ApplyPauli{p, nullptr});
        }
        return steps;
    }});
    return prog;
}

RecoveryReport interpret_standard(const CodeSpec& spec, int total_qubits,
                                  std::vector<int> outcomes) {
    RecoveryReport rep;
    rep.undamped_count = spec.rows;
    rep.corrections = standard_plan(spec, outcomes).corrections(spec, total_qubits);
    rep.outcomes = std::move(outcomes);
    return rep;
}

}  // namespace

std::vector<DecodedLeaf> standard_correct(const QuantumState& state, const CodeSpec& spec) {
    spec.validate();
    if (state.num_qubits() < spec.num_qubits()) {
        throw std::invalid_argument("state is smaller than the code block");
    }
    const auto prog = build_standard_program(spec, state.num_qubits());
    return run_decoder<DecodedLeaf>(state, prog, [&](MeasurementBranch&& b) {
        DecodedLeaf leaf;
        leaf.weight = b.weight;
        leaf.report = interpret_standard(spec, state.num_qubits(), std::move(b.outcomes));
        leaf.state = std::move(b.post_state);
        return leaf;
    });
}

DecodedLeaf standard_correct_sampled(const QuantumState& state, const CodeSpec& spec,
                                     RngStream& rng) {
    spec.validate();
    const auto prog = build_standard_program(spec, state.num_qubits());
    MeasurementBranch b = run_sampled(state, prog, rng);
    DecodedLeaf leaf;
    leaf.weight = b.weight;
    leaf.report = interpret_standard(spec, state.num_qubits(), std::move(b.outcomes));
    leaf.state = std::move(b.post_state);
    return leaf;
}

// ---------------------------------------------------------------------------
// Clifford decoder
// ---------------------------------------------------------------------------

namespace {

struct CliffordPlan {
    std::vector<int> damped;
    std::vector<int> undamped;
    std::vector<char> phase_flips;  // over undamped rows
    bool flip_logical = false;
    bool all_damped = false;
};

CliffordPlan clifford_plan(const CodeSpec& spec, std::span<const int> outcomes) {
    CliffordPlan plan;
    plan.damped = damped_rows_from_gauge(spec, outcomes, 0);
    plan.undamped = complement_rows(spec, plan.damped);
    plan.all_damped = plan.undamped.empty();
    plan.flip_logical = ((spec.rows - static_cast<int>(plan.undamped.size())) % 2) == 1;
    const int gauge_count = spec.rows * (spec.cols - 1);
    const int stab_count = plan.all_damped ? 0 : static_cast<int>(plan.undamped.size()) - 1;
    if (static_cast<int>(outcomes.size()) >= gauge_count + stab_count && !plan.all_damped) {
        plan.phase_flips =
            repetition_decode(outcomes.subspan(gauge_count, stab_count));
    }
    return plan;
}

MeasurementProgram build_clifford_program(const CodeSpec& spec, int total_qubits,
                                          const FaultInjection* fault) {
    MeasurementProgram prog;
    if (fault && fault->stage == FaultStage::BeforeAll) {
        prog.steps.push_back(step::ApplyKraus{fault->qubit, damping_a1(fault->gamma)});
    }
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c + 1 < spec.cols; ++c) {
            prog.steps.push_back(step::MeasurePauli{PauliString::z_on(
                total_qubits, pair_mask(spec.qubit(r, c), spec.qubit(r, c + 1), 0))});
        }
    }
    if (fault && fault->stage == FaultStage::AfterZZGauge) {
        prog.steps.push_back(step::ApplyKraus{fault->qubit, damping_a1(fault->gamma)});
    }
    prog.steps.push_back(step::Adaptive{[spec, total_qubits](std::span<const int> outcomes) {
        const CliffordPlan plan = clifford_plan(spec, outcomes);
        std::vector<Step> steps;
        // X stabilizers of the undamped-row subcode.
        for (size_t i = 0; i + 1 < plan.undamped.size(); ++i) {
            steps.push_back(step::MeasurePauli{PauliString::x_on(
                total_qubits, row_mask(spec, plan.undamped[i], 0) |
                                  row_mask(spec, plan.undamped[i + 1], 0))});
        }
        // Damped rows decouple; read them out in the Z basis.
        for (int r : plan.damped) {
            for (int c = 0; c < spec.cols; ++c) {
                steps.push_back(step::MeasureQubit{spec.qubit(r, c), MeasureBasis::Z});
            }
        }
        steps.push_back(step::Adaptive{[spec, total_qubits](std::span<const int> outcomes2) {
            const CliffordPlan plan2 = clifford_plan(spec, outcomes2);
            std::vector<Step> steps2;
            if (plan2.all_damped) return steps2;
            // Standard phase correction on the subcode.
            for (size_t i = 0; i < plan2.undamped.size(); ++i) {
                if (plan2.phase_flips[i]) {
                    steps2.push_back(step::ApplyPauli{
                        PauliString::z_on(total_qubits,
                                          std::uint64_t{1}
                                              << spec.qubit(plan2.undamped[i], 0)),
                        nullptr});
                }
            }
            // One logical bit flip per damped row.
            if (plan2.flip_logical) {
                steps2.push_back(step::ApplyPauli{
                    PauliString::x_on(total_qubits, row_mask(spec, plan2.undamped[0], 0)),
                    nullptr});
            }
            // Reverse the subcode encoding circuit and read out the
            // non-logical qubits.
            const auto enc = encoding_circuit(spec, plan2.undamped);
            for (auto it = enc.rbegin(); it != enc.rend(); ++it) {
                steps2.push_back(step::ApplyGate{*it});
            }
            const int logical = encoding_logical_qubit(spec, plan2.undamped);
            for (int r : plan2.undamped) {
                for (int c = 0; c < spec.cols; ++c) {
                    const int q = spec.qubit(r, c);
                    if (q == logical) continue;
                    steps2.push_back(step::MeasureQubit{q, MeasureBasis::Z});
                }
            }
            return steps2;
        }});
        return steps;
    }});
    return prog;
}

CliffordLeaf interpret_clifford(const CodeSpec& spec, int total_qubits,
                                MeasurementBranch&& b) {
    const CliffordPlan plan = clifford_plan(spec, b.outcomes);
    CliffordLeaf leaf;
    leaf.weight = b.weight;
    leaf.state = std::move(b.post_state);
    leaf.report.damped_rows = plan.damped;
    leaf.report.undamped_count = static_cast<int>(plan.undamped.size());
    leaf.report.logical_flip_applied = !plan.all_damped && plan.flip_logical;
    leaf.report.failed = plan.all_damped;
    for (size_t i = 0; i < plan.undamped.size(); ++i) {
        if (!plan.phase_flips.empty() && plan.phase_flips[i]) {
            leaf.report.corrections.push_back(PauliString::z_on(
                total_qubits, std::uint64_t{1} << spec.qubit(plan.undamped[i], 0)));
        }
    }
    leaf.report.outcomes = std::move(b.outcomes);
    if (plan.all_damped) {
        // Information is lost; hand back a fresh qubit so callers still get a
        // decoded register.
        leaf.state = leaf.state.with_appended_zero_qubit();
        leaf.state.set_norm_is_weight(true);
        leaf.logical_qubit = leaf.state.num_qubits() - 1;
    } else {
        leaf.logical_qubit = encoding_logical_qubit(spec, plan.undamped);
    }
    return leaf;
}

}  // namespace

std::vector<CliffordLeaf> clifford_decode(const QuantumState& state, const CodeSpec& spec,
                                          const FaultInjection* fault) {
    spec.validate();
    require_z_gauge(spec, "clifford_decode");
    check_decoder_fault(fault, /*teleport=*/false);
    if (state.num_qubits() < spec.num_qubits()) {
        throw std::invalid_argument("state is smaller than the code block");
    }
    const auto prog = build_clifford_program(spec, state.num_qubits(), fault);
    return run_decoder<CliffordLeaf>(state, prog, [&](MeasurementBranch&& b) {
        return interpret_clifford(spec, state.num_qubits(), std::move(b));
    });
}

CliffordLeaf clifford_decode_sampled(const QuantumState& state, const CodeSpec& spec,
                                     RngStream& rng, const FaultInjection* fault) {
    spec.validate();
    require_z_gauge(spec, "clifford_decode");
    check_decoder_fault(fault, /*teleport=*/false);
    const auto prog = build_clifford_program(spec, state.num_qubits(), fault);
    MeasurementBranch b = run_sampled(state, prog, rng);
    return interpret_clifford(spec, state.num_qubits(), std::move(b));
}

// ---------------------------------------------------------------------------
// Teleportation correction
// ---------------------------------------------------------------------------

namespace {

struct TeleportPlan {
    std::vector<int> damped;
    std::vector<int> undamped;
    int num_columns_measured = 1;
    int chosen_column = 0;
    bool good_column_found = true;
    int ell = 0;
    int zbar = +1;
    int xbar = +1;
};

TeleportPlan teleport_plan(const CodeSpec& spec, bool multi_column,
                           std::span<const int> outcomes) {
    TeleportPlan plan;
    plan.num_columns_measured = multi_column ? spec.cols : 1;
    const int gauge_base = plan.num_columns_measured;
    plan.damped = damped_rows_from_gauge(spec, outcomes, gauge_base);
    plan.undamped = complement_rows(spec, plan.damped);

    const int qubit_base = gauge_base + spec.rows * (spec.cols - 1);
    if (static_cast<int>(outcomes.size()) < qubit_base + spec.num_qubits()) {
        return plan;  // called before the per-qubit readout exists
    }
    // A damped-row qubit read out as |0> (outcome +1) was damped at some
    // point; columns containing one cannot anchor the Z-bar bookkeeping.
    auto read = [&](int r, int c) { return outcomes[qubit_base + spec.qubit(r, c)]; };
    if (multi_column) {
        plan.chosen_column = -1;
        for (int c = 0; c < spec.cols && plan.chosen_column < 0; ++c) {
            bool clean = true;
            for (int r : plan.damped) {
                if (read(r, c) > 0) {
                    clean = false;
                    break;
                }
            }
            if (clean) plan.chosen_column = c;
        }
        if (plan.chosen_column < 0) {
            plan.good_column_found = false;
            plan.chosen_column = 0;
        }
    }
    for (int r : plan.damped) {
        if (read(r, plan.chosen_column) > 0) ++plan.ell;
    }
    const int ztilde = outcomes[multi_column ? plan.chosen_column : 0];
    plan.zbar = (plan.ell % 2 == 0) ? ztilde : -ztilde;
    std::vector<int> row_products;
    for (int r : plan.undamped) {
        int prod = +1;
        for (int c = 0; c < spec.cols; ++c) prod *= read(r, c);
        row_products.push_back(prod);
    }
    plan.xbar = majority_vote(row_products);
    return plan;
}

MeasurementProgram build_teleport_program(const CodeSpec& spec, int total_qubits,
                                          int b_offset, bool multi_column,
                                          const FaultInjection* fault) {
    MeasurementProgram prog;
    if (fault && fault->stage == FaultStage::BeforeAll) {
        prog.steps.push_back(step::ApplyKraus{fault->qubit, damping_a1(fault->gamma)});
    }
    const int columns = multi_column ? spec.cols : 1;
    for (int c = 0; c < columns; ++c) {
        prog.steps.push_back(step::MeasurePauli{PauliString::z_on(
            total_qubits, col_mask(spec, c, 0) | col_mask(spec, c, b_offset))});
    }
    if (fault && fault->stage == FaultStage::AfterZtilde) {
        prog.steps.push_back(step::ApplyKraus{fault->qubit, damping_a1(fault->gamma)});
    }
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c + 1 < spec.cols; ++c) {
            prog.steps.push_back(step::MeasurePauli{PauliString::z_on(
                total_qubits, pair_mask(spec.qubit(r, c), spec.qubit(r, c + 1), 0))});
        }
    }
    if (fault && fault->stage == FaultStage::AfterZZGauge) {
        prog.steps.push_back(step::ApplyKraus{fault->qubit, damping_a1(fault->gamma)});
    }
    prog.steps.push_back(step::Adaptive{[spec, total_qubits, b_offset,
                                         multi_column](std::span<const int> outcomes) {
        const TeleportPlan plan = teleport_plan(spec, multi_column, outcomes);
        std::vector<Step> steps;
        for (int r = 0; r < spec.rows; ++r) {
            const bool damped =
                std::binary_search(plan.damped.begin(), plan.damped.end(), r);
            for (int c = 0; c < spec.cols; ++c) {
                steps.push_back(step::MeasureQubit{
                    spec.qubit(r, c), damped ? MeasureBasis::Z : MeasureBasis::X});
            }
        }
        steps.push_back(
            step::Adaptive{[spec, total_qubits, b_offset,
                            multi_column](std::span<const int> outcomes2) {
                const TeleportPlan plan2 = teleport_plan(spec, multi_column, outcomes2);
                std::vector<Step> steps2;
                if (plan2.zbar < 0) {
                    steps2.push_back(step::ApplyPauli{
                        PauliString::x_on(total_qubits, row_mask(spec, 0, b_offset)),
                        nullptr});
                }
                if (plan2.xbar < 0) {
                    steps2.push_back(step::ApplyPauli{
                        PauliString::z_on(total_qubits, col_mask(spec, 0, b_offset)),
                        nullptr});
                }
                return steps2;
            }});
        return steps;
    }});
    return prog;
}

TeleportLeaf interpret_teleport(const CodeSpec& spec, bool multi_column, int b_offset,
                                MeasurementBranch&& b) {
    const TeleportPlan plan = teleport_plan(spec, multi_column, b.outcomes);
    TeleportLeaf leaf;
    leaf.weight = b.weight;
    leaf.state = std::move(b.post_state);
    leaf.block_b_offset = b_offset;
    const int columns = multi_column ? spec.cols : 1;
    leaf.record.ztilde_per_column.assign(b.outcomes.begin(), b.outcomes.begin() + columns);
    leaf.record.damped_rows = plan.damped;
    leaf.record.ell = plan.ell;
    leaf.record.xbar_majority = plan.xbar;
    leaf.record.chosen_column = plan.chosen_column;
    leaf.record.good_column_found = plan.good_column_found;
    leaf.record.outcomes = std::move(b.outcomes);
    return leaf;
}

}  // namespace

std::vector<TeleportLeaf> teleport_correct(const QuantumState& state, const CodeSpec& spec,
                                           bool multi_column, const FaultInjection* fault) {
    spec.validate();
    require_z_gauge(spec, "teleport_correct");
    check_decoder_fault(fault, /*teleport=*/true);
    if (state.num_qubits() < spec.num_qubits()) {
        throw std::invalid_argument("state is smaller than the code block");
    }
    const int b_offset = state.num_qubits();
    const QuantumState joint = state.tensor(encode(spec, {0.70710678118654752440, 0},
                                                  {0.70710678118654752440, 0}));
    const auto prog =
        build_teleport_program(spec, joint.num_qubits(), b_offset, multi_column, fault);
    return run_decoder<TeleportLeaf>(joint, prog, [&](MeasurementBranch&& b) {
        return interpret_teleport(spec, multi_column, b_offset, std::move(b));
    });
}

TeleportLeaf teleport_correct_sampled(const QuantumState& state, const CodeSpec& spec,
                                      bool multi_column, RngStream& rng,
                                      const FaultInjection* fault) {
    spec.validate();
    require_z_gauge(spec, "teleport_correct");
    check_decoder_fault(fault, /*teleport=*/true);
    const int b_offset = state.num_qubits();
    const QuantumState joint = state.tensor(encode(spec, {0.70710678118654752440, 0},
                                                  {0.70710678118654752440, 0}));
    const auto prog =
        build_teleport_program(spec, joint.num_qubits(), b_offset, multi_column, fault);
    MeasurementBranch b = run_sampled(joint, prog, rng);
    return interpret_teleport(spec, multi_column, b_offset, std::move(b));
}

// ---------------------------------------------------------------------------
// Syndrome correction
// ---------------------------------------------------------------------------

namespace {

struct SyndromePlan {
    std::vector<int> damped;
    std::vector<int> undamped;
    std::vector<PauliString> corrections;
};

SyndromePlan syndrome_plan(const CodeSpec& spec, int total_qubits,
                           std::span<const int> outcomes) {
    SyndromePlan plan;
    const int gauge_count = spec.rows * (spec.cols - 1);
    plan.damped = damped_rows_from_gauge(spec, outcomes, 0);
    plan.undamped = complement_rows(spec, plan.damped);

    // (ii) standard bit-flip correction inside each row.
    for (int r = 0; r < spec.rows; ++r) {
        const auto flips =
            repetition_decode(outcomes.subspan(r * (spec.cols - 1), spec.cols - 1));
        for (int c = 0; c < spec.cols; ++c) {
            if (flips[c]) {
                plan.corrections.push_back(PauliString::x_on(
                    total_qubits, std::uint64_t{1} << spec.qubit(r, c)));
            }
        }
    }

    // (iii) phase correction on the undamaged subcode; its syndromes are
    // classical products of the measured generator outcomes.
    std::vector<int> x_values(outcomes.begin() + gauge_count,
                              outcomes.begin() + gauge_count + spec.rows - 1);
    if (!plan.undamped.empty()) {
        std::vector<int> sub_synd;
        for (size_t i = 0; i + 1 < plan.undamped.size(); ++i) {
            int prod = +1;
            for (int r = plan.undamped[i]; r < plan.undamped[i + 1]; ++r) {
                prod *= x_values[r];
            }
            sub_synd.push_back(prod);
        }
        const auto flips = repetition_decode(sub_synd);
        for (size_t i = 0; i < plan.undamped.size(); ++i) {
            if (!flips[i]) continue;
            const int row = plan.undamped[i];
            plan.corrections.push_back(PauliString::z_on(
                total_qubits, std::uint64_t{1} << spec.qubit(row, 0)));
            if (row - 1 >= 0) x_values[row - 1] = -x_values[row - 1];
            if (row < spec.rows - 1) x_values[row] = -x_values[row];
        }
    }

    // (iv) reset the remaining X syndromes by acting on the damaged rows.
    const PauliString reset = reset_pattern(spec, plan.damped, x_values);
    if (!reset.is_identity()) {
        PauliString widened = PauliString::z_on(total_qubits, reset.z_mask);
        plan.corrections.push_back(widened);
    }
    return plan;
}

MeasurementProgram build_syndrome_program(const CodeSpec& spec, int total_qubits) {
    MeasurementProgram prog;
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c + 1 < spec.cols; ++c) {
            prog.steps.push_back(step::MeasurePauli{PauliString::z_on(
                total_qubits, pair_mask(spec.qubit(r, c), spec.qubit(r, c + 1), 0))});
        }
    }
    for (int r = 0; r + 1 < spec.rows; ++r) {
        prog.steps.push_back(step::MeasurePauli{PauliString::x_on(
            total_qubits, row_mask(spec, r, 0) | row_mask(spec, r + 1, 0))});
    }
    prog.steps.push_back(step::Adaptive{[spec, total_qubits](std::span<const int> outcomes) {
        std::vector<Step> steps;
        for (const PauliString& p :
             syndrome_plan(spec, total_qubits, outcomes).corrections) {
            steps.push_back(step::ApplyPauli{p, nullptr});
        }
        return steps;
    }});
    return prog;
}

RecoveryReport interpret_syndrome(const CodeSpec& spec, int total_qubits,
                                  std::vector<int> outcomes) {
    const SyndromePlan plan = syndrome_plan(spec, total_qubits, outcomes);
    RecoveryReport rep;
    rep.damped_rows = plan.damped;
    rep.undamped_count = static_cast<int>(plan.undamped.size());
    rep.failed = plan.undamped.empty();
    rep.logical_flip_applied = false;
    rep.corrections = plan.corrections;
    rep.outcomes = std::move(outcomes);
    return rep;
}

}  // namespace

std::vector<DecodedLeaf> syndrome_correct(const QuantumState& state, const CodeSpec& spec) {
    spec.validate();
    require_z_gauge(spec, "syndrome_correct");
    if (state.num_qubits() < spec.num_qubits()) {
        throw std::invalid_argument("state is smaller than the code block");
    }
    const auto prog = build_syndrome_program(spec, state.num_qubits());
    return run_decoder<DecodedLeaf>(state, prog, [&](MeasurementBranch&& b) {
        DecodedLeaf leaf;
        leaf.weight = b.weight;
        leaf.report = interpret_syndrome(spec, state.num_qubits(), std::move(b.outcomes));
        leaf.state = std::move(b.post_state);
        return leaf;
    });
}

DecodedLeaf syndrome_correct_sampled(const QuantumState& state, const CodeSpec& spec,
                                     RngStream& rng) {
    spec.validate();
    require_z_gauge(spec, "syndrome_correct");
    const auto prog = build_syndrome_program(spec, state.num_qubits());
    MeasurementBranch b = run_sampled(state, prog, rng);
    DecodedLeaf leaf;
    leaf.weight = b.weight;
    leaf.report = interpret_syndrome(spec, state.num_qubits(), std::move(b.outcomes));
    leaf.state = std::move(b.post_state);
    return leaf;
}

PauliString reset_pattern(const CodeSpec& spec, std::span<const int> damaged_rows,
                          std::span<const int> x_syndromes) {
    spec.validate();
    if (static_cast<int>(x_syndromes.size()) != spec.rows - 1) {
        throw std::invalid_argument("expected one syndrome per X-stabilizer generator");
    }
    std::vector<char> damaged(spec.rows, 0);
    for (int r : damaged_rows) damaged[r] = 1;

    // Solve z_r ^ z_{r+1} = b_r over the row path with z pinned to 0 on the
    // undamaged rows.
    std::vector<char> z(spec.rows, 0);
    int anchor = -1;
    for (int r = 0; r < spec.rows; ++r) {
        if (!damaged[r]) {
            anchor = r;
            break;
        }
    }
    const auto bit = [&](int r) { return x_syndromes[r] < 0 ? 1 : 0; };
    if (anchor < 0) anchor = 0;  // every row damaged: anchor the sweep at row 0
    for (int r = anchor; r + 1 < spec.rows; ++r) {
        const char want = z[r] ^ bit(r);
        if (damaged[r + 1]) {
            z[r + 1] = want;
        } else if (want != 0) {
            throw std::logic_error("X-syndrome reset system is inconsistent");
        }
    }
    for (int r = anchor; r > 0; --r) {
        const char want = z[r] ^ bit(r - 1);
        if (damaged[r - 1]) {
            z[r - 1] = want;
        } else if (want != 0) {
            throw std::logic_error("X-syndrome reset system is inconsistent");
        }
    }
    std::uint64_t mask = 0;
    for (int r = 0; r < spec.rows; ++r) {
        if (z[r]) mask |= std::uint64_t{1} << spec.qubit(r, 0);
    }
    return PauliString::z_on(spec.num_qubits(), mask);
}

}  // namespace qdamp
