#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "qdamp/rng.hpp"
#include "qdamp/state.hpp"

namespace qdamp {

enum class MeasureBasis { X, Z };

namespace step {

struct MeasurePauli {
    PauliString op;
};

/// Destructive single-qubit measurement: the qubit collapses to the
/// computational basis (an X-basis measurement applies H after projecting),
/// outcome +1 for |0>/|+>.
struct MeasureQubit {
    int qubit = 0;
    MeasureBasis basis = MeasureBasis::Z;
};

/// Applies `op` when `condition` (a predicate over all earlier outcomes)
/// holds; a null condition applies unconditionally.
struct ApplyPauli {
    PauliString op;
    std::function<bool(std::span<const int>)> condition;
};

struct ApplyGate {
    GateOp op;
};

/// Non-unitary single-qubit insertion; used for conditioned fault branches.
struct ApplyKraus {
    int qubit = 0;
    Mat2 op;
};

struct Adaptive;

}  // namespace step

using Step = std::variant<step::MeasurePauli, step::MeasureQubit, step::ApplyPauli,
                          step::ApplyGate, step::ApplyKraus, step::Adaptive>;

namespace step {

/// Emits further steps from the outcomes recorded so far. The generator must
/// be a pure function of the outcome record.
struct Adaptive {
    std::function<std::vector<Step>(std::span<const int>)> generate;
};

}  // namespace step

struct MeasurementProgram {
    std::vector<Step> steps;
};

/// Default relative branch-pruning threshold. Branches whose weight falls
/// below this fraction of the input weight are discarded.
inline constexpr double kDefaultPruneThreshold = 1e-14;

/// Enumerates every measurement branch of `program`, depth first, +1 branch
/// first. Leaf states are unnormalized with norm_is_weight set; leaf weights
/// sum to the input weight up to pruning.
void run_exact(const QuantumState& state, const MeasurementProgram& program,
               const std::function<void(MeasurementBranch&&)>& sink,
               double prune_threshold = kDefaultPruneThreshold);

std::vector<MeasurementBranch> run_exact(const QuantumState& state,
                                         const MeasurementProgram& program,
                                         double prune_threshold = kDefaultPruneThreshold);

/// Samples a single branch with its exact probability. The input must be
/// normalized; the returned state is normalized and `weight` carries the
/// probability of the sampled path.
MeasurementBranch run_sampled(const QuantumState& state, const MeasurementProgram& program,
                              RngStream& rng);

}  // namespace qdamp
