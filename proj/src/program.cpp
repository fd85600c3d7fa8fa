#include "qdamp/program.hpp"

#include <deque>
#include <stdexcept>

namespace qdamp {

namespace {

struct ExactRunner {
    const std::function<void(MeasurementBranch&&)>& sink;
    double prune_abs;

    void run(QuantumState state, std::vector<int> outcomes, std::deque<Step> todo) {
        while (!todo.empty()) {
            Step s = std::move(todo.front());
            todo.pop_front();
            if (auto* mp = std::get_if<step::MeasurePauli>(&s)) {
                QuantumState minus = state;
                state.project_pauli(mp->op, +1);
                minus.project_pauli(mp->op, -1);
                branch(std::move(state), std::move(minus), outcomes, todo);
                return;
            }
            if (auto* mq = std::get_if<step::MeasureQubit>(&s)) {
                if (mq->basis == MeasureBasis::X) {
                    state.apply_gate(GateOp{GateKind::H, mq->qubit, 0});
                }
                QuantumState minus = state;
                state.project_qubit(mq->qubit, 0);
                minus.project_qubit(mq->qubit, 1);
                branch(std::move(state), std::move(minus), outcomes, todo);
                return;
            }
            if (auto* ap = std::get_if<step::ApplyPauli>(&s)) {
                if (!ap->condition || ap->condition(outcomes)) {
                    state.apply_pauli(ap->op);
                }
            } else if (auto* ag = std::get_if<step::ApplyGate>(&s)) {
                state.apply_gate(ag->op);
            } else if (auto* ak = std::get_if<step::ApplyKraus>(&s)) {
                state.apply_single_qubit_kraus(ak->qubit, ak->op);
                if (state.weight() < prune_abs) return;
            } else if (auto* ad = std::get_if<step::Adaptive>(&s)) {
                std::vector<Step> extra = ad->generate(outcomes);
                for (auto it = extra.rbegin(); it != extra.rend(); ++it) {
                    todo.push_front(std::move(*it));
                }
            }
        }
        MeasurementBranch leaf;
        leaf.weight = state.weight();
        leaf.post_state = std::move(state);
        leaf.post_state.set_norm_is_weight(true);
        leaf.outcomes = std::move(outcomes);
        sink(std::move(leaf));
    }

    void branch(QuantumState plus, QuantumState minus, std::vector<int>& outcomes,
                std::deque<Step>& todo) {
        const double w_plus = plus.weight();
        const double w_minus = minus.weight();
        if (w_plus >= prune_abs) {
            std::vector<int> out_plus = outcomes;
            out_plus.push_back(+1);
            run(std::move(plus), std::move(out_plus), todo);
        }
        if (w_minus >= prune_abs) {
            outcomes.push_back(-1);
            run(std::move(minus), std::move(outcomes), std::move(todo));
        }
    }
};

}  // namespace

void run_exact(const QuantumState& state, const MeasurementProgram& program,
               const std::function<void(MeasurementBranch&&)>& sink,
               double prune_threshold) {
    const double input_weight = state.weight();
    if (input_weight <= 0.0) return;
    ExactRunner runner{sink, prune_threshold * input_weight};
    runner.run(state, {}, std::deque<Step>(program.steps.begin(), program.steps.end()));
}

std::vector<MeasurementBranch> run_exact(const QuantumState& state,
                                         const MeasurementProgram& program,
                                         double prune_threshold) {
    std::vector<MeasurementBranch> leaves;
    run_exact(
        state, program, [&](MeasurementBranch&& b) { leaves.push_back(std::move(b)); },
        prune_threshold);
    return leaves;
}

MeasurementBranch run_sampled(const QuantumState& state, const MeasurementProgram& program,
                              RngStream& rng) {
    MeasurementBranch leaf;
    leaf.weight = 1.0;
    leaf.post_state = state;
    std::deque<Step> todo(program.steps.begin(), program.steps.end());
    QuantumState& st = leaf.post_state;

    while (!todo.empty()) {
        Step s = std::move(todo.front());
        todo.pop_front();
        if (auto* mp = std::get_if<step::MeasurePauli>(&s)) {
            QuantumState minus = st;
            st.project_pauli(mp->op, +1);
            minus.project_pauli(mp->op, -1);
            const double w_plus = st.weight();
            const double w_minus = minus.weight();
            const double total = w_plus + w_minus;
            if (total <= 0.0) throw std::runtime_error("sampled a zero-weight state");
            const double p_plus = w_plus / total;
            if (rng.next_double() < p_plus) {
                leaf.outcomes.push_back(+1);
                leaf.weight *= p_plus;
            } else {
                st = std::move(minus);
                leaf.outcomes.push_back(-1);
                leaf.weight *= 1.0 - p_plus;
            }
            st.normalize();
        } else if (auto* mq = std::get_if<step::MeasureQubit>(&s)) {
            if (mq->basis == MeasureBasis::X) {
                st.apply_gate(GateOp{GateKind::H, mq->qubit, 0});
            }
            const double w0 = st.qubit_weight(mq->qubit, 0);
            const double w1 = st.qubit_weight(mq->qubit, 1);
            const double total = w0 + w1;
            if (total <= 0.0) throw std::runtime_error("sampled a zero-weight state");
            const double p0 = w0 / total;
            if (rng.next_double() < p0) {
                st.project_qubit(mq->qubit, 0);
                leaf.outcomes.push_back(+1);
                leaf.weight *= p0;
            } else {
                st.project_qubit(mq->qubit, 1);
                leaf.outcomes.push_back(-1);
                leaf.weight *= 1.0 - p0;
            }
            st.normalize();
        } else if (auto* ap = std::get_if<step::ApplyPauli>(&s)) {
            if (!ap->condition || ap->condition(leaf.outcomes)) {
                st.apply_pauli(ap->op);
            }
        } else if (auto* ag = std::get_if<step::ApplyGate>(&s)) {
            st.apply_gate(ag->op);
        } else if (auto* ak = std::get_if<step::ApplyKraus>(&s)) {
            st.apply_single_qubit_kraus(ak->qubit, ak->op);
            const double w = st.weight();
            if (w <= 0.0) throw std::runtime_error("sampled a zero-weight state");
            leaf.weight *= w;
            st.normalize();
        } else if (auto* ad = std::get_if<step::Adaptive>(&s)) {
            std::vector<Step> extra = ad->generate(leaf.outcomes);
            for (auto it = extra.rbegin(); it != extra.rend(); ++it) {
                todo.push_front(std::move(*it));
            }
        }
    }
    st.set_norm_is_weight(false);
    return leaf;
}

}  // namespace qdamp
