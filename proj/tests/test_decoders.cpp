#include <doctest.h>

#include <cmath>
#include <map>

#include "qdamp/channel.hpp"
#include "qdamp/decoders.hpp"

using namespace qdamp;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Fidelity of a decoded single-qubit register against the pure target
// (alpha, beta), computed from logical expectations; state may be a weighted
// branch, result is conditioned on its weight.
double qubit_fidelity(const QuantumState& st, int qubit, cplx alpha, cplx beta) {
    const int n = st.num_qubits();
    const double w = st.weight();
    if (w <= 0.0) return 0.0;
    const double sx = 2.0 * (std::conj(alpha) * beta).real();
    const double sy = 2.0 * (std::conj(alpha) * beta).imag();
    const double sz = std::norm(alpha) - std::norm(beta);
    double acc = w;
    acc += sx * st.expectation(PauliString::single(n, qubit, 'X')).real();
    acc += sy * st.expectation(PauliString::single(n, qubit, 'Y')).real();
    acc += sz * st.expectation(PauliString::single(n, qubit, 'Z')).real();
    return 0.5 * acc / w;
}

// Same, but against the encoded target on a block at `offset`.
double block_fidelity(const QuantumState& st, const CodeSpec& spec, int offset,
                      cplx alpha, cplx beta) {
    const int n = st.num_qubits();
    const double w = st.weight();
    if (w <= 0.0) return 0.0;
    std::uint64_t row0 = ((std::uint64_t{1} << spec.cols) - 1) << offset;
    std::uint64_t col0 = 0;
    for (int r = 0; r < spec.rows; ++r) {
        col0 |= std::uint64_t{1} << (offset + spec.qubit(r, 0));
    }
    const PauliString x = PauliString::x_on(n, row0);
    const PauliString z = PauliString::z_on(n, col0);
    const PauliString y = x.times(z).with_extra_phase(1);
    const double sx = 2.0 * (std::conj(alpha) * beta).real();
    const double sy = 2.0 * (std::conj(alpha) * beta).imag();
    const double sz = std::norm(alpha) - std::norm(beta);
    double acc = w;
    acc += sx * st.expectation(x).real();
    acc += sy * st.expectation(y).real();
    acc += sz * st.expectation(z).real();
    return 0.5 * acc / w;
}

// A single damping event: A1 at `qubit`, A0 on the rest of its row, identity
// elsewhere (the damped-row error operator).
QuantumState single_damping_event(QuantumState st, const CodeSpec& spec, int qubit,
                                  double gamma) {
    const int row = qubit / spec.cols;
    for (int c = 0; c < spec.cols; ++c) {
        const int q = spec.qubit(row, c);
        st.apply_single_qubit_kraus(q, q == qubit ? damping_a1(gamma) : damping_a0(gamma));
    }
    st.set_norm_is_weight(true);
    return st;
}

bool branch_is_plus_one(const QuantumState& st, const PauliString& p, double tol = 1e-10) {
    const double w = st.weight();
    return std::abs(st.expectation(p).real() / w - 1.0) <= tol;
}

}  // namespace

TEST_CASE("repetition_decode") {
    // No syndrome, no correction.
    CHECK(repetition_decode(std::vector<int>{}) == std::vector<char>{0});
    CHECK(repetition_decode(std::vector<int>{1, 1}) == std::vector<char>{0, 0, 0});
    // Single boundary between positions 0 and 1 on length 3: flip position 0.
    CHECK(repetition_decode(std::vector<int>{-1, 1}) == std::vector<char>{1, 0, 0});
    // (+1, -1): flip position 2.
    CHECK(repetition_decode(std::vector<int>{1, -1}) == std::vector<char>{0, 0, 1});
    // Length-2 tie: break toward leaving position 0 alone.
    CHECK(repetition_decode(std::vector<int>{-1}) == std::vector<char>{0, 1});
}

TEST_CASE("majority_vote") {
    CHECK(majority_vote(std::vector<int>{1, 1, -1}) == 1);
    CHECK(majority_vote(std::vector<int>{-1, -1, 1}) == -1);
    CHECK(majority_vote(std::vector<int>{1, -1}) == 1);  // tie -> +1
    CHECK(majority_vote(std::vector<int>{}) == 1);
}

TEST_CASE("standard_correct: undamaged codeword is untouched") {
    const CodeSpec spec{3, 3, Gauge::Z};
    const QuantumState in = encode(spec, 0.6, 0.8);
    const auto leaves = standard_correct(in, spec);
    REQUIRE(leaves.size() == 1);
    CHECK(leaves[0].weight == doctest::Approx(1.0));
    CHECK(leaves[0].report.corrections.empty());
    CHECK(leaves[0].state.max_abs_diff(in) < 1e-12);
}

TEST_CASE("standard_correct fixes any single Pauli error on (3,3)") {
    const CodeSpec spec{3, 3, Gauge::Z};
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    const QuantumState in = encode(spec, alpha, beta);
    const auto stabs = stabilizer_generators(spec);
    for (char axis : {'X', 'Z', 'Y'}) {
        for (int q = 0; q < 9; ++q) {
            QuantumState damaged = in;
            damaged.apply_pauli(PauliString::single(9, q, axis));
            const auto leaves = standard_correct(damaged, spec);
            double total_w = 0.0, total_f = 0.0;
            for (const auto& leaf : leaves) {
                total_w += leaf.weight;
                total_f += leaf.weight * block_fidelity(leaf.state, spec, 0, alpha, beta);
                for (const auto& s : stabs) CHECK(branch_is_plus_one(leaf.state, s));
            }
            CHECK(total_w == doctest::Approx(1.0));
            CHECK(total_f == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("standard_correct cannot fix two dampings in a row of (3,3)") {
    const CodeSpec spec{3, 3, Gauge::Z};
    QuantumState damaged = encode(spec, 1.0, 0.0);
    // A1 on the first two qubits of row 0, A0 on the third.
    damaged.apply_single_qubit_kraus(0, damping_a1(0.2));
    damaged.apply_single_qubit_kraus(1, damping_a1(0.2));
    damaged.apply_single_qubit_kraus(2, damping_a0(0.2));
    damaged.set_norm_is_weight(true);
    REQUIRE(damaged.weight() > 0.0);
    const auto leaves = standard_correct(damaged, spec);
    double worst = 1.0;
    for (const auto& leaf : leaves) {
        if (leaf.weight < 1e-20) continue;
        worst = std::min(worst, block_fidelity(leaf.state, spec, 0, 1.0, 0.0));
    }
    // The minimum-weight column correction lands on the wrong side: a logical
    // bit flip survives in (at least) one measurement branch.
    CHECK(worst < 0.1);
}

TEST_CASE("clifford_decode: noiseless round trip") {
    const CodeSpec spec{2, 2, Gauge::Z};
    const cplx alpha{0.6, 0.0}, beta{-0.48, 0.64};
    const auto leaves = clifford_decode(encode(spec, alpha, beta), spec);
    REQUIRE(leaves.size() == 1);
    const auto& leaf = leaves[0];
    CHECK(leaf.weight == doctest::Approx(1.0));
    CHECK(leaf.report.undamped_count == 2);
    CHECK(leaf.report.damped_rows.empty());
    CHECK(!leaf.report.logical_flip_applied);
    CHECK(qubit_fidelity(leaf.state, leaf.logical_qubit, alpha, beta) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("clifford_decode recovers a damped-row event exactly") {
    const CodeSpec spec{2, 2, Gauge::Z};
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    const QuantumState damaged =
        single_damping_event(encode(spec, alpha, beta), spec, 0, 0.36);
    REQUIRE(damaged.weight() > 0.0);
    const auto leaves = clifford_decode(damaged, spec);
    double total_w = 0.0, total_f = 0.0;
    for (const auto& leaf : leaves) {
        CHECK(leaf.report.damped_rows == std::vector<int>{0});
        CHECK(leaf.report.undamped_count == 1);
        CHECK(leaf.report.logical_flip_applied);
        total_w += leaf.weight;
        total_f += leaf.weight * qubit_fidelity(leaf.state, leaf.logical_qubit, alpha, beta);
    }
    CHECK(total_f / total_w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("clifford_decode requires the Z gauge") {
    const CodeSpec spec{2, 2, Gauge::X};
    CHECK_THROWS_AS(clifford_decode(codeword(spec, 0), spec), std::invalid_argument);
}

TEST_CASE("teleport_correct: noiseless teleportation lands the codeword in B") {
    const CodeSpec spec{2, 2, Gauge::Z};
    const cplx alpha{kInvSqrt2, 0.0}, beta{0.5, 0.5};
    const auto leaves = teleport_correct(encode(spec, alpha, beta), spec, false);
    double total_w = 0.0, total_f = 0.0;
    for (const auto& leaf : leaves) {
        CHECK(leaf.record.ell == 0);
        CHECK(leaf.record.damped_rows.empty());
        CHECK(leaf.record.chosen_column == 0);
        total_w += leaf.weight;
        total_f += leaf.weight *
                   block_fidelity(leaf.state, spec, leaf.block_b_offset, alpha, beta);
    }
    CHECK(total_w == doctest::Approx(1.0));
    CHECK(total_f / total_w == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("teleport_correct recovers every weight-1 damping event on (2,2)") {
    const CodeSpec spec{2, 2, Gauge::Z};
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    for (bool multi : {false, true}) {
        for (int q = 0; q < 4; ++q) {
            const QuantumState damaged =
                single_damping_event(encode(spec, alpha, beta), spec, q, 0.25);
            REQUIRE(damaged.weight() > 0.0);
            const auto leaves = teleport_correct(damaged, spec, multi);
            double total_w = 0.0, total_f = 0.0;
            for (const auto& leaf : leaves) {
                total_w += leaf.weight;
                total_f += leaf.weight * block_fidelity(leaf.state, spec,
                                                        leaf.block_b_offset, alpha, beta);
                CHECK(leaf.record.good_column_found);
            }
            CHECK(total_f / total_w == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("syndrome_correct: noiseless identity") {
    const CodeSpec spec{2, 3, Gauge::Z};
    const QuantumState in = encode(spec, 0.6, 0.8);
    const auto leaves = syndrome_correct(in, spec);
    REQUIRE(leaves.size() == 1);
    CHECK(leaves[0].state.max_abs_diff(in) < 1e-12);
    CHECK(leaves[0].report.corrections.empty());
}

TEST_CASE("syndrome_correct restores the codeword after any single A1 on (2,3)") {
    const CodeSpec spec{2, 3, Gauge::Z};
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    const QuantumState in = encode(spec, alpha, beta);
    for (int q = 0; q < 6; ++q) {
        QuantumState damaged = in;
        damaged.apply_single_qubit_kraus(q, damping_a1(0.3));
        damaged.set_norm_is_weight(true);
        REQUIRE(damaged.weight() > 0.0);
        const auto leaves = syndrome_correct(damaged, spec);
        double total_w = 0.0, total_f = 0.0;
        for (const auto& leaf : leaves) {
            total_w += leaf.weight;
            total_f += leaf.weight * block_fidelity(leaf.state, spec, 0, alpha, beta);
        }
        CHECK(total_f / total_w == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("teleport and syndrome outputs are valid fixed-gauge codewords") {
    // Exhaustive over weight <= 1 Kraus strings on (2,2) and (2,3).
    const double gamma = 0.2;
    for (const CodeSpec spec : {CodeSpec{2, 2, Gauge::Z}, CodeSpec{2, 3, Gauge::Z}}) {
        const QuantumState in = encode(spec, 0.6, 0.8);
        const auto stabs = stabilizer_generators(spec);
        const auto gauges = gauge_generators(spec);
        KrausStringEnumerator strings(spec.num_qubits(), 1);
        while (auto s = strings.next()) {
            const QuantumState damaged = apply_string(in, *s, gamma);
            if (damaged.weight() < 1e-20) continue;

            for (const auto& leaf : syndrome_correct(damaged, spec)) {
                if (leaf.weight < 1e-18) continue;
                for (const auto& p : stabs) CHECK(branch_is_plus_one(leaf.state, p));
                for (const auto& p : gauges) CHECK(branch_is_plus_one(leaf.state, p));
            }
            for (const auto& leaf : teleport_correct(damaged, spec, false)) {
                if (leaf.weight < 1e-18) continue;
                const int off = leaf.block_b_offset;
                const int n = leaf.state.num_qubits();
                for (const auto& p : stabs) {
                    PauliString moved = p;
                    moved.num_qubits = n;
                    moved.x_mask <<= off;
                    moved.z_mask <<= off;
                    CHECK(branch_is_plus_one(leaf.state, moved));
                }
                for (const auto& p : gauges) {
                    PauliString moved = p;
                    moved.num_qubits = n;
                    moved.x_mask <<= off;
                    moved.z_mask <<= off;
                    CHECK(branch_is_plus_one(leaf.state, moved));
                }
            }
        }
    }
}

TEST_CASE("reset_pattern") {
    const CodeSpec spec3{3, 2, Gauge::Z};
    // No damage, trivial syndromes: identity.
    CHECK(reset_pattern(spec3, std::vector<int>{}, std::vector<int>{1, 1}).is_identity());

    // One damaged row with both adjacent X syndromes -1: Z on its first qubit.
    const PauliString single =
        reset_pattern(spec3, std::vector<int>{1}, std::vector<int>{-1, -1});
    CHECK(single == PauliString::z_on(6, std::uint64_t{1} << spec3.qubit(1, 0)));

    // Two adjacent damaged rows on a 4-row code with syndromes (-1, +1, -1):
    // the unique solution flips both damaged first qubits. Verified against
    // brute force over all four patterns.
    const CodeSpec spec4{4, 2, Gauge::Z};
    const std::vector<int> damaged{1, 2};
    const std::vector<int> syndromes{-1, 1, -1};
    const PauliString got = reset_pattern(spec4, damaged, syndromes);
    int solutions = 0;
    PauliString expect = PauliString::identity(8);
    for (int z1 = 0; z1 < 2; ++z1) {
        for (int z2 = 0; z2 < 2; ++z2) {
            // z over rows: (0, z1, z2, 0); generator r needs z_r ^ z_{r+1} = b_r.
            const int z[4] = {0, z1, z2, 0};
            bool ok = true;
            for (int r = 0; r < 3; ++r) {
                const int b = syndromes[r] < 0 ? 1 : 0;
                if ((z[r] ^ z[r + 1]) != b) ok = false;
            }
            if (!ok) continue;
            ++solutions;
            std::uint64_t mask = 0;
            if (z1) mask |= std::uint64_t{1} << spec4.qubit(1, 0);
            if (z2) mask |= std::uint64_t{1} << spec4.qubit(2, 0);
            expect = PauliString::z_on(8, mask);
        }
    }
    CHECK(solutions == 1);
    CHECK(got == expect);

    // Inconsistent input throws.
    CHECK_THROWS_AS(reset_pattern(spec3, std::vector<int>{}, std::vector<int>{-1, 1}),
                    std::logic_error);
}

TEST_CASE("decoders are deterministic") {
    const CodeSpec spec{2, 2, Gauge::Z};
    const QuantumState damaged =
        single_damping_event(encode(spec, 0.6, 0.8), spec, 1, 0.3);
    const auto a = clifford_decode(damaged, spec);
    const auto b = clifford_decode(damaged, spec);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].weight == b[i].weight);
        CHECK(a[i].report.outcomes == b[i].report.outcomes);
        CHECK(a[i].state.max_abs_diff(b[i].state) == 0.0);
    }
}

TEST_CASE("sampled decoders draw branches from the exact distribution") {
    const CodeSpec spec{2, 2, Gauge::Z};
    QuantumState damaged = single_damping_event(encode(spec, 0.6, 0.8), spec, 0, 0.3);
    damaged.normalize();
    damaged.set_norm_is_weight(false);

    const long shots = 20000;
    auto check_frequencies = [&](const std::map<std::vector<int>, double>& exact,
                                 const std::map<std::vector<int>, long>& counts) {
        for (const auto& [pattern, p] : exact) {
            const auto it = counts.find(pattern);
            const double freq =
                it == counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
            const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / shots);
            CHECK(std::abs(freq - p) <= 4.0 * sigma + 1e-9);
        }
    };

    {
        std::map<std::vector<int>, double> exact;
        for (const auto& leaf : clifford_decode(damaged, spec)) {
            exact[leaf.report.outcomes] += leaf.weight;
        }
        std::map<std::vector<int>, long> counts;
        for (long i = 0; i < shots; ++i) {
            RngStream rng(3, static_cast<std::uint64_t>(i));
            counts[clifford_decode_sampled(damaged, spec, rng).report.outcomes] += 1;
        }
        check_frequencies(exact, counts);
    }
    {
        std::map<std::vector<int>, double> exact;
        for (const auto& leaf : standard_correct(damaged, spec)) {
            exact[leaf.report.outcomes] += leaf.weight;
        }
        std::map<std::vector<int>, long> counts;
        for (long i = 0; i < shots; ++i) {
            RngStream rng(4, static_cast<std::uint64_t>(i));
            counts[standard_correct_sampled(damaged, spec, rng).report.outcomes] += 1;
        }
        check_frequencies(exact, counts);
    }
    {
        std::map<std::vector<int>, double> exact;
        for (const auto& leaf : syndrome_correct(damaged, spec)) {
            exact[leaf.report.outcomes] += leaf.weight;
        }
        std::map<std::vector<int>, long> counts;
        for (long i = 0; i < shots; ++i) {
            RngStream rng(5, static_cast<std::uint64_t>(i));
            counts[syndrome_correct_sampled(damaged, spec, rng).report.outcomes] += 1;
        }
        check_frequencies(exact, counts);
    }
    {
        std::map<std::vector<int>, double> exact;
        for (const auto& leaf : teleport_correct(damaged, spec, false)) {
            exact[leaf.record.outcomes] += leaf.weight;
        }
        std::map<std::vector<int>, long> counts;
        for (long i = 0; i < shots; ++i) {
            RngStream rng(6, static_cast<std::uint64_t>(i));
            counts[teleport_correct_sampled(damaged, spec, false, rng).record.outcomes] +=
                1;
        }
        check_frequencies(exact, counts);
    }
}

TEST_CASE("clifford_decode handles the largest vector-mode code") {
    // (3,5): 15 block qubits, state-vector engine only.
    const CodeSpec spec{3, 5, Gauge::Z};
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    const auto clean = clifford_decode(encode(spec, alpha, beta), spec);
    REQUIRE(clean.size() == 1);
    CHECK(qubit_fidelity(clean[0].state, clean[0].logical_qubit, alpha, beta) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const QuantumState damaged =
        single_damping_event(encode(spec, alpha, beta), spec, 7, 0.3);
    double total_w = 0.0, total_f = 0.0;
    for (const auto& leaf : clifford_decode(damaged, spec)) {
        CHECK(leaf.report.damped_rows == std::vector<int>{1});
        total_w += leaf.weight;
        total_f += leaf.weight * qubit_fidelity(leaf.state, leaf.logical_qubit, alpha, beta);
    }
    CHECK(total_f / total_w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("clifford_decode flags total information loss") {
    // Damping in every row: the encoded qubit is unrecoverable and the
    // decoder says so.
    const CodeSpec spec{2, 2, Gauge::Z};
    QuantumState damaged = encode(spec, 0.6, 0.8);
    damaged.apply_single_qubit_kraus(0, damping_a1(0.4));
    damaged.apply_single_qubit_kraus(2, damping_a1(0.4));
    damaged.set_norm_is_weight(true);
    REQUIRE(damaged.weight() > 0.0);
    const auto leaves = clifford_decode(damaged, spec);
    REQUIRE(!leaves.empty());
    for (const auto& leaf : leaves) {
        CHECK(leaf.report.failed);
        CHECK(leaf.report.undamped_count == 0);
        CHECK(leaf.report.damped_rows == std::vector<int>{0, 1});
        CHECK(leaf.logical_qubit == leaf.state.num_qubits() - 1);
    }
}

TEST_CASE("teleport multi-column reports when no clean column survives") {
    // Diagonal double damping leaves no column untouched.
    const CodeSpec spec{2, 2, Gauge::Z};
    QuantumState damaged = encode(spec, 0.6, 0.8);
    damaged.apply_single_qubit_kraus(0, damping_a1(0.4));  // (0,0)
    damaged.apply_single_qubit_kraus(3, damping_a1(0.4));  // (1,1)
    damaged.set_norm_is_weight(true);
    REQUIRE(damaged.weight() > 0.0);
    bool saw_failure = false;
    for (const auto& leaf : teleport_correct(damaged, spec, true)) {
        if (!leaf.record.good_column_found) saw_failure = true;
    }
    CHECK(saw_failure);
}
