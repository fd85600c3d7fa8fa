#include <doctest.h>

#include <cmath>
#include <tuple>

#include "qdamp/channel.hpp"
#include "qdamp/code_lattice.hpp"

using namespace qdamp;

namespace {

std::uint64_t ket(const std::string& bits) {
    std::uint64_t s = 0;
    for (size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') s |= std::uint64_t{1} << q;
    }
    return s;
}

// 2x2 density-matrix helper used as the independent oracle for the twirl.
struct Density2 {
    std::array<cplx, 4> m{};
    static Density2 of(const std::array<cplx, 2>& psi) {
        Density2 d;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) d.m[2 * r + c] = psi[r] * std::conj(psi[c]);
        }
        return d;
    }
    Density2 conjugated_by(const Mat2& k) const {
        // K rho K^dagger
        Density2 out;
        std::array<cplx, 4> tmp{};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                tmp[2 * r + c] = k(r, 0) * m[c] + k(r, 1) * m[2 + c];
            }
        }
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out.m[2 * r + c] =
                    tmp[2 * r + 0] * std::conj(k(c, 0)) + tmp[2 * r + 1] * std::conj(k(c, 1));
            }
        }
        return out;
    }
    Density2 plus(const Density2& o) const {
        Density2 out;
        for (int i = 0; i < 4; ++i) out.m[i] = m[i] + o.m[i];
        return out;
    }
    Density2 scaled(double f) const {
        Density2 out;
        for (int i = 0; i < 4; ++i) out.m[i] = m[i] * f;
        return out;
    }
};

Mat2 pauli_mat(char axis) {
    Mat2 m;
    switch (axis) {
        case 'I': m(0, 0) = m(1, 1) = 1.0; break;
        case 'X': m(0, 1) = m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = cplx{0, -1}; m(1, 0) = cplx{0, 1}; break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

// The twirl computed directly from the damping Kraus operators: average the
// channel over conjugation by I, X, Y, Z.
Density2 twirl_oracle(const Density2& rho, double gamma) {
    const Mat2 a0 = damping_a0(gamma);
    const Mat2 a1 = damping_a1(gamma);
    Density2 acc;
    for (char axis : {'I', 'X', 'Y', 'Z'}) {
        const Mat2 sigma = pauli_mat(axis);
        const Density2 rotated = rho.conjugated_by(sigma);
        const Density2 damped =
            rotated.conjugated_by(a0).plus(rotated.conjugated_by(a1));
        acc = acc.plus(damped.conjugated_by(sigma).scaled(0.25));
    }
    return acc;
}

}  // namespace

TEST_CASE("damping Kraus operators at the anchor points") {
    auto [a0, a1] = damping_kraus(0.0);
    CHECK(a0.max_abs_diff(Mat2::identity()) == 0.0);
    CHECK(a1.max_abs_diff(Mat2::zero()) == 0.0);

    std::tie(a0, a1) = damping_kraus(1.0);
    CHECK(std::abs(a0(0, 0) - cplx{1, 0}) == 0.0);
    CHECK(std::abs(a0(1, 1)) == 0.0);
    CHECK(std::abs(a1(0, 1) - cplx{1, 0}) == 0.0);

    std::tie(a0, a1) = damping_kraus(0.36);
    CHECK(std::abs(a0(1, 1) - cplx{0.8, 0}) < 1e-15);
    CHECK(std::abs(a1(0, 1) - cplx{0.6, 0}) < 1e-15);

    CHECK_THROWS_AS(damping_kraus(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(damping_kraus(1.1), std::invalid_argument);
}

TEST_CASE("trace preservation on a gamma grid") {
    for (int i = 0; i <= 10; ++i) {
        const double gamma = i / 10.0;
        const auto [a0, a1] = damping_kraus(gamma);
        const Mat2 total = a0.dagger().times(a0).plus(a1.dagger().times(a1));
        CHECK(total.max_abs_diff(Mat2::identity()) <= 1e-14);
    }
}

TEST_CASE("A0 decomposition into identity and phase flip") {
    auto [ci, cz] = a0_decomposition(0.0);
    CHECK(ci == 1.0);
    CHECK(cz == 0.0);
    std::tie(ci, cz) = a0_decomposition(0.36);
    CHECK(std::abs(ci - 0.9) < 1e-15);
    CHECK(std::abs(cz - 0.1) < 1e-15);
    std::tie(ci, cz) = a0_decomposition(1.0);
    CHECK(ci == 0.5);
    CHECK(cz == 0.5);

    // cI*I + cZ*Z reproduces A0 exactly.
    for (double gamma : {0.0, 0.1, 0.36, 0.77, 1.0}) {
        std::tie(ci, cz) = a0_decomposition(gamma);
        const Mat2 rebuilt = pauli_mat('I').scaled(ci).plus(pauli_mat('Z').scaled(cz));
        CHECK(rebuilt.max_abs_diff(damping_a0(gamma)) <= 1e-15);
    }
}

TEST_CASE("A0 is close to (1 - g/4) I + (g/4) Z at small gamma") {
    for (double gamma = 0.01; gamma <= 0.2 + 1e-12; gamma += 0.01) {
        const auto [ci, cz] = a0_decomposition(gamma);
        CHECK(std::abs(ci - (1.0 - 0.25 * gamma)) <= gamma * gamma / 8.0);
        CHECK(std::abs(cz - 0.25 * gamma) <= gamma * gamma / 8.0);
    }
}

TEST_CASE("twirl distribution closed form") {
    TwirlDistribution d = twirl_distribution(0.0);
    CHECK(d.p_i == 1.0);
    CHECK(d.p_x == 0.0);
    CHECK(d.p_y == 0.0);
    CHECK(d.p_z == 0.0);

    d = twirl_distribution(1.0);
    CHECK(d.p_i == 0.25);
    CHECK(d.p_x == 0.25);
    CHECK(d.p_y == 0.25);
    CHECK(d.p_z == 0.25);

    d = twirl_distribution(0.36);
    CHECK(std::abs(d.p_i - 0.81) < 1e-15);
    CHECK(std::abs(d.p_x - 0.09) < 1e-15);
    CHECK(std::abs(d.p_y - 0.09) < 1e-15);
    CHECK(std::abs(d.p_z - 0.01) < 1e-15);
}

TEST_CASE("twirl distribution: normalization and positivity on a grid") {
    for (int i = 0; i <= 100; ++i) {
        const double gamma = i / 100.0;
        const TwirlDistribution d = twirl_distribution(gamma);
        CHECK(d.p_i >= 0.0);
        CHECK(d.p_x >= 0.0);
        CHECK(d.p_y >= 0.0);
        CHECK(d.p_z >= 0.0);
        CHECK(std::abs(d.p_i + d.p_x + d.p_y + d.p_z - 1.0) <= 1e-12);
    }
}

TEST_CASE("pZ = gamma^2/16 to second order") {
    for (double gamma = 0.01; gamma <= 0.1 + 1e-12; gamma += 0.01) {
        const TwirlDistribution d = twirl_distribution(gamma);
        CHECK(std::abs(d.p_z - gamma * gamma / 16.0) <= gamma * gamma * gamma);
    }
}

TEST_CASE("twirl channel matches the direct conjugation oracle") {
    // |+><+| at gamma = 0.2: X expectation is 1 - 2(pY + pZ).
    const double gamma = 0.2;
    const double s = 1.0 / std::sqrt(2.0);
    const Density2 plus = Density2::of({cplx{s, 0}, cplx{s, 0}});
    const Density2 out = twirl_oracle(plus, gamma);
    const double x_expect = 2.0 * out.m[1].real();  // Tr(X rho) for real rho
    const TwirlDistribution d = twirl_distribution(gamma);
    CHECK(std::abs(x_expect - (1.0 - 2.0 * (d.p_y + d.p_z))) < 1e-12);

    // The weighted-Pauli form reproduces the oracle on a set of states.
    const auto kraus = twirl_channel_kraus(gamma);
    const std::array<std::array<cplx, 2>, 3> states{{
        {cplx{1, 0}, cplx{0, 0}},
        {cplx{s, 0}, cplx{s, 0}},
        {cplx{s, 0}, cplx{0, s}},
    }};
    for (const auto& psi : states) {
        const Density2 rho = Density2::of(psi);
        const Density2 expect = twirl_oracle(rho, gamma);
        Density2 got;
        for (const auto& [p, op] : kraus) {
            Mat2 sigma = pauli_mat("IXYZ"[(op.x_mask ? (op.z_mask ? 2 : 1)
                                                     : (op.z_mask ? 3 : 0))]);
            got = got.plus(rho.conjugated_by(sigma).scaled(p));
        }
        for (int i = 0; i < 4; ++i) CHECK(std::abs(got.m[i] - expect.m[i]) < 1e-12);
    }

    // gamma = 0.36, |1><1|: population of |1> after the twirl is pI + pZ.
    const Density2 one = Density2::of({cplx{0, 0}, cplx{1, 0}});
    const Density2 out2 = twirl_oracle(one, 0.36);
    CHECK(std::abs(out2.m[3].real() - 0.82) < 1e-12);
}

TEST_CASE("Kraus-string enumeration: counts and deterministic order") {
    {
        KrausStringEnumerator en(2, 0);
        auto s = en.next();
        REQUIRE(s.has_value());
        CHECK(s->weight() == 0);
        CHECK(!en.next().has_value());
    }
    {
        KrausStringEnumerator en(2, 1);
        int count = 0;
        while (en.next()) ++count;
        CHECK(count == 3);
    }
    CHECK(kraus_string_count(2, 1) == 3);
    CHECK(kraus_string_count(15, 2) == 121);
    CHECK(kraus_string_count(25, 2) == 326);
    {
        KrausStringEnumerator en(15, 2);
        int count = 0;
        int last_weight = 0;
        while (auto s = en.next()) {
            ++count;
            CHECK(s->weight() >= last_weight);  // weight-major order
            last_weight = s->weight();
        }
        CHECK(count == 121);
    }
    // Two enumerations agree element by element.
    {
        KrausStringEnumerator a(5, 2), b(5, 2);
        while (true) {
            auto sa = a.next();
            auto sb = b.next();
            CHECK(sa.has_value() == sb.has_value());
            if (!sa) break;
            CHECK(sa->labels == sb->labels);
        }
    }
}

TEST_CASE("apply_string") {
    const CodeSpec spec{2, 2, Gauge::Z};
    const QuantumState cw0 = codeword(spec, 0);

    // All-A0 at gamma = 0 leaves the state unchanged.
    KrausString all_a0;
    all_a0.labels.assign(4, KrausLabel::A0);
    CHECK(apply_string(cw0, all_a0, 0.0).max_abs_diff(cw0) < 1e-15);

    // A1 on a qubit in |0> annihilates the state.
    KrausString a1_first;
    a1_first.labels = {KrausLabel::A1, KrausLabel::A0, KrausLabel::A0, KrausLabel::A0};
    QuantumState zeroed = apply_string(QuantumState::computational_basis(4, 0), a1_first, 0.5);
    CHECK(zeroed.weight() == 0.0);

    // A1 on qubit 0 of |0-bar>: only the |1111> component survives, giving
    // sqrt(g) (1-g)^{3/2} |0111> / sqrt(2).
    const double gamma = 0.36;
    const QuantumState damped = apply_string(cw0, a1_first, gamma);
    const double expect =
        std::sqrt(gamma) * std::pow(1.0 - gamma, 1.5) / std::sqrt(2.0);
    CHECK(std::abs(damped.amplitude(ket("0111")) - cplx{expect, 0}) < 1e-12);
    CHECK(std::abs(damped.weight() - expect * expect) < 1e-12);

    // Dimension mismatch is rejected.
    CHECK_THROWS_AS(apply_string(QuantumState::computational_basis(3, 0), a1_first, 0.1),
                    std::invalid_argument);
}

TEST_CASE("damped-row lemma") {
    // Damping the first k qubits of row 0 (A1^k A0^{m-k} on that row only)
    // decouples the row: the result is proportional to
    // |0>^k (x) A0|1>^{m-k} (x) Xbar'|b-bar'> on the remaining rows.
    const double gamma = 0.3;
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 3; ++m) {
            const CodeSpec spec{n, m, Gauge::Z};
            for (int b : {0, 1}) {
                for (int k = 1; k <= m; ++k) {
                    QuantumState st = codeword(spec, b);
                    for (int c = 0; c < m; ++c) {
                        st.apply_single_qubit_kraus(
                            c, c < k ? damping_a1(gamma) : damping_a0(gamma));
                    }
                    if (n == 1) {
                        // Row 0 is the whole code; E_k |b-bar> vanishes for
                        // b = 0 and leaves a product state for b = 1.
                        if (b == 0) CHECK(st.weight() < 1e-28);
                        continue;
                    }
                    // Expected product state.
                    std::vector<cplx> row(std::uint64_t{1} << m, cplx{});
                    std::uint64_t rest_ones = 0;
                    for (int c = k; c < m; ++c) rest_ones |= std::uint64_t{1} << c;
                    row[rest_ones] =
                        std::pow(std::sqrt(1.0 - gamma), m - k) * std::sqrt(gamma) *
                        std::pow(std::sqrt(gamma), k - 1);
                    const QuantumState row_state = QuantumState::from_vector(m, row);

                    const CodeSpec sub{n - 1, m, Gauge::Z};
                    QuantumState content = codeword(sub, b);
                    content.apply_pauli(logical_operators(sub).first);
                    const QuantumState expect = row_state.tensor(content);

                    const double w = st.weight();
                    REQUIRE(w > 0.0);
                    const cplx overlap = expect.inner(st);
                    // Overlap of the normalized states is 1.
                    CHECK(std::abs(std::abs(overlap) /
                                       std::sqrt(w * expect.weight()) -
                                   1.0) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("truncation bound") {
    // Closed form: 1 - sum_{w<=t} C(N,w) g^w (1-g)^(N-w).
    CHECK(truncation_bound(4, 4, 0.3) <= 1e-14);
    const double g = 0.1;
    const double expect =
        1.0 - (std::pow(0.9, 4) + 4 * g * std::pow(0.9, 3) + 6 * g * g * 0.81);
    CHECK(std::abs(truncation_bound(4, 2, g) - expect) < 1e-14);
    // Monotone in t.
    for (int t = 0; t < 4; ++t) {
        CHECK(truncation_bound(4, t, 0.2) >= truncation_bound(4, t + 1, 0.2));
    }
}

TEST_CASE("twirl strings: probabilities sum to the kept mass") {
    const int n = 3;
    const double gamma = 0.25;
    for (int t = 0; t <= n; ++t) {
        double mass = 0.0;
        for (const auto& branch : twirl_strings_up_to_weight(n, t, gamma)) {
            mass += branch.probability;
        }
        CHECK(std::abs(mass - (1.0 - twirl_truncation_bound(n, t, gamma))) < 1e-12);
    }
    // Full enumeration is a probability distribution.
    double total = 0.0;
    for (const auto& branch : twirl_strings_up_to_weight(n, n, gamma)) {
        total += branch.probability;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
}
