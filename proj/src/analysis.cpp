#include "qdamp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdamp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct LogicalOps {
    PauliString x, y, z;
};

LogicalOps block_logicals(const CodeSpec& spec, int total_qubits, int offset) {
    std::uint64_t row0 = ((std::uint64_t{1} << spec.cols) - 1) << offset;
    std::uint64_t col0 = 0;
    for (int r = 0; r < spec.rows; ++r) {
        col0 |= std::uint64_t{1} << (offset + spec.qubit(r, 0));
    }
    LogicalOps ops;
    ops.x = PauliString::x_on(total_qubits, row0);
    ops.z = PauliString::z_on(total_qubits, col0);
    ops.y = ops.x.times(ops.z).with_extra_phase(1);
    return ops;
}

LogicalOps qubit_logicals(int total_qubits, int qubit) {
    LogicalOps ops;
    ops.x = PauliString::single(total_qubits, qubit, 'X');
    ops.y = PauliString::single(total_qubits, qubit, 'Y');
    ops.z = PauliString::single(total_qubits, qubit, 'Z');
    return ops;
}

// Unnormalized <Phi+| rho_{ref,logical} |Phi+> of a decoded leaf, evaluated
// through logical-Pauli expectations: 4F = <I> + <X X> - <Y Y> + <Z Z>.
double entanglement_contribution(const QuantumState& st, int ref_qubit,
                                 const LogicalOps& logical) {
    const int n = st.num_qubits();
    const double w = st.weight();
    const double xx =
        st.expectation(PauliString::single(n, ref_qubit, 'X').times(logical.x)).real();
    const double yy =
        st.expectation(PauliString::single(n, ref_qubit, 'Y').times(logical.y)).real();
    const double zz =
        st.expectation(PauliString::single(n, ref_qubit, 'Z').times(logical.z)).real();
    return 0.25 * (w + xx - yy + zz);
}

// Unnormalized fidelity against the pure logical target with Bloch vector s.
double pure_target_contribution(const QuantumState& st, const LogicalOps& logical,
                                const std::array<double, 3>& bloch) {
    const double w = st.weight();
    double acc = w;
    if (bloch[0] != 0.0) acc += bloch[0] * st.expectation(logical.x).real();
    if (bloch[1] != 0.0) acc += bloch[1] * st.expectation(logical.y).real();
    if (bloch[2] != 0.0) acc += bloch[2] * st.expectation(logical.z).real();
    return 0.5 * acc;
}

// Reference-entangled encoded input: sum_b |b-bar>|b>_ref / sqrt(2), with the
// block at qubits [0, nm) and the reference at qubit nm.
QuantumState reference_encoded(const CodeSpec& spec) {
    const QuantumState cw0 = codeword(spec, 0);
    const QuantumState cw1 = codeword(spec, 1);
    const int nm = spec.num_qubits();
    std::vector<cplx> amps(std::uint64_t{1} << (nm + 1), cplx{});
    for (std::uint64_t i = 0; i < cw0.dim(); ++i) {
        amps[i] = cw0.amplitude(i) * kInvSqrt2;
        amps[i | (std::uint64_t{1} << nm)] = cw1.amplitude(i) * kInvSqrt2;
    }
    return QuantumState::from_vector(nm + 1, amps);
}

struct DecodeAccumulator {
    const CodeSpec& spec;
    DecoderKind decoder;
    int ref_qubit;                            // -1: pure-target mode
    std::array<double, 3> target_bloch{};     // used when ref_qubit < 0

    double operator()(const QuantumState& input) const {
        double total = 0.0;
        const auto score = [&](const QuantumState& st, const LogicalOps& ops) {
            return ref_qubit >= 0 ? entanglement_contribution(st, ref_qubit, ops)
                                  : pure_target_contribution(st, ops, target_bloch);
        };
        switch (decoder) {
            case DecoderKind::Standard:
                for (const DecodedLeaf& leaf : standard_correct(input, spec)) {
                    total += score(leaf.state,
                                   block_logicals(spec, leaf.state.num_qubits(), 0));
                }
                break;
            case DecoderKind::Syndrome:
                for (const DecodedLeaf& leaf : syndrome_correct(input, spec)) {
                    total += score(leaf.state,
                                   block_logicals(spec, leaf.state.num_qubits(), 0));
                }
                break;
            case DecoderKind::Clifford:
                for (const CliffordLeaf& leaf : clifford_decode(input, spec)) {
                    total += score(leaf.state,
                                   qubit_logicals(leaf.state.num_qubits(),
                                                  leaf.logical_qubit));
                }
                break;
            case DecoderKind::Teleport:
            case DecoderKind::TeleportMulti:
                for (const TeleportLeaf& leaf : teleport_correct(
                         input, spec, decoder == DecoderKind::TeleportMulti)) {
                    total += score(leaf.state,
                                   block_logicals(spec, leaf.state.num_qubits(),
                                                  leaf.block_b_offset));
                }
                break;
        }
        return total;
    }

    double sampled(const QuantumState& input, RngStream& rng) const {
        const auto score = [&](const QuantumState& st, const LogicalOps& ops) {
            return ref_qubit >= 0 ? entanglement_contribution(st, ref_qubit, ops)
                                  : pure_target_contribution(st, ops, target_bloch);
        };
        switch (decoder) {
            case DecoderKind::Standard: {
                const DecodedLeaf leaf = standard_correct_sampled(input, spec, rng);
                return score(leaf.state, block_logicals(spec, leaf.state.num_qubits(), 0));
            }
            case DecoderKind::Syndrome: {
                const DecodedLeaf leaf = syndrome_correct_sampled(input, spec, rng);
                return score(leaf.state, block_logicals(spec, leaf.state.num_qubits(), 0));
            }
            case DecoderKind::Clifford: {
                const CliffordLeaf leaf = clifford_decode_sampled(input, spec, rng);
                return score(leaf.state,
                             qubit_logicals(leaf.state.num_qubits(), leaf.logical_qubit));
            }
            case DecoderKind::Teleport:
            case DecoderKind::TeleportMulti: {
                const TeleportLeaf leaf = teleport_correct_sampled(
                    input, spec, decoder == DecoderKind::TeleportMulti, rng);
                return score(leaf.state, block_logicals(spec, leaf.state.num_qubits(),
                                                        leaf.block_b_offset));
            }
        }
        return 0.0;
    }
};

Mat2 pauli_mat(char axis) {
    Mat2 m;
    switch (axis) {
        case 'I':
            m(0, 0) = m(1, 1) = 1.0;
            break;
        case 'X':
            m(0, 1) = m(1, 0) = 1.0;
            break;
        case 'Y':
            m(0, 1) = cplx{0, -1};
            m(1, 0) = cplx{0, 1};
            break;
        case 'Z':
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

void apply_exact_channel(QuantumState& rho, int block_qubits, ChannelKind channel,
                         double gamma) {
    if (channel == ChannelKind::Damping) {
        const std::array<Mat2, 2> kraus{damping_a0(gamma), damping_a1(gamma)};
        for (int q = 0; q < block_qubits; ++q) {
            rho.apply_single_qubit_channel(q, kraus);
        }
        return;
    }
    const TwirlDistribution d = twirl_distribution(gamma);
    const std::array<Mat2, 4> kraus{pauli_mat('I').scaled(std::sqrt(d.p_i)),
                                    pauli_mat('X').scaled(std::sqrt(d.p_x)),
                                    pauli_mat('Y').scaled(std::sqrt(d.p_y)),
                                    pauli_mat('Z').scaled(std::sqrt(d.p_z))};
    for (int q = 0; q < block_qubits; ++q) {
        rho.apply_single_qubit_channel(q, kraus);
    }
}

// Sum over channel branches of the decoded fidelity contribution.
double truncated_kraus_fidelity(const QuantumState& input, const CodeSpec& spec,
                                ChannelKind channel, double gamma, int order,
                                const DecodeAccumulator& acc) {
    const int nm = spec.num_qubits();
    order = std::min(order, nm);
    double total = 0.0;
    if (channel == ChannelKind::Damping) {
        const Mat2 a0 = damping_a0(gamma);
        const Mat2 a1 = damping_a1(gamma);
        KrausStringEnumerator strings(nm, order);
        while (auto s = strings.next()) {
            QuantumState branch = input;
            for (int q = 0; q < nm; ++q) {
                branch.apply_single_qubit_kraus(
                    q, s->labels[q] == KrausLabel::A1 ? a1 : a0);
            }
            if (branch.weight() <= 0.0) continue;
            branch.set_norm_is_weight(true);
            total += acc(branch);
        }
        return total;
    }
    for (const TwirlStringBranch& tb : twirl_strings_up_to_weight(nm, order, gamma)) {
        if (tb.probability <= 0.0) continue;
        QuantumState branch = input;
        PauliString op = tb.op;
        op.num_qubits = input.num_qubits();  // block sits at offset 0
        branch.apply_pauli(op);
        branch.scale(std::sqrt(tb.probability));
        branch.set_norm_is_weight(true);
        total += acc(branch);
    }
    return total;
}

// One Monte Carlo shot: sample a channel branch qubit by qubit, then decode
// along a sampled measurement path. The input must be normalized.
double monte_carlo_shot(const QuantumState& input, const CodeSpec& spec,
                        ChannelKind channel, double gamma, const DecodeAccumulator& acc,
                        RngStream& rng) {
    QuantumState st = input;
    const int nm = spec.num_qubits();
    if (channel == ChannelKind::Damping) {
        const Mat2 a0 = damping_a0(gamma);
        const Mat2 a1 = damping_a1(gamma);
        for (int q = 0; q < nm; ++q) {
            const double p1 = gamma * st.qubit_weight(q, 1);
            if (rng.next_double() < p1) {
                st.apply_single_qubit_kraus(q, a1);
            } else {
                st.apply_single_qubit_kraus(q, a0);
            }
            st.normalize();
        }
    } else {
        const TwirlDistribution d = twirl_distribution(gamma);
        for (int q = 0; q < nm; ++q) {
            const double u = rng.next_double();
            char axis = 'I';
            if (u < d.p_x) {
                axis = 'X';
            } else if (u < d.p_x + d.p_y) {
                axis = 'Y';
            } else if (u < d.p_x + d.p_y + d.p_z) {
                axis = 'Z';
            }
            if (axis != 'I') {
                st.apply_pauli(PauliString::single(st.num_qubits(), q, axis));
            }
        }
    }
    return acc.sampled(st, rng);
}

struct MetricInput {
    QuantumState state;
    int ref_qubit = -1;
    std::array<double, 3> bloch{};
};

std::vector<MetricInput> metric_inputs(const CodeSpec& spec, Metric metric) {
    std::vector<MetricInput> inputs;
    if (metric == Metric::Entanglement) {
        inputs.push_back({reference_encoded(spec), spec.num_qubits(), {}});
        return inputs;
    }
    const cplx inv_sqrt2{kInvSqrt2, 0};
    const std::array<std::pair<std::array<cplx, 2>, std::array<double, 3>>, 6> table{{
        {{cplx{1, 0}, cplx{0, 0}}, {0, 0, 1}},
        {{cplx{0, 0}, cplx{1, 0}}, {0, 0, -1}},
        {{inv_sqrt2, inv_sqrt2}, {1, 0, 0}},
        {{inv_sqrt2, -inv_sqrt2}, {-1, 0, 0}},
        {{inv_sqrt2, cplx{0, kInvSqrt2}}, {0, 1, 0}},
        {{inv_sqrt2, cplx{0, -kInvSqrt2}}, {0, -1, 0}},
    }};
    for (const auto& [amps, bloch] : table) {
        inputs.push_back({encode(spec, amps[0], amps[1]), -1, bloch});
    }
    return inputs;
}

int total_sim_qubits(const CodeSpec& spec, DecoderKind decoder, Metric metric) {
    int n = spec.num_qubits();
    if (metric == Metric::Entanglement) n += 1;
    if (decoder == DecoderKind::Teleport || decoder == DecoderKind::TeleportMulti) {
        n += spec.num_qubits();
    }
    return n;
}

double fit_slope(std::span<const double> xs, std::span<const double> ys, double* intercept) {
    const int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    if (intercept) *intercept = (sy - slope * sx) / n;
    return slope;
}

// Least-squares polynomial fit via normal equations; returns coefficients of
// 1, u, ..., u^degree.
std::vector<double> fit_polynomial(std::span<const double> us, std::span<const double> ys,
                                   int degree) {
    const int k = degree + 1;
    std::vector<double> ata(k * k, 0.0);
    std::vector<double> aty(k, 0.0);
    for (size_t i = 0; i < us.size(); ++i) {
        std::vector<double> pows(k, 1.0);
        for (int j = 1; j < k; ++j) pows[j] = pows[j - 1] * us[i];
        for (int r = 0; r < k; ++r) {
            aty[r] += pows[r] * ys[i];
            for (int c = 0; c < k; ++c) ata[r * k + c] += pows[r] * pows[c];
        }
    }
    // Gaussian elimination with partial pivoting.
    std::vector<double> coeff = aty;
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(ata[r * k + col]) > std::abs(ata[pivot * k + col])) pivot = r;
        }
        for (int c = 0; c < k; ++c) std::swap(ata[col * k + c], ata[pivot * k + c]);
        std::swap(coeff[col], coeff[pivot]);
        const double d = ata[col * k + col];
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = ata[r * k + col] / d;
            for (int c = col; c < k; ++c) ata[r * k + c] -= f * ata[col * k + c];
            coeff[r] -= f * coeff[col];
        }
    }
    for (int i = 0; i < k; ++i) coeff[i] /= ata[i * k + i];
    return coeff;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        out[i] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
    }
    return out;
}

}  // namespace

EngineMode EngineMode::exact_density() { return EngineMode{Kind::ExactDensity, 0, 0, 0}; }

EngineMode EngineMode::truncated_kraus(int order) {
    return EngineMode{Kind::TruncatedKraus, order, 0, 0};
}

EngineMode EngineMode::monte_carlo(long shots, std::uint64_t seed) {
    return EngineMode{Kind::MonteCarlo, 0, shots, seed};
}

std::string EngineMode::label() const {
    switch (kind) {
        case Kind::ExactDensity:
            return "exact-density";
        case Kind::TruncatedKraus:
            return "truncated-kraus-" + std::to_string(truncation_order);
        case Kind::MonteCarlo:
            return "monte-carlo";
    }
    return "?";
}

const char* to_string(DecoderKind decoder) {
    switch (decoder) {
        case DecoderKind::Standard:
            return "standard";
        case DecoderKind::Clifford:
            return "clifford";
        case DecoderKind::Teleport:
            return "teleport";
        case DecoderKind::TeleportMulti:
            return "teleport-multicolumn";
        case DecoderKind::Syndrome:
            return "syndrome";
    }
    return "?";
}

const char* to_string(ChannelKind channel) {
    return channel == ChannelKind::Damping ? "damping" : "twirl";
}

FidelityCurve fidelity_curve(const CodeSpec& spec, DecoderKind decoder, ChannelKind channel,
                             std::span<const double> gammas, const EngineMode& mode,
                             Metric metric) {
    spec.validate();
    if (mode.kind == EngineMode::Kind::ExactDensity &&
        total_sim_qubits(spec, decoder, metric) > 12) {
        throw std::invalid_argument("ExactDensity is limited to 12 total qubits");
    }
    if (mode.kind == EngineMode::Kind::MonteCarlo && mode.shots <= 0) {
        throw std::invalid_argument("MonteCarlo mode needs a positive shot count");
    }

    const std::vector<MetricInput> inputs = metric_inputs(spec, metric);
    FidelityCurve curve;
    for (double gamma : gammas) {
        validate_gamma(gamma);
        CurvePoint point;
        point.gamma = gamma;
        double worst = 2.0;
        for (const MetricInput& in : inputs) {
            const DecodeAccumulator acc{spec, decoder, in.ref_qubit, in.bloch};
            double fidelity = 0.0;
            switch (mode.kind) {
                case EngineMode::Kind::ExactDensity: {
                    QuantumState rho = QuantumState::density_of(in.state);
                    apply_exact_channel(rho, spec.num_qubits(), channel, gamma);
                    fidelity = acc(rho);
                    break;
                }
                case EngineMode::Kind::TruncatedKraus: {
                    fidelity = truncated_kraus_fidelity(in.state, spec, channel, gamma,
                                                        mode.truncation_order, acc);
                    const int order = std::min(mode.truncation_order, spec.num_qubits());
                    const double bound =
                        channel == ChannelKind::Damping
                            ? truncation_bound(spec.num_qubits(), order, gamma)
                            : twirl_truncation_bound(spec.num_qubits(), order, gamma);
                    point.truncation_bound =
                        std::max(point.truncation_bound.value_or(0.0), bound);
                    break;
                }
                case EngineMode::Kind::MonteCarlo: {
                    double sum = 0.0, sum_sq = 0.0;
                    for (long shot = 0; shot < mode.shots; ++shot) {
                        RngStream rng(mode.seed, static_cast<std::uint64_t>(shot));
                        const double f =
                            monte_carlo_shot(in.state, spec, channel, gamma, acc, rng);
                        sum += f;
                        sum_sq += f * f;
                    }
                    fidelity = sum / static_cast<double>(mode.shots);
                    const double var =
                        std::max(0.0, sum_sq / mode.shots - fidelity * fidelity);
                    point.std_error = std::sqrt(var / mode.shots);
                    break;
                }
            }
            worst = std::min(worst, fidelity);
        }
        point.fidelity = worst;
        point.infidelity = 1.0 - worst;
        curve.points.push_back(point);
    }
    return curve;
}

OrderEstimate recovery_order(const CodeSpec& spec, DecoderKind decoder, ChannelKind channel,
                             int target_t, const EngineMode& mode, FitWindow window) {
    const std::vector<double> grid =
        log_spaced(window.gamma_min, window.gamma_max, window.points);
    const FidelityCurve curve = fidelity_curve(spec, decoder, channel, grid, mode);

    OrderEstimate est;
    est.target_t = target_t;
    std::vector<double> xs, ys;
    for (const CurvePoint& p : curve.points) {
        if (p.infidelity > 1e-13) {
            xs.push_back(std::log(p.gamma));
            ys.push_back(std::log(p.infidelity));
        }
    }
    if (xs.size() < 2) {
        est.exact_at_precision = true;
        est.pass = true;
        return est;
    }
    est.slope = fit_slope(xs, ys, &est.intercept);
    est.pass = est.slope >= target_t + 0.9;
    return est;
}

OrderEstimate recovery_order_series(const CodeSpec& spec, DecoderKind decoder,
                                    ChannelKind channel, int target_t, double gamma_max) {
    // One guard coefficient beyond the claimed order keeps the genuine
    // gamma^(t+2) tail from aliasing into c_1..c_t.
    const int degree = target_t + 2;
    const int points = degree + 2;
    std::vector<double> grid(points), us(points);
    for (int i = 0; i < points; ++i) {
        us[i] = static_cast<double>(i + 1) / points;
        grid[i] = gamma_max * us[i];
    }
    const FidelityCurve curve = fidelity_curve(spec, decoder, channel, grid,
                                               EngineMode::truncated_kraus(target_t));
    std::vector<double> ys;
    for (const CurvePoint& p : curve.points) ys.push_back(p.infidelity);

    OrderEstimate est;
    est.target_t = target_t;
    est.series_mode = true;
    est.coefficients = fit_polynomial(us, ys, degree);
    const double leading = std::abs(est.coefficients[target_t + 1]);
    if (leading <= 1e-13) {
        est.exact_at_precision = true;
        est.pass = true;
        return est;
    }
    double worst = 0.0;
    for (int k = 1; k <= target_t; ++k) {
        worst = std::max(worst, std::abs(est.coefficients[k]));
    }
    est.pass = worst <= 1e-3 * leading;
    return est;
}

KLReport kl_check(const CodeSpec& spec, int t) {
    spec.validate();
    if (spec.num_qubits() > 16) {
        throw std::invalid_argument("kl_check supports at most 16 qubits");
    }
    if (t < 0 || t >= std::min(spec.rows, spec.cols)) {
        throw std::invalid_argument("order t must be below the code dimensions");
    }
    const int nm = spec.num_qubits();
    const std::vector<double> grid = log_spaced(1e-3, 1e-2, 6);

    std::vector<KrausString> strings;
    {
        KrausStringEnumerator en(nm, t);
        while (auto s = en.next()) strings.push_back(std::move(*s));
    }
    const QuantumState cw0 = codeword(spec, 0);
    const QuantumState cw1 = codeword(spec, 1);

    // violations[pair][grid index]
    const size_t num_pairs = strings.size() * (strings.size() + 1) / 2;
    std::vector<std::vector<double>> violations(num_pairs,
                                                std::vector<double>(grid.size(), 0.0));
    for (size_t g = 0; g < grid.size(); ++g) {
        std::vector<QuantumState> e0, e1;
        e0.reserve(strings.size());
        e1.reserve(strings.size());
        for (const KrausString& s : strings) {
            e0.push_back(apply_string(cw0, s, grid[g]));
            e1.push_back(apply_string(cw1, s, grid[g]));
        }
        size_t pair = 0;
        for (size_t i = 0; i < strings.size(); ++i) {
            for (size_t j = i; j < strings.size(); ++j, ++pair) {
                const cplx m00 = e0[i].inner(e0[j]);
                const cplx m11 = e1[i].inner(e1[j]);
                const cplx m01 = e0[i].inner(e1[j]);
                const cplx m10 = e1[i].inner(e0[j]);
                violations[pair][g] = std::max(
                    {std::abs(m01), std::abs(m10), std::abs(m00 - m11)});
            }
        }
    }

    KLReport report;
    report.pass = true;
    report.min_exponent = 1e9;
    size_t worst_pair = 0;
    size_t pair = 0;
    for (size_t i = 0; i < strings.size(); ++i) {
        for (size_t j = i; j < strings.size(); ++j, ++pair) {
            double top = 0.0;
            for (double v : violations[pair]) top = std::max(top, v);
            if (top <= 1e-13) continue;  // identically satisfied
            std::vector<double> xs, ys;
            for (size_t g = 0; g < grid.size(); ++g) {
                xs.push_back(std::log(grid[g]));
                ys.push_back(std::log(std::max(violations[pair][g], 1e-300)));
            }
            const double exponent = fit_slope(xs, ys, nullptr);
            if (exponent < report.min_exponent) {
                report.min_exponent = exponent;
                worst_pair = pair;
            }
        }
    }
    if (report.min_exponent < t + 1 - 0.1) {
        report.pass = false;
        // Reconstruct the worst pair and its witness basis state at the top
        // of the grid.
        size_t idx = 0;
        for (size_t i = 0; i < strings.size(); ++i) {
            for (size_t j = i; j < strings.size(); ++j, ++idx) {
                if (idx != worst_pair) continue;
                KLWitness witness;
                witness.error_e = strings[i];
                witness.error_f = strings[j];
                witness.fitted_exponent = report.min_exponent;
                const double gamma = grid.back();
                witness.violation = violations[worst_pair].back();
                const QuantumState ei0 = apply_string(cw0, strings[i], gamma);
                const QuantumState ei1 = apply_string(cw1, strings[i], gamma);
                const QuantumState fj0 = apply_string(cw0, strings[j], gamma);
                const QuantumState fj1 = apply_string(cw1, strings[j], gamma);
                // Pick the worst matrix entry, then the basis state carrying
                // the largest contribution to it. Magnitude ties go to the
                // highest basis index.
                const double v01 = std::abs(ei0.inner(fj1));
                const double v10 = std::abs(ei1.inner(fj0));
                const double vdd = std::abs(ei0.inner(fj0) - ei1.inner(fj1));
                double best = -1.0;
                std::uint64_t best_s = 0;
                for (std::uint64_t s = 0; s < ei0.dim(); ++s) {
                    double v = 0.0;
                    if (v01 >= v10 && v01 >= vdd) {
                        v = std::abs(ei0.amplitude(s)) * std::abs(fj1.amplitude(s));
                    } else if (v10 >= vdd) {
                        v = std::abs(ei1.amplitude(s)) * std::abs(fj0.amplitude(s));
                    } else {
                        v = std::abs(std::conj(ei0.amplitude(s)) * fj0.amplitude(s) -
                                     std::conj(ei1.amplitude(s)) * fj1.amplitude(s));
                    }
                    if (v >= best) {
                        best = v;
                        best_s = s;
                    }
                }
                std::string label;
                for (int q = 0; q < nm; ++q) {
                    label += ((best_s >> q) & 1) ? '1' : '0';
                }
                witness.basis_state = label;
                report.witness = witness;
            }
        }
    }
    if (report.min_exponent > 1e8) report.min_exponent = 0.0;  // nothing violated
    return report;
}

double no_threshold_prob(int n, int m, double gamma) {
    if (n < 1 || m < 1) throw std::invalid_argument("code dimensions must be positive");
    validate_gamma(gamma);
    return std::exp(no_threshold_log_prob(n, m, gamma));
}

double no_threshold_log_prob(int n, int m, double gamma) {
    if (n < 1 || m < 1) throw std::invalid_argument("code dimensions must be positive");
    validate_gamma(gamma);
    if (gamma == 0.0) return -std::numeric_limits<double>::infinity();
    if (gamma == 1.0) return 0.0;
    // log p = n log(1 - (1-g)^m), with (1-g)^m = exp(m log1p(-g)).
    const double row_keep = std::exp(static_cast<double>(m) * std::log1p(-gamma));
    return static_cast<double>(n) * std::log1p(-row_keep);
}

}  // namespace qdamp
