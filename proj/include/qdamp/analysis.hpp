#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdamp/channel.hpp"
#include "qdamp/decoders.hpp"

namespace qdamp {

enum class DecoderKind { Standard, Clifford, Teleport, TeleportMulti, Syndrome };
enum class ChannelKind { Damping, Twirl };

/// Figure of merit for fidelity curves. Entanglement fidelity against a
/// maximally entangled reference is the default; WorstPauli minimizes the
/// output fidelity over the six Pauli eigenstates as inputs.
enum class Metric { Entanglement, WorstPauli };

struct EngineMode {
    enum class Kind { ExactDensity, TruncatedKraus, MonteCarlo };
    Kind kind = Kind::ExactDensity;
    int truncation_order = 2;
    long shots = 0;
    std::uint64_t seed = 0;

    static EngineMode exact_density();
    static EngineMode truncated_kraus(int order);
    static EngineMode monte_carlo(long shots, std::uint64_t seed);
    std::string label() const;
};

struct CurvePoint {
    double gamma = 0.0;
    double fidelity = 0.0;
    double infidelity = 0.0;
    std::optional<double> truncation_bound;
    std::optional<double> std_error;  // Monte Carlo only
};

struct FidelityCurve {
    std::vector<CurvePoint> points;
};

/// Per gamma: prepare a reference-entangled encoded state, push the block
/// through the channel, decode, and score the (reference, logical) output.
/// ExactDensity is limited to 12 total simulated qubits.
FidelityCurve fidelity_curve(const CodeSpec& spec, DecoderKind decoder, ChannelKind channel,
                             std::span<const double> gammas, const EngineMode& mode,
                             Metric metric = Metric::Entanglement);

struct FitWindow {
    double gamma_min = 1e-3;
    double gamma_max = 1e-2;
    int points = 8;
};

struct OrderEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    // Series mode: fitted coefficients of 1-F in u = gamma/gamma_max, i.e.
    // coefficients[k] = c_k * gamma_max^k.
    std::vector<double> coefficients;
    int target_t = 1;
    bool pass = false;
    bool exact_at_precision = false;
    bool series_mode = false;
};

/// Slope mode: least-squares fit of log(1-F) against log gamma over the fit
/// window; passes when slope >= target_t + 0.9. Infidelities below 1e-13
/// across the window count as exact to working precision.
OrderEstimate recovery_order(const CodeSpec& spec, DecoderKind decoder, ChannelKind channel,
                             int target_t, const EngineMode& mode, FitWindow window = {});

/// Series mode: fits 1-F from TruncatedKraus(target_t) data to a polynomial
/// of degree target_t + 1; passes when every |c_k gamma_max^k|, k <= t, is at
/// most 1e-3 of the leading surviving term.
OrderEstimate recovery_order_series(const CodeSpec& spec, DecoderKind decoder,
                                    ChannelKind channel, int target_t,
                                    double gamma_max = 1e-2);

struct KLWitness {
    KrausString error_e;
    KrausString error_f;
    std::string basis_state;  // ket label, qubit 0 leftmost
    double violation = 0.0;   // at the largest grid gamma
    double fitted_exponent = 0.0;
};

struct KLReport {
    bool pass = false;
    double min_exponent = 0.0;  // over violating pairs; +inf-like when none
    std::optional<KLWitness> witness;
};

/// Checks the error-correcting conditions over all Kraus-string pairs of
/// weight <= t. Matrix-element violations are density-level quantities, so a
/// code passes at order t when they scale at least as gamma^(t+1)
/// (amplitude-level exponent (t+1)/2 per Kraus factor).
KLReport kl_check(const CodeSpec& spec, int t);

/// Probability that every row suffers at least one damping: (1-(1-g)^m)^n.
double no_threshold_prob(int n, int m, double gamma);
/// log of the same, stable for large n.
double no_threshold_log_prob(int n, int m, double gamma);

const char* to_string(DecoderKind decoder);
const char* to_string(ChannelKind channel);

}  // namespace qdamp
