#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qdamp/state.hpp"

namespace qdamp {

/// Validates a damping probability, returning it unchanged.
double validate_gamma(double gamma);

/// Kraus operators of the amplitude damping channel:
/// A0 = diag(1, sqrt(1-gamma)), A1 = sqrt(gamma) |0><1|.
Mat2 damping_a0(double gamma);
Mat2 damping_a1(double gamma);
std::pair<Mat2, Mat2> damping_kraus(double gamma);

/// A0 = cI * I + cZ * Z with cI = (1+sqrt(1-gamma))/2, cZ = (1-sqrt(1-gamma))/2.
std::pair<double, double> a0_decomposition(double gamma);

struct TwirlDistribution {
    double p_i = 1.0;
    double p_x = 0.0;
    double p_y = 0.0;
    double p_z = 0.0;
};

/// Pauli twirl of the damping channel: pX = pY = gamma/4,
/// pI/pZ = (2 - gamma +- 2 sqrt(1-gamma))/4.
TwirlDistribution twirl_distribution(double gamma);

/// The twirl as a weighted single-qubit Pauli channel (I, X, Y, Z order).
std::vector<std::pair<double, PauliString>> twirl_channel_kraus(double gamma);

enum class KrausLabel : std::uint8_t { A0 = 0, A1 = 1 };

/// Per-qubit A0/A1 assignment; weight counts the A1 factors.
struct KrausString {
    std::vector<KrausLabel> labels;

    int weight() const;
    int size() const { return static_cast<int>(labels.size()); }
};

/// Lazily enumerates all Kraus strings on `num_qubits` qubits with at most
/// `max_weight` A1 factors. Order is weight-major, then lexicographic in the
/// ascending A1 position sets.
class KrausStringEnumerator {
public:
    KrausStringEnumerator(int num_qubits, int max_weight);
    std::optional<KrausString> next();

private:
    int num_qubits_;
    int max_weight_;
    int weight_ = 0;
    bool done_ = false;
    std::vector<int> positions_;
};

/// Number of strings the enumerator yields: sum_{w<=t} C(N, w).
std::uint64_t kraus_string_count(int num_qubits, int max_weight);

/// Applies the per-qubit Kraus factors; output unnormalized, squared norm is
/// the branch probability.
QuantumState apply_string(QuantumState state, const KrausString& s, double gamma);

/// Upper bound on the probability mass of the discarded strings:
/// 1 - sum_{w<=t} C(N,w) gamma^w (1-gamma)^(N-w).
double truncation_bound(int num_qubits, int max_weight, double gamma);

/// One branch of the twirled channel on many qubits.
struct TwirlStringBranch {
    double probability = 0.0;
    PauliString op;
};

/// Enumerates twirl branches with at most `max_weight` non-identity factors,
/// weight-major, position sets lexicographic, labels ordered X < Y < Z.
std::vector<TwirlStringBranch> twirl_strings_up_to_weight(int num_qubits, int max_weight,
                                                          double gamma);

/// Exact discarded probability mass of the twirl-string truncation.
double twirl_truncation_bound(int num_qubits, int max_weight, double gamma);

}  // namespace qdamp
