#include "qdamp/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qdamp {

double validate_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
    return gamma;
}

Mat2 damping_a0(double gamma) {
    validate_gamma(gamma);
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = std::sqrt(1.0 - gamma);
    return m;
}

Mat2 damping_a1(double gamma) {
    validate_gamma(gamma);
    Mat2 m;
    m(0, 1) = std::sqrt(gamma);
    return m;
}

std::pair<Mat2, Mat2> damping_kraus(double gamma) {
    return {damping_a0(gamma), damping_a1(gamma)};
}

std::pair<double, double> a0_decomposition(double gamma) {
    validate_gamma(gamma);
    const double root = std::sqrt(1.0 - gamma);
    return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

TwirlDistribution twirl_distribution(double gamma) {
    validate_gamma(gamma);
    const double root = std::sqrt(1.0 - gamma);
    TwirlDistribution d;
    d.p_x = 0.25 * gamma;
    d.p_y = 0.25 * gamma;
    d.p_i = 0.25 * (2.0 - gamma + 2.0 * root);
    d.p_z = 0.25 * (2.0 - gamma - 2.0 * root);
    return d;
}

std::vector<std::pair<double, PauliString>> twirl_channel_kraus(double gamma) {
    const TwirlDistribution d = twirl_distribution(gamma);
    return {{d.p_i, PauliString::identity(1)},
            {d.p_x, PauliString::single(1, 0, 'X')},
            {d.p_y, PauliString::single(1, 0, 'Y')},
            {d.p_z, PauliString::single(1, 0, 'Z')}};
}

int KrausString::weight() const {
    int w = 0;
    for (KrausLabel l : labels) w += (l == KrausLabel::A1);
    return w;
}

KrausStringEnumerator::KrausStringEnumerator(int num_qubits, int max_weight)
    : num_qubits_(num_qubits), max_weight_(max_weight) {
    if (num_qubits < 0 || max_weight < 0 || max_weight > num_qubits) {
        throw std::invalid_argument("need 0 <= max_weight <= num_qubits");
    }
}

std::optional<KrausString> KrausStringEnumerator::next() {
    if (done_) return std::nullopt;
    KrausString out;
    out.labels.assign(num_qubits_, KrausLabel::A0);
    for (int p : positions_) out.labels[p] = KrausLabel::A1;

    // Advance to the next combination of the current weight, or move to the
    // next weight class.
    bool advanced = false;
    for (int i = weight_ - 1; i >= 0; --i) {
        if (positions_[i] < num_qubits_ - (weight_ - i)) {
            ++positions_[i];
            for (int j = i + 1; j < weight_; ++j) positions_[j] = positions_[j - 1] + 1;
            advanced = true;
            break;
        }
    }
    if (!advanced) {
        ++weight_;
        if (weight_ > max_weight_) {
            done_ = true;
        } else {
            positions_.resize(weight_);
            for (int i = 0; i < weight_; ++i) positions_[i] = i;
        }
    }
    return out;
}

std::uint64_t kraus_string_count(int num_qubits, int max_weight) {
    std::uint64_t total = 0;
    for (int w = 0; w <= max_weight; ++w) {
        std::uint64_t c = 1;
        for (int i = 0; i < w; ++i) {
            c = c * static_cast<std::uint64_t>(num_qubits - i) / (i + 1);
        }
        total += c;
    }
    return total;
}

QuantumState apply_string(QuantumState state, const KrausString& s, double gamma) {
    if (state.num_qubits() != s.size()) {
        throw std::invalid_argument("Kraus string length must match qubit count");
    }
    const Mat2 a0 = damping_a0(gamma);
    const Mat2 a1 = damping_a1(gamma);
    for (int q = 0; q < s.size(); ++q) {
        state.apply_single_qubit_kraus(q, s.labels[q] == KrausLabel::A1 ? a1 : a0);
    }
    state.set_norm_is_weight(true);
    return state;
}

double truncation_bound(int num_qubits, int max_weight, double gamma) {
    validate_gamma(gamma);
    double kept = 0.0;
    for (int w = 0; w <= max_weight; ++w) {
        double c = 1.0;
        for (int i = 0; i < w; ++i) c = c * (num_qubits - i) / (i + 1);
        kept += c * std::pow(gamma, w) * std::pow(1.0 - gamma, num_qubits - w);
    }
    return std::max(0.0, 1.0 - kept);
}

std::vector<TwirlStringBranch> twirl_strings_up_to_weight(int num_qubits, int max_weight,
                                                          double gamma) {
    const TwirlDistribution d = twirl_distribution(gamma);
    const double probs[3] = {d.p_x, d.p_y, d.p_z};
    const char axes[3] = {'X', 'Y', 'Z'};

    std::vector<TwirlStringBranch> out;
    KrausStringEnumerator positions(num_qubits, max_weight);
    while (auto s = positions.next()) {
        std::vector<int> where;
        for (int q = 0; q < num_qubits; ++q) {
            if (s->labels[q] == KrausLabel::A1) where.push_back(q);
        }
        const int w = static_cast<int>(where.size());
        // All X/Y/Z labelings of this support, counting in base 3 with the
        // last position fastest.
        std::vector<int> digits(w, 0);
        while (true) {
            TwirlStringBranch branch;
            branch.op = PauliString::identity(num_qubits);
            branch.probability = std::pow(d.p_i, num_qubits - w);
            for (int i = 0; i < w; ++i) {
                branch.op = branch.op.times(
                    PauliString::single(num_qubits, where[i], axes[digits[i]]));
                branch.probability *= probs[digits[i]];
            }
            out.push_back(std::move(branch));
            int k = w - 1;
            while (k >= 0 && digits[k] == 2) digits[k--] = 0;
            if (k < 0) break;
            ++digits[k];
        }
    }
    return out;
}

double twirl_truncation_bound(int num_qubits, int max_weight, double gamma) {
    const TwirlDistribution d = twirl_distribution(gamma);
    const double q = d.p_x + d.p_y + d.p_z;
    double kept = 0.0;
    for (int w = 0; w <= max_weight; ++w) {
        double c = 1.0;
        for (int i = 0; i < w; ++i) c = c * (num_qubits - i) / (i + 1);
        kept += c * std::pow(q, w) * std::pow(d.p_i, num_qubits - w);
    }
    return std::max(0.0, 1.0 - kept);
}

}  // namespace qdamp
