#pragma once

#include <string>

#include "qdamp/analysis.hpp"
#include "qdamp/fault_injection.hpp"

namespace qdamp {

enum class OutputFormat { Csv, Json };

/// A fully resolved batch-experiment request. The CLI front end parses flags
/// and config files into this struct; run_experiment is deterministic for a
/// fixed config (including the seed).
struct ExperimentConfig {
    enum class Command { KlCheck, Curve, Order, Inject, Twirl, Threshold };

    Command command = Command::Twirl;
    CodeSpec code{2, 2, Gauge::Z};
    DecoderKind decoder = DecoderKind::Clifford;
    ChannelKind channel = ChannelKind::Damping;
    Metric metric = Metric::Entanglement;
    std::vector<double> gammas;
    EngineMode mode = EngineMode::exact_density();
    int target_t = 1;
    bool series = false;
    bool assert_pass = false;
    FitWindow window{};
    FaultStage stage = FaultStage::BeforeAll;
    int fault_qubit = 0;
    double alpha_re = 1.0, alpha_im = 0.0;
    double beta_re = 0.0, beta_im = 0.0;
    OutputFormat format = OutputFormat::Csv;
};

struct ExperimentResult {
    int exit_code = 0;       // 0 ok, 2 invalid config, 3 failed assertion
    std::string csv;         // always populated on success
    std::string json;        // always populated on success
    std::string message;     // human-readable status / error
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Formats a real with 17 significant digits (shortest round-trip superset).
std::string format_real(double value);

}  // namespace qdamp
