#include "qdamp/experiment.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qdamp {

namespace {

using json = nlohmann::ordered_json;

std::string kraus_string_label(const KrausString& s) {
    std::string out;
    for (KrausLabel l : s.labels) out += (l == KrausLabel::A1) ? '1' : '0';
    return out;
}

json meta_object(const ExperimentConfig& cfg, const char* command) {
    json meta;
    meta["command"] = command;
    meta["code"] = std::to_string(cfg.code.rows) + "," + std::to_string(cfg.code.cols);
    meta["gauge"] = cfg.code.gauge == Gauge::Z ? "z" : "x";
    meta["decoder"] = to_string(cfg.decoder);
    meta["channel"] = to_string(cfg.channel);
    meta["mode"] = cfg.mode.label();
    meta["version"] = "0.1.0";
    return meta;
}

struct Table {
    std::vector<std::string> columns;
    // One row = one vector of JSON values kept in column order.
    std::vector<std::vector<json>> rows;

    std::string to_csv() const {
        std::string out;
        for (size_t c = 0; c < columns.size(); ++c) {
            out += columns[c];
            out += (c + 1 < columns.size()) ? ',' : '\n';
        }
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                const json& v = row[c];
                if (v.is_null()) {
                    // empty cell
                } else if (v.is_string()) {
                    out += v.get<std::string>();
                } else if (v.is_boolean()) {
                    out += v.get<bool>() ? "1" : "0";
                } else if (v.is_number_integer()) {
                    out += std::to_string(v.get<long long>());
                } else {
                    out += format_real(v.get<double>());
                }
                out += (c + 1 < row.size()) ? ',' : '\n';
            }
        }
        return out;
    }

    json to_json_rows() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json rec;
            for (size_t c = 0; c < row.size(); ++c) rec[columns[c]] = row[c];
            arr.push_back(rec);
        }
        return arr;
    }
};

ExperimentResult finish(const ExperimentConfig& cfg, const char* command, Table table,
                        int exit_code, const std::string& message) {
    ExperimentResult res;
    res.exit_code = exit_code;
    res.message = message;
    res.csv = table.to_csv();
    json doc;
    doc["meta"] = meta_object(cfg, command);
    doc["rows"] = table.to_json_rows();
    res.json = doc.dump(2) + "\n";
    return res;
}

ExperimentResult run_twirl(const ExperimentConfig& cfg) {
    Table t;
    t.columns = {"gamma", "p_i", "p_x", "p_y", "p_z"};
    for (double g : cfg.gammas) {
        const TwirlDistribution d = twirl_distribution(g);
        t.rows.push_back({g, d.p_i, d.p_x, d.p_y, d.p_z});
    }
    return finish(cfg, "twirl", std::move(t), 0, "ok");
}

ExperimentResult run_threshold(const ExperimentConfig& cfg) {
    Table t;
    t.columns = {"gamma", "n", "m", "probability"};
    for (double g : cfg.gammas) {
        t.rows.push_back(
            {g, cfg.code.rows, cfg.code.cols, no_threshold_prob(cfg.code.rows, cfg.code.cols, g)});
    }
    return finish(cfg, "threshold", std::move(t), 0, "ok");
}

ExperimentResult run_curve(const ExperimentConfig& cfg) {
    const FidelityCurve curve = fidelity_curve(cfg.code, cfg.decoder, cfg.channel,
                                               cfg.gammas, cfg.mode, cfg.metric);
    Table t;
    t.columns = {"gamma", "fidelity", "infidelity", "mode", "truncation_bound",
                 "shots", "seed"};
    const bool mc = cfg.mode.kind == EngineMode::Kind::MonteCarlo;
    for (const CurvePoint& p : curve.points) {
        std::vector<json> row{p.gamma, p.fidelity, p.infidelity, cfg.mode.label(),
                              nullptr, nullptr, nullptr};
        if (p.truncation_bound) row[4] = *p.truncation_bound;
        if (mc) {
            row[5] = static_cast<long long>(cfg.mode.shots);
            row[6] = static_cast<long long>(cfg.mode.seed);
        }
        t.rows.push_back(std::move(row));
    }
    return finish(cfg, "curve", std::move(t), 0, "ok");
}

ExperimentResult run_order(const ExperimentConfig& cfg) {
    const OrderEstimate slope = recovery_order(cfg.code, cfg.decoder, cfg.channel,
                                               cfg.target_t, cfg.mode, cfg.window);
    OrderEstimate series;
    if (cfg.series) {
        series = recovery_order_series(cfg.code, cfg.decoder, cfg.channel, cfg.target_t);
    }

    Table t;
    t.columns = {"decoder", "channel", "target_t", "slope", "intercept",
                 "exact_at_precision", "pass"};
    if (cfg.series) {
        // c_0..c_{t+1} plus the guard coefficient absorbed by the fit.
        for (size_t k = 0; k < series.coefficients.size(); ++k) {
            t.columns.push_back(k <= static_cast<size_t>(cfg.target_t) + 1
                                    ? "c" + std::to_string(k)
                                    : "c_guard");
        }
        t.columns.push_back("series_pass");
    }
    std::vector<json> row{to_string(cfg.decoder), to_string(cfg.channel), cfg.target_t,
                          slope.slope, slope.intercept, slope.exact_at_precision,
                          slope.pass};
    if (cfg.series) {
        for (double c : series.coefficients) row.push_back(c);
        row.push_back(series.pass);
    }
    t.rows.push_back(std::move(row));

    const bool ok = slope.pass && (!cfg.series || series.pass);
    const int exit_code = (cfg.assert_pass && !ok) ? 3 : 0;
    return finish(cfg, "order", std::move(t), exit_code,
                  ok ? "order claim holds" : "order claim failed");
}

ExperimentResult run_kl(const ExperimentConfig& cfg) {
    const KLReport report = kl_check(cfg.code, cfg.target_t);
    Table t;
    t.columns = {"t", "pass", "min_exponent", "witness_state", "witness_e", "witness_f",
                 "violation"};
    std::vector<json> row{cfg.target_t, report.pass, report.min_exponent,
                          nullptr, nullptr, nullptr, nullptr};
    if (report.witness) {
        row[3] = "|" + report.witness->basis_state + ">";
        row[4] = kraus_string_label(report.witness->error_e);
        row[5] = kraus_string_label(report.witness->error_f);
        row[6] = report.witness->violation;
    }
    t.rows.push_back(std::move(row));
    const int exit_code = (cfg.assert_pass && !report.pass) ? 3 : 0;
    std::string msg = "error-correcting conditions hold";
    if (!report.pass) {
        msg = "error-correcting conditions fail";
        if (report.witness) msg += "; witness |" + report.witness->basis_state + ">";
    }
    return finish(cfg, "kl-check", std::move(t), exit_code, msg);
}

ExperimentResult run_inject(const ExperimentConfig& cfg) {
    const double gamma = cfg.gammas.empty() ? 0.1 : cfg.gammas.front();
    const FaultInjection fault{cfg.stage, cfg.fault_qubit, gamma};
    const InjectionResult r =
        inject_and_run(cfg.code, cfg.decoder, fault,
                       cplx{cfg.alpha_re, cfg.alpha_im}, cplx{cfg.beta_re, cfg.beta_im});
    Table t;
    t.columns = {"procedure", "stage", "qubit", "gamma", "fidelity", "branch_weight"};
    const char* stage_name = "";
    switch (cfg.stage) {
        case FaultStage::BeforeAll: stage_name = "before-all"; break;
        case FaultStage::AfterZtilde: stage_name = "after-ztilde"; break;
        case FaultStage::AfterZZGauge: stage_name = "after-zz-gauge"; break;
        case FaultStage::AfterFirstCNOT: stage_name = "after-first-cnot"; break;
        case FaultStage::AfterSecondCNOT: stage_name = "after-second-cnot"; break;
    }
    t.rows.push_back({to_string(cfg.decoder), stage_name, cfg.fault_qubit, gamma,
                      r.fidelity, r.branch_weight});
    return finish(cfg, "inject", std::move(t), 0,
                  r.zero_weight ? "fault branch has zero weight" : "ok");
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    try {
        switch (config.command) {
            case ExperimentConfig::Command::Twirl:
                return run_twirl(config);
            case ExperimentConfig::Command::Threshold:
                return run_threshold(config);
            case ExperimentConfig::Command::Curve:
                return run_curve(config);
            case ExperimentConfig::Command::Order:
                return run_order(config);
            case ExperimentConfig::Command::KlCheck:
                return run_kl(config);
            case ExperimentConfig::Command::Inject:
                return run_inject(config);
        }
        ExperimentResult res;
        res.exit_code = 2;
        res.message = "unknown command";
        return res;
    } catch (const std::exception& e) {
        ExperimentResult res;
        res.exit_code = 2;
        res.message = e.what();
        return res;
    }
}

}  // namespace qdamp
