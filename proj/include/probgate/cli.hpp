// Copyright 2026 The Probgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "probgate/error.hpp"
#include "probgate/feasibility.hpp"
#include "probgate/gram.hpp"
#include "probgate/optimizer.hpp"
#include "probgate/simulate.hpp"
#include "probgate/state.hpp"
#include "probgate/synthesis.hpp"

namespace probgate::cli {

using json = nlohmann::ordered_json;

enum class Command { Bound, Optimize, Synthesize, Simulate, Audit, Demo };

struct RunConfig {
    Command command = Command::Demo;
    GateSpec gate = GateSpec::hadamard();
    QubitState state1 = from_bloch(0.0, 0.0);
    QubitState state2 = from_bloch(kPi / 3.0, 0.0);
    std::optional<EfficiencyPair> eff;  // absent: take the optimizer's best
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double tol = kDefaultPsdTol;
    bool equal_eff = false;
};

/*
 * TEXT PARSING
 */

namespace detail {

inline std::vector<double> parse_numbers(const std::string& text, std::size_t expect,
                                         const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string piece =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double value = 0.0;
        const char* begin = piece.data();
        const char* end = begin + piece.size();
        const auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc{} || res.ptr != end)
            throw Error(Errc::ParseError,
                        std::string(what) + ": expected a number, got '" + piece + "'");
        out.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expect)
        throw Error(Errc::ParseError, std::string(what) + ": expected " +
                                          std::to_string(expect) + " comma-separated values");
    return out;
}

}  // namespace detail

inline QubitState parse_state_spec(const std::string& text) {
    if (text.rfind("bloch:", 0) == 0) {
        const auto v = detail::parse_numbers(text.substr(6), 2, "bloch state");
        return from_bloch(v[0], v[1]);
    }
    if (text.rfind("amp:", 0) == 0) {
        const auto v = detail::parse_numbers(text.substr(4), 4, "amplitude state");
        QubitState s{{v[0], v[1]}, {v[2], v[3]}};
        const double n = s.norm();
        if (std::abs(n - 1.0) > 1e-6)
            throw Error(Errc::NotNormalized,
                        "state norm " + std::to_string(n) + " is too far from 1");
        return {s.alpha / n, s.beta / n};
    }
    throw Error(Errc::ParseError, "state spec must start with 'bloch:' or 'amp:'");
}

inline GateSpec parse_gate_spec(const std::string& text) {
    if (text == "hadamard") return GateSpec::hadamard();
    if (text == "identity") return GateSpec::identity();
    const auto v = detail::parse_numbers(text, 4, "gate");
    GateSpec g{{v[0], v[1]}, {v[2], v[3]}};
    const double n = std::sqrt(std::norm(g.a) + std::norm(g.b));
    if (std::abs(n - 1.0) > 1e-6)
        throw Error(Errc::NotNormalized,
                    "gate coefficient norm " + std::to_string(n) + " is too far from 1");
    return {g.a / n, g.b / n};
}

inline EfficiencyPair parse_eff_spec(const std::string& text) {
    const std::size_t commas =
        static_cast<std::size_t>(std::count(text.begin(), text.end(), ','));
    if (commas == 1) {
        const auto v = detail::parse_numbers(text, 2, "efficiencies");
        return {{v[0], v[1]}, {v[0], v[1]}};
    }
    const auto v = detail::parse_numbers(text, 4, "efficiencies");
    return {{v[0], v[1]}, {v[2], v[3]}};
}

/*
 * REPORT SERIALIZATION  (complex numbers as [re, im] pairs)
 */

namespace detail {

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const QubitState& s) {
    return json{{"alpha", to_json(s.alpha)}, {"beta", to_json(s.beta)}};
}

inline json to_json(const Efficiencies& e) { return json::array({e[0], e[1]}); }

inline void require_finite(const json& node) {
    if (node.is_number_float() && !std::isfinite(node.get<double>()))
        throw Error(Errc::ParseError, "internal: non-finite value in report");
    if (node.is_structured())
        for (const auto& child : node) require_finite(child);
}

inline json bound_json(const BranchBound& b) {
    return json{{"value", b.value}, {"capped", b.capped}};
}

inline json optimization_json(const OptimizationResult& r) {
    return json{{"best_eff", to_json(r.best_eff)},
                {"best_average", r.best_average},
                {"boundary_certificate", r.boundary_certificate},
                {"iterations", r.iterations}};
}

inline json synthesis_json(const SynthesisResult& m, bool include_unitary) {
    const std::vector<CVector> ins{m.branch.rows[0].first, m.branch.rows[1].first};
    const std::vector<CVector> outs{m.branch.rows[0].second, m.branch.rows[1].second};
    json doc{{"branch", branch_name(m.branch.kind)},
             {"eff", to_json(m.branch.eff)},
             {"residual_eigs", json::array({m.branch.residual_eigs[0],
                                            m.branch.residual_eigs[1]})},
             {"coeff_matrix", to_json(m.branch.coeff_matrix)},
             {"unitarity_residual", unitarity_residual(m.unitary)},
             {"gram_residual", max_abs_diff(gram_of(ins), gram_of(outs))},
             {"failure_states", json::array({to_json(m.branch.failure_states[0]),
                                             to_json(m.branch.failure_states[1])})}};
    if (include_unitary) doc["unitary"] = to_json(m.unitary);
    return doc;
}

inline json simulation_json(const SimulationReport& rep, const char* label) {
    return json{{"input", label},
                {"exact_success_prob", rep.exact_success_prob},
                {"observed_success_freq", rep.observed_success_freq},
                {"post_fidelity", rep.post_fidelity},
                {"trials", rep.trials},
                {"seed", rep.seed},
                {"outcome_probs", json::array({rep.outcome_probs[0], rep.outcome_probs[1],
                                               rep.outcome_probs[2]})},
                {"outcome_counts",
                 json::array({rep.outcome_counts[0], rep.outcome_counts[1],
                              rep.outcome_counts[2]})}};
}

inline json audit_json(const AuditReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back(json{{"strict_residual", row.strict_residual},
                            {"phase_adjusted", row.phase_adjusted},
                            {"success_prob", row.success_prob},
                            {"post_fidelity", row.post_fidelity}});
    return json{{"expansion", to_json(rep.expansion)}, {"rows", rows}};
}

}  // namespace detail

inline const char* command_name(Command c) {
    switch (c) {
        case Command::Bound: return "bound";
        case Command::Optimize: return "optimize";
        case Command::Synthesize: return "synthesize";
        case Command::Simulate: return "simulate";
        case Command::Audit: return "audit";
        case Command::Demo: return "demo";
    }
    return "unknown";
}

inline json run(const RunConfig& config) {
    const auto set = make_state_set(config.state1, config.state2);
    const auto grams = build_grams(set, config.gate);

    json doc;
    doc["schema"] = 1;
    doc["command"] = command_name(config.command);
    doc["inputs"] = json{{"gate", json{{"a", detail::to_json(config.gate.a)},
                                       {"b", detail::to_json(config.gate.b)}}},
                         {"state1", detail::to_json(set.psi1)},
                         {"state2", detail::to_json(set.psi2)},
                         {"pair_overlap", detail::to_json(set.pair_overlap)},
                         {"polar_great_circle", is_polar_great_circle(set, 1e-10)}};
    doc["grams"] = json{{"x_in_plus", detail::to_json(grams.x_in_plus)},
                        {"x_out_plus", detail::to_json(grams.x_out_plus)},
                        {"x_in_minus", detail::to_json(grams.x_in_minus)},
                        {"x_out_minus", detail::to_json(grams.x_out_minus)}};
    doc["bounds"] = json{{"plus", detail::bound_json(bound_plus(grams))},
                         {"minus", detail::bound_json(bound_minus(grams))}};

    const bool wants_optimizer = config.command != Command::Bound && !config.eff.has_value();
    std::optional<EfficiencyPair> eff = config.eff;
    if (wants_optimizer) {
        const auto plus =
            maximize_branch(grams.x_in_plus, grams.x_out_plus, config.equal_eff, config.tol);
        const auto minus =
            maximize_branch(grams.x_in_minus, grams.x_out_minus, config.equal_eff, config.tol);
        doc["optimization"] = json{{"plus", detail::optimization_json(plus)},
                                   {"minus", detail::optimization_json(minus)}};
        eff = EfficiencyPair{plus.best_eff, minus.best_eff};
    }
    if (config.command == Command::Bound) return doc;

    if (config.eff.has_value()) {
        const auto rep = check_feasible(grams, *eff, config.tol);
        doc["feasibility"] = json{
            {"feasible", rep.feasible},
            {"residual_plus", detail::to_json(rep.residual_plus)},
            {"residual_minus", detail::to_json(rep.residual_minus)},
            {"min_eigenvalue_plus", rep.class_plus.min_eigenvalue},
            {"min_eigenvalue_minus", rep.class_minus.min_eigenvalue}};
    }
    if (config.command == Command::Optimize) {
        detail::require_finite(doc);
        return doc;
    }

    if (config.command == Command::Audit) {
        doc["audit"] = detail::audit_json(joint_audit(set, config.gate, *eff));
        detail::require_finite(doc);
        return doc;
    }

    const auto plus_machine = synthesize_branch(set, config.gate, eff->gamma, Branch::Plus);
    const auto minus_machine = synthesize_branch(set, config.gate, eff->delta, Branch::Minus);
    const bool full = config.command == Command::Synthesize;
    doc["synthesis"] = json{{"plus", detail::synthesis_json(plus_machine, full)},
                            {"minus", detail::synthesis_json(minus_machine, full)}};
    if (config.command == Command::Synthesize) {
        detail::require_finite(doc);
        return doc;
    }

    // Simulate and demo: run each branch machine on its two base states,
    // with per-run seeds derived from the base seed.
    json runs = json::array();
    std::uint64_t salt = 0;
    for (const auto* m : {&plus_machine, &minus_machine}) {
        for (std::size_t i = 0; i < 2; ++i, ++salt) {
            const QubitState in = m->branch.base_state(i);
            const auto rep = monte_carlo(*m, in, config.trials, config.seed + salt);
            const std::string label = std::string(branch_name(m->branch.kind)) +
                                      (i == 0 ? ":state1" : ":state2");
            runs.push_back(detail::simulation_json(rep, label.c_str()));
        }
    }
    doc["simulation"] = runs;

    if (config.command == Command::Demo)
        doc["audit"] = detail::audit_json(joint_audit(set, config.gate, *eff));

    detail::require_finite(doc);
    return doc;
}

// 0 success, 1 bad input, 2 domain failure.
inline int exit_code_for(Errc code) {
    switch (code) {
        case Errc::ParseError:
        case Errc::NotNormalized:
        case Errc::EffOutOfRange:
        case Errc::InvalidProbeOverlap:
            return 1;
        default:
            return 2;
    }
}

inline json error_json(const Error& e) {
    return json{{"schema", 1}, {"error", json{{"name", e.name()}, {"message", e.what()}}}};
}

}  // namespace probgate::cli
