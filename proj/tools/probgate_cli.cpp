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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "probgate/cli.hpp"

namespace {

using probgate::Error;
using probgate::Errc;
namespace cli = probgate::cli;

struct RawArgs {
    std::string gate = "hadamard";
    std::string state1 = "bloch:0,0";
    std::string state2 = "bloch:1.0471975511965976,0";
    std::string eff;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    bool equal_eff = false;
    std::string input_file;
};

// Fill unset flags from a JSON file whose keys repeat the flag names.
void merge_input_file(CLI::App& app, RawArgs& raw) {
    if (raw.input_file.empty()) return;
    std::ifstream in(raw.input_file);
    if (!in) throw Error(Errc::ParseError, "cannot open input file " + raw.input_file);
    cli::json doc;
    try {
        doc = cli::json::parse(in);
    } catch (const cli::json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("input file: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::ParseError, "input file must hold a JSON object");

    const auto unset = [&](const char* flag) {
        const CLI::Option* opt = app.get_option(flag);
        return opt->count() == 0;
    };
    const auto fetch_string = [&](const char* key, std::string& target, const char* flag) {
        if (doc.contains(key) && unset(flag)) target = doc[key].get<std::string>();
    };
    try {
        fetch_string("gate", raw.gate, "--gate");
        fetch_string("state1", raw.state1, "--state1");
        fetch_string("state2", raw.state2, "--state2");
        fetch_string("eff", raw.eff, "--eff");
        if (doc.contains("trials") && unset("--trials"))
            raw.trials = doc["trials"].get<std::uint64_t>();
        if (doc.contains("seed") && unset("--seed")) raw.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("tol") && unset("--tol")) raw.tol = doc["tol"].get<double>();
        if (doc.contains("equal-eff") && unset("--equal-eff"))
            raw.equal_eff = doc["equal-eff"].get<bool>();
    } catch (const cli::json::exception& e) {
        throw Error(Errc::ParseError, std::string("input file: ") + e.what());
    }
}

cli::RunConfig build_config(const RawArgs& raw, cli::Command command) {
    cli::RunConfig config;
    config.command = command;
    config.gate = cli::parse_gate_spec(raw.gate);
    config.state1 = cli::parse_state_spec(raw.state1);
    config.state2 = cli::parse_state_spec(raw.state2);
    if (!raw.eff.empty()) config.eff = cli::parse_eff_spec(raw.eff);
    config.trials = raw.trials;
    config.seed = raw.seed;
    config.tol = raw.tol;
    config.equal_eff = raw.equal_eff;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic qubit-pair gate toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    RawArgs raw;
    app.add_option("--gate", raw.gate,
                   "Gate coefficients: 'hadamard', 'identity', or a_re,a_im,b_re,b_im");
    app.add_option("--state1", raw.state1, "First state: bloch:theta,phi or amp:re0,im0,re1,im1");
    app.add_option("--state2", raw.state2, "Second state, same formats");
    app.add_option("--eff", raw.eff,
                   "Explicit efficiencies g1,g2[,d1,d2]; omit to use the optimizer");
    app.add_option("--trials", raw.trials, "Monte Carlo trials per simulated input");
    app.add_option("--seed", raw.seed, "Base random seed");
    app.add_option("--tol", raw.tol, "PSD classification tolerance");
    app.add_flag("--equal-eff", raw.equal_eff, "Force equal per-state efficiencies");
    app.add_option("--input", raw.input_file, "JSON file supplying any of the flags above");

    struct SubEntry {
        const char* name;
        cli::Command cmd;
        const char* blurb;
    };
    const SubEntry commands[] = {
        {"bound", cli::Command::Bound, "Gram matrices and per-branch efficiency bounds"},
        {"optimize", cli::Command::Optimize, "Best efficiency pairs for both branches"},
        {"synthesize", cli::Command::Synthesize, "Explicit machine unitaries and failure amplitudes"},
        {"simulate", cli::Command::Simulate, "Seeded Monte Carlo runs on all four base states"},
        {"audit", cli::Command::Audit, "Cross-branch residuals of the plus-branch machine"},
        {"demo", cli::Command::Demo, "Full pipeline on the default state pair"},
    };
    for (const auto& [name, cmd, blurb] : commands) app.add_subcommand(name, blurb);

    CLI11_PARSE(app, argc, argv);

    cli::Command command = cli::Command::Demo;
    for (const auto& [name, cmd, blurb] : commands)
        if (app.get_subcommand(name)->parsed()) command = cmd;

    try {
        merge_input_file(app, raw);
        const cli::json report = cli::run(build_config(raw, command));
        std::cout << report.dump(2) << '\n';
    } catch (const Error& e) {
        std::cout << cli::error_json(e).dump(2) << '\n';
        std::cerr << e.name() << ": " << e.what() << '\n';
        return cli::exit_code_for(e.code());
    }
    return 0;
}
