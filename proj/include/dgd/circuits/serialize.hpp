// Copyright 2026 The dgd Authors
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

#include <string>
#include <vector>

#include <json.hpp>

#include "dgd/circuits/random_circuit.hpp"

namespace dgd::circuits {

// Text form:
//   {"num_qubits": n,
//    "layers": [{"permutation": [...],
//                "gates": [{"targets": [a, b], "matrix": [[re, im] x 16]}]}],
//    "generators": ["XIZY", ...],
//    "observable": "ZZZZ"}
// Matrices are row-major.

inline nlohmann::json to_json(const RandomCircuit &circuit) {
    nlohmann::json j;
    j["num_qubits"] = circuit.num_qubits;
    auto &layers = j["layers"] = nlohmann::json::array();
    for (const auto &layer : circuit.layers) {
        nlohmann::json l;
        l["permutation"] = layer.permutation;
        auto &gates = l["gates"] = nlohmann::json::array();
        for (const auto &gate : layer.gates) {
            nlohmann::json g;
            g["targets"] = {gate.targets()[0], gate.targets()[1]};
            auto &entries = g["matrix"] = nlohmann::json::array();
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    entries.push_back({gate.matrix()(r, c).real(), gate.matrix()(r, c).imag()});
                }
            }
            gates.push_back(std::move(g));
        }
        layers.push_back(std::move(l));
    }
    auto &gens = j["generators"] = nlohmann::json::array();
    for (const auto &g : circuit.generators) {
        gens.push_back(g.str());
    }
    j["observable"] = circuit.observable.str();
    return j;
}

inline RandomCircuit circuit_from_json(const nlohmann::json &j) {
    RandomCircuit circuit;
    circuit.num_qubits = j.at("num_qubits").get<std::size_t>();
    for (const auto &l : j.at("layers")) {
        EntanglingLayer layer;
        layer.permutation = l.at("permutation").get<std::vector<std::size_t>>();
        for (const auto &g : l.at("gates")) {
            const auto &entries = g.at("matrix");
            if (entries.size() != 16) {
                throw std::invalid_argument("circuit_from_json: gate matrix needs 16 entries");
            }
            Matrix4 m;
            for (int k = 0; k < 16; ++k) {
                m(k / 4, k % 4) = Complex{entries[k].at(0).get<double>(), entries[k].at(1).get<double>()};
            }
            const auto targets = g.at("targets").get<std::vector<std::size_t>>();
            if (targets.size() != 2) {
                throw std::invalid_argument("circuit_from_json: gate needs two targets");
            }
            layer.gates.emplace_back(m, targets[0], targets[1]);
        }
        circuit.layers.push_back(std::move(layer));
    }
    for (const auto &g : j.at("generators")) {
        circuit.generators.push_back(sim::PauliString::parse(g.get<std::string>()));
    }
    circuit.observable = sim::PauliString::parse(j.at("observable").get<std::string>());
    circuit.validate();
    return circuit;
}

inline std::string serialize_circuit(const RandomCircuit &circuit) { return to_json(circuit).dump(1); }

inline RandomCircuit parse_circuit(const std::string &text) { return circuit_from_json(nlohmann::json::parse(text)); }

}  // namespace dgd::circuits
