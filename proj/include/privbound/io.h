// Copyright 2026 The Privbound Authors
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

#ifndef PRIVBOUND_IO_H_
#define PRIVBOUND_IO_H_

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "privbound/inference.h"
#include "privbound/measures.h"
#include "privbound/mechanisms.h"
#include "privbound/pufferfish.h"
#include "privbound/universe.h"

// JSON schemas (schema version 1). Parsers accept documents without the
// "schema" field; writers always stamp it.
//
//   measure    {"outcomes":[...], "weights":[...], "normalized":bool}
//   universe   {"mode":"vector|multiset", "alphabet":[...], "lengths":[...],
//               "metric":"hamming|symdiff|graph",
//               "datasets":[[record,...],...], "edges":[[i,j],...]}
//              (datasets/edges only for graph universes)
//   mechanism  {"type":"laplace","sensitivity":..,"epsilon":..}
//              {"type":"rr","epsilon":..,"n":..,"alphabet":[...]?}
//              {"type":"clamped_count","epsilon":..,"a0":..,"a1":..}
//   model      {"thetas":[...], "P":{theta:{dataset-label:weight,...},...}}
//   event      [i, j, ...] dataset indices, or {"record":i,"value":label}
//   pufferfish {"attackers":[measure,...], "pairs":[[event,event],...],
//               "epsilon":..}

namespace privbound {

using Json = nlohmann::json;

// Raises InputError when the document carries a schema version other than 1.
void CheckSchema(const Json& j);

Json ToJson(const FiniteMeasure& mu);
FiniteMeasure MeasureFromJson(const Json& j);

Json ToJson(const DataUniverse& u);
DataUniverse UniverseFromJson(const Json& j);

std::unique_ptr<Mechanism> MechanismFromJson(const Json& j,
                                             const DataUniverse& u);

// The returned model points at `u`; keep the universe alive.
DataModel ModelFromJson(const Json& j, const DataUniverse& u);

EventSet EventFromJson(const Json& j, const DataUniverse& u);

// The returned instantiation points at `u`; keep the universe alive.
PufferfishInstantiation InstantiationFromJson(const Json& j,
                                              const DataUniverse& u);

Json ToJson(const BoundPair& b, const BoundContext& ctx);

// File helpers. Parse failures surface as InputError.
Json LoadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);

// One CSV line: cells joined with ',' and terminated with '\n'. Numeric
// cells should be preformatted with FormatSig12.
std::string CsvLine(const std::vector<std::string>& cells);

}  // namespace privbound

#endif  // PRIVBOUND_IO_H_
