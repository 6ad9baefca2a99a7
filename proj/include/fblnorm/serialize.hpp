// Copyright 2026 The fblnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FBLNORM_SERIALIZE_HPP_
#define FBLNORM_SERIALIZE_HPP_

#include <string>

#include <json.hpp>

#include "fblnorm/engine.hpp"
#include "fblnorm/family.hpp"
#include "fblnorm/sequence_spaces.hpp"
#include "fblnorm/witnesses.hpp"

namespace fblnorm {

// Keys keep insertion order, so documents list fields as documented.
using Json = nlohmann::ordered_json;

// Exponents serialize as numbers, except p = inf which is the string "inf".
Json exponent_to_json(const Exponent& p);

// Array of arrays, one per functional.
Json family_to_json(const FunctionalFamily& family);

// {lower, upper|null, certified, method, witness, space {n, p}, family_size}
Json to_json(const NormEstimate& estimate, const SpaceSpec& space);

// {lambda, n, p, r|null, lower, upper, certified, witness, provenance}
Json to_json(const BoundCertificate& certificate);

// Two-space indented rendering with a trailing newline.
std::string render(const Json& value);

}  // namespace fblnorm

#endif  // FBLNORM_SERIALIZE_HPP_
