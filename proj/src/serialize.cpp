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

#include "fblnorm/serialize.hpp"

namespace fblnorm {

Json exponent_to_json(const Exponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

Json family_to_json(const FunctionalFamily& family) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto row = family[k];
    rows.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  return rows;
}

Json to_json(const NormEstimate& estimate, const SpaceSpec& space) {
  Json out;
  out["lower"] = estimate.lower;
  out["upper"] = estimate.upper ? Json(*estimate.upper) : Json(nullptr);
  out["certified"] = estimate.certified;
  out["method"] = estimate.method;
  out["witness"] = estimate.witness ? family_to_json(*estimate.witness)
                                    : Json::array();
  out["space"] = {{"n", space.n}, {"p", exponent_to_json(space.p)}};
  out["family_size"] = estimate.family_size;
  return out;
}

Json to_json(const BoundCertificate& certificate) {
  Json out;
  out["lambda"] = certificate.lambda;
  out["n"] = certificate.space.n;
  out["p"] = exponent_to_json(certificate.space.p);
  out["r"] = certificate.r ? Json(*certificate.r) : Json(nullptr);
  out["lower"] = certificate.lower;
  out["upper"] = certificate.upper;
  out["certified"] = certificate.certified;
  out["witness"] = family_to_json(certificate.witness);
  out["provenance"] = certificate.provenance;
  return out;
}

std::string render(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace fblnorm
