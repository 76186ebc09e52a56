#pragma once

#include "sullivan/selfeq.hpp"

#include <memory>

namespace fixtures {

using namespace sullivan;

// Built once per test binary; the cap-12 build takes well under a second.
inline const BigradedModel& wedge(int cap = 12) {
  static std::map<int, std::unique_ptr<BigradedModel>> cache;
  auto& slot = cache[cap];
  if (!slot) slot = std::make_unique<BigradedModel>(build(CohomologySpec::wedge_s2_s3_s3(), cap));
  return *slot;
}

inline std::shared_ptr<const CdgaModel> wedge_with_x(int cap = 12) {
  static std::map<int, std::shared_ptr<const CdgaModel>> cache;
  auto& slot = cache[cap];
  if (!slot) slot = std::make_shared<const CdgaModel>(adjoin_circle(wedge(cap).cdga()));
  return slot;
}

inline const CdgaMorphism& phi(int cap = 12) {
  static std::map<int, std::unique_ptr<CdgaMorphism>> cache;
  auto& slot = cache[cap];
  if (!slot) slot = std::make_unique<CdgaMorphism>(construct_phi(wedge_with_x(cap)));
  return *slot;
}

inline Polynomial gen(const Algebra& alg, std::string_view name) { return Polynomial::generator(alg.id_of(name)); }

} // namespace fixtures
