#pragma once

// The verification tiers run by `fsz-lab verify`.  Each tier checks one
// family of identities exhaustively (or on seeded samples) and reports the
// first counterexample it meets.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fszlab/field.hpp"

namespace fszlab {

struct VerifyOptions {
  bool quick = false;  // tiers 1..7 only
  std::uint64_t budget = 2'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Builds F_9 from the reducible x^2 - 1 so that the residue tiers fail.
  bool corrupt_modulus = false;
};

struct TierResult {
  int id;              // 1..12
  std::string anchor;  // name of the identity family checked
  bool pass;
  std::string detail;  // counts on success, the first failure otherwise
  double seconds;
};

// Field used by the residue tiers; honours corrupt_modulus.
const FieldSpec& verify_field(const VerifyOptions& opt, std::uint32_t p, unsigned n);

TierResult run_tier(int id, const VerifyOptions& opt);
std::vector<TierResult> run_verify(const VerifyOptions& opt,
                                   const std::function<void(const TierResult&)>& on_tier = {});

}  // namespace fszlab
