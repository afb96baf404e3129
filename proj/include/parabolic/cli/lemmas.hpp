#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parabolic/cli/serialize.hpp"

namespace parabolic::cli {

struct ClaimResult {
  std::string id;
  std::string statement;
  bool pass = false;
  Json evidence;
};

struct LemmaReport {
  std::string lemma;
  std::string algebra;
  std::string isotropy;
  std::vector<ClaimResult> claims;

  bool pass() const;
  Json to_json() const;
};

/// grass-two, grass-one, quat, contact, cr-nonnull, cr-null.
const std::vector<std::string>& lemma_ids();

/// The lemma's orbit type exists in `algebra`.
bool lemma_applies(const std::string& id, const AlgebraHandle& algebra);
/// Checks the claim list of `id` on the standard isotropy of its type in `algebra`.
/// Throws unknown-lemma, or family-unsupported when the algebra does not fit the lemma.
LemmaReport verify_lemma(const std::string& id, const AlgebraHandle& algebra, std::uint64_t seed = 1);

}  // namespace parabolic::cli
