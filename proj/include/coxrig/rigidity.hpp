#pragma once

// Certificates for the edge-normaliser condition on Stallings splittings:
// for every edge group F, N_G(F) acts on F by inner automorphisms only.
// A Fails verdict means the hypothesis fails, not that the group is not
// rigid.

#include <optional>
#include <string>
#include <vector>

#include "coxrig/bass_serre.hpp"
#include "coxrig/classification.hpp"
#include "coxrig/splitting.hpp"

namespace coxrig {

struct EdgeVerdict {
  enum class Kind { kHolds, kFails, kUnknown };
  enum class Reason { kNone, kTrivialOut, kEvenRetraction, kComputedEqualsInn };

  std::size_t edge = 0;
  GenSubset generators;
  std::optional<std::uint64_t> order;
  Kind kind = Kind::kUnknown;
  Reason reason = Reason::kNone;
  std::string detail;
  /// For Fails: images of the edge generators under an outer element of
  /// the normaliser image, as "s -> word" with 1-based letters.
  std::vector<std::string> witness;
  std::optional<NormalizerImage> normalizer;
};

std::string to_string(EdgeVerdict::Kind k);
std::string to_string(EdgeVerdict::Reason r);

enum class Overall { kTorsionRigid, kNotCovered, kHypothesisFails };
std::string to_string(Overall o);

inline constexpr const char* kTagMainTheorem = "Thm-main_theorem2";
inline constexpr const char* kTagEven = "Cor-corollary-even";
inline constexpr const char* kTagOneEnded = "Cor-corollary-one-ended";
inline constexpr const char* kTagTrichotomy = "Thm-final_main_theorem";

struct RigidityOptions {
  std::size_t order_bound = kDefaultOrderBound;
  std::size_t automorphism_bound = kAutomorphismOrderBound;
  std::size_t normalizer_state_cap = kDefaultNormalizerStateCap;
};

struct RigidityReport {
  SplitTree splitting;
  MoussongResult moussong;
  Classification classification;
  std::vector<EdgeVerdict> edges;
  bool theorem1_trichotomy = false;
  Overall overall = Overall::kNotCovered;
  /// Strongest applicable result first; empty when none applies.
  std::vector<std::string> cited;
  std::vector<std::string> notes;
};

/// Never throws on a valid splitting; failures of the lower layers become
/// Unknown with the reason in `detail`.
EdgeVerdict edge_condition(const CoxeterMatrix& m, const SplitTree& t, std::size_t edge,
                           const RigidityOptions& opt = {});

RigidityReport rigidity_report(const CoxeterMatrix& m, const RigidityOptions& opt = {});

}  // namespace coxrig
