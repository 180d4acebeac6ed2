#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shadowtrace {

enum class LawId {
  // Shadow axioms and strictness of the word bicategory.
  Strictness,
  Hexagon,
  UnitLeft,
  UnitRight,
  ThetaInvolution,
  Interchange,
  ShadowFunctoriality,
  ThetaNaturality,
  // Trace laws.
  Cyclicity,
  Tightening,
  Sliding,
  Unit,
  Composition,
  Mate,
  DualIndependence,
  // Diagram laws.
  ThetaAddition,
  ThetaTupleNaturality,
  ThetaCombination,
  Deformation,
  TraceDiagram,
  // Functor laws.
  Functoriality,
  Coherence,
  DualsInvert,
  Cube,
  Augmentation,
};

enum class InstanceId { MatModZ, MatModQ, Span, GRBimodZ, GRBimodQ };

std::string law_name(LawId law);
std::optional<LawId> parse_law(const std::string& name);
const std::vector<LawId>& all_laws();
// The laws run by check_axioms.
const std::vector<LawId>& axiom_laws();

std::string instance_name(InstanceId inst);
// Accepts the names above plus "matmod" and "grbimod" for the integral forms.
std::optional<InstanceId> parse_instance(const std::string& name);
const std::vector<InstanceId>& all_instances();

bool applicable(LawId law, InstanceId inst);
// First instance the law applies to.
InstanceId default_instance(LawId law);

struct LawFailure {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct LawReport {
  LawId law{};
  InstanceId instance{};
  int trials = 0;
  int passed = 0;
  // Trials where no well-shaped data turned up.
  int skipped = 0;
  std::vector<LawFailure> failures;

  bool ok() const { return failures.empty() && passed > 0; }
  // "hexagon matmod-z: 200 passed, 0 skipped, 0 failed".
  std::string summary() const;
};

// Seed of trial t: SplitMix64 of seed + t.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

// Runs `trials` independent trials in parallel; the report does not depend on
// the thread count. threads = 0 uses the hardware concurrency.
LawReport verify_law(LawId law, InstanceId inst, int trials, std::uint64_t seed, unsigned threads = 0);

struct TrialOutcome {
  enum class Kind { Pass, Fail, Skip };
  Kind kind = Kind::Pass;
  std::string detail;
};

// One trial from its seed; replays a reported failure.
TrialOutcome run_trial(LawId law, InstanceId inst, std::uint64_t trial_seed);

std::vector<LawReport> check_axioms(InstanceId inst, int trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace shadowtrace
