#include "shadowtrace/laws.hpp"

#include "law_checks.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <thread>
#include <utility>

namespace shadowtrace {

namespace {

constexpr std::array<std::pair<LawId, const char*>, 25> kLawNames{{
    {LawId::Strictness, "strictness"},
    {LawId::Hexagon, "hexagon"},
    {LawId::UnitLeft, "unit-left"},
    {LawId::UnitRight, "unit-right"},
    {LawId::ThetaInvolution, "theta-involution"},
    {LawId::Interchange, "interchange"},
    {LawId::ShadowFunctoriality, "shadow-functoriality"},
    {LawId::ThetaNaturality, "theta-naturality"},
    {LawId::Cyclicity, "cyclicity"},
    {LawId::Tightening, "tightening"},
    {LawId::Sliding, "sliding"},
    {LawId::Unit, "unit"},
    {LawId::Composition, "composition"},
    {LawId::Mate, "mate"},
    {LawId::DualIndependence, "dual-independence"},
    {LawId::ThetaAddition, "theta-addition"},
    {LawId::ThetaTupleNaturality, "theta-tuple-naturality"},
    {LawId::ThetaCombination, "theta-combination"},
    {LawId::Deformation, "deformation"},
    {LawId::TraceDiagram, "trace-diagram"},
    {LawId::Functoriality, "functoriality"},
    {LawId::Coherence, "coherence"},
    {LawId::DualsInvert, "duals-invert"},
    {LawId::Cube, "cube"},
    {LawId::Augmentation, "augmentation"},
}};

constexpr std::array<std::pair<InstanceId, const char*>, 5> kInstanceNames{{
    {InstanceId::MatModZ, "matmod-z"},
    {InstanceId::MatModQ, "matmod-q"},
    {InstanceId::Span, "span"},
    {InstanceId::GRBimodZ, "grbimod-z"},
    {InstanceId::GRBimodQ, "grbimod-q"},
}};

// Attempts per trial before it counts as skipped.
constexpr int kAttempts = 50;

}  // namespace

std::string law_name(LawId law) {
  for (const auto& [id, name] : kLawNames)
    if (id == law) return name;
  return "?";
}

std::optional<LawId> parse_law(const std::string& name) {
  for (const auto& [id, n] : kLawNames)
    if (name == n) return id;
  return std::nullopt;
}

const std::vector<LawId>& all_laws() {
  static const std::vector<LawId> laws = [] {
    std::vector<LawId> out;
    for (const auto& entry : kLawNames) out.push_back(entry.first);
    return out;
  }();
  return laws;
}

const std::vector<LawId>& axiom_laws() {
  static const std::vector<LawId> laws{LawId::Strictness,      LawId::Hexagon,     LawId::UnitLeft,
                                       LawId::UnitRight,       LawId::ThetaInvolution, LawId::Interchange,
                                       LawId::ShadowFunctoriality, LawId::ThetaNaturality};
  return laws;
}

std::string instance_name(InstanceId inst) {
  for (const auto& [id, name] : kInstanceNames)
    if (id == inst) return name;
  return "?";
}

std::optional<InstanceId> parse_instance(const std::string& name) {
  if (name == "matmod") return InstanceId::MatModZ;
  if (name == "grbimod") return InstanceId::GRBimodZ;
  for (const auto& [id, n] : kInstanceNames)
    if (name == n) return id;
  return std::nullopt;
}

const std::vector<InstanceId>& all_instances() {
  static const std::vector<InstanceId> out{InstanceId::MatModZ, InstanceId::MatModQ, InstanceId::Span,
                                           InstanceId::GRBimodZ, InstanceId::GRBimodQ};
  return out;
}

bool applicable(LawId law, InstanceId inst) {
  switch (law) {
    case LawId::Functoriality:
    case LawId::Coherence: return inst == InstanceId::Span || inst == InstanceId::GRBimodZ;
    case LawId::DualsInvert:
    case LawId::Cube: return inst == InstanceId::GRBimodZ;
    case LawId::Augmentation: return inst == InstanceId::GRBimodZ || inst == InstanceId::GRBimodQ;
    default: return true;
  }
}

InstanceId default_instance(LawId law) {
  for (auto inst : all_instances())
    if (applicable(law, inst)) return inst;
  return InstanceId::MatModZ;
}

std::string LawReport::summary() const {
  return law_name(law) + " " + instance_name(instance) + ": " + std::to_string(passed) + " passed, " +
         std::to_string(skipped) + " skipped, " + std::to_string(failures.size()) + " failed";
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TrialOutcome run_trial(LawId law, InstanceId inst, std::uint64_t seed) {
  if (!applicable(law, inst)) return laws::fail(law_name(law) + " does not apply to " + instance_name(inst));
  Rng rng(seed);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    TrialOutcome out;
    try {
      switch (inst) {
        case InstanceId::MatModZ: out = laws::matmod_z_trial(law, rng); break;
        case InstanceId::MatModQ: out = laws::matmod_q_trial(law, rng); break;
        case InstanceId::Span: out = laws::span_trial(law, rng); break;
        case InstanceId::GRBimodZ: out = laws::grbimod_trial(law, Ring::Z, rng); break;
        case InstanceId::GRBimodQ: out = laws::grbimod_trial(law, Ring::Q, rng); break;
      }
    } catch (const std::exception& e) {
      return laws::fail(std::string("exception: ") + e.what());
    }
    if (out.kind != TrialOutcome::Kind::Skip) return out;
  }
  return laws::skip();
}

LawReport verify_law(LawId law, InstanceId inst, int trials, std::uint64_t seed, unsigned threads) {
  LawReport report;
  report.law = law;
  report.instance = inst;
  report.trials = trials;
  if (trials <= 0) return report;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, static_cast<unsigned>(trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next++; t < trials; t = next++)
      outcomes[static_cast<std::size_t>(t)] = run_trial(law, inst, trial_seed(seed, t));
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (int t = 0; t < trials; ++t) {
    auto& o = outcomes[static_cast<std::size_t>(t)];
    switch (o.kind) {
      case TrialOutcome::Kind::Pass: ++report.passed; break;
      case TrialOutcome::Kind::Skip: ++report.skipped; break;
      case TrialOutcome::Kind::Fail: report.failures.push_back({t, trial_seed(seed, t), std::move(o.detail)}); break;
    }
  }
  return report;
}

std::vector<LawReport> check_axioms(InstanceId inst, int trials, std::uint64_t seed, unsigned threads) {
  std::vector<LawReport> out;
  for (auto law : axiom_laws()) out.push_back(verify_law(law, inst, trials, seed, threads));
  return out;
}

}  // namespace shadowtrace
