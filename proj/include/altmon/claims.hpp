#pragma once

#include <functional>
#include <string>
#include <vector>

namespace altmon {

struct ClaimOptions {
  int jobs = 0;          // worker threads; 0 picks the hardware count
  bool long_runs = false;
  bool timings = false;  // include per-claim milliseconds in the JSON report
  int n_max = 0;         // skip claims above this chain size; 0 = no limit
};

struct ClaimOutcome {
  std::string expected;
  std::string computed;
};

struct Claim {
  std::string id;      // "<criterion>.<topic>.<monoid>.<n>"; report order
  std::string anchor;  // claim taxonomy label (theorem/lemma identifier)
  int n;
  bool long_only = false;
  std::function<ClaimOutcome()> run;
};

struct ClaimResult {
  std::string id;
  std::string anchor;
  int n = 0;
  std::string expected;
  std::string computed;
  std::string status;  // pass | fail | skip
  double millis = 0.0;
};

std::vector<Claim> build_claims(const ClaimOptions& opts);
std::vector<ClaimResult> run_claims(const std::vector<Claim>& claims, const ClaimOptions& opts);

// Deterministic JSON text (timings only when opts.timings).
std::string report_json(const std::vector<ClaimResult>& results, const ClaimOptions& opts);
std::string report_text(const std::vector<ClaimResult>& results);

// criterion number (leading id component) -> title
const std::vector<std::pair<int, std::string>>& criterion_titles();

}  // namespace altmon
