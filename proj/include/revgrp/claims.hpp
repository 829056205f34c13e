#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revgrp/analysis.hpp"

namespace revgrp {

// ---------------------------------------------------------------------------
// Machine-checkable claims about one group's reversibility structure.
//
// Claim file format, one claim per line (blank lines and '#' comments ok):
//   <group-spec> :: <atom> <rel> <atom> [expect pass|fail]
// Atoms: G, I, R, I2..I6, R2..R6, Iinf, Rinf.
// Relations: = (set equality), != (inequality), <= (subset); the unicode
// spellings of the last two are accepted too.
// ---------------------------------------------------------------------------

struct Atom {
  char base = 'G';           // 'G', 'I' or 'R'
  std::uint32_t power = 1;   // 1..6, or kInfPower
  static constexpr std::uint32_t kInfPower = 0xffffffff;

  std::string str() const;
};

enum class Rel { Eq, Ne, Subset };

struct Claim {
  std::string spec;          // group spec string
  Atom lhs;
  Rel rel = Rel::Eq;
  Atom rhs;
  bool expect_pass = true;
  std::string source;        // provenance tag for built-in claims
  std::string predicate_text;
};

// Throws ParseError with a 1-based line number on malformed lines, unknown
// atoms, or atom powers beyond the supported cap of 6.
std::vector<Claim> parse_claims(std::string_view text);

// The fixed suite of survey-table claims over the finite families in scope,
// each tagged with the structural fact it encodes.
std::vector<Claim> builtin_suite();

enum class Verdict { Pass, Fail, ResourceExceeded };

struct ClaimResult {
  Claim claim;
  Verdict verdict = Verdict::Fail;
  bool matched = false;                 // verdict agrees with expectation
  std::optional<std::string> witness;   // falsifying element, carrier form
  std::string note;                     // resource-exceeded detail
};

// Analyses keyed by spec text so identical specs are computed once and
// shared read-only.
class AnalysisCache {
 public:
  AnalysisCache(std::uint64_t limit = kDefaultElementLimit,
                std::uint32_t cap = kDefaultChainCap)
      : limit_(limit), cap_(cap) {}

  const Analysis& get(const std::string& spec_text);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t cap() const { return cap_; }

 private:
  std::uint64_t limit_;
  std::uint32_t cap_;
  std::map<std::string, std::shared_ptr<const Analysis>> cache_;
};

// Builds/loads the report and evaluates the set relation exactly. Fail
// verdicts on =/<= carry a least-index witness from the offending side.
// Group or chain resource limits yield Verdict::ResourceExceeded.
ClaimResult evaluate_claim(const Claim& c, AnalysisCache& cache);

struct SuiteOutcome {
  std::vector<ClaimResult> results;
  bool all_matched = true;
  bool any_resource_exceeded = false;
};

SuiteOutcome run_claims(const std::vector<Claim>& claims, AnalysisCache& cache);

// JSON array of claim results (deterministic bytes).
std::string claims_json_string(const SuiteOutcome& outcome);
// Aligned human-readable table, one line per claim plus a summary line.
std::string claims_table(const SuiteOutcome& outcome);

}  // namespace revgrp
