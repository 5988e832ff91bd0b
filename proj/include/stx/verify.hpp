#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stx/io.hpp"

namespace stx {

enum class ClaimStatus { certified, violated, skipped };
const char* claim_status_name(ClaimStatus s) noexcept;  // CERTIFIED / VIOLATED / SKIPPED-too-large

struct ClaimReport {
  std::string claim;     // criterion id, e.g. "C3/d=4"
  std::string instance;  // what was checked
  std::string claimed;
  std::string computed;
  ClaimStatus status = ClaimStatus::certified;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::optional<std::uint64_t> node_cap;  // applied to solves that may not finish
  int threads = 1;
};

struct CriterionReport {
  int number = 0;
  std::vector<ClaimReport> rows;
  bool violated() const;
  bool skipped() const;
};

// The certification checklist. Each criterion re-derives its instances from
// the constructions and certifies the claimed bounds with the exact solver
// (or the documented oracle sweep). Numbers run 1 through 10.
CriterionReport run_criterion(int number, const VerifyOptions& opt = {});

// paper: the full checklist; oracle: the solver/brute-force agreement sweep;
// all: union of both. Errors: bad_argument.
std::vector<int> suite_criteria(const std::string& suite);

// Checks a single instance file against its own recorded claims: structural
// validity, claimed vertex count, claimed transversal lower bound.
std::vector<ClaimReport> verify_instance_claims(const Instance& inst,
                                                const VerifyOptions& opt = {});

}  // namespace stx
