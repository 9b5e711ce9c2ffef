#pragma once
// Branch-and-bound prover for simplex inequalities.  A spec's claim is
// checked over its domain box by interval evaluation; undecided boxes are
// split along the widest coordinate (normalized by the domain width) until
// every box is proven, a counterexample point is certified, or the cell
// budget runs out.  Boxes on which a side condition certainly fails are
// discarded.  The serial and the OpenMP kernel walk the same split tree, so
// a proven outcome reports identical cells and margin for any thread count.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tame/ineqspec.hpp"

namespace tame {

enum class VerifyStatus { kProven, kFailed, kUnknown };
const char* to_string(VerifyStatus s);

struct VerifyOptions {
  long max_cells = 1000000;  // boxes examined before giving up
  int threads = 0;           // parallel kernel only; 0 = runtime default
};

struct VerifyOutcome {
  VerifyStatus status = VerifyStatus::kUnknown;
  long cells = 0;       // boxes examined
  double min_margin = 0;  // proven: the tightest gap over all leaf boxes
  std::array<double, 6> witness{};  // failed: point violating the claim
  double seconds = 0;
  std::string note;
};

VerifyOutcome verify_serial(const IneqSpec& spec, const VerifyOptions& = {});
VerifyOutcome verify_parallel(const IneqSpec& spec, const VerifyOptions& = {});

// One TSV row per outcome: id, status, cells, seconds.
std::string verify_report_tsv(
    const std::vector<std::pair<std::string, VerifyOutcome>>& rows);

}  // namespace tame
