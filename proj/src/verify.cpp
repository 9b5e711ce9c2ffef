#include "tame/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tame {

namespace {

struct BoxStep {
  enum Kind { kDiscard, kProven, kFailed, kSplit, kStuck };
  Kind kind = kDiscard;
  double margin = 0;
  std::array<double, 6> witness{};
  IntervalBox lower, upper;
};

// Coordinates narrower than this are treated as points and never split;
// pinned domain coordinates (e.g. "y5 = two_t0", stored a couple of ulps
// wide so the real constant stays covered) would otherwise be chosen
// forever by the normalized-width rule.
constexpr double kMinSplitWidth = 1e-9;

// Decide one box: discard it, prove the claim on it, certify a violating
// point, or split it along the widest domain-normalized coordinate.
// Exception-free so the kernels can call it from any thread.
BoxStep process_box(const IneqSpec& spec,
                    const std::array<double, 6>& dom_width,
                    const IntervalBox& box) {
  BoxStep st;
  for (const IneqTest& c : spec.constraints) {
    TestVerdict v = TestVerdict::kUndecided;
    try {
      v = verdict(eval_test(c, box), c.rel);
    } catch (const std::domain_error&) {
      // side condition not evaluable here: keep the box
    }
    if (v == TestVerdict::kCertainlyFalse) {
      st.kind = BoxStep::kDiscard;
      return st;
    }
  }

  bool claim_false = false;
  try {
    const TestEval te = eval_test(spec.claim, box);
    const TestVerdict v = verdict(te, spec.claim.rel);
    if (v == TestVerdict::kCertainlyTrue) {
      st.kind = BoxStep::kProven;
      st.margin = proven_margin(te, spec.claim.rel);
      return st;
    }
    claim_false = v == TestVerdict::kCertainlyFalse;
  } catch (const std::domain_error&) {
    // not evaluable over the whole box: split and retry on the halves
  }

  if (claim_false) {
    // The interval test already rules the whole box out; certify with a
    // point that satisfies the side conditions and violates the claim.
    std::array<double, 6> p;
    for (int i = 0; i < 6; ++i) p[i] = mid(box.y[i]);
    bool good = true;
    try {
      for (const IneqTest& c : spec.constraints)
        if (!holds_at(c, p)) {
          good = false;
          break;
        }
      if (good && holds_at(spec.claim, p)) good = false;
    } catch (const std::domain_error&) {
      good = false;
    }
    if (good) {
      st.kind = BoxStep::kFailed;
      st.witness = p;
      return st;
    }
    // The midpoint misses the side conditions; the halves will either be
    // discarded or produce a certifiable point.
  }

  int axis = -1;
  double best = 0;
  for (int i = 0; i < 6; ++i) {
    if (dom_width[i] <= 0 || width(box.y[i]) < kMinSplitWidth) continue;
    const double nw = width(box.y[i]) / dom_width[i];
    if (nw > best) {
      best = nw;
      axis = i;
    }
  }
  if (axis >= 0) {
    const double m = mid(box.y[axis]);
    if (m > box.y[axis].lo && m < box.y[axis].hi) {
      st.kind = BoxStep::kSplit;
      st.lower = box;
      st.lower.y[axis] = Interval(box.y[axis].lo, m);
      st.upper = box;
      st.upper.y[axis] = Interval(m, box.y[axis].hi);
      return st;
    }
  }
  st.kind = BoxStep::kStuck;
  return st;
}

std::array<double, 6> domain_widths(const IneqSpec& spec) {
  std::array<double, 6> w;
  for (int i = 0; i < 6; ++i) w[i] = width(spec.domain.y[i]);
  return w;
}

VerifyOutcome finish(VerifyOutcome out,
                     std::chrono::steady_clock::time_point start) {
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

void conclude_proven(VerifyOutcome* out, double margin) {
  out->status = VerifyStatus::kProven;
  if (margin == HUGE_VAL) {
    out->min_margin = 0;
    out->note = "vacuous: every box violated a side condition";
  } else {
    out->min_margin = margin;
  }
}

}  // namespace

const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kProven:
      return "proven";
    case VerifyStatus::kFailed:
      return "failed";
    case VerifyStatus::kUnknown:
      return "unknown";
  }
  return "unknown";
}

VerifyOutcome verify_serial(const IneqSpec& spec, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::array<double, 6> dw = domain_widths(spec);
  VerifyOutcome out;
  std::vector<IntervalBox> stack{spec.domain};
  double margin = HUGE_VAL;
  while (!stack.empty()) {
    if (out.cells >= opts.max_cells) {
      out.status = VerifyStatus::kUnknown;
      out.note = "cell budget exhausted";
      return finish(out, start);
    }
    const IntervalBox box = stack.back();
    stack.pop_back();
    ++out.cells;
    const BoxStep st = process_box(spec, dw, box);
    switch (st.kind) {
      case BoxStep::kDiscard:
        break;
      case BoxStep::kProven:
        margin = std::min(margin, st.margin);
        break;
      case BoxStep::kFailed:
        out.status = VerifyStatus::kFailed;
        out.witness = st.witness;
        out.note = "claim fails at the certified point";
        return finish(out, start);
      case BoxStep::kSplit:
        stack.push_back(st.upper);
        stack.push_back(st.lower);
        break;
      case BoxStep::kStuck:
        out.status = VerifyStatus::kUnknown;
        out.note = "undecided box cannot be split further";
        return finish(out, start);
    }
  }
  conclude_proven(&out, margin);
  return finish(out, start);
}

VerifyOutcome verify_parallel(const IneqSpec& spec,
                              const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::array<double, 6> dw = domain_widths(spec);
  VerifyOutcome out;
  std::vector<IntervalBox> frontier{spec.domain};
  double margin = HUGE_VAL;
#ifdef _OPENMP
  const int nthreads =
      opts.threads > 0 ? opts.threads : omp_get_max_threads();
#endif
  while (!frontier.empty()) {
    const long remaining = opts.max_cells - out.cells;
    if (remaining <= 0) {
      out.status = VerifyStatus::kUnknown;
      out.note = "cell budget exhausted";
      return finish(out, start);
    }
    const size_t take =
        std::min(frontier.size(), static_cast<size_t>(remaining));
    std::vector<BoxStep> steps(take);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(take); ++i)
      steps[i] = process_box(spec, dw, frontier[i]);
    out.cells += static_cast<long>(take);

    // Merge in frontier order so the outcome is identical for any thread
    // count: the first failure wins, margins fold the same set of boxes.
    std::vector<IntervalBox> next;
    for (size_t i = 0; i < take; ++i) {
      const BoxStep& st = steps[i];
      switch (st.kind) {
        case BoxStep::kDiscard:
          break;
        case BoxStep::kProven:
          margin = std::min(margin, st.margin);
          break;
        case BoxStep::kFailed:
          out.status = VerifyStatus::kFailed;
          out.witness = st.witness;
          out.note = "claim fails at the certified point";
          return finish(out, start);
        case BoxStep::kSplit:
          next.push_back(st.lower);
          next.push_back(st.upper);
          break;
        case BoxStep::kStuck:
          out.status = VerifyStatus::kUnknown;
          out.note = "undecided box cannot be split further";
          return finish(out, start);
      }
    }
    if (take < frontier.size()) {
      out.status = VerifyStatus::kUnknown;
      out.note = "cell budget exhausted";
      return finish(out, start);
    }
    frontier = std::move(next);
  }
  conclude_proven(&out, margin);
  return finish(out, start);
}

std::string verify_report_tsv(
    const std::vector<std::pair<std::string, VerifyOutcome>>& rows) {
  std::string s = "id\tstatus\tcells\tseconds\n";
  char buf[160];
  for (const auto& [id, o] : rows) {
    std::snprintf(buf, sizeof buf, "%s\t%s\t%ld\t%.3f\n", id.c_str(),
                  to_string(o.status), o.cells, o.seconds);
    s += buf;
  }
  return s;
}

}  // namespace tame
