#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "doeblin/chain.hpp"
#include "doeblin/measure.hpp"

namespace doeblin {

enum class Strategy { linear, exponential_search };
enum class SampleStatus { exact, censored };

struct RecordEntry {
  State value;         // record value (atom location)
  std::int64_t index;  // first backward depth attaining it
  std::int64_t run;    // number of consecutive depths with this value
};

struct PPSample {
  CountingMeasure atoms;
  SampleStatus status = SampleStatus::censored;
  std::int64_t depth_used = 0;
  std::vector<RecordEntry> records;
  std::int64_t loynes_evals = 0;  // distinct backward depths evaluated

  std::string to_json() const;
};

/// L_n: the state at time 0 of the path started at (-n, s*).
/// Requires a monotone model and common-coupling noise.
State loynes_value(const ChainModel& model, const NoiseField& noise, std::int64_t n);

/// Taboo point process restricted to [0, K]. Exact once a record exceeds K
/// within max_n backward steps; censored (windowed) otherwise.
PPSample sample_taboo_pp(const ChainModel& model, const NoiseField& noise, State K,
                         std::int64_t max_n);

/// Potential point process restricted to [0, K]: atoms are the record values,
/// multiplicities their run lengths. Both strategies return identical
/// measures; exponential_search touches O(records * log depth) indices.
PPSample sample_potential_pp(const ChainModel& model, const NoiseField& noise, State K,
                             std::int64_t max_n, Strategy strategy);

struct GapStats {
  std::vector<std::int64_t> gaps;  // differences of successive record indices
  bool censored_tail = false;      // scan ended at max_n with an open gap
};

/// Gaps between successive record-creating backward times of the Loynes
/// sequence (heavy-tailed in the null recurrent case).
GapStats backward_gap_stats(const ChainModel& model, const NoiseField& noise,
                            std::int64_t n_events, std::int64_t max_n);

/// Windowed taboo/potential sample of the *renewal* chain at time 0 counting
/// the starts -depth..-1, computed by axis-skip walking over the jump draws
/// (never stepping state by state). Consumes the same noise sites as the
/// bridge paths, so it matches windowed bridge multiplicities exactly.
/// Taboo samples are exact when the jump support is bounded by depth+1.
PPSample renewal_windowed_sample(const ChainModel& model, const NoiseField& noise, State K,
                                 std::int64_t depth, PPKind kind);

}  // namespace doeblin
