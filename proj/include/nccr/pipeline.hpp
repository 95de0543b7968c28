#pragma once

// The whole classification for one polygon: CM classes, maximal modifying
// sets, their quivers and the equivalence classes of the quivers.

#include <vector>

#include "nccr/mutation.hpp"

namespace nccr {

struct Analysis {
  ToricData data;
  std::vector<BVector> cm;
  std::vector<ModifyingSet> mm;          // sorted
  std::vector<EmbeddedQuiver> quivers;   // one per entry of mm
  NccrClasses classes;

  /// Input indices of the class representatives, modulo opposite or raw.
  std::vector<std::size_t> representatives(bool mod_opposite) const {
    std::vector<std::size_t> r;
    if (mod_opposite)
      for (const auto& c : classes.classes) r.push_back(c.rep);
    else
      r = classes.raw_reps;
    return r;
  }

  bool asterisk_of_raw(std::size_t raw) const { return classes.classes[classes.merged_of_raw[raw]].asterisk; }
};

inline Analysis analyze(const ToricData& data, long max_steps = 1'000'000) {
  Analysis a{data, enumerate_cm(data, max_steps), {}, {}, {}};
  a.mm = enumerate_mm(data, a.cm);
  for (const auto& s : a.mm) a.quivers.push_back(build_quiver(data, s));
  a.classes = dedup_nccrs(data, a.quivers);
  return a;
}

}  // namespace nccr
