#pragma once

#include <unordered_set>
#include <vector>

#include "fsw/reduce.hpp"
#include "fsw/term.hpp"

namespace fsw {

// All closed terms of tree depth <= depth, canonicalized by normal form.
// Non-normalizing candidates are excluded; duplicates removed; order is the
// deterministic generation order (constants in declaration order, then
// applications by left/right index).
inline std::vector<Term> enumerate_universe(int depth, Fuel fuel = default_fuel()) {
  std::vector<Term> raw;  // all raw terms of depth <= d, generation order
  for (int i = 0; i < kNumConstants; ++i) raw.push_back(constant(static_cast<Tag>(i)));
  size_t level_begin = 0;
  for (int d = 1; d <= depth; ++d) {
    size_t level_end = raw.size();
    std::vector<Term> next;
    for (size_t i = 0; i < level_end; ++i)
      for (size_t j = 0; j < level_end; ++j) {
        Term t = app(raw[i], raw[j]);
        if (t->depth == static_cast<uint32_t>(d)) next.push_back(t);
      }
    raw.insert(raw.end(), next.begin(), next.end());
    level_begin = level_end;
  }
  (void)level_begin;
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  out.reserve(raw.size());
  for (Term t : raw) {
    NormResult r = reduce(t, fuel);
    if (!r.normal) continue;
    if (seen.insert(r.term).second) out.push_back(r.term);
  }
  return out;
}

}  // namespace fsw
