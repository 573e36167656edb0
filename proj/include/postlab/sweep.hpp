#ifndef POSTLAB_SWEEP_HPP
#define POSTLAB_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "postlab/certify.hpp"

namespace postlab {

struct SweepOptions {
  int m_max = 3;
  int t_max = 8;
  u64 seed = 0;
  u64 prime = kDefaultPrime;
  int retries = 3;
  int jobs = 1;
  int probe_samples = 5;
};

/* One cell of the sweep; exceptional cells also carry the deficit probe. */
struct SweepRow {
  CellReport cell;
  std::optional<ProbeResult> probe;
};

struct SweepResult {
  SweepOptions options;
  std::vector<SweepRow> rows;
  bool all_pass = false;
};

/* Verifies every cell 1 <= m <= m_max whose critical value fits under
   t_max, i.e. 1 <= d <= a(m, t_max).  Each cell gets its own seed mixed
   from the master seed and (m, d), so the result is independent of the
   number of worker threads. */
SweepResult run_sweep(const SweepOptions& opt);

std::string render_sweep_markdown(const SweepResult& res);
std::string render_sweep_csv(const SweepResult& res);

}  // namespace postlab

#endif
