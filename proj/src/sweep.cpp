#include "postlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "postlab/errors.hpp"

namespace postlab {

namespace {

struct CellTask {
  int m = 0;
  i64 d = 0;
};

std::string status_text(const SweepRow& row) {
  if (!row.cell.pass) return "unconfirmed";
  if (!row.cell.exceptional) return "certified";
  std::ostringstream os;
  os << "exceptional";
  if (row.probe)
    os << "(h0=" << row.probe->h0 << ";h1=" << row.probe->h1 << ")";
  return os.str();
}

std::string low_text(const SweepRow& row) {
  return row.cell.low ? std::to_string(row.cell.low->h0) : "-";
}

}  // namespace

SweepResult run_sweep(const SweepOptions& opt) {
  if (opt.m_max < 1) throw InvalidUnion("sweep needs m_max >= 1");
  if (opt.t_max < opt.m_max)
    throw InvalidUnion("sweep needs t_max >= m_max, or the top rows are empty");
  if (opt.jobs < 1) throw InvalidUnion("sweep needs jobs >= 1");

  std::vector<CellTask> tasks;
  for (int m = 1; m <= opt.m_max; ++m) {
    const i64 d_max = ab(m, opt.t_max).a;
    for (i64 d = 1; d <= d_max; ++d) tasks.push_back({m, d});
  }

  SweepResult res;
  res.options = opt;
  res.rows.resize(tasks.size());

  auto work_cell = [&](std::size_t i) {
    const CellTask& cell = tasks[i];
    CertifyOptions copt;
    copt.seed = Rng::mix({opt.seed, static_cast<u64>(cell.m),
                          static_cast<u64>(cell.d)});
    copt.prime = opt.prime;
    copt.retries = opt.retries;
    SweepRow row;
    row.cell = verify_theorem_cell(cell.m, cell.d, copt);
    if (row.cell.exceptional)
      row.probe = exceptional_probe(cell.m, cell.d, opt.probe_samples, copt);
    res.rows[i] = std::move(row);
  };

  if (opt.jobs == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    const int workers =
        std::min<int>(opt.jobs, static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= res.rows.size()) return;
          work_cell(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  res.all_pass = std::all_of(res.rows.begin(), res.rows.end(),
                             [](const SweepRow& r) { return r.cell.pass; });
  return res;
}

std::string render_sweep_markdown(const SweepResult& res) {
  std::ostringstream os;
  os << "| m | d | k | h0 below | h1 at k | status |\n";
  os << "|---|---|---|----------|---------|--------|\n";
  for (const auto& row : res.rows) {
    os << "| " << row.cell.m << " | " << row.cell.d << " | " << row.cell.k
       << " | " << low_text(row) << " | " << row.cell.high.h1 << " | "
       << status_text(row) << " |\n";
  }
  return os.str();
}

std::string render_sweep_csv(const SweepResult& res) {
  std::ostringstream os;
  os << "m,d,k,h0_below,h1_at_k,status\n";
  for (const auto& row : res.rows) {
    os << row.cell.m << "," << row.cell.d << "," << row.cell.k << ","
       << low_text(row) << "," << row.cell.high.h1 << "," << status_text(row)
       << "\n";
  }
  return os.str();
}

}  // namespace postlab
