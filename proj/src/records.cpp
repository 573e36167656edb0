#include "postlab/records.hpp"

#include <ctime>

#include "postlab/errors.hpp"

namespace postlab {

Json to_json(const Certificate& c) {
  return Json{{"m", c.m},
              {"d", c.d},
              {"t", c.t},
              {"prime", c.prime},
              {"seed", c.seed},
              {"strategy", c.strategy},
              {"n_forms", c.n_forms},
              {"degree", c.degree},
              {"rank", c.rank},
              {"h0", c.h0},
              {"h1", c.h1},
              {"status", to_string(c.status)},
              {"exceptional", c.exceptional},
              {"attempts", c.attempts},
              {"elapsed_ms", c.elapsed_ms}};
}

Json to_json(const CellReport& r) {
  Json j{{"m", r.m},
         {"d", r.d},
         {"k", r.k},
         {"exceptional", r.exceptional},
         {"high", to_json(r.high)},
         {"pass", r.pass}};
  j["low"] = r.low ? to_json(*r.low) : Json(nullptr);
  return j;
}

Json to_json(const ProbeResult& p) {
  return Json{{"m", p.m},       {"d", p.d},
              {"t", p.t},       {"h0", p.h0},
              {"h1", p.h1},     {"samples", p.samples},
              {"caveat", p.caveat}};
}

Json to_json(const WitnessConfig& w) {
  return Json{{"kind", w.kind},
              {"m", w.m},
              {"k", w.k},
              {"prime", w.prime},
              {"seed", w.seed},
              {"lines", w.lines},
              {"marked_left", w.marked_left},
              {"marked_right", w.marked_right},
              {"tangent_vectors", w.tangent_vectors},
              {"ruling_lines", w.ruling_lines},
              {"mark_surplus", w.mark_surplus},
              {"attempts", w.attempts},
              {"components", w.scheme.components.size()},
              {"checks", Json{{"n_forms", w.checks.n_forms},
                              {"degree", w.checks.degree},
                              {"rank", w.checks.rank},
                              {"h0", w.checks.h0},
                              {"h1", w.checks.h1},
                              {"degree_identity", w.checks.degree_identity},
                              {"rank_expected", w.checks.rank_expected}}}};
}

Json to_json(const SweepRow& row) {
  Json j{{"cell", to_json(row.cell)}};
  j["probe"] = row.probe ? to_json(*row.probe) : Json(nullptr);
  return j;
}

Json to_json(const SweepResult& res) {
  Json rows = Json::array();
  for (const auto& row : res.rows) rows.push_back(to_json(row));
  return Json{{"m_max", res.options.m_max},
              {"t_max", res.options.t_max},
              {"seed", res.options.seed},
              {"prime", res.options.prime},
              {"retries", res.options.retries},
              {"probe_samples", res.options.probe_samples},
              {"cells", res.rows.size()},
              {"all_pass", res.all_pass},
              {"rows", rows}};
}

std::string render_record_line(const RunRecord& rec) {
  Json j{{"schema_version", rec.schema_version},
         {"command", rec.command},
         {"parameters", rec.parameters},
         {"started_at", rec.started_at},
         {"finished_at", rec.finished_at},
         {"elapsed_ms", rec.elapsed_ms},
         {"payload", rec.payload}};
  return j.dump();
}

RunRecord parse_record_line(const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw PostlabError("run record line is not a JSON object");
  RunRecord rec;
  rec.schema_version = j.value("schema_version", "");
  if (rec.schema_version != kRecordSchemaVersion)
    throw PostlabError("unsupported run record schema version '" +
                       rec.schema_version + "'");
  rec.command = j.value("command", "");
  rec.parameters = j.value("parameters", Json::object());
  rec.started_at = j.value("started_at", "");
  rec.finished_at = j.value("finished_at", "");
  rec.elapsed_ms = j.value("elapsed_ms", i64{0});
  rec.payload = j.value("payload", Json());
  return rec;
}

std::string iso8601_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json normalized(Json doc) {
  if (doc.is_object()) {
    doc.erase("started_at");
    doc.erase("finished_at");
    doc.erase("elapsed_ms");
    for (auto& [key, value] : doc.items()) value = normalized(value);
  } else if (doc.is_array()) {
    for (auto& value : doc) value = normalized(value);
  }
  return doc;
}

}  // namespace postlab
