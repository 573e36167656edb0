#ifndef POSTLAB_RECORDS_HPP
#define POSTLAB_RECORDS_HPP

#include <json.hpp>
#include <string>

#include "postlab/certify.hpp"
#include "postlab/sweep.hpp"

namespace postlab {

using Json = nlohmann::json;

inline constexpr const char* kRecordSchemaVersion = "1";

/* One line of the append-only JSONL run log.  `parameters` echoes the
   invocation, `payload` is the structured result of whatever command
   produced the record. */
struct RunRecord {
  std::string schema_version = kRecordSchemaVersion;
  std::string command;
  Json parameters = Json::object();
  std::string started_at;   /* ISO 8601, UTC */
  std::string finished_at;  /* ISO 8601, UTC */
  i64 elapsed_ms = 0;
  Json payload;
};

Json to_json(const Certificate& c);
Json to_json(const CellReport& r);
Json to_json(const ProbeResult& p);
Json to_json(const WitnessConfig& w);  /* counts and checks; geometry stays out */
Json to_json(const SweepRow& row);
Json to_json(const SweepResult& res);

std::string render_record_line(const RunRecord& rec);
RunRecord parse_record_line(const std::string& line);

/* Current wall-clock time as an ISO 8601 UTC stamp. */
std::string iso8601_now();

/* Strips the volatile fields (timestamps and elapsed times) everywhere in
   the document, so two runs of the same command compare byte for byte. */
Json normalized(Json doc);

}  // namespace postlab

#endif
