#include "fibavg/formats.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fibavg/errors.hpp"

namespace fibavg {

using ordered_json = nlohmann::ordered_json;

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "human") return OutputFormat::human;
  if (name == "jsonl") return OutputFormat::jsonl;
  if (name == "csv") return OutputFormat::csv;
  if (name == "bfile") return OutputFormat::bfile;
  return std::nullopt;
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::human: return "human";
    case OutputFormat::jsonl: return "jsonl";
    case OutputFormat::csv: return "csv";
    case OutputFormat::bfile: return "bfile";
  }
  return "human";
}

std::string to_jsonl(const Hit& hit) {
  ordered_json j;
  j["n"] = hit.n;
  j["kind"] = std::string(to_string(hit.kind));
  return j.dump();
}

std::string to_jsonl(const PairHit& pair) {
  ordered_json j;
  j["n"] = pair.n;
  j["t"] = pair.t;
  return j.dump();
}

HitWriter::HitWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {
  if (format_ == OutputFormat::csv) out_ << "n,kind\n";
}

void HitWriter::write(const Hit& hit) {
  ++count_;
  switch (format_) {
    case OutputFormat::human: out_ << hit.n << '\n'; break;
    case OutputFormat::jsonl: out_ << to_jsonl(hit) << '\n'; break;
    case OutputFormat::csv: out_ << hit.n << ',' << to_string(hit.kind) << '\n'; break;
    case OutputFormat::bfile: out_ << count_ << ' ' << hit.n << '\n'; break;
  }
}

PairWriter::PairWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {
  if (format_ == OutputFormat::bfile) throw precondition_error("pairs have no b-file format");
  if (format_ == OutputFormat::csv) out_ << "n,t\n";
}

void PairWriter::write(const PairHit& pair) {
  switch (format_) {
    case OutputFormat::human: out_ << pair.n << ' ' << pair.n + pair.t << '\n'; break;
    case OutputFormat::jsonl: out_ << to_jsonl(pair) << '\n'; break;
    case OutputFormat::csv: out_ << pair.n << ',' << pair.t << '\n'; break;
    case OutputFormat::bfile: break;
  }
}

std::string to_json(const ScanCheckpoint& checkpoint) {
  ordered_json j;
  j["schema_version"] = checkpoint.schema_version;
  j["kind"] = std::string(to_string(checkpoint.kind));
  j["lo"] = checkpoint.lo;
  j["hi"] = checkpoint.hi;
  j["next_n"] = checkpoint.next_n;
  j["hits"] = ordered_json::array();
  for (const Hit& h : checkpoint.hits) j["hits"].push_back(h.n);
  return j.dump();
}

ScanCheckpoint checkpoint_from_json(std::string_view text) {
  using reason = checkpoint_error::reason;
  ScanCheckpoint cp;
  try {
    const auto j = nlohmann::json::parse(text);
    cp.schema_version = j.at("schema_version").get<int>();
    if (cp.schema_version != ScanCheckpoint::current_schema)
      throw checkpoint_error(reason::schema_mismatch, "unsupported checkpoint schema version");
    const auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw checkpoint_error(reason::corrupt, "unknown sequence kind in checkpoint");
    cp.kind = *kind;
    cp.lo = j.at("lo").get<Index>();
    cp.hi = j.at("hi").get<Index>();
    cp.next_n = j.at("next_n").get<Index>();
    for (const auto& n : j.at("hits")) cp.hits.push_back({n.get<Index>(), cp.kind});
  } catch (const nlohmann::json::exception& e) {
    throw checkpoint_error(reason::corrupt, std::string("malformed checkpoint: ") + e.what());
  }
  validate_checkpoint(cp);
  return cp;
}

void require_resumable(const ScanCheckpoint& checkpoint, SequenceKind kind, Index lo, Index hi) {
  using reason = checkpoint_error::reason;
  if (checkpoint.kind != kind)
    throw checkpoint_error(reason::kind_mismatch, "checkpoint was written by a scan of another kind");
  if (checkpoint.lo != lo || checkpoint.hi != hi)
    throw checkpoint_error(reason::range_mismatch, "checkpoint covers a different range");
}

void save_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& checkpoint) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(checkpoint) << '\n';
    out.flush();
    if (!out) throw io_error("cannot write checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

ScanCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_json(buf.str());
}

}  // namespace fibavg
