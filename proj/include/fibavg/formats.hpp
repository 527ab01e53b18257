#pragma once

// Stable text formats.
//
//   hit stream (jsonl)  {"n":24,"kind":"fib"}         one object per line
//   b-file              "k a(k)"                     1-based k, no header
//   hits csv            "n,kind" header, then rows
//   pairs csv           "n,t" header, then rows
//   pairs jsonl         {"n":6479,"t":1}
//   checkpoint          one JSON document, schema_version 1:
//     {"schema_version":1,"kind":"fib","lo":1,"hi":100,"next_n":65,"hits":[1,2,24,48]}

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "fibavg/scanner.hpp"

namespace fibavg {

enum class OutputFormat { human, jsonl, csv, bfile };

std::optional<OutputFormat> parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);

std::string to_jsonl(const Hit& hit);
std::string to_jsonl(const PairHit& pair);

/// Streams hits in one format, numbering b-file lines from 1.
class HitWriter {
 public:
  HitWriter(std::ostream& out, OutputFormat format);

  void write(const Hit& hit);

 private:
  std::ostream& out_;
  OutputFormat format_;
  std::uint64_t count_ = 0;
};

/// Streams pair hits; bfile is not a valid pair format.
class PairWriter {
 public:
  PairWriter(std::ostream& out, OutputFormat format);

  void write(const PairHit& pair);

 private:
  std::ostream& out_;
  OutputFormat format_;
  bool header_written_ = false;
};

std::string to_json(const ScanCheckpoint& checkpoint);

/// Parses and validates a checkpoint document. Throws checkpoint_error.
ScanCheckpoint checkpoint_from_json(std::string_view text);

/// Rejects a checkpoint that belongs to a different scan.
void require_resumable(const ScanCheckpoint& checkpoint, SequenceKind kind, Index lo, Index hi);

/// Writes through a temporary file and a rename, so a reader never sees a
/// partial document. Throws io_error.
void save_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& checkpoint);

/// Throws io_error if unreadable, checkpoint_error if malformed.
ScanCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace fibavg
