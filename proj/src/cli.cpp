#include "fibavg/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibavg/arith_primes.hpp"
#include "fibavg/errors.hpp"
#include "fibavg/families.hpp"
#include "fibavg/formats.hpp"
#include "fibavg/identity_lab.hpp"
#include "fibavg/ranks.hpp"
#include "fibavg/scanner.hpp"
#include "fibavg/wss_scan.hpp"

namespace fibavg::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Config {
  unsigned workers = 1;
  OutputFormat format = OutputFormat::human;
};

unsigned default_workers() {
  if (const char* env = std::getenv("FIBAVG_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0 || v > 4096)
      throw precondition_error("FIBAVG_WORKERS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

OutputFormat pick_format(const std::string& requested, OutputFormat fallback,
                         std::initializer_list<OutputFormat> allowed) {
  if (requested.empty()) return fallback;
  const auto f = parse_format(requested);
  for (OutputFormat a : allowed)
    if (f == a) return a;
  throw precondition_error("format '" + requested + "' is not supported by this command");
}

void require_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw precondition_error("--from must not exceed --to");
}

// "LO:HI" or "LO..HI".
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  std::size_t sep = text.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = text.find(':');
    skip = 1;
  }
  if (sep == std::string::npos) throw precondition_error("range must look like LO:HI");
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw precondition_error("range bounds must be nonnegative integers");
    try {
      return static_cast<std::uint64_t>(std::stoull(s));
    } catch (const std::out_of_range&) {
      throw precondition_error("range bound out of range");
    }
  };
  const auto lo = number(text.substr(0, sep));
  const auto hi = number(text.substr(sep + skip));
  require_range(lo, hi);
  return {lo, hi};
}

int print_family(std::ostream& out, const std::vector<FamilyMember>& members, OutputFormat fmt) {
  bool all_ok = true;
  for (const auto& m : members) {
    all_ok = all_ok && m.verified;
    if (fmt == OutputFormat::jsonl) {
      ordered_json j;
      j["theorem"] = static_cast<int>(m.theorem);
      j["n"] = m.n;
      j["alpha"] = m.alpha;
      j["beta"] = m.beta;
      j["gamma"] = m.gamma;
      j["verified"] = m.verified;
      out << j.dump() << '\n';
    } else {
      out << m.n << " alpha=" << m.alpha << " beta=" << m.beta << " gamma=" << m.gamma << ' '
          << (m.verified ? "verified" : "FAILED") << '\n';
    }
  }
  return all_ok ? ok : violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* stop) {
  CLI::App app{"Averages of Fibonacci and Lucas numbers: hits, audits, ranks and identities",
               "fibavg"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned workers_flag = 0;
  std::string format_flag;
  app.add_option("--workers", workers_flag, "Worker threads (default: FIBAVG_WORKERS or all cores)")
      ->check(CLI::Range(1u, 4096u));
  app.add_option("--format", format_flag, "Output format: human, jsonl, csv or bfile")
      ->check(CLI::IsMember({"human", "jsonl", "csv", "bfile"}));

  // hit
  auto* hit_cmd = app.add_subcommand("hit", "Is the average of the first n terms an integer?");
  std::uint64_t hit_n = 0;
  bool hit_lucas = false;
  hit_cmd->add_option("n", hit_n, "Index n >= 1")->required()->check(CLI::Range(std::uint64_t{1}, Modulus::max_value));
  hit_cmd->add_flag("--lucas", hit_lucas, "Use the Lucas sequence");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "List every hit in a range");
  std::uint64_t scan_from = 0, scan_to = 0, stop_after = 0, block_size = std::uint64_t{1} << 16;
  bool scan_lucas = false, progress = false;
  std::string checkpoint_path;
  scan_cmd->add_option("--from", scan_from, "First index")->required();
  scan_cmd->add_option("--to", scan_to, "Last index")->required();
  scan_cmd->add_flag("--lucas", scan_lucas, "Use the Lucas sequence");
  scan_cmd->add_option("--checkpoint", checkpoint_path, "Resume from and save progress to this file");
  scan_cmd->add_option("--stop-after", stop_after, "Pause at the first block boundary past this index");
  scan_cmd->add_option("--block-size", block_size, "Indices per checkpoint block")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  scan_cmd->add_flag("--progress", progress, "Report progress on stderr");

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "Find n with n and n+t both hits");
  std::uint64_t pair_t = 1, pair_from = 0, pair_to = 0;
  pairs_cmd->add_option("--t", pair_t, "Offset t >= 1")->required()->check(CLI::PositiveNumber);
  pairs_cmd->add_option("--from", pair_from, "First n")->required();
  pairs_cmd->add_option("--to", pair_to, "Last n")->required();

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "Check the prime and square-free claims");
  audit_cmd->require_subcommand(1);
  auto* audit_odd = audit_cmd->add_subcommand("odd-primes", "No odd prime is a Fibonacci hit");
  auto* audit_sqf = audit_cmd->add_subcommand("squarefree", "Odd Fibonacci hits are square-free");
  std::uint64_t audit_to = 0;
  audit_odd->add_option("--to", audit_to, "Upper bound")->required();
  audit_sqf->add_option("--to", audit_to, "Upper bound")->required();

  // family
  auto* family_cmd = app.add_subcommand("family", "Generate and verify constructive families");
  int theorem = 0;
  std::optional<unsigned> alpha_max, alpha, beta, gamma;
  std::optional<std::uint64_t> max_value;
  family_cmd->add_option("--theorem", theorem, "33, 35 (Fibonacci) or 36 (Lucas)")
      ->required()
      ->check(CLI::IsMember({33, 35, 36}));
  family_cmd->add_option("--alpha-max", alpha_max, "With --theorem 33: emit alpha = 0..A");
  family_cmd->add_option("--alpha", alpha, "Exponent alpha >= 0");
  family_cmd->add_option("--beta", beta, "Exponent beta >= 0");
  family_cmd->add_option("--gamma", gamma, "Exponent gamma >= 0");
  family_cmd->add_option("--max-value", max_value, "Emit every member with n <= V");

  // tower
  auto* tower_cmd = app.add_subcommand("tower", "Verify the tower 2, F_6, F_24, ...");
  unsigned tower_depth = 1;
  tower_cmd->add_option("--depth", tower_depth, "Requested depth >= 1")->required()->check(CLI::PositiveNumber);

  // ranks
  auto* rank_cmd = app.add_subcommand("rank", "Rank of apparition of m");
  auto* pisano_cmd = app.add_subcommand("pisano", "Pisano period of m");
  std::uint64_t rank_m = 0;
  rank_cmd->add_option("m", rank_m, "Modulus m >= 2")->required();
  pisano_cmd->add_option("m", rank_m, "Modulus m >= 2")->required();
  auto* lrank_cmd = app.add_subcommand("lucas-rank", "Lucas rank of an odd prime power");
  std::uint64_t lrank_p = 0;
  unsigned lrank_r = 1;
  lrank_cmd->add_option("p", lrank_p, "Odd prime p")->required();
  lrank_cmd->add_option("--power", lrank_r, "Exponent r >= 1")->check(CLI::PositiveNumber);

  // wss
  auto* wss_cmd = app.add_subcommand("wss", "Search for Wall-Sun-Sun primes");
  std::uint64_t wss_from = 0, wss_to = 0;
  bool emit_all = false;
  wss_cmd->add_option("--from", wss_from, "First candidate")->required();
  wss_cmd->add_option("--to", wss_to, "Last candidate, below 2^31")->required();
  wss_cmd->add_flag("--emit-all", emit_all, "Emit a record for every prime tested");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run identity checks and report as JSON");
  std::string identity_name, range_text;
  std::optional<std::uint64_t> samples;
  std::uint64_t max_index = 1000000000000ULL, seed = 20240601;
  verify_cmd->add_option("--identity", identity_name, "Identity id, or 'all'")->required();
  verify_cmd->add_option("--range", range_text, "Exhaustive range LO:HI");
  verify_cmd->add_option("--samples", samples, "Random samples instead of a range");
  verify_cmd->add_option("--max-index", max_index, "Largest sampled index");
  verify_cmd->add_option("--seed", seed, "Sampling seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "fibavg: " << e.what() << "\n" << "Run with --help for usage.\n";
    return usage;
  }

  try {
    Config cfg;
    cfg.workers = workers_flag ? workers_flag : default_workers();
    constexpr auto human = OutputFormat::human;
    constexpr auto jsonl = OutputFormat::jsonl;

    if (hit_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const auto kind = hit_lucas ? SequenceKind::lucas : SequenceKind::fib;
      const bool hit = is_hit(kind, hit_n);
      if (cfg.format == jsonl) {
        ordered_json j;
        j["n"] = hit_n;
        j["kind"] = std::string(to_string(kind));
        j["hit"] = hit;
        out << j.dump() << '\n';
      } else {
        out << (hit ? "yes" : "no") << '\n';
      }
      return ok;
    }

    if (scan_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human,
                               {human, jsonl, OutputFormat::csv, OutputFormat::bfile});
      const auto kind = scan_lucas ? SequenceKind::lucas : SequenceKind::fib;
      ScanCheckpoint state = start_scan(kind, scan_from, scan_to);
      const std::filesystem::path cp_path = checkpoint_path;
      if (!checkpoint_path.empty() && std::filesystem::exists(cp_path)) {
        state = load_checkpoint(cp_path);
        require_resumable(state, kind, scan_from, scan_to);
        if (progress) err << "resuming at n=" << state.next_n << '\n';
      }
      HitWriter writer(out, cfg.format);
      for (const Hit& h : state.hits) writer.write(h);

      ScanOptions opts;
      opts.workers = cfg.workers;
      opts.block_size = block_size;
      opts.on_hit = [&](const Hit& h) { writer.write(h); };
      opts.on_block = [&](const ScanCheckpoint& s) {
        if (!checkpoint_path.empty()) save_checkpoint(cp_path, s);
        if (progress) err << "scanned through " << s.next_n - 1 << ", hits " << s.hits.size() << '\n';
      };
      opts.should_stop = [&] {
        if (stop && stop->load()) return true;
        return stop_after != 0 && state.next_n > stop_after;
      };
      scan(state, opts);
      out.flush();
      if (!checkpoint_path.empty()) save_checkpoint(cp_path, state);
      if (!state.done()) {
        err << "scan paused before n=" << state.next_n;
        if (!checkpoint_path.empty()) err << "; resume with --checkpoint " << checkpoint_path;
        err << '\n';
        return interrupted;
      }
      return ok;
    }

    if (pairs_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl, OutputFormat::csv});
      require_range(pair_from, pair_to);
      PairWriter writer(out, cfg.format);
      for (const PairHit& p : pair_scan(pair_t, pair_from, pair_to, cfg.workers)) writer.write(p);
      return ok;
    }

    if (audit_odd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const auto report = odd_prime_audit(audit_to, cfg.workers);
      if (cfg.format == jsonl) {
        ordered_json j;
        j["audit"] = "odd-primes";
        j["to"] = report.hi;
        j["primes_checked"] = report.primes_checked;
        j["violations"] = report.violations;
        out << j.dump() << '\n';
      } else {
        out << "odd primes checked: " << report.primes_checked << '\n'
            << "violations: " << report.violations.size() << '\n';
        for (auto p : report.violations) out << "violation: " << p << '\n';
      }
      return report.violations.empty() ? ok : violation;
    }

    if (audit_sqf->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const auto report = squarefree_audit(audit_to, cfg.workers);
      for (const auto& e : report.odd_hits) {
        if (cfg.format == jsonl) {
          ordered_json j;
          j["n"] = e.n;
          j["factors"] = ordered_json::array();
          for (const auto& [p, k] : e.factorization.factors) j["factors"].push_back({p, k});
          j["squarefree"] = e.squarefree;
          out << j.dump() << '\n';
        } else {
          out << e.n << " = " << to_string(e.factorization)
              << (e.squarefree ? "" : "  NOT square-free") << '\n';
        }
      }
      if (cfg.format == jsonl) {
        ordered_json j;
        j["audit"] = "squarefree";
        j["to"] = report.hi;
        j["odd_hits"] = report.odd_hits.size();
        j["violations"] = report.violations;
        out << j.dump() << '\n';
      } else {
        out << "odd hits: " << report.odd_hits.size() << '\n'
            << "violations: " << report.violations.size() << '\n';
      }
      return report.violations.empty() ? ok : violation;
    }

    if (family_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const auto which = static_cast<FamilyTheorem>(theorem);
      if (max_value) return print_family(out, family_members(which, *max_value), cfg.format);
      if (which == FamilyTheorem::thm33) {
        if (!alpha_max) throw precondition_error("theorem 33 needs --alpha-max or --max-value");
        return print_family(out, family_thm33(*alpha_max), cfg.format);
      }
      if (!alpha || !beta || !gamma)
        throw precondition_error("theorems 35 and 36 need --alpha, --beta and --gamma, or --max-value");
      const auto member = which == FamilyTheorem::thm35 ? family_thm35(*alpha, *beta, *gamma)
                                                         : family_thm36(*alpha, *beta, *gamma);
      return print_family(out, {member}, cfg.format);
    }

    if (tower_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const Tower t = tower(tower_depth);
      bool all_ok = true;
      for (const auto& e : t.elements) {
        all_ok = all_ok && e.divides_f12v && e.divides_f3v;
        if (cfg.format == jsonl) {
          ordered_json j;
          j["depth"] = e.depth;
          j["value"] = e.value;
          j["divides_f12v"] = e.divides_f12v;
          j["divides_f3v"] = e.divides_f3v;
          out << j.dump() << '\n';
        } else {
          out << "depth " << e.depth << ": " << e.value << " | F_" << 12 * e.value << ' '
              << (e.divides_f12v ? "yes" : "NO") << ", | F_" << 3 * e.value << ' '
              << (e.divides_f3v ? "yes" : "NO") << '\n';
        }
      }
      if (cfg.format == jsonl) {
        ordered_json j;
        j["requested_depth"] = t.requested_depth;
        j["achieved_depth"] = t.achieved_depth();
        j["truncated"] = t.truncated;
        out << j.dump() << '\n';
      } else if (t.truncated) {
        out << "depth " << t.achieved_depth() + 1 << ": out of range (F_"
            << 3 * t.elements.back().value << " exceeds 64 bits)\n";
      }
      return all_ok ? ok : violation;
    }

    if (rank_cmd->parsed() || pisano_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const bool is_rank = rank_cmd->parsed();
      const std::uint64_t v = is_rank ? rank_of_apparition(rank_m) : pisano_period(rank_m);
      if (cfg.format == jsonl) {
        ordered_json j;
        j["m"] = rank_m;
        j[is_rank ? "rho" : "pisano"] = v;
        out << j.dump() << '\n';
      } else {
        out << v << '\n';
      }
      return ok;
    }

    if (lrank_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      const auto sigma = lucas_rank(lrank_p, lrank_r);
      if (cfg.format == jsonl) {
        ordered_json j;
        j["p"] = lrank_p;
        j["r"] = lrank_r;
        j["sigma"] = sigma ? ordered_json(*sigma) : ordered_json(nullptr);
        out << j.dump() << '\n';
      } else if (sigma) {
        out << *sigma << '\n';
      } else {
        out << "none\n";
      }
      return ok;
    }

    if (wss_cmd->parsed()) {
      cfg.format = pick_format(format_flag, human, {human, jsonl});
      require_range(wss_from, wss_to);
      auto print = [&](const WssRecord& r) {
        if (cfg.format == jsonl) {
          ordered_json j;
          j["p"] = r.p;
          j["eps"] = r.eps;
          j["residue"] = r.residue;
          out << j.dump() << '\n';
        } else {
          out << r.p << ' ' << r.eps << ' ' << r.residue << (r.is_witness() ? " WITNESS" : "")
              << '\n';
        }
      };
      std::function<void(const WssRecord&)> on_record;
      if (emit_all) on_record = print;
      const auto result = wss_scan(wss_from, wss_to, cfg.workers, on_record);
      if (!emit_all)
        for (const auto& w : result.witnesses) print(w);
      if (cfg.format == jsonl) {
        ordered_json j;
        j["from"] = result.lo;
        j["to"] = result.hi;
        j["primes_tested"] = result.primes_tested;
        j["witnesses"] = ordered_json::array();
        for (const auto& w : result.witnesses) j["witnesses"].push_back(w.p);
        out << j.dump() << '\n';
      } else {
        out << "primes tested: " << result.primes_tested << '\n'
            << "witnesses: " << result.witnesses.size() << '\n';
      }
      return result.witnesses.empty() ? ok : violation;
    }

    if (verify_cmd->parsed()) {
      cfg.format = pick_format(format_flag, jsonl, {human, jsonl});
      std::vector<IdentityId> ids;
      if (identity_name == "all") {
        ids.assign(all_identities.begin(), all_identities.end());
      } else if (const auto id = parse_identity(identity_name)) {
        ids.push_back(*id);
      } else {
        throw precondition_error("unknown identity '" + identity_name + "'");
      }
      if (range_text.empty() == !samples.has_value())
        throw precondition_error("verify needs exactly one of --range or --samples");
      std::optional<std::pair<std::uint64_t, std::uint64_t>> range;
      if (!range_text.empty()) range = parse_range(range_text);

      bool all_ok = true;
      for (IdentityId id : ids) {
        const auto report = range ? run_exhaustive(id, range->first, range->second)
                                  : run_sampled(id, *samples, max_index, seed);
        all_ok = all_ok && report.passed();
        if (cfg.format == jsonl) {
          out << to_json(report) << '\n';
        } else {
          out << to_string(id) << ' ' << (report.sampled ? "sampled" : "exhaustive") << " ["
              << report.lo << ", " << report.hi << "]: " << report.checked << " checked, "
              << report.failures.size() << " failures\n";
        }
      }
      return all_ok ? ok : violation;
    }
  } catch (const precondition_error& e) {
    err << "fibavg: " << e.what() << '\n';
    return usage;
  } catch (const fibavg::overflow_error& e) {
    err << "fibavg: " << e.what() << '\n';
    return usage;
  } catch (const checkpoint_error& e) {
    err << "fibavg: " << e.what() << '\n';
    return io;
  } catch (const io_error& e) {
    err << "fibavg: " << e.what() << '\n';
    return io;
  }
  return usage;
}

}  // namespace fibavg::cli
