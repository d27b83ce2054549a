#include "scalescope/cli.hpp"

#include "scalescope/downgrade.hpp"
#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"
#include "scalescope/grid.hpp"
#include "scalescope/tokenize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace scalescope::cli {
namespace fs = std::filesystem;

namespace {

struct InputFailure : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputFailure("cannot read '" + path + "'");
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputFailure("cannot write '" + path.string() + "'");
  out << content;
}

std::string manifest_line(const RunManifest& m) { return "# manifest\t" + m.to_json().dump() + "\n"; }

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

struct Loaded {
  std::shared_ptr<const Message> message;
  std::string mode;
};

Loaded load_message(const std::string& path, const std::string& mode) {
  const std::string bytes = read_file(path);
  if (bytes.empty()) throw InputFailure("empty message");
  std::string resolved = mode;
  if (mode == "auto") resolved = is_valid_utf8(bytes) ? "text" : "bytes";
  if (resolved == "text") return {std::make_shared<const Message>(Message::from_text(bytes)), resolved};
  if (resolved == "bytes") {
    return {std::make_shared<const Message>(Message::from_bytes(bytes)), resolved};
  }
  throw InvalidArgument("unknown mode '" + mode + "'");
}

struct FileAnalysis {
  std::string path;
  std::string mode;
  std::vector<ScaleReport> reports;
  std::optional<SymbolProfile> fundamental;
  std::string error;
};

FileAnalysis analyze_file(const std::string& path, const RunManifest& m, std::size_t threads) {
  FileAnalysis fa;
  fa.path = path;
  try {
    const auto loaded = load_message(path, m.mode);
    fa.mode = loaded.mode;
    auto cfg = m.search_config();
    cfg.threads = threads;
    for (const auto& name : m.scales) {
      const auto scale = ScaleSelector::parse(name);
      if (scale.kind == ScaleSelector::Kind::fundamental) {
        auto result = minimize_entropy(loaded.message, cfg);
        fa.reports.push_back(report_from_profile(result.profile, scale.name()));
        fa.fundamental = std::move(result.profile);
      } else {
        fa.reports.push_back(scale_report(tokenize(loaded.message, scale), scale.name()));
      }
    }
  } catch (const InvariantViolation&) {
    throw;
  } catch (const Error& e) {
    fa.reports.clear();
    fa.error = e.what();
  }
  return fa;
}

Json analysis_to_json(const FileAnalysis& fa) {
  Json j;
  j["path"] = fa.path;
  if (!fa.error.empty()) {
    j["error"] = fa.error;
    return j;
  }
  j["mode"] = fa.mode;
  Json reports = Json::array();
  for (const auto& r : fa.reports) reports.push_back(report_to_json(r));
  j["reports"] = std::move(reports);
  return j;
}

std::string render_analyses(const RunManifest& m, const std::vector<FileAnalysis>& all) {
  if (m.format == "tsv") {
    std::string out = manifest_line(m) + tsv_header();
    for (const auto& fa : all) {
      if (!fa.error.empty()) {
        out += fa.path + "\terror\t" + fa.error + "\n";
        continue;
      }
      for (const auto& r : fa.reports) out += tsv_row(fa.path, r);
    }
    return out;
  }
  Json doc;
  doc["manifest"] = m.to_json();
  Json results = Json::array();
  for (const auto& fa : all) results.push_back(analysis_to_json(fa));
  doc["results"] = std::move(results);
  return dump(doc);
}

bool keep_utf8(const std::string& mode) { return mode != "bytes"; }

Json with_manifest(Json doc, const RunManifest& m) {
  doc["manifest"] = m.to_json();
  return doc;
}

void check_format(const RunManifest& m) {
  if (m.format != "json" && m.format != "tsv") {
    throw InvalidArgument("unknown format '" + m.format + "'");
  }
}

} // namespace

Json RunManifest::to_json() const {
  Json j;
  j["tool"] = tool_name;
  j["version"] = tool_version;
  j["command"] = command;
  j["inputs"] = inputs;
  j["scales"] = scales;
  j["mode"] = mode;
  Json cfg;
  cfg["seed"] = seed;
  cfg["restarts"] = restarts;
  cfg["max_passes"] = max_passes;
  cfg["oracle_cap"] = oracle_cap;
  cfg["acceptance"] = acceptance;
  if (target_S) cfg["target_S"] = *target_S;
  cfg["oracle"] = oracle;
  cfg["dihedral"] = dihedral;
  j["config"] = std::move(cfg);
  j["format"] = format;
  return j;
}

SearchConfig RunManifest::search_config() const {
  SearchConfig cfg;
  cfg.rng_seed = seed;
  cfg.restarts = restarts;
  cfg.max_passes = max_passes;
  cfg.acceptance = parse_acceptance(acceptance);
  if (command == "search" && !scales.empty()) {
    cfg.initializations.clear();
    for (const auto& s : scales) cfg.initializations.push_back(ScaleSelector::parse(s));
  }
  return cfg;
}

std::string tsv_header() {
  return "path\tscale\tL_units\tscope_L\tdiversity_D\tentropy_h\tspecific_d\n";
}

std::string tsv_row(const std::string& path, const ScaleReport& r) {
  return path + "\t" + r.scale_name + "\t" + std::to_string(r.total_units) + "\t" +
         std::to_string(r.scope) + "\t" + std::to_string(r.diversity) + "\t" +
         format_tsv_float(r.entropy) + "\t" + format_tsv_float(r.specific_diversity) + "\n";
}

int cmd_analyze(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto& m = opts.manifest;
  check_format(m);
  std::vector<FileAnalysis> all;
  int code = exit_ok;
  for (const auto& path : m.inputs) {
    all.push_back(analyze_file(path, m, opts.jobs));
    const auto& fa = all.back();
    if (!fa.error.empty()) {
      err << path << ": " << fa.error << "\n";
      code = exit_input;
    } else if (fa.fundamental && !opts.out_dir.empty()) {
      const auto name = fs::path(path).filename().string() + ".fundamental.profile.json";
      write_file(fs::path(opts.out_dir) / name,
                 dump(with_manifest(profile_to_json(*fa.fundamental, "fundamental",
                                                    keep_utf8(fa.mode)),
                                    m)));
    }
  }
  out << render_analyses(m, all);
  return code;
}

int cmd_search(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto& m = opts.manifest;
  if (m.inputs.size() != 1) throw InvalidArgument("search takes exactly one input");
  const auto& path = m.inputs.front();
  Loaded loaded;
  try {
    loaded = load_message(path, m.mode);
  } catch (const InputFailure& e) {
    err << path << ": " << e.what() << "\n";
    return exit_input;
  }
  auto cfg = m.search_config();
  cfg.threads = opts.jobs;
  const auto result = minimize_entropy(loaded.message, cfg);
  const bool utf8 = keep_utf8(loaded.mode);

  Json doc;
  doc["manifest"] = m.to_json();
  doc["profile"] = profile_to_json(result.profile, "fundamental", utf8);
  Json s;
  s["initialization"] = result.initialization;
  s["restart"] = result.restart;
  s["initial_h"] = round_significant(result.initial_entropy);
  s["final_h"] = round_significant(result.entropy);
  s["passes"] = result.passes;
  s["accepted_moves"] = result.trace.size();
  s["evaluated_moves"] = result.evaluated;
  doc["search"] = std::move(s);

  if (m.oracle) {
    if (loaded.message->length() > m.oracle_cap) {
      err << path << ": message of " << loaded.message->length()
          << " units exceeds the oracle cap of " << m.oracle_cap << "\n";
      return exit_input;
    }
    const auto oracle = exhaustive_min_entropy(loaded.message, m.oracle_cap);
    if (result.entropy < oracle.entropy - 1e-9) {
      throw InvariantViolation("heuristic entropy below the exhaustive optimum");
    }
    Json o;
    o["entropy_h"] = round_significant(oracle.entropy);
    o["tilings"] = oracle.tilings;
    Json segs = Json::array();
    for (const auto& t : oracle.segmentation.segment_texts()) segs.push_back(escape_symbol(t, utf8));
    o["segments"] = std::move(segs);
    o["matches_heuristic"] = std::abs(result.entropy - oracle.entropy) <= 1e-9;
    doc["oracle"] = std::move(o);
  }

  if (!opts.out_dir.empty()) {
    const fs::path dir(opts.out_dir);
    const auto stem = fs::path(path).filename().string();
    write_file(dir / (stem + ".profile.json"),
               dump(with_manifest(profile_to_json(result.profile, "fundamental", utf8), m)));
    std::string segs = manifest_line(m) + "index\tstart\tsize\tsymbol\n";
    const auto& seg = result.segmentation;
    for (std::size_t i = 0; i < seg.size(); ++i) {
      segs += std::to_string(i) + "\t" + std::to_string(seg.segment_begin(i)) + "\t" +
              std::to_string(seg.segment_size(i)) + "\t" + escape_symbol(seg.segment_text(i), utf8) +
              "\n";
    }
    write_file(dir / (stem + ".segments.tsv"), segs);
    write_file(dir / (stem + ".trace.tsv"), manifest_line(m) +
                                                "pass\tkind\tposition\toffset\th_before\th_after\n" +
                                                format_trace(result.trace));
  }
  out << dump(doc);
  return exit_ok;
}

int cmd_downgrade(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto& m = opts.manifest;
  check_format(m);
  if (m.inputs.size() != 1) throw InvalidArgument("downgrade takes exactly one input");
  if (!m.target_S) throw InvalidArgument("downgrade needs a target point count");
  const auto& path = m.inputs.front();

  DowngradedProfile result;
  try {
    Json doc;
    try {
      doc = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("not JSON: ") + e.what());
    }
    if (doc.contains("symbols")) {
      result = downgrade_profile(profile_from_json(doc), *m.target_S);
    } else {
      result = downgrade_profile(downgraded_from_json(doc), *m.target_S);
    }
  } catch (const InputFailure& e) {
    err << path << ": " << e.what() << "\n";
    return exit_input;
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << "\n";
    return exit_input;
  }

  const std::string json = dump(with_manifest(downgraded_to_json(result), m));
  const std::string tsv = manifest_line(m) + downgraded_plot_tsv(result);
  if (!opts.out_dir.empty()) {
    const auto stem = fs::path(path).stem().string() + ".S" + std::to_string(*m.target_S);
    write_file(fs::path(opts.out_dir) / (stem + ".json"), json);
    write_file(fs::path(opts.out_dir) / (stem + ".tsv"), tsv);
  }
  out << (m.format == "tsv" ? tsv : json);
  return exit_ok;
}

int cmd_grid(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto& m = opts.manifest;
  check_format(m);
  if (m.inputs.empty() || m.inputs.size() > 2) {
    throw InvalidArgument("grid takes a grid file and an optional tiling file");
  }
  ScaleReport report;
  try {
    const Grid grid = parse_grid(read_file(m.inputs[0]));
    GridTiling tiling;
    std::string name = "cells";
    if (m.inputs.size() == 2) {
      tiling = parse_tiling(read_file(m.inputs[1]), grid);
      name = fs::path(m.inputs[1]).stem().string();
    } else {
      tiling = single_cell_tiling(grid);
    }
    report = grid_report(grid, tiling, name, ClassOptions{m.dihedral});
  } catch (const PartitionError& e) {
    err << "partition error: " << e.what() << "\n";
    return exit_input;
  } catch (const InputFailure& e) {
    err << e.what() << "\n";
    return exit_input;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_input;
  }

  std::string text;
  if (m.format == "tsv") {
    text = manifest_line(m) + tsv_header() + tsv_row(m.inputs[0], report);
  } else {
    Json doc;
    doc["manifest"] = m.to_json();
    doc["report"] = report_to_json(report);
    text = dump(doc);
  }
  if (!opts.out_dir.empty()) {
    write_file(fs::path(opts.out_dir) / (fs::path(m.inputs[0]).stem().string() + ".report." + m.format),
               text);
  }
  out << text;
  return exit_ok;
}

int cmd_corpus(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto& m = opts.manifest;
  check_format(m);
  if (m.inputs.size() != 1) throw InvalidArgument("corpus takes exactly one directory");
  const fs::path dir(m.inputs.front());
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    err << dir.string() << ": not a directory\n";
    return exit_input;
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<FileAnalysis> all(files.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::max<std::size_t>(opts.jobs, 1));
  const auto worker = [&](std::size_t w) {
    try {
      for (std::size_t i = next++; i < files.size(); i = next++) all[i] = analyze_file(files[i], m, 1);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t workers = std::clamp<std::size_t>(opts.jobs, 1, std::max<std::size_t>(files.size(), 1));
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  int code = exit_ok;
  for (const auto& fa : all) {
    if (!fa.error.empty()) {
      err << fa.path << ": " << fa.error << "\n";
      code = exit_input;
    }
  }
  const std::string text = render_analyses(m, all);
  if (!opts.out_dir.empty()) write_file(fs::path(opts.out_dir) / ("corpus." + m.format), text);
  out << text;
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale, scope and resolution accounting of discrete descriptions", "scalescope"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  Options opts;
  auto& m = opts.manifest;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> scales;

  const auto common = [&](CLI::App* sub, bool search_knobs) {
    sub->add_option("--format", m.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--out", opts.out_dir, "Directory for output artifacts");
    if (!search_knobs) return;
    sub->add_option("--mode", m.mode, "How input bytes become units")
        ->check(CLI::IsMember({"text", "bytes", "auto"}));
    sub->add_option("--seed", seed, "Random seed (default: $SCALESCOPE_SEED or 1)");
    sub->add_option("--restarts", m.restarts, "Search runs per initialization")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-passes", m.max_passes, "Pass cap per search run")
        ->check(CLI::PositiveNumber);
    sub->add_option("--oracle-cap", m.oracle_cap, "Longest message the exhaustive oracle accepts");
    sub->add_option("--acceptance", m.acceptance, "Move acceptance rule")
        ->check(CLI::IsMember({"strict", "equal"}));
    sub->add_option("--jobs", opts.jobs, "Worker threads; output does not depend on it")
        ->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "Report every file at every requested scale");
  analyze->add_option("files", m.inputs, "Input files")->required();
  analyze->add_option("--scale", scales, "chars, words, bits, ngram:N or fundamental (repeatable)");
  common(analyze, true);

  auto* search = app.add_subcommand("search", "Search the minimal-entropy symbol set of a file");
  search->add_option("file", m.inputs, "Input file")->required()->expected(1);
  search->add_option("--scale", scales, "Initialization scales (repeatable)");
  search->add_flag("--oracle", m.oracle, "Also run the exhaustive oracle");
  common(search, true);

  auto* downgrade_cmd = app.add_subcommand("downgrade", "Collapse a ranked profile to fewer points");
  downgrade_cmd->add_option("profile", m.inputs, "Profile JSON")->required()->expected(1);
  downgrade_cmd->add_option("-S,--target", m.target_S, "Point count")->required()->check(
      CLI::PositiveNumber);
  common(downgrade_cmd, false);

  auto* grid = app.add_subcommand("grid", "Report a 2D grid under a tiling");
  grid->add_option("files", m.inputs, "Grid file and optional tiling file")->required()->expected(1, 2);
  grid->add_flag("--dihedral", m.dihedral, "Match patterns up to rotation and reflection");
  common(grid, false);

  auto* corpus = app.add_subcommand("corpus", "Report every file of a directory");
  corpus->add_option("dir", m.inputs, "Corpus directory")->required()->expected(1);
  corpus->add_option("--scale", scales, "Scales (repeatable)");
  common(corpus, true);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    auto* chosen = app.get_subcommands().front();
    m.command = chosen->get_name();
    if (chosen == corpus && corpus->count("--format") == 0) m.format = "tsv";
    if (seed) {
      m.seed = *seed;
    } else if (const char* env = std::getenv("SCALESCOPE_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        m.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        err << "SCALESCOPE_SEED must be an unsigned integer\n";
        return exit_usage;
      }
    }
    if (chosen == analyze || chosen == corpus) {
      m.scales = scales.empty() ? std::vector<std::string>{"chars", "words"} : scales;
    } else if (chosen == search) {
      m.scales = scales.empty() ? std::vector<std::string>{"chars", "words"} : scales;
    }
    for (const auto& s : m.scales) {
      try {
        const auto sel = ScaleSelector::parse(s);
        if (chosen == search && (sel.kind == ScaleSelector::Kind::fundamental ||
                                 sel.kind == ScaleSelector::Kind::bits)) {
          throw InvalidArgument("scale '" + s + "' cannot start a search");
        }
      } catch (const InvalidArgument& e) {
        err << e.what() << "\n";
        return exit_usage;
      }
    }

    if (chosen == analyze) return cmd_analyze(opts, out, err);
    if (chosen == search) return cmd_search(opts, out, err);
    if (chosen == downgrade_cmd) return cmd_downgrade(opts, out, err);
    if (chosen == grid) return cmd_grid(opts, out, err);
    return cmd_corpus(opts, out, err);
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_input;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

} // namespace scalescope::cli
