#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "scriptdag/aggregation.hpp"
#include "scriptdag/baselines.hpp"
#include "scriptdag/dataset.hpp"
#include "scriptdag/dot_codec.hpp"
#include "scriptdag/errors.hpp"
#include "scriptdag/metrics.hpp"
#include "scriptdag/script_graph.hpp"

namespace fs = std::filesystem;
using namespace scriptdag;

namespace {

constexpr int kOk = 0;
constexpr int kDataFailure = 1;   // validation or metric-level problem
constexpr int kUsageFailure = 2;  // I/O, parse, or flag problem

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::optional<Corpus> load_corpus_or_complain(const fs::path& path) {
  try {
    return load_jsonl(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

bool write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

void emit_report(const EvalReport& report, const std::string& format, const fs::path& out_path) {
  std::string text = format == "json" ? report_to_json(report) + "\n" : report_to_tsv(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int cmd_validate(const fs::path& corpus_path, double threshold) {
  auto corpus = load_corpus_or_complain(corpus_path);
  if (!corpus) return kUsageFailure;

  nlohmann::ordered_json report;
  report["n_records"] = corpus->records.size();
  report["n_invalid"] = corpus->invalid.size();

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::size_t rejected = 0;
  for (const auto& rec : corpus->records) {
    nlohmann::ordered_json row;
    row["id"] = rec.id;
    if (rec.alt_edges) {
      double score = agreement_f1(rec).f1 * 100.0;
      bool kept = score >= threshold;
      row["agreement_f1"] = round2(score);
      row["kept"] = kept;
      if (!kept) ++rejected;
    } else {
      row["agreement_f1"] = nullptr;
      row["kept"] = true;
    }
    rows.push_back(std::move(row));
  }
  report["n_rejected"] = rejected;
  report["records"] = std::move(rows);

  nlohmann::ordered_json invalid = nlohmann::ordered_json::array();
  for (const auto& bad : corpus->invalid) {
    invalid.push_back({{"line", bad.line}, {"code", bad.code}, {"message", bad.message}});
  }
  report["invalid"] = std::move(invalid);

  nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
  for (const auto& warning : corpus->warnings) {
    warnings.push_back({{"line", warning.line}, {"id", warning.id}, {"message", warning.message}});
  }
  report["warnings"] = std::move(warnings);

  std::cout << report.dump(2) << "\n";
  return corpus->invalid.empty() ? kOk : kDataFailure;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

int cmd_stats(const fs::path& corpus_path, const std::string& format) {
  auto corpus = load_corpus_or_complain(corpus_path);
  if (!corpus) return kUsageFailure;
  if (!corpus->invalid.empty()) {
    std::cerr << "warning: skipped " << corpus->invalid.size() << " invalid record(s)\n";
  }
  auto stats = corpus_stats(*corpus);
  std::cout << (format == "csv" ? stats_to_csv(stats) : stats_to_json(stats) + "\n");
  return kOk;
}

// ---------------------------------------------------------------------------
// aggregate
// ---------------------------------------------------------------------------

int cmd_aggregate(const fs::path& scores_path, const std::string& policy, double tau,
                  const fs::path& out_path) {
  ScoresFile file;
  try {
    file = load_scores_json(scores_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageFailure;
  }

  AggregationConfig cfg;
  cfg.policy = policy == "threshold" ? EdgePolicy::Threshold : EdgePolicy::ArgmaxPair;
  cfg.tau = tau;

  ScriptGraph predicted = [&] {
    std::string scenario = file.scenario.empty() ? kUnspecifiedScenario : file.scenario;
    return predict_edges(file.events, file.scores, cfg, std::move(scenario));
  }();

  DotEmitOptions opts;
  opts.scenario_comment = true;
  opts.duration_comments = true;
  std::string dot = emit_dot(predicted, opts) + "\n";
  if (out_path.empty()) {
    std::cout << dot;
    return kOk;
  }
  return write_text(out_path, dot) ? kOk : kUsageFailure;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct NamedPrediction {
  std::string id;
  ScriptGraph graph;
  std::vector<std::string> notes;

  NamedPrediction(std::string id_, ScriptGraph graph_) : id(std::move(id_)), graph(std::move(graph_)) {}
};

std::vector<fs::path> dot_files_in(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".dot") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_eval(const fs::path& pred_path, const fs::path& gold_path, const std::string& metric,
             const std::string& convention, int ged_node_limit, std::size_t beam, int jobs,
             const std::string& format, const fs::path& out_path) {
  auto gold = load_corpus_or_complain(gold_path);
  if (!gold) return kUsageFailure;
  bool data_problem = false;
  if (!gold->invalid.empty()) {
    for (const auto& bad : gold->invalid) {
      std::cerr << "gold line " << bad.line << ": " << bad.message << "\n";
    }
    data_problem = true;
  }

  std::map<std::string, const CorpusRecord*> gold_by_id;
  for (const auto& rec : gold->records) {
    if (!gold_by_id.emplace(rec.id, &rec).second) {
      std::cerr << "gold id \"" << rec.id << "\" appears more than once\n";
      data_problem = true;
    }
  }

  std::vector<NamedPrediction> preds;
  std::error_code ec;
  if (fs::is_directory(pred_path, ec)) {
    for (const auto& file : dot_files_in(pred_path)) {
      std::ifstream in(file, std::ios::binary);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (!in && text.empty()) {
        std::cerr << "error: cannot read " << file.string() << "\n";
        return kUsageFailure;
      }
      try {
        auto [graph, diagnostics] = parse_lenient(text);
        NamedPrediction pred(file.stem().string(), std::move(graph));
        for (const auto& w : diagnostics.warnings) {
          pred.notes.push_back("dot " + w.code + " at line " + std::to_string(w.line) + ": " +
                               w.message);
        }
        preds.push_back(std::move(pred));
      } catch (const std::exception& e) {
        std::cerr << "pred \"" << file.stem().string() << "\": " << e.what() << "\n";
        data_problem = true;
      }
    }
  } else {
    auto pred_corpus = load_corpus_or_complain(pred_path);
    if (!pred_corpus) return kUsageFailure;
    for (const auto& bad : pred_corpus->invalid) {
      std::cerr << "pred line " << bad.line << ": " << bad.message << "\n";
      data_problem = true;
    }
    for (const auto& rec : pred_corpus->records) {
      preds.emplace_back(rec.id, record_graph(rec));
    }
  }

  // pair up by id, keeping gold corpus order for the report
  std::map<std::string, NamedPrediction*> pred_by_id;
  for (auto& pred : preds) {
    if (!pred_by_id.emplace(pred.id, &pred).second) {
      std::cerr << "pred id \"" << pred.id << "\" appears more than once\n";
      data_problem = true;
    }
  }
  for (const auto& pred : preds) {
    if (!gold_by_id.count(pred.id)) {
      std::cerr << "pred id \"" << pred.id << "\" has no gold record\n";
      data_problem = true;
    }
  }

  std::vector<ScoredPair> pairs;
  for (const auto& rec : gold->records) {
    auto it = pred_by_id.find(rec.id);
    if (it == pred_by_id.end()) {
      std::cerr << "gold id \"" << rec.id << "\" has no prediction\n";
      data_problem = true;
      continue;
    }
    std::vector<ScriptGraph> golds{record_graph(rec)};
    if (rec.alt_edges) golds.push_back(record_graph(rec, true));
    ScoredPair pair(rec.id, it->second->graph, std::move(golds));
    pair.notes = it->second->notes;
    pairs.push_back(std::move(pair));
  }

  ReportConfig cfg;
  cfg.edges = metric != "ged";
  cfg.ged = metric != "edges";
  cfg.prf.convention = convention == "paper-literal" ? Convention::PaperLiteral : Convention::Standard;
  cfg.ged_cfg.max_exact_nodes = ged_node_limit;
  cfg.approx_beam = beam;
  cfg.jobs = jobs;

  emit_report(corpus_report(pairs, cfg), format, out_path);
  return data_problem ? kDataFailure : kOk;
}

// ---------------------------------------------------------------------------
// baseline
// ---------------------------------------------------------------------------

int cmd_baseline(const fs::path& gold_path, const std::string& policy_name, double p_branch,
                 std::uint64_t seed, const std::string& metric, int ged_node_limit,
                 std::size_t beam, int jobs, const std::string& format, const fs::path& out_path) {
  auto corpus = load_corpus_or_complain(gold_path);
  if (!corpus) return kUsageFailure;
  if (!corpus->invalid.empty()) {
    std::cerr << "warning: skipped " << corpus->invalid.size() << " invalid record(s)\n";
  }

  RandomPolicy policy;
  policy.kind = policy_name == "random-dag" ? RandomPolicy::Kind::Dag : RandomPolicy::Kind::Chain;
  policy.p_branch = p_branch;
  policy.seed = seed;

  BaselineEvalConfig cfg;
  cfg.edges = metric != "ged";
  cfg.ged = metric != "edges";
  cfg.ged_cfg.max_exact_nodes = ged_node_limit;
  cfg.approx_beam = beam;
  cfg.jobs = jobs;

  emit_report(random_baseline_eval(*corpus, policy, cfg), format, out_path);
  return kOk;
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

int cmd_convert(const std::string& from, const std::string& to, const fs::path& in_path,
                const fs::path& out_path) {
  if (from == to) {
    std::cerr << "error: --from and --to must differ\n";
    return kUsageFailure;
  }

  if (from == "jsonl") {
    auto corpus = load_corpus_or_complain(in_path);
    if (!corpus) return kUsageFailure;
    bool data_problem = !corpus->invalid.empty();
    for (const auto& bad : corpus->invalid) {
      std::cerr << "line " << bad.line << ": " << bad.message << "\n";
    }
    std::error_code ec;
    fs::create_directories(out_path, ec);
    if (ec || !fs::is_directory(out_path)) {
      std::cerr << "error: cannot create output directory " << out_path.string() << "\n";
      return kUsageFailure;
    }
    DotEmitOptions opts;
    opts.scenario_comment = true;
    opts.duration_comments = true;
    for (const auto& rec : corpus->records) {
      if (rec.id.find('/') != std::string::npos || rec.id.find('\\') != std::string::npos) {
        std::cerr << "record \"" << rec.id << "\": id is not a usable file name\n";
        data_problem = true;
        continue;
      }
      if (!write_text(out_path / (rec.id + ".dot"), emit_dot(record_graph(rec), opts) + "\n")) {
        return kUsageFailure;
      }
      if (rec.alt_edges || rec.parent_id || rec.parent_edge) {
        std::cerr << "record \"" << rec.id << "\": alt_edges/parent metadata has no DOT slot, dropped\n";
      }
    }
    return data_problem ? kDataFailure : kOk;
  }

  // dot -> jsonl
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(in_path, ec)) {
    files = dot_files_in(in_path);
  } else if (fs::exists(in_path, ec)) {
    files.push_back(in_path);
  } else {
    std::cerr << "error: " << in_path.string() << " does not exist\n";
    return kUsageFailure;
  }

  Corpus corpus;
  bool data_problem = false;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      ScriptGraph g = parse_dot(text);
      CorpusRecord rec;
      rec.id = file.stem().string();
      rec.scenario = g.scenario();
      rec.events = g.events();
      rec.edges = g.edges();
      corpus.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      std::cerr << "file " << file.string() << ": " << e.what() << "\n";
      data_problem = true;
    }
  }
  try {
    save_jsonl(corpus, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageFailure;
  }
  return data_problem ? kDataFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partially ordered script toolkit"};
  app.require_subcommand(1);

  auto positive_int = CLI::PositiveNumber;
  auto open_unit = CLI::Validator(
      [](std::string& value) -> std::string {
        double v = 0.0;
        auto [ptr, err] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (err != std::errc() || ptr != value.data() + value.size() || !(v > 0.0 && v < 1.0)) {
          return "value must lie strictly between 0 and 1";
        }
        return {};
      },
      "FLOAT in (0,1)", "open_unit");
  auto closed_unit = CLI::Validator(
      [](std::string& value) -> std::string {
        double v = 0.0;
        auto [ptr, err] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (err != std::errc() || ptr != value.data() + value.size() || !(v >= 0.0 && v <= 1.0)) {
          return "value must lie in [0, 1]";
        }
        return {};
      },
      "FLOAT in [0,1]", "closed_unit");

  // validate
  auto* validate = app.add_subcommand("validate", "check a JSONL corpus and report per-record outcomes");
  fs::path validate_corpus;
  double validate_threshold = 65.0;
  validate->add_option("corpus", validate_corpus, "corpus .jsonl path")->required();
  validate->add_option("--agreement-threshold", validate_threshold,
                       "agreement F1 (x100) a double-annotated record must reach");

  // stats
  auto* stats = app.add_subcommand("stats", "summarize a JSONL corpus");
  fs::path stats_corpus;
  std::string stats_format = "json";
  stats->add_option("corpus", stats_corpus, "corpus .jsonl path")->required();
  stats->add_option("--format", stats_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "turn pairwise scores into a script DOT");
  fs::path aggregate_scores;
  fs::path aggregate_out;
  std::string aggregate_policy = "argmax-pair";
  double aggregate_tau = 0.5;
  aggregate->add_option("--scores", aggregate_scores, "scores .json path")->required();
  aggregate->add_option("--policy", aggregate_policy, "edge selection policy")
      ->check(CLI::IsMember({"argmax-pair", "threshold"}));
  aggregate->add_option("--tau", aggregate_tau, "threshold policy cutoff")->check(open_unit);
  aggregate->add_option("--out", aggregate_out, "write DOT here instead of stdout");

  // eval
  auto* eval = app.add_subcommand("eval", "score predictions against a gold corpus");
  fs::path eval_pred, eval_gold, eval_out;
  std::string eval_metric = "both";
  std::string eval_convention = "standard";
  std::string eval_format = "tsv";
  int eval_node_limit = 12;
  std::size_t eval_beam = 64;
  int eval_jobs = 1;
  eval->add_option("--pred", eval_pred, "prediction directory of .dot files, or a .jsonl file")
      ->required();
  eval->add_option("--gold", eval_gold, "gold corpus .jsonl path")->required();
  eval->add_option("--metric", eval_metric, "which metrics to compute")
      ->check(CLI::IsMember({"edges", "ged", "both"}));
  eval->add_option("--convention", eval_convention, "precision/recall denominator convention")
      ->check(CLI::IsMember({"standard", "paper-literal"}));
  eval->add_option("--ged-node-limit", eval_node_limit,
                   "combined node cap for the exact edit distance search")
      ->check(positive_int);
  eval->add_option("--beam", eval_beam, "fallback beam width above the cap (0 disables)");
  eval->add_option("--jobs", eval_jobs, "worker threads")->check(positive_int);
  eval->add_option("--format", eval_format, "report format")
      ->check(CLI::IsMember({"tsv", "json"}));
  eval->add_option("--out", eval_out, "write the report here instead of stdout");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "score a random baseline against a gold corpus");
  fs::path baseline_gold, baseline_out;
  std::string baseline_policy = "random-chain";
  std::string baseline_metric = "edges";
  std::string baseline_format = "tsv";
  double baseline_p_branch = 0.3;
  std::uint64_t baseline_seed = 0;
  int baseline_node_limit = 12;
  std::size_t baseline_beam = 64;
  int baseline_jobs = 1;
  baseline->add_option("--gold", baseline_gold, "gold corpus .jsonl path")->required();
  baseline->add_option("--policy", baseline_policy, "random script construction")
      ->check(CLI::IsMember({"random-chain", "random-dag"}));
  baseline->add_option("--p-branch", baseline_p_branch, "extra-parent chance for random-dag")
      ->check(closed_unit);
  auto* seed_opt = baseline->add_option("--seed", baseline_seed, "64-bit RNG seed");
  baseline->add_option("--metric", baseline_metric, "which metrics to compute")
      ->check(CLI::IsMember({"edges", "ged", "both"}));
  baseline->add_option("--ged-node-limit", baseline_node_limit,
                       "combined node cap for the exact edit distance search")
      ->check(positive_int);
  baseline->add_option("--beam", baseline_beam, "fallback beam width above the cap (0 disables)");
  baseline->add_option("--jobs", baseline_jobs, "worker threads")->check(positive_int);
  baseline->add_option("--format", baseline_format, "report format")
      ->check(CLI::IsMember({"tsv", "json"}));
  baseline->add_option("--out", baseline_out, "write the report here instead of stdout");

  // convert
  auto* convert = app.add_subcommand("convert", "translate between JSONL and DOT");
  std::string convert_from, convert_to;
  fs::path convert_in, convert_out;
  convert->add_option("--from", convert_from, "input format")
      ->required()
      ->check(CLI::IsMember({"jsonl", "dot"}));
  convert->add_option("--to", convert_to, "output format")
      ->required()
      ->check(CLI::IsMember({"jsonl", "dot"}));
  convert->add_option("--in", convert_in, "input path (file, or directory of .dot)")->required();
  convert->add_option("--out", convert_out, "output path (jsonl file, or directory for .dot)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageFailure;
  }

  if (*baseline && !*seed_opt) {
    if (const char* env = std::getenv("PROSCRIPT_SEED")) {
      std::string_view text(env);
      auto [ptr, err] = std::from_chars(text.data(), text.data() + text.size(), baseline_seed);
      if (err != std::errc() || ptr != text.data() + text.size()) {
        std::cerr << "error: PROSCRIPT_SEED is not a 64-bit unsigned integer: " << env << "\n";
        return kUsageFailure;
      }
    }
  }

  try {
    if (*validate) return cmd_validate(validate_corpus, validate_threshold);
    if (*stats) return cmd_stats(stats_corpus, stats_format);
    if (*aggregate) return cmd_aggregate(aggregate_scores, aggregate_policy, aggregate_tau, aggregate_out);
    if (*eval) {
      return cmd_eval(eval_pred, eval_gold, eval_metric, eval_convention, eval_node_limit,
                      eval_beam, eval_jobs, eval_format, eval_out);
    }
    if (*baseline) {
      return cmd_baseline(baseline_gold, baseline_policy, baseline_p_branch, baseline_seed,
                          baseline_metric, baseline_node_limit, baseline_beam, baseline_jobs,
                          baseline_format, baseline_out);
    }
    if (*convert) return cmd_convert(convert_from, convert_to, convert_in, convert_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageFailure;
  }
  return kUsageFailure;
}
