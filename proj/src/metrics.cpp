#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nlohmann/json.hpp"
#include "scriptdag/errors.hpp"
#include "scriptdag/metrics.hpp"

namespace scriptdag {

namespace {

// pred id -> gold id under the configured alignment
std::vector<int> align_events(const ScriptGraph& pred, const ScriptGraph& gold,
                              const EdgePrfConfig& cfg) {
  const auto& pe = pred.events();
  const auto& ge = gold.events();
  std::vector<int> perm(pe.size(), -1);

  if (cfg.match_by == MatchBy::Id) {
    if (pe.size() != ge.size()) {
      throw std::invalid_argument("edge_prf: event counts differ (" + std::to_string(pe.size()) +
                                  " vs " + std::to_string(ge.size()) + ")");
    }
    if (cfg.strict_labels) {
      for (std::size_t i = 0; i < pe.size(); ++i) {
        if (normalize_label(pe[i].text) != normalize_label(ge[i].text)) {
          throw std::invalid_argument("edge_prf: labels differ at slot " + std::to_string(i));
        }
      }
    }
    std::iota(perm.begin(), perm.end(), 0);
    return perm;
  }

  std::map<std::string, std::vector<int>> by_label_pred, by_label_gold;
  for (const auto& ev : pe) by_label_pred[normalize_label(ev.text)].push_back(ev.id);
  for (const auto& ev : ge) by_label_gold[normalize_label(ev.text)].push_back(ev.id);

  if (by_label_pred.size() != by_label_gold.size() || pe.size() != ge.size()) {
    throw std::invalid_argument("edge_prf: event label multisets differ");
  }
  for (const auto& [label, pred_ids] : by_label_pred) {
    auto it = by_label_gold.find(label);
    if (it == by_label_gold.end() || it->second.size() != pred_ids.size()) {
      throw std::invalid_argument("edge_prf: event label multisets differ");
    }
    if (cfg.strict_labels && pred_ids.size() > 1) {
      throw std::invalid_argument("edge_prf: duplicate event label \"" + label + "\"");
    }
    // events() is id-ordered, so both lists are ascending already
    for (std::size_t k = 0; k < pred_ids.size(); ++k) {
      perm[static_cast<std::size_t>(pred_ids[k])] = it->second[k];
    }
  }
  return perm;
}

}  // namespace

PrfScore edge_prf(const ScriptGraph& pred, const ScriptGraph& gold, const EdgePrfConfig& cfg) {
  std::vector<int> perm = align_events(pred, gold, cfg);

  std::set<Edge> gold_edges(gold.edges().begin(), gold.edges().end());
  std::size_t hits = 0;
  for (const auto& [u, v] : pred.edges()) {
    if (gold_edges.count({perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]})) ++hits;
  }

  const std::size_t np = pred.edges().size();
  const std::size_t ng = gold.edges().size();
  if (np == 0 && ng == 0) return {1.0, 1.0, 1.0};

  PrfScore s;
  s.f1 = 2.0 * static_cast<double>(hits) / static_cast<double>(np + ng);
  double over_pred = np > 0 ? static_cast<double>(hits) / static_cast<double>(np) : 0.0;
  double over_gold = ng > 0 ? static_cast<double>(hits) / static_cast<double>(ng) : 0.0;
  if (cfg.convention == Convention::Standard) {
    s.precision = over_pred;
    s.recall = over_gold;
  } else {
    s.precision = over_gold;
    s.recall = over_pred;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Corpus-level reporting
// ---------------------------------------------------------------------------

namespace {

ScriptScore score_pair(const ScoredPair& pair, const ReportConfig& cfg) {
  ScriptScore row;
  row.id = pair.id;
  row.notes = pair.notes;
  if (pair.golds.empty()) {
    row.notes.push_back("no gold scripts");
    return row;
  }

  if (cfg.edges) {
    PrfScore sum;
    int scored = 0;
    for (std::size_t k = 0; k < pair.golds.size(); ++k) {
      try {
        PrfScore s = edge_prf(pair.pred, pair.golds[k], cfg.prf);
        sum.precision += s.precision;
        sum.recall += s.recall;
        sum.f1 += s.f1;
        ++scored;
      } catch (const std::exception& e) {
        row.notes.push_back("edges vs gold " + std::to_string(k) + ": " + e.what());
      }
    }
    if (scored > 0) {
      row.prf = PrfScore{sum.precision / scored, sum.recall / scored, sum.f1 / scored};
    }
  }

  if (cfg.ged) {
    double cost_sum = 0.0;
    GedOpCounts ops_sum;
    int scored = 0;
    for (std::size_t k = 0; k < pair.golds.size(); ++k) {
      try {
        GedResult r;
        try {
          r = ged(pair.pred, pair.golds[k], cfg.ged_cfg);
        } catch (const SizeLimitError& e) {
          if (cfg.approx_beam == 0) throw;
          r = ged_approx(pair.pred, pair.golds[k], cfg.ged_cfg, cfg.approx_beam);
          row.notes.push_back("ged vs gold " + std::to_string(k) + ": beam-" +
                              std::to_string(cfg.approx_beam) + " upper bound (" + e.what() + ")");
        }
        GedOpCounts ops = ged_breakdown(r.script);
        auto a = ops.as_array();
        auto s = ops_sum.as_array();
        ops_sum = GedOpCounts{s[0] + a[0], s[1] + a[1], s[2] + a[2],
                              s[3] + a[3], s[4] + a[4], s[5] + a[5]};
        cost_sum += r.cost;
        ++scored;
      } catch (const std::exception& e) {
        row.notes.push_back("ged vs gold " + std::to_string(k) + ": " + e.what());
      }
    }
    if (scored > 0) {
      row.ged_cost = cost_sum / scored;
      auto s = ops_sum.as_array();
      row.ops = GedOpCounts{s[0] / scored, s[1] / scored, s[2] / scored,
                            s[3] / scored, s[4] / scored, s[5] / scored};
    }
  }
  return row;
}

double round_to(double v, int places) {
  double factor = std::pow(10.0, places);
  return std::round(v * factor) / factor;
}

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

}  // namespace

EvalReport corpus_report(const std::vector<ScoredPair>& pairs, const ReportConfig& cfg) {
  EvalReport report;
  report.n_scripts = pairs.size();
  report.scripts.resize(pairs.size());

  auto score_into = [&](std::size_t i) {
    try {
      report.scripts[i] = score_pair(pairs[i], cfg);
    } catch (const std::exception& e) {
      report.scripts[i].id = pairs[i].id;
      report.scripts[i].notes.push_back(std::string("scoring failed: ") + e.what());
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || pairs.size() < 2) {
    for (std::size_t i = 0; i < pairs.size(); ++i) score_into(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= pairs.size()) return;
        score_into(i);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  PrfScore prf_sum;
  int prf_rows = 0;
  double ged_sum = 0.0;
  GedOpCounts ops_sum;
  int ged_rows = 0;
  for (const auto& row : report.scripts) {
    if (row.prf) {
      prf_sum.precision += row.prf->precision;
      prf_sum.recall += row.prf->recall;
      prf_sum.f1 += row.prf->f1;
      ++prf_rows;
    }
    if (row.ged_cost) {
      ged_sum += *row.ged_cost;
      auto a = row.ops.as_array();
      auto s = ops_sum.as_array();
      ops_sum = GedOpCounts{s[0] + a[0], s[1] + a[1], s[2] + a[2],
                            s[3] + a[3], s[4] + a[4], s[5] + a[5]};
      ++ged_rows;
    }
  }
  if (prf_rows > 0) {
    report.macro_prf = PrfScore{prf_sum.precision / prf_rows, prf_sum.recall / prf_rows,
                                prf_sum.f1 / prf_rows};
  }
  if (ged_rows > 0) {
    report.macro_ged = ged_sum / ged_rows;
    auto s = ops_sum.as_array();
    report.macro_ops = GedOpCounts{s[0] / ged_rows, s[1] / ged_rows, s[2] / ged_rows,
                                   s[3] / ged_rows, s[4] / ged_rows, s[5] / ged_rows};
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  using ordered_json = nlohmann::ordered_json;

  auto ops_json = [](const GedOpCounts& ops) {
    ordered_json out;
    auto a = ops.as_array();
    const char* keys[] = {"v_del", "v_ins", "v_rep", "e_del", "e_ins", "e_rep"};
    for (int i = 0; i < 6; ++i) out[keys[i]] = round_to(a[static_cast<std::size_t>(i)], 3);
    return out;
  };

  ordered_json out;
  out["n_scripts"] = report.n_scripts;
  ordered_json macro = ordered_json::object();
  if (report.macro_prf) {
    macro["f1"] = round_to(report.macro_prf->f1 * 100.0, 2);
    macro["precision"] = round_to(report.macro_prf->precision * 100.0, 2);
    macro["recall"] = round_to(report.macro_prf->recall * 100.0, 2);
  }
  if (report.macro_ged) {
    macro["ged"] = round_to(*report.macro_ged, 2);
    macro["ops"] = ops_json(report.macro_ops);
  }
  out["macro"] = macro;

  ordered_json rows = ordered_json::array();
  for (const auto& row : report.scripts) {
    ordered_json r;
    r["id"] = row.id;
    if (row.prf) {
      r["f1"] = round_to(row.prf->f1 * 100.0, 2);
      r["precision"] = round_to(row.prf->precision * 100.0, 2);
      r["recall"] = round_to(row.prf->recall * 100.0, 2);
    }
    if (row.ged_cost) {
      r["ged"] = round_to(*row.ged_cost, 2);
      r["ops"] = ops_json(row.ops);
    }
    if (!row.notes.empty()) r["notes"] = row.notes;
    rows.push_back(std::move(r));
  }
  out["scripts"] = std::move(rows);
  return out.dump();
}

std::string report_to_tsv(const EvalReport& report) {
  std::string out = "id\tF1\tP\tR\tEdit Dist\tV-Del\tV-Ins\tV-Rep\tE-Del\tE-Ins\tE-Rep\tnotes\n";

  auto join_notes = [](const std::vector<std::string>& notes) {
    std::string joined;
    for (std::size_t i = 0; i < notes.size(); ++i) {
      if (i > 0) joined += "; ";
      joined += notes[i];
    }
    return joined;
  };

  auto append_row = [&](const std::string& id, const std::optional<PrfScore>& prf,
                        const std::optional<double>& ged_cost, const GedOpCounts& ops,
                        const std::string& notes) {
    out += id;
    if (prf) {
      out += '\t' + fixed(prf->f1 * 100.0, 2);
      out += '\t' + fixed(prf->precision * 100.0, 2);
      out += '\t' + fixed(prf->recall * 100.0, 2);
    } else {
      out += "\t\t\t";
    }
    if (ged_cost) {
      out += '\t' + fixed(*ged_cost, 2);
      for (double v : ops.as_array()) out += '\t' + fixed(v, 3);
    } else {
      out += "\t\t\t\t\t\t\t";
    }
    out += '\t' + notes + '\n';
  };

  for (const auto& row : report.scripts) {
    append_row(row.id, row.prf, row.ged_cost, row.ops, join_notes(row.notes));
  }
  append_row("macro", report.macro_prf, report.macro_ged, report.macro_ops, "");
  return out;
}

}  // namespace scriptdag
