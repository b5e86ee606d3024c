#include "ftspan/io.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace ftspan {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw config_error("write to '" + path + "' failed");
}

void write_edges_jsonl(const std::string& path, const FtSpanner& sp) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open '" + path + "' for writing");
  for (const SpannerEdge& e : sp.edges()) {
    nlohmann::ordered_json j;
    j["u"] = std::min(e.u, e.v);
    j["v"] = std::max(e.u, e.v);
    j["w"] = e.w;
    j["kind"] = kind_name(e.kind);
    j["level"] = e.level;
    out << j.dump() << "\n";
  }
  if (!out) throw config_error("write to '" + path + "' failed");
}

FtSpanner read_edges_jsonl(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  FtSpanner sp(n);
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      int u = j.at("u").get<int>();
      int v = j.at("v").get<int>();
      double w = j.at("w").get<double>();
      std::string kind = j.at("kind").get<std::string>();
      int level = j.at("level").get<int>();
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw config_error("edge endpoint out of range 0.." + std::to_string(n - 1));
      int ki = 0;
      while (ki < kEdgeKinds && kind != kind_name(EdgeKind(ki))) ++ki;
      if (ki == kEdgeKinds) throw config_error("unknown edge kind '" + kind + "'");
      sp.add(u, v, w, EdgeKind(ki), level);
    } catch (const config_error&) {
      throw;
    } catch (const std::exception& e) {
      throw config_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return sp;
}

std::string stats_json(const BuildResult& r) {
  const DerivedParams& p = r.params;
  nlohmann::ordered_json j;
  j["n"] = r.metric->size();
  j["scale"] = r.scale;
  j["k"] = p.k;
  j["eps"] = p.eps;
  j["gamma"] = p.gamma;
  j["tau"] = p.tau;
  j["xi"] = p.xi;
  j["degree_threshold"] = p.degree_threshold;
  j["levels"] = r.tree->levels();
  j["cross_edges"] = r.tree->cross_edge_total();
  j["edges"] = r.spanner.size();
  j["max_degree"] = r.spanner.max_degree();
  j["total_weight"] = r.spanner.total_weight();
  double mst = r.metric->mst_weight();
  j["mst_weight"] = mst;
  j["lightness"] = mst > 0.0 ? r.spanner.total_weight() / mst : 0.0;
  nlohmann::ordered_json kinds;
  for (int ki = 0; ki < kEdgeKinds; ++ki)
    kinds[kind_name(EdgeKind(ki))] = r.spanner.count(EdgeKind(ki));
  j["edge_kinds"] = kinds;
  j["appointments"] = r.table.appointments();
  j["leeches"] = r.table.leech_count();
  j["copies"] = r.table.copy_count();
  j["clean_nodes"] = r.table.clean_count();
  j["forced_terms"] = r.table.forced_terms();
  j["reserve_evictions"] = r.table.reserve_evictions();
  j["cross_pairs"] = r.table.cross_pair_count();
  j["pruned_nodes"] = r.pruned.size();
  j["light_subtrees"] = (long long)r.light.size();
  j["shortcut_pairs"] = r.shortcut_pairs;
  return j.dump(2) + "\n";
}

}  // namespace ftspan
