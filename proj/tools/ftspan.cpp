#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftspan/gen.hpp"
#include "ftspan/io.hpp"
#include "ftspan/pipeline.hpp"
#include "ftspan/verify.hpp"

using namespace ftspan;

namespace {

Metric load_instance(const std::string& input, const std::string& matrix, const std::string& gen,
                     std::uint64_t seed) {
  int given = int(!input.empty()) + int(!matrix.empty()) + int(!gen.empty());
  if (given != 1) throw config_error("give exactly one of --input, --matrix, --gen");
  if (!input.empty()) return Metric::from_points_file(input);
  if (!matrix.empty()) return Metric::from_matrix_file(matrix);
  auto colon = gen.find(':');
  if (colon == std::string::npos) throw config_error("--gen wants family:n, e.g. uniform:200");
  std::string fam = gen.substr(0, colon);
  int n = 0;
  try {
    n = std::stoi(gen.substr(colon + 1));
  } catch (...) {
    throw config_error("bad point count in --gen '" + gen + "'");
  }
  if (fam == "uniform") return gen_uniform_square(n, seed);
  if (fam == "clustered") return gen_clustered_2d(n, seed);
  if (fam == "line") return gen_line(n);
  if (fam == "expline") return gen_exp_line(n);
  if (fam == "band") return gen_matrix_band(n, seed);
  throw config_error("unknown instance family '" + fam +
                     "' (uniform, clustered, line, expline, band)");
}

struct CommonOpts {
  std::string input, matrix, gen;
  std::uint64_t seed = 1;
  double eps = 0.5;
  int k = 0;
  double gamma = 0.0;
  std::string mode = "matching";
  bool no_shortcuts = false;
  int xi_override = -1;
};

void attach(CLI::App* cmd, CommonOpts& o, bool with_build) {
  cmd->add_option("--input", o.input, "points file, one point per line");
  cmd->add_option("--matrix", o.matrix, "distance matrix file (first line n, then n rows)");
  cmd->add_option("--gen", o.gen,
                  "generated instance family:n (uniform, clustered, line, expline, band)");
  cmd->add_option("--seed", o.seed, "seed for generated instances and random fault sampling");
  cmd->add_option("--eps", o.eps, "stretch slack: surviving paths stay within (1+eps)");
  cmd->add_option("--k", o.k, "fault budget: any k points may fail");
  if (with_build) {
    cmd->add_option("--gamma", o.gamma, "cross-edge reach override (0 derives it from eps)");
    cmd->add_option("--mode", o.mode, "edge emission: clique or matching")
        ->check(CLI::IsMember({"clique", "matching"}));
    cmd->add_flag("--no-shortcuts", o.no_shortcuts, "skip the hop-shortcut stage");
    cmd->add_option("--xi-override", o.xi_override,
                    "testing hook: use this net degree bound instead of the measured one");
  }
}

BuildResult run_build(const CommonOpts& o) {
  Metric raw = load_instance(o.input, o.matrix, o.gen, o.seed);
  BuildOptions b;
  b.k = o.k;
  b.eps = o.eps;
  b.gamma = o.gamma;
  b.mode = o.mode == "clique" ? Mode::clique_only : Mode::matching;
  b.shortcuts = !o.no_shortcuts;
  b.xi_override = o.xi_override;
  return build_spanner(raw, b);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    try {
      out.push_back(std::stoi(text.substr(pos, comma - pos)));
    } catch (...) {
      throw config_error(std::string("bad ") + what + " list '" + text + "'");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw config_error(std::string("empty ") + what + " list");
  return out;
}

nlohmann::ordered_json witness_json(const StretchWitness& w) {
  nlohmann::ordered_json j;
  j["stretch"] = w.stretch;
  j["p"] = w.p;
  j["q"] = w.q;
  j["faults"] = w.faults.points;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-fault-tolerant (1+eps)-spanners for doubling metrics"};
  app.require_subcommand(1);

  CommonOpts bo;
  std::string bout, bstats;
  CLI::App* build = app.add_subcommand("build", "construct a spanner and write its edges");
  attach(build, bo, true);
  build->add_option("--out", bout, "edges file (jsonl)");
  build->add_option("--stats", bstats, "stats json file, or '-' for stdout");

  CommonOpts vo;
  std::string vfaults = "exhaustive";
  std::string vedges;
  CLI::App* verify = app.add_subcommand("verify", "build, then stress the result under faults");
  attach(verify, vo, true);
  verify->add_option("--faults", vfaults, "exhaustive | random:N | targeted");
  verify->add_option("--edges", vedges,
                     "stress this edge file (jsonl, normalized weights) instead of the "
                     "freshly built spanner");

  CommonOpts ao;
  CLI::App* audit = app.add_subcommand("audit", "build, then re-check structural guarantees");
  attach(audit, ao, true);

  std::string bsizes = "100,200", bks = "1", bench_out;
  double beps = 0.5;
  std::uint64_t bseed = 1;
  CLI::App* bench =
      app.add_subcommand("bench", "degree/lightness/hop table over generated instances");
  bench->add_option("--sizes", bsizes, "comma-separated instance sizes");
  bench->add_option("--ks", bks, "comma-separated fault budgets");
  bench->add_option("--eps", beps, "stretch slack");
  bench->add_option("--seed", bseed, "instance seed base");
  bench->add_option("--out", bench_out, "csv file (default stdout)");

  CommonOpts oo;
  std::string oout, ostats;
  CLI::App* oracle = app.add_subcommand("oracle", "greedy baseline spanner (small n only)");
  attach(oracle, oo, false);
  oracle->add_option("--out", oout, "edges file (jsonl)");
  oracle->add_option("--stats", ostats, "stats json file, or '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) {
      BuildResult r = run_build(bo);
      if (!bout.empty()) write_edges_jsonl(bout, r.spanner);
      std::string stats = stats_json(r);
      if (bstats == "-") std::cout << stats;
      else if (!bstats.empty()) write_text(bstats, stats);
      if (bstats != "-")
        std::cout << "built n=" << r.metric->size() << " k=" << r.params.k
                  << " edges=" << r.spanner.size() << " max_degree=" << r.spanner.max_degree()
                  << "\n";
      return 0;
    }

    if (verify->parsed()) {
      BuildResult r = run_build(vo);
      if (!vedges.empty()) r.spanner = read_edges_jsonl(vedges, r.metric->size());
      FaultStrategy fs = FaultStrategy::parse(vfaults);
      fs.seed = vo.seed;
      SuiteResult sr = fault_suite(r.spanner, *r.metric, vo.eps, vo.k, fs, &r.table);
      HopReport hr = measure_hop_diameter(r.spanner, *r.metric, vo.eps);
      nlohmann::ordered_json j;
      j["n"] = r.metric->size();
      j["k"] = vo.k;
      j["eps"] = vo.eps;
      j["fault_strategy"] = vfaults;
      j["fault_sets"] = sr.fault_sets;
      j["ok"] = sr.ok;
      j["worst"] = witness_json(sr.worst);
      j["hop_diameter"] = hr.hops;
      j["hop_budget"] = hr.h_max;
      j["hop_unreached_pairs"] = hr.over;
      j["edges"] = r.spanner.size();
      j["max_degree"] = r.spanner.max_degree();
      std::cout << j.dump(2) << "\n";
      return sr.ok ? 0 : 4;
    }

    if (audit->parsed()) {
      BuildResult r = run_build(ao);
      std::vector<std::string> findings =
          structural_audit(r.table, r.params, *r.tree, *r.metric);
      for (const std::string& f : findings) std::cout << f << "\n";
      if (findings.empty()) {
        std::cout << "audit clean\n";
        return 0;
      }
      std::cout << "audit: " << findings.size() << " findings\n";
      return 4;
    }

    if (bench->parsed()) {
      std::vector<int> sizes = parse_int_list(bsizes, "size");
      std::vector<int> ks = parse_int_list(bks, "k");
      std::string csv = "n,k,edges,max_degree,lightness,hop_diameter,build_ms\n";
      for (int n : sizes) {
        Metric raw = gen_uniform_square(n, bseed + std::uint64_t(n));
        for (int k : ks) {
          BuildOptions b;
          b.k = k;
          b.eps = beps;
          auto t0 = std::chrono::steady_clock::now();
          BuildResult r = build_spanner(raw, b);
          auto t1 = std::chrono::steady_clock::now();
          double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
          HopReport hr = measure_hop_diameter(r.spanner, *r.metric, beps);
          double mst = r.metric->mst_weight();
          double light = mst > 0.0 ? r.spanner.total_weight() / mst : 0.0;
          char line[256];
          std::snprintf(line, sizeof line, "%d,%d,%lld,%d,%.6g,%d,%.1f\n", n, k,
                        r.spanner.size(), r.spanner.max_degree(), light, hr.hops, ms);
          csv += line;
        }
      }
      if (bench_out.empty()) std::cout << csv;
      else write_text(bench_out, csv);
      return 0;
    }

    if (oracle->parsed()) {
      Metric raw = load_instance(oo.input, oo.matrix, oo.gen, oo.seed);
      Metric nm = raw.normalized();
      FtSpanner orc = greedy_ft_oracle(nm, 1.0 + oo.eps, oo.k);
      if (!oout.empty()) write_edges_jsonl(oout, orc);
      nlohmann::ordered_json j;
      j["n"] = nm.size();
      j["k"] = oo.k;
      j["eps"] = oo.eps;
      j["scale"] = nm.scale();
      j["edges"] = orc.size();
      j["max_degree"] = orc.max_degree();
      j["total_weight"] = orc.total_weight();
      std::string stats = j.dump(2) + "\n";
      if (ostats == "-") std::cout << stats;
      else if (!ostats.empty()) write_text(ostats, stats);
      if (ostats != "-")
        std::cout << "oracle n=" << nm.size() << " k=" << oo.k << " edges=" << orc.size()
                  << "\n";
      return 0;
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const construction_error& e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
