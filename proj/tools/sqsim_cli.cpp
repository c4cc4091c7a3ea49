// Command-line front end: simulation, decomposition tooling, family
// generators, WMC export, and a benchmark harness over the family circuits.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "sqsim/families.hpp"
#include "sqsim/simulate.hpp"
#include "sqsim/tensor_network.hpp"
#include "sqsim/treewidth.hpp"
#include "sqsim/wmc.hpp"

namespace {

using namespace sqsim;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

std::string default_bits(const Circuit& c, const std::string& given) {
  return given.empty() ? std::string(c.n_qubits, '0') : given;
}

// Decomposition source: a path, or one of greedy|caterpillar|exact.
RankDecomposition build_decomposition(const Graph& g, const std::string& source,
                                      std::size_t max_exact) {
  if (source == "greedy") return decompose_greedy_bisection(g);
  if (source == "caterpillar") return caterpillar_from_order(g, bfs_order(g));
  if (source == "exact") {
    if (g.size() > max_exact)
      throw ResourceCapError("exact decomposition capped at n=" + std::to_string(max_exact));
    return rankwidth_exact(g).second;
  }
  return parse_rdec(read_file(source));
}

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  return static_cast<std::size_t>(std::strtoul(v, nullptr, 10));
}

struct WidthStats {
  std::size_t n, edges;
  long tw_exact = -1;  // -1 when past the exact cap
  std::size_t minfill_ub;
};

WidthStats width_stats(const Graph& g) {
  WidthStats w{g.size(), g.edge_count(), -1, treewidth_minfill_ub(g).first};
  if (g.size() <= kTreewidthExactCap) w.tw_exact = static_cast<long>(treewidth_exact(g).first);
  return w;
}

void print_width_stats(const char* name, const WidthStats& w) {
  std::cout << name << ": vertices=" << w.n << " edges=" << w.edges;
  if (w.tw_exact >= 0)
    std::cout << " treewidth=" << w.tw_exact;
  else
    std::cout << " treewidth=?";
  std::cout << " minfill_ub=" << w.minfill_ub << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Quadratic sum-of-powers strong simulator"};
  app.require_subcommand(1);

  std::string circuit_path, in_bits, out_bits, method_str = "rank-dp";
  std::string decomp_source, out_path, prefix;
  bool json_out = false, dot_out = false;
  std::size_t fam_h = 1, fam_t = 1;
  std::size_t max_exact = env_cap("SQSIM_MAX_EXACT", kRankwidthExactCap);

  auto* sim = app.add_subcommand("simulate", "evaluate a pinned amplitude");
  sim->add_option("circuit", circuit_path)->required();
  sim->add_option("--in", in_bits, "input basis bits (default all zeros)");
  sim->add_option("--out", out_bits, "output basis bits (default all zeros)");
  sim->add_option("--method", method_str, "rank-dp|fourier|bucket|brute|statevector");
  sim->add_option("--decomp", decomp_source, "rdec file or greedy|caterpillar|exact");
  sim->add_flag("--json", json_out, "machine-readable output");

  auto* ext = app.add_subcommand("extract-sop", "print the pinned SOP instance");
  ext->add_option("circuit", circuit_path)->required();
  ext->add_option("--in", in_bits);
  ext->add_option("--out", out_bits);
  ext->add_flag("--dot", dot_out, "emit dot-like graph text");

  auto* dec = app.add_subcommand("decompose", "build a rank decomposition of G_C");
  dec->add_option("circuit", circuit_path)->required();
  dec->add_option("--in", in_bits);
  dec->add_option("--out", out_bits);
  dec->add_option("--heuristic", method_str, "greedy|caterpillar|exact")->required();
  dec->add_option("--emit", out_path, "write .rdec here");

  auto* wid = app.add_subcommand("width", "score an .rdec against a circuit's G_C");
  wid->add_option("circuit", circuit_path)->required();
  wid->add_option("--decomp", decomp_source)->required();
  wid->add_option("--in", in_bits);
  wid->add_option("--out", out_bits);

  auto* fam = app.add_subcommand("gen-family", "emit a separating-family instance");
  fam->set_help_flag("--help", "print help");  // frees -h for the height option
  fam->add_option("--h", fam_h)->required();
  fam->add_option("--t", fam_t)->required();
  fam->add_option("--out-prefix", prefix, "write <prefix>.sqc and <prefix>.rdec")->required();

  auto* ggc = app.add_subcommand("gen-graph-circuit", "realize a .g graph as a circuit");
  ggc->add_option("graph", circuit_path)->required();
  ggc->add_option("-o,--output", out_path, "write .sqc here (default stdout)");

  auto* wmc = app.add_subcommand("encode-wmc", "emit the QWMC encoding of the pinned SOP");
  wmc->add_option("circuit", circuit_path)->required();
  wmc->add_option("--in", in_bits);
  wmc->add_option("--out", out_bits);
  wmc->add_option("-o,--output", out_path, "write .qwmc here (default stdout)");

  auto* tns = app.add_subcommand("tn-stats", "width statistics of N_C, L(N_C), G_C");
  tns->add_option("circuit", circuit_path)->required();
  tns->add_option("--in", in_bits);
  tns->add_option("--out", out_bits);

  std::size_t bench_hmax = 3, bench_tmax = 3;
  auto* bench = app.add_subcommand("bench", "CSV of widths and runtimes over the family");
  bench->add_option("--h-max", bench_hmax);
  bench->add_option("--t-max", bench_tmax);

  std::string corpus_dir;
  auto* regen = app.add_subcommand("regen-corpus", "rewrite golden corpus expectations");
  regen->add_option("dir", corpus_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) {
    Circuit c = parse_circuit(read_file(circuit_path));
    auto method = method_from_name(method_str);
    if (!method) throw ValidationError("unknown method: " + method_str);
    RankDecomposition d;
    const RankDecomposition* dp = nullptr;
    bool needs_decomp = *method == Method::RankDp || *method == Method::Fourier;
    if (!decomp_source.empty() && !needs_decomp)
      throw ValidationError("--decomp only applies to rank-dp and fourier");
    std::string in = default_bits(c, in_bits), out = default_bits(c, out_bits);
    if (!decomp_source.empty()) {
      SopInstance probe = extract_sop(c, in, out);
      d = build_decomposition(probe.graph, decomp_source, max_exact);
      dp = &d;
    }
    SimResult res = simulate(c, in, out, *method, dp);
    if (json_out) {
      std::cout << result_to_json(res).dump(2) << "\n";
    } else {
      std::cout << "method: " << res.method << "\n";
      std::cout << "status: "
                << (res.sop.status == SopStatus::Consistent ? "consistent" : "inconsistent")
                << "\n";
      if (res.counts) {
        std::cout << "counts:";
        for (const auto& n : res.counts->counts) std::cout << " " << n;
        std::cout << "\n";
      }
      if (res.width_used >= 0) std::cout << "width_used: " << res.width_used << "\n";
      std::cout << "amplitude: " << res.amplitude.real() << " + " << res.amplitude.imag()
                << "i\n";
    }
    return 0;
  }

  if (ext->parsed()) {
    Circuit c = parse_circuit(read_file(circuit_path));
    SopInstance s = extract_sop(c, default_bits(c, in_bits), default_bits(c, out_bits));
    if (dot_out) {
      std::cout << sop_to_dot(s);
    } else {
      std::cout << "r " << s.r << "\nc " << s.c << "\nhadamards " << s.hadamard_count
                << "\nstatus "
                << (s.status == SopStatus::Consistent ? "consistent" : "inconsistent") << "\n";
      for (std::size_t v = 0; v < s.num_vars(); ++v)
        std::cout << "var " << s.vars[v].name() << " b " << s.b[v] << "\n";
      for (auto [u, v] : s.graph.edges())
        std::cout << "edge " << s.vars[u].name() << " " << s.vars[v].name() << "\n";
    }
    return 0;
  }

  if (dec->parsed()) {
    Circuit c = parse_circuit(read_file(circuit_path));
    SopInstance s = extract_sop(c, default_bits(c, in_bits), default_bits(c, out_bits));
    RankDecomposition d = build_decomposition(s.graph, method_str, max_exact);
    validate_decomposition(s.graph, d);
    std::cout << "vars " << s.num_vars() << "\nwidth " << decomposition_width(s.graph, d)
              << "\n";
    if (!out_path.empty()) write_file(out_path, serialize_rdec(d));
    return 0;
  }

  if (wid->parsed()) {
    Circuit c = parse_circuit(read_file(circuit_path));
    SopInstance s = extract_sop(c, default_bits(c, in_bits), default_bits(c, out_bits));
    RankDecomposition d = parse_rdec(read_file(decomp_source));
    std::cout << "width " << decomposition_width(s.graph, d) << "\n";
    return 0;
  }

  if (fam->parsed()) {
    FamilyInstance f = separating_family(fam_h, fam_t);
    write_file(prefix + ".sqc", serialize_circuit(f.circuit));
    write_file(prefix + ".rdec", serialize_rdec(f.witness));
    std::cout << "qubits " << f.circuit.n_qubits << "\nwitness_width "
              << decomposition_width(f.variable_graph, f.witness) << "\n";
    return 0;
  }

  if (ggc->parsed()) {
    Graph g = parse_graph(read_file(circuit_path));
    std::string text = serialize_circuit(circuit_from_graph(g));
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
    return 0;
  }

  if (wmc->parsed()) {
    Circuit c = parse_circuit(read_file(circuit_path));
    SopInstance s = extract_sop(c, default_bits(c, in_bits), default_bits(c, out_bits));
    std::string text = serialize_qwmc(encode_wmc(s));
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
    return 0;
  }

  if (tns->parsed()) {
    Circuit c = parse_circuit(read_file(circuit_path));
    TensorNetwork tn = tensor_network_graph(c);
    // Convention: the line graph is bond-restricted (boundary tensors absent).
    print_width_stats("N_C", width_stats(tn.simple_graph()));
    print_width_stats("L(N_C)", width_stats(line_graph(tn)));
    SopInstance s = extract_sop(c, default_bits(c, in_bits), default_bits(c, out_bits));
    print_width_stats("G_C", width_stats(s.graph));
    return 0;
  }

  if (bench->parsed()) {
    std::cout << "h,t,qubits,vars,witness_width,minfill_ub,method,amplitude_re,amplitude_im,"
                 "runtime_ms\n";
    for (std::size_t h = 1; h <= bench_hmax; ++h)
      for (std::size_t t = 1; t <= bench_tmax; ++t) {
        FamilyInstance f = separating_family(h, t);
        std::string zeros(f.circuit.n_qubits, '0');
        std::size_t ww = decomposition_width(f.variable_graph, f.witness);
        std::size_t mf = treewidth_minfill_ub(f.variable_graph).first;
        for (Method m : {Method::RankDp, Method::Fourier, Method::Bucket}) {
          if (m == Method::Bucket && mf > 20) continue;  // respect the separator cap
          auto start = std::chrono::steady_clock::now();
          SimResult res = simulate(f.circuit, zeros, zeros, m, &f.witness);
          auto ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
          std::cout << h << "," << t << "," << f.circuit.n_qubits << ","
                    << f.variable_graph.size() << "," << ww << "," << mf << ","
                    << res.method << "," << res.amplitude.real() << ","
                    << res.amplitude.imag() << "," << ms << "\n";
        }
      }
    return 0;
  }

  if (regen->parsed()) {
    // Golden corpus layout: <dir>/cases.json lists circuits and pins; the
    // DERIVED fields (counts, amplitude) are rewritten from the oracles.
    nlohmann::json cases = nlohmann::json::parse(read_file(corpus_dir + "/cases.json"));
    for (auto& cs : cases["cases"]) {
      Circuit c = parse_circuit(read_file(corpus_dir + "/" + cs["circuit"].get<std::string>()));
      std::string in = cs["in"].get<std::string>(), out = cs["out"].get<std::string>();
      SopInstance s = extract_sop(c, in, out);
      Complex amp{0.0, 0.0};
      if (s.status == SopStatus::Consistent) {
        ResidueCounts n = sopcount_brute(s);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& x : n.counts) arr.push_back(x.str());
        cs["counts"] = arr;
        amp = amplitude_from_counts(n, s.hadamard_count, s.status).numeric;
      } else {
        cs["counts"] = nlohmann::json::array();
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.15g", amp.real());
      cs["amplitude_re"] = std::string(buf);
      std::snprintf(buf, sizeof buf, "%.15g", amp.imag());
      cs["amplitude_im"] = std::string(buf);
    }
    write_file(corpus_dir + "/cases.json", cases.dump(2) + "\n");
    std::cout << "regenerated " << cases["cases"].size() << " cases\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sqsim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const sqsim::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const sqsim::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
