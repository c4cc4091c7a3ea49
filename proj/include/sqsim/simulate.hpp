#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sqsim/circuit.hpp"
#include "sqsim/oracles.hpp"
#include "sqsim/rank_decomp.hpp"
#include "sqsim/sop.hpp"
#include "sqsim/sop_dp.hpp"
#include "sqsim/treewidth.hpp"

namespace sqsim {

enum class Method { RankDp, Fourier, Bucket, Brute, Statevector };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::RankDp: return "rank-dp";
    case Method::Fourier: return "fourier";
    case Method::Bucket: return "bucket";
    case Method::Brute: return "brute";
    case Method::Statevector: return "statevector";
  }
  return "?";
}

inline std::optional<Method> method_from_name(const std::string& s) {
  if (s == "rank-dp") return Method::RankDp;
  if (s == "fourier") return Method::Fourier;
  if (s == "bucket") return Method::Bucket;
  if (s == "brute") return Method::Brute;
  if (s == "statevector") return Method::Statevector;
  return std::nullopt;
}

/// Breadth-first vertex order over all components, lowest index first.
inline std::vector<std::size_t> bfs_order(const Graph& g) {
  std::vector<std::size_t> order;
  std::vector<char> seen(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> queue{s};
    seen[s] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      order.push_back(u);
      const BitVec& row = g.row(u);
      for (std::size_t v = row.find_first(); v != BitVec::npos; v = row.find_next(v))
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
    }
  }
  return order;
}

/// Fixed auto-decomposition policy: greedy bisection, falling back to a
/// caterpillar over a breadth-first order if the heuristic output is invalid.
inline RankDecomposition auto_decomposition(const Graph& g) {
  RankDecomposition d = decompose_greedy_bisection(g);
  try {
    validate_decomposition(g, d);
    return d;
  } catch (const ValidationError&) {
    return caterpillar_from_order(g, bfs_order(g));
  }
}

struct SimResult {
  SopInstance sop;
  std::optional<ResidueCounts> counts;
  Complex amplitude{0.0, 0.0};
  std::string method;
  long width_used = -1;  // decomposition width (rank methods) or induced width (bucket)
};

/// End-to-end amplitude evaluation by the chosen method. `decomposition`
/// overrides the auto policy for the rank methods.
inline SimResult simulate(const Circuit& c, const std::string& in_bits,
                          const std::string& out_bits, Method method,
                          const RankDecomposition* decomposition = nullptr) {
  SimResult res;
  res.method = method_name(method);
  if (method == Method::Statevector) {
    res.sop = extract_sop(c, in_bits, out_bits);  // reported for context
    res.amplitude = statevector_amplitude(c, in_bits, out_bits);
    return res;
  }
  res.sop = extract_sop(c, in_bits, out_bits);
  const SopInstance& s = res.sop;
  if (s.status == SopStatus::Inconsistent) {
    ResidueCounts zero;
    zero.r = s.r;
    zero.counts.assign(s.r, 0);
    res.counts = zero;
    res.amplitude = {0.0, 0.0};
    return res;
  }
  switch (method) {
    case Method::Brute:
      res.counts = sopcount_brute(s);
      break;
    case Method::Bucket: {
      auto [width, order] = treewidth_minfill_ub(s.graph);
      res.counts = sopcount_bucket(s, order);
      res.width_used = static_cast<long>(width);
      break;
    }
    case Method::RankDp:
    case Method::Fourier: {
      RankDecomposition local;
      const RankDecomposition* d = decomposition;
      if (s.num_vars() > 0) {
        if (!d) {
          local = auto_decomposition(s.graph);
          d = &local;
        }
        validate_decomposition(s.graph, *d);
        res.width_used = static_cast<long>(decomposition_width(s.graph, *d));
        RootedDecomposition rd = root_decomposition(*d);
        res.counts = method == Method::RankDp ? sopcount_rank_dp(s, rd) : sopcount_fourier(s, rd);
      } else {
        RootedDecomposition rd;
        res.counts = method == Method::RankDp ? sopcount_rank_dp(s, rd) : sopcount_fourier(s, rd);
        res.width_used = 0;
      }
      break;
    }
    default:
      throw ValidationError("unsupported method");
  }
  res.amplitude = amplitude_from_counts(*res.counts, s.hadamard_count, s.status).numeric;
  return res;
}

inline nlohmann::json result_to_json(const SimResult& res) {
  nlohmann::json j;
  j["schema"] = "1";
  j["r"] = res.sop.r;
  j["c"] = res.sop.c;
  j["hadamards"] = res.sop.hadamard_count;
  j["status"] = res.sop.status == SopStatus::Consistent ? "consistent" : "inconsistent";
  j["method"] = res.method;
  j["width_used"] = res.width_used;
  if (res.counts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : res.counts->counts) arr.push_back(n.str());
    j["counts"] = arr;
  } else {
    j["counts"] = nullptr;
  }
  j["amplitude"] = {{"re", res.amplitude.real()}, {"im", res.amplitude.imag()}};
  return j;
}

}  // namespace sqsim
