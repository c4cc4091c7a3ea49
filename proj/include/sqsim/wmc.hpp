#pragma once

#include <cstddef>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sqsim/common.hpp"
#include "sqsim/sop.hpp"

namespace sqsim {

/// CNF with complex literal weights. Variables are 1-based DIMACS style:
/// 1..|V| are the SOP x-variables, |V|+1.. are per-edge sign variables.
struct WmcFormula {
  std::size_t num_vars = 0;
  std::size_t num_x_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::map<int, Complex> weights;  // literal -> weight; unspecified literals weigh 1
  int r = 8;
  int c = 0;
  std::size_t hadamard_count = 0;

  Complex weight_of(int lit) const {
    auto it = weights.find(lit);
    return it == weights.end() ? Complex{1.0, 0.0} : it->second;
  }
};

/// Sign-variable encoding: one s_e per edge with s_e <-> (x_u and x_v),
/// weighted -1 when true; positive x_v literals weigh omega_r^{b_v}. The
/// weighted count equals sum_x omega_r^{sum b_v x_v} (-1)^{sum_E x_u x_v},
/// i.e. the SOP sum with the constant c and normalization R left outside.
inline WmcFormula encode_wmc(const SopInstance& s) {
  if (s.status != SopStatus::Consistent) throw ValidationError("instance is inconsistent");
  WmcFormula f;
  f.r = s.r;
  f.c = s.c;
  f.hadamard_count = s.hadamard_count;
  f.num_x_vars = s.num_vars();
  auto edges = s.graph.edges();
  f.num_vars = s.num_vars() + edges.size();
  for (std::size_t v = 0; v < s.num_vars(); ++v)
    if (s.b[v] != 0) f.weights[static_cast<int>(v) + 1] = root_of_unity(s.r, s.b[v]);
  int sign_var = static_cast<int>(s.num_vars());
  for (auto [u, v] : edges) {
    ++sign_var;
    int xu = static_cast<int>(u) + 1, xv = static_cast<int>(v) + 1;
    f.clauses.push_back({-sign_var, xu});
    f.clauses.push_back({-sign_var, xv});
    f.clauses.push_back({sign_var, -xu, -xv});
    f.weights[sign_var] = Complex{-1.0, 0.0};
  }
  return f;
}

inline constexpr std::size_t kWmcEnumCap = 24;

/// Reference semantics: sum over satisfying assignments of the product of
/// satisfied-literal weights.
inline Complex naive_weighted_count(const WmcFormula& f) {
  if (f.num_vars > kWmcEnumCap)
    throw ResourceCapError("naive_weighted_count capped at " + std::to_string(kWmcEnumCap) +
                           " variables");
  Complex total{0.0, 0.0};
  for (std::size_t asg = 0; asg < (std::size_t{1} << f.num_vars); ++asg) {
    bool sat = true;
    for (const auto& clause : f.clauses) {
      bool clause_sat = false;
      for (int lit : clause) {
        std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
        bool val = (asg >> v) & 1u;
        if ((lit > 0) == val) {
          clause_sat = true;
          break;
        }
      }
      if (!clause_sat) {
        sat = false;
        break;
      }
    }
    if (!sat) continue;
    Complex w{1.0, 0.0};
    for (std::size_t v = 0; v < f.num_vars; ++v) {
      int lit = ((asg >> v) & 1u) ? static_cast<int>(v) + 1 : -(static_cast<int>(v) + 1);
      w *= f.weight_of(lit);
    }
    total += w;
  }
  return total;
}

/// "QWMC v1" text form. When `real_only` is set (every b_v in {0, r/2}) the
/// weight lines carry a single real column.
inline std::string serialize_qwmc(const WmcFormula& f) {
  bool real_only = true;
  for (const auto& [lit, w] : f.weights)
    if (std::abs(w.imag()) > 1e-15) real_only = false;
  std::ostringstream out;
  out << std::setprecision(15);
  out << "c quadratic SOP weighted-model-count encoding\n";
  out << "c prefactor: amplitude = omega_r^c * count * 2^(-hadamards/2), c=" << f.c
      << " hadamards=" << f.hadamard_count << "\n";
  out << "c x-vars 1.." << f.num_x_vars << ", sign vars " << f.num_x_vars + 1 << ".."
      << f.num_vars << "\n";
  if (real_only) out << "c all weights real\n";
  out << "p qwmc " << f.num_vars << " " << f.clauses.size() << " " << f.r << "\n";
  for (const auto& [lit, w] : f.weights) {
    out << "w " << lit << " " << w.real();
    if (!real_only) out << " " << w.imag();
    out << "\n";
  }
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace sqsim
