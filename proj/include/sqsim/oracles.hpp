#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sqsim/circuit.hpp"
#include "sqsim/common.hpp"
#include "sqsim/sop.hpp"
#include "sqsim/sop_dp.hpp"

namespace sqsim {

inline constexpr std::size_t kBruteForceCap = 24;

/// Ground truth for SopCount: enumerate all 2^|V| assignments.
inline ResidueCounts sopcount_brute(const SopInstance& s) {
  if (s.status != SopStatus::Consistent) throw ValidationError("instance is inconsistent");
  const std::size_t n = s.num_vars();
  if (n > kBruteForceCap)
    throw ResourceCapError("sopcount_brute capped at " + std::to_string(kBruteForceCap) +
                           " variables");
  ResidueCounts out;
  out.r = s.r;
  out.counts.assign(s.r, 0);
  std::vector<bool> x(n);
  for (std::size_t asg = 0; asg < (std::size_t{1} << n); ++asg) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (asg >> i) & 1u;
    out.counts[evaluate_f(s, x)] += 1;
  }
  return out;
}

/// Dense statevector, qubit i at bit position i of the basis index.
struct StateVector {
  std::size_t n_qubits = 0;
  std::vector<Complex> amplitudes;

  explicit StateVector(std::size_t n) : n_qubits(n), amplitudes(std::size_t{1} << n) {}

  double norm2() const {
    double t = 0;
    for (const auto& a : amplitudes) t += std::norm(a);
    return t;
  }

  void apply_h(std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      if (i & bit) continue;
      Complex a0 = amplitudes[i];
      Complex a1 = amplitudes[i | bit];
      amplitudes[i] = (a0 + a1) * inv_sqrt2;
      amplitudes[i | bit] = (a0 - a1) * inv_sqrt2;
    }
  }

  void apply_diag(std::size_t q, int r, int p0, int p1) {
    const std::size_t bit = std::size_t{1} << q;
    Complex w0 = root_of_unity(r, p0);
    Complex w1 = root_of_unity(r, p1);
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
      amplitudes[i] *= (i & bit) ? w1 : w0;
  }

  void apply_cz(std::size_t a, std::size_t b) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
      if ((i & mask) == mask) amplitudes[i] = -amplitudes[i];
  }
};

inline constexpr std::size_t kStatevectorCap = 24;

inline Complex statevector_amplitude(const Circuit& c, const std::vector<bool>& in_bits,
                                     const std::vector<bool>& out_bits) {
  validate_circuit(c);
  if (in_bits.size() != c.n_qubits || out_bits.size() != c.n_qubits)
    throw ValidationError("pin bit strings must have length n_qubits");
  if (c.n_qubits > kStatevectorCap)
    throw ResourceCapError("statevector capped at " + std::to_string(kStatevectorCap) +
                           " qubits");
  StateVector sv(c.n_qubits);
  std::size_t in_index = 0, out_index = 0;
  for (std::size_t i = 0; i < c.n_qubits; ++i) {
    if (in_bits[i]) in_index |= std::size_t{1} << i;
    if (out_bits[i]) out_index |= std::size_t{1} << i;
  }
  sv.amplitudes[in_index] = 1.0;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        sv.apply_h(g.qubit_a);
        break;
      case GateKind::CZ:
        sv.apply_cz(g.qubit_a, g.qubit_b);
        break;
      case GateKind::Diag:
        sv.apply_diag(g.qubit_a, c.modulus, g.p0, g.p1);
        break;
    }
  }
  return sv.amplitudes[out_index];
}

inline Complex statevector_amplitude(const Circuit& c, const std::string& in_bits,
                                     const std::string& out_bits) {
  return statevector_amplitude(c, parse_bits(in_bits, c.n_qubits, "input"),
                               parse_bits(out_bits, c.n_qubits, "output"));
}

}  // namespace sqsim
