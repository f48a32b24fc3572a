#pragma once

// In-place statevector kernels. Qubit 0 is the most significant index bit.

#include "ghzt/tensor.hpp"

#include <cstdint>

namespace ghzt::gates {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_symbol(Pauli p) noexcept;

inline std::uint64_t qubit_mask(int num_qubits, int qubit) noexcept {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

void apply_x(CVector& amps, int num_qubits, int qubit);
void apply_y(CVector& amps, int num_qubits, int qubit);
void apply_z(CVector& amps, int num_qubits, int qubit);
void apply_h(CVector& amps, int num_qubits, int qubit);
void apply_pauli(CVector& amps, int num_qubits, int qubit, Pauli p);
void apply_cnot(CVector& amps, int num_qubits, int control, int target);

}  // namespace ghzt::gates
