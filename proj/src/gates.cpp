#include "ghzt/gates.hpp"

#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <utility>

namespace ghzt::gates {

namespace {

void check(const CVector& amps, int num_qubits, int qubit) {
  if (amps.size() != (Eigen::Index{1} << num_qubits)) {
    throw DimensionMismatch(fmt::format("buffer of size {} is not a {}-qubit register", amps.size(), num_qubits));
  }
  if (qubit < 0 || qubit >= num_qubits) {
    throw InvalidArgument(fmt::format("qubit {} out of range for {} qubits", qubit, num_qubits));
  }
}

}  // namespace

char pauli_symbol(Pauli p) noexcept {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    case Pauli::I: break;
  }
  return 'I';
}

void apply_x(CVector& amps, int num_qubits, int qubit) {
  check(amps, num_qubits, qubit);
  const auto mask = static_cast<Eigen::Index>(qubit_mask(num_qubits, qubit));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if ((i & mask) == 0) std::swap(amps(i), amps(i | mask));
  }
}

void apply_y(CVector& amps, int num_qubits, int qubit) {
  check(amps, num_qubits, qubit);
  const auto mask = static_cast<Eigen::Index>(qubit_mask(num_qubits, qubit));
  const Amplitude i_unit{0.0, 1.0};
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if ((i & mask) == 0) {
      const Amplitude a0 = amps(i);
      const Amplitude a1 = amps(i | mask);
      amps(i) = -i_unit * a1;
      amps(i | mask) = i_unit * a0;
    }
  }
}

void apply_z(CVector& amps, int num_qubits, int qubit) {
  check(amps, num_qubits, qubit);
  const auto mask = static_cast<Eigen::Index>(qubit_mask(num_qubits, qubit));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if ((i & mask) != 0) amps(i) = -amps(i);
  }
}

void apply_h(CVector& amps, int num_qubits, int qubit) {
  check(amps, num_qubits, qubit);
  const auto mask = static_cast<Eigen::Index>(qubit_mask(num_qubits, qubit));
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if ((i & mask) == 0) {
      const Amplitude a0 = amps(i);
      const Amplitude a1 = amps(i | mask);
      amps(i) = r * (a0 + a1);
      amps(i | mask) = r * (a0 - a1);
    }
  }
}

void apply_pauli(CVector& amps, int num_qubits, int qubit, Pauli p) {
  switch (p) {
    case Pauli::I: check(amps, num_qubits, qubit); return;
    case Pauli::X: apply_x(amps, num_qubits, qubit); return;
    case Pauli::Y: apply_y(amps, num_qubits, qubit); return;
    case Pauli::Z: apply_z(amps, num_qubits, qubit); return;
  }
}

void apply_cnot(CVector& amps, int num_qubits, int control, int target) {
  check(amps, num_qubits, control);
  check(amps, num_qubits, target);
  if (control == target) throw InvalidArgument("CNOT control and target coincide");
  const auto cmask = static_cast<Eigen::Index>(qubit_mask(num_qubits, control));
  const auto tmask = static_cast<Eigen::Index>(qubit_mask(num_qubits, target));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if ((i & cmask) != 0 && (i & tmask) == 0) std::swap(amps(i), amps(i | tmask));
  }
}

}  // namespace ghzt::gates
