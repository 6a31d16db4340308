#pragma once

#include "acspin/system.hpp"
#include "acspin/types.hpp"

namespace acspin {

enum class Axis { X, Y, Z };

// Spin-1/2 operator S_axis = sigma_axis / 2 in the basis {|up>, |down>}.
Mat pauli_operator(Axis axis);

// 4x4 embedding of S_axis acting on one site of the pair, basis ordered
// |uu>, |ud>, |du>, |dd> with the site-1 factor leftmost.
Mat embed_pair_operator(Axis axis, int site);

// Observable operator: S_axis for a single spin, (S^1 + S^2)/2 for the pair
// (note the 1/2 normalization; expectations range in [-1/2, 1/2] either way).
Mat total_spin_operator(const SystemSpec& spec, Axis axis);

// H0 = h0 S_z for one spin;
// H0 = h0 (S_z^1 + S_z^2) - Jx S_x^1 S_x^2 - Jy S_y^1 S_y^2 - Jz S_z^1 S_z^2
// for the pair. The exchange enters with a minus sign: J > 0 is ferromagnetic.
Mat build_static_hamiltonian(const SystemSpec& spec);

// Drive coupling V with H(t) = H0 + h(t) V:
// V = alpha S_x + gamma S_z (single), alpha (S_x^1+S_x^2) + gamma (S_z^1+S_z^2) (pair).
Mat build_drive_coupling(const SystemSpec& spec);

// H(t) = H0 + h(t) V.
Mat hamiltonian_at(const SystemSpec& spec, double t);

}  // namespace acspin
