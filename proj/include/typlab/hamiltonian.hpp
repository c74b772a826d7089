#pragma once

#include <Eigen/Dense>

#include "typlab/basis.hpp"
#include "typlab/chain.hpp"
#include "typlab/rng.hpp"

namespace typlab {

/// Local bond operator of the chain as a dense d x d matrix in level order.
Eigen::MatrixXd bond_operator(const ChainSpec& spec);

/// Interaction Hamiltonian projected onto the sector: the matrix of
/// coupling * sum_{j=0}^{N-2} O_j O_{j+1} between sector configurations.
/// Only charge-conserving transitions of each bond contribute, so the
/// result is the exact sector block of the open-chain interaction. The
/// returned matrix is symmetric bit-for-bit.
Eigen::MatrixXd build_sector_hamiltonian(const ChainSpec& spec, const SectorBasis& basis);

/// Brute-force companion to build_sector_hamiltonian: the full d^N x d^N
/// interaction matrix, assembled from explicit Kronecker products over the
/// complete product basis (capped at dimension 4096). Sector blocks are
/// extracted by slicing rows and columns at the sector's packed words.
Eigen::MatrixXd build_full_hamiltonian_oracle(const ChainSpec& spec);

/// Random real symmetric matrix with independent Gaussian entries:
/// off-diagonal ~ N(0,1), diagonal ~ N(0,2). Symmetric bit-for-bit and
/// reproducible for a given generator state.
Eigen::MatrixXd sample_goe(Eigen::Index dimension, Rng& rng);

/// Random zero-diagonal spin-1 bond operator with N(0,1) off-diagonals.
SpinOneMatrix sample_spin_one_interaction(Rng& rng);

}  // namespace typlab
