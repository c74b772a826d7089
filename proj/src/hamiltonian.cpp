#include "typlab/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "typlab/errors.hpp"

namespace typlab {

namespace {

void check_pair(const ChainSpec& spec, const SectorBasis& basis) {
  spec.validate();
  if (spec.chain_length != basis.chain_length() || spec.local_dimension != basis.local_dimension())
    throw std::invalid_argument("chain spec and sector basis describe different chains");
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXd bond_operator(const ChainSpec& spec) {
  if (const auto* half = std::get_if<SpinHalfAngle>(&spec.interaction)) {
    Eigen::MatrixXd op(2, 2);
    // Level order (down, up): sigma_z = diag(-1, +1).
    op << -std::cos(half->theta), std::sin(half->theta),
           std::sin(half->theta), std::cos(half->theta);
    return op;
  }
  const auto& a = std::get<SpinOneMatrix>(spec.interaction);
  Eigen::MatrixXd op(3, 3);
  op <<      0, a.a12, a.a13,
         a.a12,     0, a.a23,
         a.a13, a.a23,     0;
  return op;
}

Eigen::MatrixXd build_sector_hamiltonian(const ChainSpec& spec, const SectorBasis& basis) {
  check_pair(spec, basis);
  const int n = basis.chain_length();
  const int d = basis.local_dimension();
  const std::int64_t dim = basis.dimension();
  const Eigen::MatrixXd op = bond_operator(spec);
  const double g = spec.coupling;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const std::uint64_t source = basis.word(col);
    const auto levels = basis.level_row(col);
    for (int bond = 0; bond + 1 < n; ++bond) {
      const int a = levels[static_cast<std::size_t>(bond)];
      const int b = levels[static_cast<std::size_t>(bond + 1)];
      const int bond_charge = level_charge(d, a) + level_charge(d, b);
      for (int ap = 0; ap < d; ++ap) {
        if (op(ap, a) == 0.0) continue;
        for (int bp = 0; bp < d; ++bp) {
          const double weight = op(ap, a) * op(bp, b);
          if (weight == 0.0) continue;
          // The projector keeps only transitions that conserve the charge of
          // the bond; the rest of the chain is untouched, so this is exactly
          // membership of the target in the sector.
          if (level_charge(d, ap) + level_charge(d, bp) != bond_charge) continue;
          const std::uint64_t target = source +
              (static_cast<std::uint64_t>(ap) - static_cast<std::uint64_t>(a)) * basis.site_weight(bond) +
              (static_cast<std::uint64_t>(bp) - static_cast<std::uint64_t>(b)) * basis.site_weight(bond + 1);
          const std::int64_t row = basis.rank(target);
          h(row, col) += g * weight;
        }
      }
    }
  }
  // The bond operator is symmetric, so the assembly above already produces a
  // symmetric matrix; mirroring the lower triangle pins the bit-for-bit
  // symmetry contract regardless of accumulation order.
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < i; ++j) h(j, i) = h(i, j);
  return h;
}

Eigen::MatrixXd build_full_hamiltonian_oracle(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.chain_length;
  const int d = spec.local_dimension;
  double full_dim = std::pow(static_cast<double>(d), n);
  if (full_dim > 4096.0)
    throw CapacityError("full product space of dimension " + std::to_string(full_dim) +
                        " exceeds the 4096 oracle cap");
  const auto dim = static_cast<Eigen::Index>(full_dim);
  const Eigen::MatrixXd op = bond_operator(spec);
  const Eigen::MatrixXd bond = kron(op, op);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::Index left_dim = 1;
  for (int site = 0; site + 1 < n; ++site) {
    const Eigen::Index right_dim = dim / (left_dim * d * d);
    h += kron(kron(Eigen::MatrixXd::Identity(left_dim, left_dim), bond),
              Eigen::MatrixXd::Identity(right_dim, right_dim));
    left_dim *= d;
  }
  return spec.coupling * h;
}

Eigen::MatrixXd sample_goe(Eigen::Index dimension, Rng& rng) {
  if (dimension < 2) throw std::invalid_argument("GOE sampling needs dimension >= 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double diag_scale = std::sqrt(2.0);
  Eigen::MatrixXd h(dimension, dimension);
  for (Eigen::Index i = 0; i < dimension; ++i) {
    h(i, i) = diag_scale * gauss(rng);
    for (Eigen::Index j = i + 1; j < dimension; ++j) {
      const double v = gauss(rng);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

SpinOneMatrix sample_spin_one_interaction(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpinOneMatrix a;
  a.a12 = gauss(rng);
  a.a13 = gauss(rng);
  a.a23 = gauss(rng);
  return a;
}

std::uint64_t chain_spec_hash(const ChainSpec& spec) {
  char buf[192];
  if (const auto* half = std::get_if<SpinHalfAngle>(&spec.interaction)) {
    std::snprintf(buf, sizeof buf, "n=%d;d=%d;delta=%.17g;g=%.17g;theta=%.17g", spec.chain_length,
                  spec.local_dimension, spec.level_splitting, spec.coupling, half->theta);
  } else {
    const auto& a = std::get<SpinOneMatrix>(spec.interaction);
    std::snprintf(buf, sizeof buf, "n=%d;d=%d;delta=%.17g;g=%.17g;a=%.17g,%.17g,%.17g",
                  spec.chain_length, spec.local_dimension, spec.level_splitting, spec.coupling,
                  a.a12, a.a13, a.a23);
  }
  return fnv1a(buf);
}

}  // namespace typlab
