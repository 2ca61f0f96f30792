#include "spinscat/spin.hpp"

#include <cmath>

#include "spinscat/errors.hpp"

namespace spinscat {

namespace {

constexpr SpinLabel kPlusHalf[3] = {
    {Spin::Up, Spin::Up, Spin::Down},
    {Spin::Up, Spin::Down, Spin::Up},
    {Spin::Down, Spin::Up, Spin::Up},
};

SpinLabel flipped(const SpinLabel& l) {
  return {flip(l.electron), flip(l.impurity1), flip(l.impurity2)};
}

Spin impurity_spin(const SpinLabel& l, int impurity) {
  return impurity == 1 ? l.impurity1 : l.impurity2;
}

void check_impurity(int impurity) {
  if (impurity != 1 && impurity != 2)
    throw InvalidParameter("impurity index must be 1 or 2, got " + std::to_string(impurity));
}

} // namespace

std::string SpinLabel::to_string() const {
  auto c = [](Spin s) { return s == Spin::Up ? 'u' : 'd'; };
  return {'|', c(electron), c(impurity1), c(impurity2), '>'};
}

SpinChannelBasis SpinChannelBasis::plus_half() {
  return {Subspace::PlusHalf, {kPlusHalf[0], kPlusHalf[1], kPlusHalf[2]}};
}

SpinChannelBasis SpinChannelBasis::minus_half() { return mirror_basis(plus_half()); }

SpinChannelBasis mirror_basis(const SpinChannelBasis& basis) {
  const auto& l = basis.labels();
  const Subspace s =
      basis.subspace() == Subspace::PlusHalf ? Subspace::MinusHalf : Subspace::PlusHalf;
  return {s, {flipped(l[0]), flipped(l[1]), flipped(l[2])}};
}

ExchangeMatrix exchange_matrix(int impurity, const SpinChannelBasis& basis) {
  check_impurity(impurity);
  ExchangeMatrix m;
  m.impurity = impurity;
  const auto& labels = basis.labels();
  for (int n = 0; n < 3; ++n) {
    const SpinLabel& ket = labels[n];
    const Spin se = ket.electron;
    const Spin si = impurity_spin(ket, impurity);
    // Ising part is diagonal.
    m.entries[n][n] += sz(se) * sz(si);
    // (S+ S- + S- S+)/2 swaps anti-aligned electron and impurity spins.
    if (se != si) {
      SpinLabel swapped = ket;
      swapped.electron = si;
      (impurity == 1 ? swapped.impurity1 : swapped.impurity2) = se;
      for (int row = 0; row < 3; ++row)
        if (labels[row] == swapped) m.entries[row][n] += 0.5;
    }
  }
  return m;
}

namespace {

using C2 = std::array<std::array<std::complex<double>, 2>, 2>;
using C8 = std::array<std::array<std::complex<double>, 8>, 8>;

// Basis order within each factor: index 0 = up, 1 = down.
const C2 kSx{{{0.0, 0.5}, {0.5, 0.0}}};
const C2 kSy{{{0.0, std::complex<double>(0.0, -0.5)}, {std::complex<double>(0.0, 0.5), 0.0}}};
const C2 kSz{{{0.5, 0.0}, {0.0, -0.5}}};
const C2 kId{{{1.0, 0.0}, {0.0, 1.0}}};

C8 kron3(const C2& a, const C2& b, const C2& c) {
  C8 out{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      out[i][j] = a[i >> 2][j >> 2] * b[(i >> 1) & 1][(j >> 1) & 1] * c[i & 1][j & 1];
  return out;
}

} // namespace

FullSpaceOracle full_space_oracle(int impurity, const SpinChannelBasis& basis) {
  check_impurity(impurity);
  FullSpaceOracle oracle;
  const C2* comps[3] = {&kSx, &kSy, &kSz};
  for (const C2* s : comps) {
    const C8 term = impurity == 1 ? kron3(*s, *s, kId) : kron3(*s, kId, *s);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) oracle.op[i][j] += term[i][j].real();
  }
  for (int j = 0; j < 3; ++j) oracle.isometry[j][basis[j].product_index()] = 1.0;
  return oracle;
}

RealMatrix3 FullSpaceOracle::projected() const {
  RealMatrix3 out{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double acc = 0.0;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) acc += isometry[a][i] * op[i][j] * isometry[b][j];
      out[a][b] = acc;
    }
  return out;
}

IncomingSpinor::IncomingSpinor(const std::array<std::complex<double>, 3>& amplitudes)
    : amplitudes_(amplitudes) {
  double norm = 0.0;
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw InvalidParameter("incoming spinor has non-finite amplitude");
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > 1e-12)
    throw InvalidParameter("incoming spinor must have unit norm, got |a|^2 = " +
                           std::to_string(norm));
}

IncomingSpinor IncomingSpinor::channel(int j) {
  if (j < 0 || j > 2) throw InvalidParameter("channel index must be 0, 1 or 2");
  std::array<std::complex<double>, 3> a{};
  a[j] = 1.0;
  return IncomingSpinor(a);
}

} // namespace spinscat
