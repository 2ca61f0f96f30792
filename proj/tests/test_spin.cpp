#include <doctest.h>

#include <set>

#include "spinscat/errors.hpp"
#include "spinscat/linalg.hpp"
#include "spinscat/spin.hpp"

using namespace spinscat;

namespace {

RealMatrix3 mul(const RealMatrix3& a, const RealMatrix3& b) {
  RealMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

} // namespace

TEST_CASE("channel basis ordering") {
  const auto b = SpinChannelBasis::plus_half();
  CHECK(b[0].to_string() == "|uud>");
  CHECK(b[1].to_string() == "|udu>");
  CHECK(b[2].to_string() == "|duu>");
  std::set<int> seen;
  for (const SpinLabel& l : b.labels()) {
    CHECK(l.total_sz() == 0.5);
    seen.insert(l.product_index());
  }
  CHECK(seen.size() == 3);
  for (const SpinLabel& l : SpinChannelBasis::minus_half().labels()) CHECK(l.total_sz() == -0.5);
}

TEST_CASE("exchange matrices, exact entries") {
  const RealMatrix3 m1{{{0.25, 0.0, 0.0}, {0.0, -0.25, 0.5}, {0.0, 0.5, -0.25}}};
  const RealMatrix3 m2{{{-0.25, 0.0, 0.5}, {0.0, 0.25, 0.0}, {0.5, 0.0, -0.25}}};
  CHECK(exchange_matrix(1, SpinChannelBasis::plus_half()).entries == m1);
  CHECK(exchange_matrix(2, SpinChannelBasis::plus_half()).entries == m2);
  CHECK_THROWS_AS(exchange_matrix(0, SpinChannelBasis::plus_half()), InvalidParameter);
  CHECK_THROWS_AS(exchange_matrix(3, SpinChannelBasis::plus_half()), InvalidParameter);
}

TEST_CASE("exchange matrices equal the projected 8x8 operator") {
  for (const auto& b : {SpinChannelBasis::plus_half(), SpinChannelBasis::minus_half()})
    for (int i : {1, 2}) {
      const FullSpaceOracle o = full_space_oracle(i, b);
      CHECK(exchange_matrix(i, b).entries == o.projected());
      double tr = 0.0;
      for (int k = 0; k < 8; ++k) tr += o.op[k][k];
      CHECK(tr == 0.0);
      // [op, S_z total] = 0: only equal-S_z product states couple
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
          if (o.op[r][c] != 0.0) CHECK(__builtin_popcount(r) == __builtin_popcount(c));
    }
}

TEST_CASE("exchange spectrum and minimal polynomial") {
  for (int i : {1, 2}) {
    const ExchangeMatrix m = exchange_matrix(i, SpinChannelBasis::plus_half());
    ComplexMatrix h(3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        h(r, c) = m(r, c);
        CHECK(m(r, c) == m(c, r));
      }
    const auto ev = hermitian_eigenvalues(h);
    CHECK(std::abs(ev[0] - 0.25) <= 1e-14);
    CHECK(std::abs(ev[1] - 0.25) <= 1e-14);
    CHECK(std::abs(ev[2] + 0.75) <= 1e-14);

    RealMatrix3 a = m.entries, b = m.entries;
    for (int k = 0; k < 3; ++k) a[k][k] -= 0.25, b[k][k] += 0.75;
    const RealMatrix3 zero{};
    CHECK(mul(a, b) == zero);
  }
}

TEST_CASE("impurity relabelling swaps channels 1 and 2") {
  const RealMatrix3 p{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
  const auto b = SpinChannelBasis::plus_half();
  CHECK(mul(p, mul(exchange_matrix(1, b).entries, p)) == exchange_matrix(2, b).entries);
}

TEST_CASE("mirror basis") {
  const auto b = SpinChannelBasis::plus_half();
  const auto m = mirror_basis(b);
  CHECK(m.subspace() == Subspace::MinusHalf);
  CHECK(m[2].to_string() == "|udd>");
  CHECK(mirror_basis(m) == b);
  CHECK(m == SpinChannelBasis::minus_half());
  for (int i : {1, 2}) CHECK(exchange_matrix(i, m).entries == exchange_matrix(i, b).entries);
}

TEST_CASE("incoming spinor") {
  const IncomingSpinor def;
  CHECK(def[2] == std::complex<double>(1.0, 0.0));
  CHECK(def[0] == std::complex<double>(0.0, 0.0));
  const double s = std::sqrt(0.5);
  CHECK_NOTHROW(IncomingSpinor({s, std::complex<double>(0, s), 0.0}));
  CHECK_THROWS_AS(IncomingSpinor({1.0, 1.0, 0.0}), InvalidParameter);
  CHECK(IncomingSpinor::channel(0)[0] == std::complex<double>(1.0, 0.0));
}
