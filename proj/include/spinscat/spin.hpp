#pragma once

#include <array>
#include <complex>
#include <string>

namespace spinscat {

enum class Spin : unsigned char { Up, Down };

inline constexpr double sz(Spin s) { return s == Spin::Up ? 0.5 : -0.5; }
inline constexpr Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

/// Product state of (electron, impurity 1, impurity 2).
struct SpinLabel {
  Spin electron;
  Spin impurity1;
  Spin impurity2;

  double total_sz() const { return sz(electron) + sz(impurity1) + sz(impurity2); }
  /// Index into the impurity basis |uu>, |ud>, |du>, |dd>.
  int impurity_index() const {
    return (impurity1 == Spin::Down ? 2 : 0) + (impurity2 == Spin::Down ? 1 : 0);
  }
  /// Index into the 8-dim product space, electron as most significant bit.
  int product_index() const {
    return (electron == Spin::Down ? 4 : 0) + impurity_index();
  }
  std::string to_string() const;

  friend bool operator==(const SpinLabel&, const SpinLabel&) = default;
};

enum class Subspace { PlusHalf, MinusHalf };

/// Three spin channels spanning the m_T = +-1/2 subspace. Channel order for
/// m_T = +1/2 is |uud>, |udu>, |duu>; the -1/2 basis is its global flip.
class SpinChannelBasis {
public:
  static SpinChannelBasis plus_half();
  static SpinChannelBasis minus_half();

  Subspace subspace() const { return subspace_; }
  double total_sz() const { return subspace_ == Subspace::PlusHalf ? 0.5 : -0.5; }
  const std::array<SpinLabel, 3>& labels() const { return labels_; }
  const SpinLabel& operator[](int channel) const { return labels_.at(channel); }

  friend bool operator==(const SpinChannelBasis&, const SpinChannelBasis&) = default;

private:
  SpinChannelBasis(Subspace s, std::array<SpinLabel, 3> labels)
      : subspace_(s), labels_(labels) {}

  friend SpinChannelBasis mirror_basis(const SpinChannelBasis&);

  Subspace subspace_;
  std::array<SpinLabel, 3> labels_;
};

SpinChannelBasis mirror_basis(const SpinChannelBasis& basis);

using RealMatrix3 = std::array<std::array<double, 3>, 3>;

/// S_e . S_i restricted to a three-channel basis. Entries are exact
/// multiples of 1/4.
struct ExchangeMatrix {
  int impurity = 1;
  RealMatrix3 entries{};

  double operator()(int row, int col) const { return entries[row][col]; }
};

/// Matrix elements <m| S_e . S_i |n> obtained by acting with the exchange
/// operator on product states. Throws InvalidParameter unless i is 1 or 2.
ExchangeMatrix exchange_matrix(int impurity, const SpinChannelBasis& basis);

/// The unprojected operator on (C^2)^3 built from Kronecker products of spin
/// matrices, together with the isometry onto a channel basis.
struct FullSpaceOracle {
  using Matrix8 = std::array<std::array<double, 8>, 8>;
  Matrix8 op{};
  /// Rows are the channel basis vectors expressed in the product basis.
  std::array<std::array<double, 8>, 3> isometry{};

  RealMatrix3 projected() const;
};

FullSpaceOracle full_space_oracle(int impurity,
                                  const SpinChannelBasis& basis = SpinChannelBasis::plus_half());

/// Incoming spin amplitudes a_j over the channel basis, unit norm.
class IncomingSpinor {
public:
  /// |duu>, the parallel-impurity initial state.
  IncomingSpinor() : amplitudes_{0.0, 0.0, 1.0} {}
  /// Throws InvalidParameter if the amplitudes are not normalized to 1e-12.
  explicit IncomingSpinor(const std::array<std::complex<double>, 3>& amplitudes);

  static IncomingSpinor channel(int j);

  const std::array<std::complex<double>, 3>& amplitudes() const { return amplitudes_; }
  std::complex<double> operator[](int j) const { return amplitudes_.at(j); }

private:
  std::array<std::complex<double>, 3> amplitudes_;
};

} // namespace spinscat
