#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace hermvp {

/// Largest truncation degree a HermiteBasis accepts. Products of the form
/// 2^n n! leave double range near n = 150.
inline constexpr int kMaxDegree = 128;

enum class BasisKind { AW, SW };

const char* to_string(BasisKind kind) noexcept;
BasisKind basis_kind_from_string(const std::string_view text);

/// Physicists' Hermite polynomial H_n(v) by the three-term recursion
/// H_{n+1} = 2v H_n - 2n H_{n-1}.
double hermite_eval(int n, double v);

/// H_0(v), ..., H_N(v) in one pass.
std::vector<double> hermite_eval_all(int N, double v);

/// Orthonormal Hermite polynomials H_n / sqrt(sqrt(pi) 2^n n!) for n = 0..N.
/// Stays finite where H_n itself would overflow.
std::vector<double> hermite_orthonormal_all(int N, double v);

/// \int H_n^2 e^{-v^2} dv = sqrt(pi) 2^n n!. Throws ErrorKind::Overflow past
/// double range.
double hermite_norm_sq(int n);

/// Factor mapping H_n to its m-th derivative: H_n^{(m)} = factor * H_{n-m}.
/// Zero when n < m, otherwise 2^m n!/(n-m)!.
double hermite_derivative_factor(int n, int m);

/// AW: psi_n = gamma_n H_n e^{-v^2}, psi^n = gamma~_n H_n.
/// SW: psi_n = psi^n = gamma_n H_n e^{-v^2/2}.
/// The pair is biorthogonal under the plain L2 pairing.
class HermiteBasis {
 public:
  HermiteBasis(BasisKind kind, int N);

  BasisKind kind() const noexcept { return tables_->kind; }
  int N() const noexcept { return tables_->N; }
  std::size_t size() const noexcept { return tables_->gammas.size(); }

  std::span<const double> gammas() const noexcept { return tables_->gammas; }
  std::span<const double> dual_gammas() const noexcept { return tables_->dual_gammas; }
  /// sqrt(pi) 2^n n!, shared by both kinds.
  std::span<const double> norms_sq() const noexcept { return tables_->norms_sq; }

  double gamma(int n) const { return tables_->gammas.at(static_cast<std::size_t>(n)); }
  double dual_gamma(int n) const { return tables_->dual_gammas.at(static_cast<std::size_t>(n)); }

  friend bool operator==(const HermiteBasis& a, const HermiteBasis& b) noexcept {
    return a.kind() == b.kind() && a.N() == b.N();
  }

 private:
  struct Tables {
    BasisKind kind;
    int N;
    std::vector<double> gammas;
    std::vector<double> dual_gammas;
    std::vector<double> norms_sq;
  };
  std::shared_ptr<const Tables> tables_;
};

}  // namespace hermvp
