#pragma once

// Dense complex linear algebra for small composite quantum systems.
//
// Subsystem ordering is fixed by CompositeSpace and follows the ket
// convention |a b c> = |a> (x) |b> (x) |c>: the first subsystem is the most
// significant digit of the flat basis index. Two-level transmons use
// index 0 = ground, index 1 = excited, with sigma_z|1> = +|1> and
// sigma_+|0> = |1>.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

class CompositeSpace {
 public:
  CompositeSpace() = default;
  explicit CompositeSpace(std::vector<std::size_t> subsystem_dims);
  CompositeSpace(std::initializer_list<std::size_t> subsystem_dims);

  const std::vector<std::size_t>& subsystem_dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  std::size_t num_subsystems() const { return dims_.size(); }
  std::size_t dim(std::size_t position) const;

  /// Flat basis index of the product state with the given local levels.
  std::size_t index_of(std::span<const std::size_t> levels) const;
  std::size_t index_of(std::initializer_list<std::size_t> levels) const;
  /// Inverse of index_of.
  std::vector<std::size_t> levels_of(std::size_t index) const;

  bool operator==(const CompositeSpace&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// Square matrix acting on a CompositeSpace.
class Operator {
 public:
  Operator() = default;
  Operator(CompositeSpace space, Matrix matrix);

  static Operator zero(const CompositeSpace& space);
  static Operator identity(const CompositeSpace& space);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return space_.total_dim(); }

  Operator dagger() const;
  Complex trace() const { return matrix_.trace(); }
  /// Max-norm of (A - A^dagger) relative to the max-norm of A.
  double hermiticity_defect() const;
  bool is_hermitian(double rel_tol = 1e-12) const;
  double max_norm() const;

  Vector apply(const Vector& ket) const;
  Complex expectation(const Vector& ket) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex scalar);

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator-(Operator lhs, const Operator& rhs);
Operator operator*(Complex scalar, Operator op);
Operator operator*(Operator op, Complex scalar);
Operator operator-(Operator op);
/// Matrix product; both operands must live on the same space.
Operator operator*(const Operator& lhs, const Operator& rhs);

inline Operator matmul(const Operator& a, const Operator& b) { return a * b; }
inline Operator dagger(const Operator& a) { return a.dagger(); }
inline Complex trace(const Operator& a) { return a.trace(); }
Operator commutator(const Operator& a, const Operator& b);
/// Max-norm of the commutator, a convenience for invariant checks.
double commutator_norm(const Operator& a, const Operator& b);

/// Density matrix with validated invariants: Hermitian to 1e-10, unit trace
/// to 1e-8, eigenvalues >= -1e-8.
class DensityMatrix {
 public:
  DensityMatrix(CompositeSpace space, Matrix matrix);

  static DensityMatrix pure(const CompositeSpace& space, const Vector& ket);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return space_.total_dim(); }

  double min_eigenvalue() const;
  double trace_real() const { return matrix_.trace().real(); }

  /// Builds without checking; used by integrators that validate separately.
  static DensityMatrix unchecked(CompositeSpace space, Matrix matrix);

 private:
  struct NoCheck {};
  DensityMatrix(CompositeSpace space, Matrix matrix, NoCheck);

  CompositeSpace space_;
  Matrix matrix_;
};

// Single-subsystem operators. Each returns an Operator on a one-entry space.
Operator sigma_z();
Operator sigma_x();
Operator sigma_y();
Operator sigma_plus();
Operator sigma_minus();
/// Bosonic annihilation operator truncated at the given Fock cutoff
/// (dimension cutoff + 1).
Operator annihilation(std::size_t fock_cutoff);
Operator creation(std::size_t fock_cutoff);
Operator number(std::size_t fock_cutoff);
Operator local_identity(std::size_t dim);

/// I (x) ... (x) local_op (x) ... (x) I with local_op at `position`.
Operator embed(const Operator& local_op, const CompositeSpace& space, std::size_t position);

/// Product basis ket with the given local levels.
Vector basis_ket(const CompositeSpace& space, std::initializer_list<std::size_t> levels);
Vector basis_ket(const CompositeSpace& space, std::span<const std::size_t> levels);
Operator projector(const CompositeSpace& space, const Vector& ket);

/// exp(-i H t) by eigendecomposition. Throws ValidationError if H is not
/// Hermitian to 1e-12 (relative, max-norm).
Operator herm_expm(const Operator& hamiltonian, double t);

/// Matrix of <bra_i| A |ket_j> for the given basis vectors.
Matrix restrict_to(const Operator& op, std::span<const Vector> basis);
Matrix restrict_to(const Matrix& op, std::span<const Vector> basis);

/// Max-norm distance between `actual` and `target` after removing the
/// global phase read off the largest-magnitude entry of `target`.
double phase_aligned_distance(const Matrix& actual, const Matrix& target);

double max_abs(const Matrix& m);

}  // namespace hqc
