#include "hqc/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "hqc/errors.hpp"

namespace hqc {

namespace {

void require_same_space(const CompositeSpace& a, const CompositeSpace& b, const char* what) {
  if (a != b) {
    throw ParameterError(std::string(what) + ": operands live on different spaces");
  }
}

}  // namespace

CompositeSpace::CompositeSpace(std::vector<std::size_t> subsystem_dims)
    : dims_(std::move(subsystem_dims)) {
  if (dims_.empty()) {
    throw ParameterError("CompositeSpace: at least one subsystem is required");
  }
  for (auto d : dims_) {
    if (d == 0) throw ParameterError("CompositeSpace: subsystem dimensions must be positive");
  }
  total_ = std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

CompositeSpace::CompositeSpace(std::initializer_list<std::size_t> subsystem_dims)
    : CompositeSpace(std::vector<std::size_t>(subsystem_dims)) {}

std::size_t CompositeSpace::dim(std::size_t position) const {
  if (position >= dims_.size()) {
    throw ParameterError("CompositeSpace: subsystem position " + std::to_string(position) +
                         " out of range");
  }
  return dims_[position];
}

std::size_t CompositeSpace::index_of(std::span<const std::size_t> levels) const {
  if (levels.size() != dims_.size()) {
    throw ParameterError("CompositeSpace::index_of: wrong number of levels");
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (levels[k] >= dims_[k]) {
      throw ParameterError("CompositeSpace::index_of: level exceeds subsystem dimension");
    }
    index = index * dims_[k] + levels[k];
  }
  return index;
}

std::size_t CompositeSpace::index_of(std::initializer_list<std::size_t> levels) const {
  return index_of(std::span<const std::size_t>(levels.begin(), levels.size()));
}

std::vector<std::size_t> CompositeSpace::levels_of(std::size_t index) const {
  if (index >= total_) throw ParameterError("CompositeSpace::levels_of: index out of range");
  std::vector<std::size_t> levels(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    levels[k] = index % dims_[k];
    index /= dims_[k];
  }
  return levels;
}

Operator::Operator(CompositeSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ParameterError("Operator: matrix shape does not match the space dimension");
  }
}

Operator Operator::zero(const CompositeSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return Operator(space, Matrix::Zero(n, n));
}

Operator Operator::identity(const CompositeSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return Operator(space, Matrix::Identity(n, n));
}

Operator Operator::dagger() const { return Operator(space_, matrix_.adjoint()); }

double Operator::max_norm() const { return max_abs(matrix_); }

double Operator::hermiticity_defect() const {
  const double scale = max_norm();
  if (scale == 0.0) return 0.0;
  return max_abs(matrix_ - matrix_.adjoint()) / scale;
}

bool Operator::is_hermitian(double rel_tol) const { return hermiticity_defect() <= rel_tol; }

Vector Operator::apply(const Vector& ket) const {
  if (ket.size() != matrix_.cols()) throw ParameterError("Operator::apply: dimension mismatch");
  return matrix_ * ket;
}

Complex Operator::expectation(const Vector& ket) const { return ket.dot(apply(ket)); }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator+");
  matrix_ += rhs.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator-");
  matrix_ -= rhs.matrix_;
  return *this;
}

Operator& Operator::operator*=(Complex scalar) {
  matrix_ *= scalar;
  return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
Operator operator*(Complex scalar, Operator op) { return op *= scalar; }
Operator operator*(Operator op, Complex scalar) { return op *= scalar; }
Operator operator-(Operator op) { return op *= -1.0; }

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs.space(), rhs.space(), "matmul");
  return Operator(lhs.space(), lhs.matrix() * rhs.matrix());
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double commutator_norm(const Operator& a, const Operator& b) {
  return commutator(a, b).max_norm();
}

DensityMatrix::DensityMatrix(CompositeSpace space, Matrix matrix, NoCheck)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ParameterError("DensityMatrix: matrix shape does not match the space dimension");
  }
}

DensityMatrix::DensityMatrix(CompositeSpace space, Matrix matrix)
    : DensityMatrix(std::move(space), std::move(matrix), NoCheck{}) {
  if (max_abs(matrix_ - matrix_.adjoint()) > 1e-10) {
    throw ValidationError("DensityMatrix: not Hermitian to 1e-10");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > 1e-8) {
    throw ValidationError("DensityMatrix: trace differs from 1 by more than 1e-8");
  }
  if (min_eigenvalue() < -1e-8) {
    throw ValidationError("DensityMatrix: negative eigenvalue below -1e-8");
  }
}

DensityMatrix DensityMatrix::unchecked(CompositeSpace space, Matrix matrix) {
  return DensityMatrix(std::move(space), std::move(matrix), NoCheck{});
}

DensityMatrix DensityMatrix::pure(const CompositeSpace& space, const Vector& ket) {
  if (ket.size() != static_cast<Eigen::Index>(space.total_dim())) {
    throw ParameterError("DensityMatrix::pure: ket dimension mismatch");
  }
  const double norm = ket.norm();
  if (norm == 0.0) throw ParameterError("DensityMatrix::pure: zero ket");
  const Vector psi = ket / norm;
  return DensityMatrix(space, psi * psi.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix hermitian = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

Operator local(Matrix m) {
  CompositeSpace space{static_cast<std::size_t>(m.rows())};
  return Operator(std::move(space), std::move(m));
}

}  // namespace

Operator sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return local(std::move(m));
}

Operator sigma_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return local(std::move(m));
}

Operator sigma_y() {
  // sigma_y = -i (sigma_+ - sigma_-) in the excited-up convention.
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = -kI;
  m(0, 1) = kI;
  return local(std::move(m));
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return local(std::move(m));
}

Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return local(std::move(m));
}

Operator annihilation(std::size_t fock_cutoff) {
  const auto n = static_cast<Eigen::Index>(fock_cutoff + 1);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return local(std::move(m));
}

Operator creation(std::size_t fock_cutoff) { return annihilation(fock_cutoff).dagger(); }

Operator number(std::size_t fock_cutoff) {
  const auto a = annihilation(fock_cutoff);
  return a.dagger() * a;
}

Operator local_identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return local(Matrix::Identity(n, n));
}

Operator embed(const Operator& local_op, const CompositeSpace& space, std::size_t position) {
  const std::size_t d = space.dim(position);
  if (local_op.dim() != d) {
    throw ParameterError("embed: local operator dimension " + std::to_string(local_op.dim()) +
                         " does not match subsystem " + std::to_string(position) +
                         " of dimension " + std::to_string(d));
  }
  std::size_t left = 1;
  for (std::size_t k = 0; k < position; ++k) left *= space.dim(k);
  std::size_t right = space.total_dim() / (left * d);

  // Kronecker product I_left (x) A (x) I_right written out explicitly.
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  Matrix out = Matrix::Zero(n, n);
  const Matrix& a = local_op.matrix();
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex v = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (v == Complex(0.0)) continue;
        for (std::size_t r = 0; r < right; ++r) {
          const auto row = static_cast<Eigen::Index>((l * d + i) * right + r);
          const auto col = static_cast<Eigen::Index>((l * d + j) * right + r);
          out(row, col) = v;
        }
      }
    }
  }
  return Operator(space, std::move(out));
}

Vector basis_ket(const CompositeSpace& space, std::span<const std::size_t> levels) {
  Vector ket = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
  ket(static_cast<Eigen::Index>(space.index_of(levels))) = 1.0;
  return ket;
}

Vector basis_ket(const CompositeSpace& space, std::initializer_list<std::size_t> levels) {
  return basis_ket(space, std::span<const std::size_t>(levels.begin(), levels.size()));
}

Operator projector(const CompositeSpace& space, const Vector& ket) {
  if (ket.size() != static_cast<Eigen::Index>(space.total_dim())) {
    throw ParameterError("projector: ket dimension mismatch");
  }
  return Operator(space, ket * ket.adjoint());
}

Operator herm_expm(const Operator& hamiltonian, double t) {
  const double defect = hamiltonian.hermiticity_defect();
  if (defect > 1e-12) {
    throw ValidationError("herm_expm: input is not Hermitian (relative defect " +
                          std::to_string(defect) + ")");
  }
  const Matrix h = 0.5 * (hamiltonian.matrix() + hamiltonian.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_expm: eigendecomposition failed");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * (w(k) * t));
  const Matrix& v = solver.eigenvectors();
  return Operator(hamiltonian.space(), v * phases.asDiagonal() * v.adjoint());
}

Matrix restrict_to(const Matrix& op, std::span<const Vector> basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector applied = op * basis[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = basis[static_cast<std::size_t>(i)].dot(applied);
    }
  }
  return out;
}

Matrix restrict_to(const Operator& op, std::span<const Vector> basis) {
  return restrict_to(op.matrix(), basis);
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const Matrix& actual, const Matrix& target) {
  if (actual.rows() != target.rows() || actual.cols() != target.cols()) {
    throw ParameterError("phase_aligned_distance: shape mismatch");
  }
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  target.cwiseAbs().maxCoeff(&r, &c);
  Complex phase(1.0);
  if (std::abs(actual(r, c)) > 0.0 && std::abs(target(r, c)) > 0.0) {
    phase = (actual(r, c) / std::abs(actual(r, c))) / (target(r, c) / std::abs(target(r, c)));
  }
  return max_abs(actual * std::conj(phase) - target);
}

}  // namespace hqc
