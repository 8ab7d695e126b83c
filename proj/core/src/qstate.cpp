// Copyright 2026 The nlcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlcc/qstate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlcc {

namespace {

void check_dim_power_of_two(std::uint64_t d) {
  if (d == 0 || (d & (d - 1)) != 0) {
    throw std::invalid_argument("StateVector: amplitude count must be a power of two");
  }
}

int qubits_for_dim(std::uint64_t d) {
  int q = 0;
  while ((std::uint64_t{1} << q) < d) ++q;
  return q;
}

}  // namespace

// ---- Operator ----

Operator Operator::identity(int dim) {
  Operator o(dim);
  for (int i = 0; i < dim; ++i) o.at(i, i) = 1.0;
  return o;
}

Operator Operator::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const int d = static_cast<int>(rows.size());
  Operator o(d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(rows[r].size()) != d) {
      throw std::invalid_argument("Operator::from_rows: matrix must be square");
    }
    for (int c = 0; c < d; ++c) o.at(r, c) = rows[r][c];
  }
  return o;
}

Operator Operator::ket_bra(int dim, int ket, int bra) {
  Operator o(dim);
  o.at(ket, bra) = 1.0;
  return o;
}

Operator Operator::adjoint() const {
  Operator o(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) o.at(c, r) = std::conj(at(r, c));
  return o;
}

Operator Operator::operator*(const Operator& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("Operator product: dimension mismatch");
  Operator out(dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int k = 0; k < dim_; ++k) {
      const Complex v = at(r, k);
      if (v == Complex{}) continue;
      for (int c = 0; c < dim_; ++c) out.at(r, c) += v * o.at(k, c);
    }
  }
  return out;
}

Operator Operator::operator+(const Operator& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("Operator sum: dimension mismatch");
  Operator out(dim_);
  for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] + o.m_[i];
  return out;
}

Operator Operator::operator-(const Operator& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("Operator difference: dimension mismatch");
  Operator out(dim_);
  for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] - o.m_[i];
  return out;
}

Operator Operator::scaled(Complex f) const {
  Operator out(dim_);
  for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] * f;
  return out;
}

double Operator::max_abs_diff(const Operator& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < m_.size(); ++i) m = std::max(m, std::abs(m_[i] - o.m_[i]));
  return m;
}

bool Operator::is_hermitian(double tol) const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
  return true;
}

bool Operator::is_unitary(double tol) const {
  return (adjoint() * *this).max_abs_diff(identity(dim_)) <= tol;
}

bool Operator::is_plus_minus_one_observable(double tol) const {
  return is_hermitian(tol) && (*this * *this).max_abs_diff(identity(dim_)) <= tol;
}

Complex Operator::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

// ---- StateVector ----

StateVector StateVector::basis(int qubit_count, std::uint64_t index) {
  if (qubit_count < 0 || qubit_count > kMaxQubits) {
    throw std::invalid_argument("StateVector::basis: qubit count out of range");
  }
  StateVector s;
  s.qubits_ = qubit_count;
  s.amps_.assign(std::uint64_t{1} << qubit_count, Complex{});
  if (index >= s.amps_.size()) throw std::invalid_argument("StateVector::basis: index out of range");
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
  check_dim_power_of_two(amps.size());
  const int q = qubits_for_dim(amps.size());
  if (q > kMaxQubits) throw std::invalid_argument("StateVector: exceeds qubit cap");
  StateVector s;
  s.qubits_ = q;
  s.amps_ = std::move(amps);
  if (std::abs(s.norm() - 1.0) > kContractTol) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
  return s;
}

StateVector StateVector::uniform(int qubit_count) {
  if (qubit_count < 0 || qubit_count > kMaxQubits) {
    throw std::invalid_argument("StateVector::uniform: qubit count out of range");
  }
  StateVector s;
  s.qubits_ = qubit_count;
  const std::uint64_t d = std::uint64_t{1} << qubit_count;
  s.amps_.assign(d, Complex{1.0 / std::sqrt(static_cast<double>(d)), 0.0});
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

// ---- tensor ----

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.qubits_ + b.qubits_ > kMaxQubits) {
    throw std::invalid_argument("tensor: result exceeds qubit cap");
  }
  StateVector out;
  out.qubits_ = a.qubits_ + b.qubits_;
  out.amps_.resize(a.amps_.size() * b.amps_.size());
  const std::uint64_t db = b.amps_.size();
  for (std::uint64_t i = 0; i < a.amps_.size(); ++i) {
    const Complex ai = a.amps_[i];
    for (std::uint64_t j = 0; j < db; ++j) out.amps_[i * db + j] = ai * b.amps_[j];
  }
  return out;
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim();
  const int db = b.dim();
  Operator out(da * db);
  for (int ra = 0; ra < da; ++ra)
    for (int ca = 0; ca < da; ++ca) {
      const Complex v = a.at(ra, ca);
      if (v == Complex{}) continue;
      for (int rb = 0; rb < db; ++rb)
        for (int cb = 0; cb < db; ++cb)
          out.at(ra * db + rb, ca * db + cb) = v * b.at(rb, cb);
    }
  return out;
}

// ---- embedded application ----

namespace {

struct TargetMap {
  std::vector<std::uint64_t> masks;  // one per target qubit, MSB of u first
  std::uint64_t target_union = 0;
};

TargetMap make_target_map(const StateVector& s, std::span<const int> targets) {
  TargetMap tm;
  const int q = s.qubit_count();
  for (int t : targets) {
    if (t < 0 || t >= q) throw std::invalid_argument("apply: target qubit out of range");
    const std::uint64_t mask = std::uint64_t{1} << (q - 1 - t);
    if (tm.target_union & mask) throw std::invalid_argument("apply: duplicate target index");
    tm.masks.push_back(mask);
    tm.target_union |= mask;
  }
  return tm;
}

// Applies an arbitrary square matrix on the embedded subsystem.
std::vector<Complex> apply_embedded(const Operator& u, const StateVector& s,
                                    std::span<const int> targets) {
  const std::size_t k = targets.size();
  if (u.dim() != (1 << k)) {
    throw std::invalid_argument("apply: operator dimension does not match target count");
  }
  const TargetMap tm = make_target_map(s, targets);
  const std::uint64_t dim = s.dim();
  const std::uint64_t sub = std::uint64_t{1} << k;

  std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
  std::vector<std::uint64_t> addr(sub);
  std::vector<Complex> local(sub);

  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & tm.target_union) continue;  // enumerate target-cleared indices once
    for (std::uint64_t j = 0; j < sub; ++j) {
      std::uint64_t idx = base;
      for (std::size_t bit = 0; bit < k; ++bit) {
        if ((j >> (k - 1 - bit)) & 1) idx |= tm.masks[bit];
      }
      addr[j] = idx;
      local[j] = out[idx];
    }
    for (std::uint64_t r = 0; r < sub; ++r) {
      Complex acc = 0.0;
      for (std::uint64_t c = 0; c < sub; ++c) {
        acc += u.at(static_cast<int>(r), static_cast<int>(c)) * local[c];
      }
      out[addr[r]] = acc;
    }
  }
  return out;
}

}  // namespace

StateVector apply(const Operator& u, const StateVector& s, std::span<const int> targets) {
  StateVector out;
  out.qubits_ = s.qubit_count();
  out.amps_ = apply_embedded(u, s, targets);
  return out;
}

StateVector apply(const Operator& u, const StateVector& s, std::initializer_list<int> targets) {
  std::vector<int> t(targets);
  return apply(u, s, std::span<const int>(t));
}

StateVector apply_phases(const StateVector& s,
                         const std::function<Complex(std::uint64_t)>& phase) {
  StateVector out;
  out.qubits_ = s.qubit_count();
  out.amps_.resize(s.dim());
  for (std::uint64_t i = 0; i < s.dim(); ++i) out.amps_[i] = s.amp(i) * phase(i);
  return out;
}

StateVector permute_basis(const StateVector& s,
                          const std::function<std::uint64_t(std::uint64_t)>& perm) {
  StateVector out;
  out.qubits_ = s.qubit_count();
  out.amps_.assign(s.dim(), Complex{});
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    const std::uint64_t j = perm(i);
    if (j >= s.dim()) throw std::invalid_argument("permute_basis: image out of range");
    out.amps_[j] = s.amp(i);
  }
  return out;
}

std::pair<StateVector, double> project(const Operator& p, const StateVector& s,
                                       std::span<const int> targets) {
  StateVector out;
  out.qubits_ = s.qubit_count();
  out.amps_ = apply_embedded(p, s, targets);
  double n2 = 0.0;
  for (const auto& a : out.amps_) n2 += std::norm(a);
  return {std::move(out), n2};
}

// ---- measurement ----

void ProjectiveMeasurement::validate(double tol) const {
  if (projectors.empty()) throw std::invalid_argument("measurement: no projectors");
  if (projectors.size() != outcome_labels.size()) {
    throw std::invalid_argument("measurement: labels do not match projectors");
  }
  const int d = projectors.front().dim();
  Operator sum(d);
  for (const auto& p : projectors) {
    if (p.dim() != d) throw std::invalid_argument("measurement: mixed projector dimensions");
    if (!p.is_hermitian(tol)) throw std::invalid_argument("measurement: projector not Hermitian");
    if ((p * p).max_abs_diff(p) > tol) {
      throw std::invalid_argument("measurement: projector not idempotent");
    }
    sum = sum + p;
  }
  if (sum.max_abs_diff(Operator::identity(d)) > tol) {
    throw std::invalid_argument("measurement: projectors do not sum to identity");
  }
}

ProjectiveMeasurement ProjectiveMeasurement::computational(int qubit_count) {
  const int d = 1 << qubit_count;
  ProjectiveMeasurement m;
  for (int i = 0; i < d; ++i) {
    m.projectors.push_back(Operator::ket_bra(d, i, i));
    m.outcome_labels.push_back(i);
  }
  return m;
}

ProjectiveMeasurement ProjectiveMeasurement::from_observable(const Operator& obs) {
  if (!obs.is_plus_minus_one_observable()) {
    throw std::invalid_argument("from_observable: expected Hermitian operator with O^2 = I");
  }
  const Operator id = Operator::identity(obs.dim());
  ProjectiveMeasurement m;
  m.projectors.push_back((id + obs).scaled(0.5));  // +1 eigenspace -> bit 0
  m.projectors.push_back((id - obs).scaled(0.5));  // -1 eigenspace -> bit 1
  m.outcome_labels = {0, 1};
  return m;
}

ProjectiveMeasurement ProjectiveMeasurement::joint_eigenbasis(
    const std::vector<Operator>& observables) {
  if (observables.empty()) throw std::invalid_argument("joint_eigenbasis: no observables");
  const int d = observables.front().dim();
  const Operator id = Operator::identity(d);
  for (const auto& o : observables) {
    if (o.dim() != d) throw std::invalid_argument("joint_eigenbasis: mixed dimensions");
    if (!o.is_plus_minus_one_observable()) {
      throw std::invalid_argument("joint_eigenbasis: expected ±1 observables");
    }
  }
  for (std::size_t i = 0; i < observables.size(); ++i) {
    for (std::size_t j = i + 1; j < observables.size(); ++j) {
      if ((observables[i] * observables[j]).max_abs_diff(observables[j] * observables[i]) >
          kContractTol) {
        throw std::invalid_argument("joint_eigenbasis: observables do not commute");
      }
    }
  }
  const int k = static_cast<int>(observables.size());
  ProjectiveMeasurement m;
  for (int label = 0; label < (1 << k); ++label) {
    Operator p = id;
    for (int j = 0; j < k; ++j) {
      const int bit = (label >> (k - 1 - j)) & 1;
      const Operator eig =
          bit ? (id - observables[j]).scaled(0.5) : (id + observables[j]).scaled(0.5);
      p = p * eig;
    }
    m.projectors.push_back(p);
    m.outcome_labels.push_back(label);
  }
  return m;
}

void OutcomeDistribution::validate(double tol) const {
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.probability < -kAlgebraTol) {
      throw std::invalid_argument("distribution: negative probability");
    }
    total += e.probability;
    if (e.probability > kAlgebraTol && std::abs(e.post_state.norm() - 1.0) > tol) {
      throw std::invalid_argument("distribution: unnormalized post-state");
    }
  }
  if (std::abs(total - 1.0) > tol) {
    throw std::invalid_argument("distribution: probabilities do not sum to 1");
  }
}

double OutcomeDistribution::probability_of(int label) const {
  double p = 0.0;
  for (const auto& e : entries)
    if (e.label == label) p += e.probability;
  return p;
}

OutcomeDistribution measure(const StateVector& s, const ProjectiveMeasurement& m,
                            std::span<const int> targets) {
  m.validate();
  OutcomeDistribution dist;
  dist.entries.reserve(m.projectors.size());
  for (std::size_t k = 0; k < m.projectors.size(); ++k) {
    auto [proj, p] = project(m.projectors[k], s, targets);
    Outcome o;
    o.label = m.outcome_labels[k];
    o.probability = p;
    if (p > kAlgebraTol) {
      const double inv = 1.0 / std::sqrt(p);
      std::vector<Complex> renorm(proj.amplitudes().begin(), proj.amplitudes().end());
      for (auto& a : renorm) a *= inv;
      o.post_state = StateVector::from_amplitudes(std::move(renorm));
    } else {
      o.post_state = proj;  // negligible weight; left unnormalized
    }
    dist.entries.push_back(std::move(o));
  }
  return dist;
}

OutcomeDistribution measure(const StateVector& s, const ProjectiveMeasurement& m,
                            std::initializer_list<int> targets) {
  std::vector<int> t(targets);
  return measure(s, m, std::span<const int>(t));
}

std::pair<int, StateVector> sample(const OutcomeDistribution& d, SeededRng& rng) {
  if (d.entries.empty()) throw std::invalid_argument("sample: empty distribution");
  double total = 0.0;
  for (const auto& e : d.entries) total += std::max(0.0, e.probability);
  const double u = rng.next_double() * total;
  double acc = 0.0;
  for (const auto& e : d.entries) {
    acc += std::max(0.0, e.probability);
    if (u < acc) return {e.label, e.post_state};
  }
  const auto& last = d.entries.back();
  return {last.label, last.post_state};
}

// ---- spectra ----

double max_eigenvalue(const Operator& h) {
  if (!h.is_hermitian()) throw std::invalid_argument("max_eigenvalue: operator not Hermitian");
  const int d = h.dim();
  if (d <= 64) {
    Eigen::MatrixXcd m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = h.at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
  }
  // Shifted power iteration; the Gershgorin shift makes H + cI positive
  // semidefinite so the dominant eigenvalue is the largest one.
  double shift = 0.0;
  for (int r = 0; r < d; ++r) {
    double row = 0.0;
    for (int c = 0; c < d; ++c) row += std::abs(h.at(r, c));
    shift = std::max(shift, row);
  }
  std::vector<Complex> v(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = 1.0 + 1e-3 * i;
  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<Complex> w(static_cast<std::size_t>(d), Complex{});
    for (int r = 0; r < d; ++r) {
      Complex acc = shift * v[static_cast<std::size_t>(r)];
      for (int c = 0; c < d; ++c) acc += h.at(r, c) * v[static_cast<std::size_t>(c)];
      w[static_cast<std::size_t>(r)] = acc;
    }
    double n2 = 0.0;
    for (const auto& x : w) n2 += std::norm(x);
    const double n = std::sqrt(n2);
    if (n == 0.0) return -shift;
    for (auto& x : w) x /= n;
    Complex rayleigh = 0.0;
    for (int r = 0; r < d; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < d; ++c) acc += h.at(r, c) * w[static_cast<std::size_t>(c)];
      rayleigh += std::conj(w[static_cast<std::size_t>(r)]) * acc;
    }
    const double next = rayleigh.real();
    v = std::move(w);
    if (iter > 2 && std::abs(next - lambda) < 1e-13 * std::max(1.0, std::abs(next))) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  Complex acc = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amp(i)) * b.amp(i);
  return acc;
}

// ---- gates ----

namespace gates {

Operator identity() { return Operator::identity(2); }

Operator pauli_x() {
  return Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

Operator pauli_y() {
  return Operator::from_rows({{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}});
}

Operator pauli_z() {
  return Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

Operator hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return Operator::from_rows({{s, s}, {s, -s}});
}

Operator rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Operator::from_rows({{c, -s}, {s, c}});
}

Operator swap2() {
  Operator o(4);
  o.at(0, 0) = 1.0;
  o.at(1, 2) = 1.0;
  o.at(2, 1) = 1.0;
  o.at(3, 3) = 1.0;
  return o;
}

Operator fredkin() {
  Operator o = Operator::identity(8);
  // Control is the high bit; swap the two low bits when it is set.
  o.at(5, 5) = 0.0;
  o.at(6, 6) = 0.0;
  o.at(5, 6) = 1.0;
  o.at(6, 5) = 1.0;
  return o;
}

}  // namespace gates

}  // namespace nlcc
