// Copyright 2026 The tanglekit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tanglekit/qstate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>

#include "tanglekit/rng.hpp"

namespace tanglekit {

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 1) {
    throw DimensionError("n_qubits must be >= 1, got " + std::to_string(n_qubits));
  }
  if (n_qubits > kMaxQubits) {
    throw InputError("n_qubits " + std::to_string(n_qubits) + " exceeds the configured cap of " +
                     std::to_string(kMaxQubits));
  }
}

}  // namespace

PureState::PureState(int n_qubits, Vector amplitudes, bool normalize)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_width(n_qubits_);
  const Eigen::Index expected = Eigen::Index{1} << n_qubits_;
  if (amps_.size() != expected) {
    throw DimensionError("amplitude vector has length " + std::to_string(amps_.size()) +
                         ", expected 2^" + std::to_string(n_qubits_) + " = " +
                         std::to_string(expected));
  }
  if (normalize) {
    const double n = amps_.norm();
    if (n == 0.0) {
      throw InputError("cannot normalize the zero vector");
    }
    amps_ /= n;
  }
}

bool PureState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

void PureState::require_normalized(double tol) const {
  if (!is_normalized(tol)) {
    throw InputError("state is not normalized (norm = " + std::to_string(norm()) + ")");
  }
}

PureState PureState::normalized() const { return PureState(n_qubits_, amps_, true); }

PureState PureState::scaled(Complex factor) const {
  return PureState(n_qubits_, amps_ * factor, false);
}

PureState PureState::conjugated() const {
  return PureState(n_qubits_, amps_.conjugate(), false);
}

PureState make_state(int n_qubits, Vector amplitudes, bool normalize) {
  return PureState(n_qubits, std::move(amplitudes), normalize);
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix matrix)
    : n_qubits_(n_qubits), m_(std::move(matrix)) {
  check_width(n_qubits_);
  const Eigen::Index expected = Eigen::Index{1} << n_qubits_;
  if (m_.rows() != expected || m_.cols() != expected) {
    throw DimensionError("density matrix is " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + ", expected " + std::to_string(expected) +
                         "x" + std::to_string(expected));
  }
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw InputError("density matrix is not Hermitian (deviation " + std::to_string(herm_dev) +
                     ")");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    throw InputError("density matrix trace deviates from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((m_ + m_.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < kPositivityTol) {
    throw InputError("density matrix has a negative eigenvalue: " +
                     std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& a = psi.amplitudes();
  return DensityMatrix(psi.n_qubits(), a * a.adjoint());
}

Partition::Partition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) {
    throw InputError("partition has no blocks");
  }
  std::set<int> seen;
  int total = 0;
  for (auto& block : blocks_) {
    if (block.empty()) {
      throw InputError("partition block is empty");
    }
    std::sort(block.begin(), block.end());
    for (int q : block) {
      if (q < 0) throw InputError("negative qubit index in partition");
      if (!seen.insert(q).second) {
        throw InputError("qubit " + std::to_string(q) + " appears in two partition blocks");
      }
      ++total;
    }
  }
  // Coverage: indices must be exactly 0..total-1.
  if (*seen.rbegin() != total - 1) {
    throw InputError("partition blocks do not cover a contiguous index set");
  }
  n_qubits_ = total;
  check_width(n_qubits_);
}

PureState catalog_state(CatalogState name) {
  auto basis = [](int n, std::initializer_list<std::pair<int, Complex>> terms) {
    Vector v = Vector::Zero(Eigen::Index{1} << n);
    for (const auto& [idx, amp] : terms) v(idx) = amp;
    return PureState(n, v, true);
  };
  const double s2 = std::sqrt(2.0);
  switch (name) {
    case CatalogState::Bell:
      return basis(2, {{0b00, 1.0}, {0b11, 1.0}});
    case CatalogState::Ghz3:
      return basis(3, {{0b000, 1.0}, {0b111, 1.0}});
    case CatalogState::W3:
      return basis(3, {{0b001, 1.0}, {0b010, 1.0}, {0b100, 1.0}});
    case CatalogState::Ghz4:
      return basis(4, {{0b0000, 1.0}, {0b1111, 1.0}});
    case CatalogState::W4:
      return basis(4, {{0b0111, 1.0}, {0b1011, 1.0}, {0b1101, 1.0}, {0b1110, 1.0}});
    case CatalogState::Phi2:
      return basis(4, {{0b1111, s2}, {0b1000, 1.0}, {0b0100, 1.0}, {0b0010, 1.0}, {0b0001, 1.0}});
    case CatalogState::Phi3:
      return basis(4, {{0b1111, 1.0}, {0b1100, 1.0}, {0b0010, 1.0}, {0b0001, 1.0}});
  }
  throw InputError("unknown catalog state");
}

std::optional<CatalogState> catalog_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bell") return CatalogState::Bell;
  if (lower == "ghz3") return CatalogState::Ghz3;
  if (lower == "w3") return CatalogState::W3;
  if (lower == "ghz4" || lower == "phi1") return CatalogState::Ghz4;
  if (lower == "w4") return CatalogState::W4;
  if (lower == "phi2") return CatalogState::Phi2;
  if (lower == "phi3") return CatalogState::Phi3;
  return std::nullopt;
}

std::string catalog_name(CatalogState name) {
  switch (name) {
    case CatalogState::Bell: return "bell";
    case CatalogState::Ghz3: return "ghz3";
    case CatalogState::W3: return "w3";
    case CatalogState::Ghz4: return "ghz4";
    case CatalogState::W4: return "w4";
    case CatalogState::Phi2: return "phi2";
    case CatalogState::Phi3: return "phi3";
  }
  return "?";
}

PureState tensor_product(const PureState& a, const PureState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_width(n);
  const Eigen::Index db = b.dim();
  Vector out(a.dim() * db);
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * db, db) = a.amplitude(i) * b.amplitudes();
  }
  return PureState(n, std::move(out), false);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) {
    throw DimensionError("keep set is empty");
  }
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw DimensionError("keep set has repeated indices");
  }
  if (keep.front() < 0 || keep.back() >= n) {
    throw DimensionError("keep index out of range for a " + std::to_string(n) +
                         "-qubit register");
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) rest.push_back(q);
  }
  const int nk = static_cast<int>(keep.size());
  const int nr = static_cast<int>(rest.size());
  const Eigen::Index dk = Eigen::Index{1} << nk;
  const Eigen::Index dr = Eigen::Index{1} << nr;

  // Compose a full basis index from sub-indices over `keep` and `rest`,
  // preserving the q0-most-significant convention within each subset.
  auto full_index = [&](Eigen::Index ik, Eigen::Index ir) {
    std::uint64_t f = 0;
    for (int t = 0; t < nk; ++t) {
      const std::uint64_t bit = (static_cast<std::uint64_t>(ik) >> (nk - 1 - t)) & 1u;
      f |= bit << (n - 1 - keep[t]);
    }
    for (int t = 0; t < nr; ++t) {
      const std::uint64_t bit = (static_cast<std::uint64_t>(ir) >> (nr - 1 - t)) & 1u;
      f |= bit << (n - 1 - rest[t]);
    }
    return static_cast<Eigen::Index>(f);
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index r = 0; r < dr; ++r) {
        acc += rho.matrix()(full_index(i, r), full_index(j, r));
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(nk, std::move(out));
}

PureState random_haar_state(int n_qubits, std::uint64_t seed) {
  check_width(n_qubits);
  Rng rng(seed);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Vector v(dim);
  double norm_sq = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) {
      v(i) = rng.next_complex_normal();
    }
    norm_sq = v.squaredNorm();
  } while (norm_sq == 0.0);  // astronomically unlikely; keeps the contract total
  return PureState(n_qubits, std::move(v), true);
}

PureState random_product_state(const Partition& partition, std::uint64_t seed) {
  const int n = partition.n_qubits();
  const auto& blocks = partition.blocks();
  std::vector<Vector> block_amps;
  block_amps.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    block_amps.push_back(
        random_haar_state(static_cast<int>(blocks[b].size()), Rng::derive(seed, b)).amplitudes());
  }
  // Blocks may interleave, so scatter: the amplitude at a full index is the
  // product over blocks of that block's amplitude at its extracted sub-index.
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector out(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Complex amp = 1.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& block = blocks[b];
      std::uint64_t sub = 0;
      for (std::size_t t = 0; t < block.size(); ++t) {
        sub = (sub << 1) |
              static_cast<std::uint64_t>(PureState::qubit_bit(i, n, block[t]));
      }
      amp *= block_amps[b](static_cast<Eigen::Index>(sub));
    }
    out(i) = amp;
  }
  return PureState(n, std::move(out), false);
}

}  // namespace tanglekit
