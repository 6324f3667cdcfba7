#include "epower/tensor.hpp"

#include <string>

namespace epower {

namespace {

void check_mask(PartyMask mask, const SubsystemDims& dims) {
  if ((mask & ~full_mask(dims.parties())) != 0) {
    throw ArgumentError("party mask selects parties outside " + dims.str());
  }
}

}  // namespace

Index flatten_index(std::span<const int> multi_index, const SubsystemDims& dims) {
  if (static_cast<int>(multi_index.size()) != dims.parties()) {
    throw std::out_of_range("multi-index has " + std::to_string(multi_index.size()) +
                            " components for " + std::to_string(dims.parties()) + " parties");
  }
  Index flat = 0;
  for (int p = 0; p < dims.parties(); ++p) {
    const int j = multi_index[static_cast<std::size_t>(p)];
    if (j < 0 || j >= dims[p]) {
      throw std::out_of_range("index " + std::to_string(j) + " out of range for party " +
                              std::to_string(p) + " of dimension " + std::to_string(dims[p]));
    }
    flat = flat * dims[p] + j;
  }
  return flat;
}

std::vector<int> unflatten_index(Index flat, const SubsystemDims& dims) {
  if (flat < 0 || flat >= dims.total()) throw std::out_of_range("flat index out of range");
  std::vector<int> out(static_cast<std::size_t>(dims.parties()));
  for (int p = dims.parties() - 1; p >= 0; --p) {
    out[static_cast<std::size_t>(p)] = static_cast<int>(flat % dims[p]);
    flat /= dims[p];
  }
  return out;
}

Matrix bipartite_reshape(const Vector& amplitudes, const SubsystemDims& dims, PartyMask traced) {
  check_mask(traced, dims);
  if (amplitudes.size() != dims.total()) throw ArgumentError("amplitude length mismatch");

  const int n = dims.parties();
  std::vector<Index> kept_stride(static_cast<std::size_t>(n), 0);
  std::vector<Index> traced_stride(static_cast<std::size_t>(n), 0);
  Index kept_dim = 1;
  Index traced_dim = 1;
  for (int p = n - 1; p >= 0; --p) {
    const auto up = static_cast<std::size_t>(p);
    if (traced & (PartyMask{1} << p)) {
      traced_stride[up] = traced_dim;
      traced_dim *= dims[p];
    } else {
      kept_stride[up] = kept_dim;
      kept_dim *= dims[p];
    }
  }

  Matrix a(kept_dim, traced_dim);
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  Index row = 0;
  Index col = 0;
  for (Index flat = 0; flat < dims.total(); ++flat) {
    a(row, col) = amplitudes(flat);
    // odometer step, last party fastest
    for (int p = n - 1; p >= 0; --p) {
      const auto up = static_cast<std::size_t>(p);
      row += kept_stride[up];
      col += traced_stride[up];
      if (++digit[up] < dims[p]) break;
      row -= kept_stride[up] * dims[p];
      col -= traced_stride[up] * dims[p];
      digit[up] = 0;
    }
  }
  return a;
}

DensityOperator partial_trace(const PureState& state, PartyMask traced) {
  const Matrix a = bipartite_reshape(state.amplitudes(), state.dims(), traced);
  Matrix rho = a * a.adjoint();
  return DensityOperator::assume_valid(std::move(rho),
                                       state.dims().select(~traced & full_mask(state.dims().parties())));
}

double purity(const DensityOperator& rho) {
  // Hermitian: tr(rho^2) = sum |rho_ij|^2
  return rho.matrix().squaredNorm();
}

double reduced_purity(const Vector& amplitudes, const SubsystemDims& dims, PartyMask traced) {
  const Matrix a = bipartite_reshape(amplitudes, dims, traced);
  if (a.rows() <= a.cols()) {
    return (a * a.adjoint()).squaredNorm();
  }
  return (a.adjoint() * a).squaredNorm();
}

double reduced_purity(const PureState& state, PartyMask traced) {
  return reduced_purity(state.amplitudes(), state.dims(), traced);
}

PureState apply_gate(const GateMatrix& gate, const PureState& state) {
  if (gate.dims().total() != state.dims().total()) {
    throw ArgumentError("gate on " + gate.dims().str() + " cannot act on state over " +
                        state.dims().str());
  }
  return PureState::normalized(gate.matrix() * state.amplitudes(), state.dims());
}

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) {
    if (f.rows() != f.cols()) throw ArgumentError("kron_all expects square factors");
    Matrix next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Index i = 0; i < out.rows(); ++i) {
      for (Index j = 0; j < out.cols(); ++j) {
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return out;
}

Vector kron_all(std::span<const Vector> factors) {
  Vector out = Vector::Ones(1);
  for (const Vector& f : factors) {
    Vector next(out.size() * f.size());
    for (Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out(i) * f;
    out = std::move(next);
  }
  return out;
}

}  // namespace epower
