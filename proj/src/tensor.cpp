#include "symquot/tensor.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "symquot/kernels/kernels.hpp"

namespace symquot {

namespace {

void check_rank(int rank) {
  if (rank < 0 || rank > kMaxTensorRank) {
    throw std::invalid_argument("tensor rank " + std::to_string(rank) + " outside [0, " +
                                std::to_string(kMaxTensorRank) + "]");
  }
}

// Occurrence counts (n0, n1) of index values 0 and 1 for every flat index.
std::vector<std::array<int, 2>> index_counts(int rank) {
  const std::size_t n = pow3(rank);
  std::vector<std::array<int, 2>> out(n, {0, 0});
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t r = f;
    for (int i = 0; i < rank; ++i) {
      const std::size_t d = r % 3;
      r /= 3;
      if (d < 2) ++out[f][d];
    }
  }
  return out;
}

}  // namespace

std::size_t pow3(int rank) {
  check_rank(rank);
  std::size_t p = 1;
  for (int i = 0; i < rank; ++i) p *= 3;
  return p;
}

DenseTensor::DenseTensor(int rank) : rank_(rank), data_(pow3(rank), 0.0) {}

DenseTensor::DenseTensor(int rank, std::vector<double> entries) : rank_(rank), data_(std::move(entries)) {
  if (data_.size() != pow3(rank)) {
    throw std::invalid_argument("rank-" + std::to_string(rank) + " tensor needs " + std::to_string(pow3(rank)) +
                                " entries, got " + std::to_string(data_.size()));
  }
}

std::size_t DenseTensor::flat_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank_) throw std::invalid_argument("index length does not match rank");
  std::size_t f = 0;
  for (int k : index) {
    if (k < 0 || k > 2) throw std::out_of_range("tensor index value must be 0, 1 or 2");
    f = 3 * f + static_cast<std::size_t>(k);
  }
  return f;
}

double DenseTensor::squared_norm() const { return kernels::active().dot(data(), data(), size()); }

double DenseTensor::norm() const { return std::sqrt(squared_norm()); }

bool DenseTensor::is_symmetric(double tol) const {
  if (rank_ < 2) return true;
  const std::size_t n = size();
  for (int pos = 0; pos + 1 < rank_; ++pos) {
    // Swap digits `pos` and `pos + 1` counted from the last index.
    const std::size_t lo = pow3(pos);
    const std::size_t hi = 3 * lo;
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t a = (f / lo) % 3;
      const std::size_t b = (f / hi) % 3;
      if (a >= b) continue;
      const std::size_t g = f + (b - a) * lo - (b - a) * hi;
      if (std::abs(data_[f] - data_[g]) > tol) return false;
    }
  }
  return true;
}

void DenseTensor::require_same_rank(const DenseTensor& other, const char* op) const {
  if (other.rank_ != rank_) {
    throw std::invalid_argument(std::string(op) + ": rank mismatch (" + std::to_string(rank_) + " vs " +
                                std::to_string(other.rank_) + ")");
  }
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& rhs) { return add_scaled(1.0, rhs); }

DenseTensor& DenseTensor::operator-=(const DenseTensor& rhs) { return add_scaled(-1.0, rhs); }

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseTensor& DenseTensor::add_scaled(double a, const DenseTensor& x) {
  require_same_rank(x, "tensor addition");
  kernels::active().axpy(a, x.data(), data(), size());
  return *this;
}

SymTensorTuple SymTensorTuple::zeros(std::span<const int> ranks) {
  std::vector<DenseTensor> c;
  c.reserve(ranks.size());
  for (int r : ranks) c.emplace_back(r);
  return SymTensorTuple(std::move(c));
}

SymTensorTuple SymTensorTuple::from_flat(std::span<const int> ranks, std::span<const double> flat) {
  std::size_t expected = 0;
  for (int r : ranks) expected += pow3(r);
  if (flat.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " coordinates, found " +
                                std::to_string(flat.size()));
  }
  std::vector<DenseTensor> c;
  c.reserve(ranks.size());
  std::size_t off = 0;
  for (int r : ranks) {
    const std::size_t n = pow3(r);
    c.emplace_back(r, std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(off),
                                          flat.begin() + static_cast<std::ptrdiff_t>(off + n)));
    off += n;
  }
  return SymTensorTuple(std::move(c));
}

std::vector<int> SymTensorTuple::ranks() const {
  std::vector<int> r;
  r.reserve(comps_.size());
  for (const DenseTensor& t : comps_) r.push_back(t.rank());
  return r;
}

std::size_t SymTensorTuple::dimension() const {
  std::size_t n = 0;
  for (const DenseTensor& t : comps_) n += t.size();
  return n;
}

std::vector<double> SymTensorTuple::flatten() const {
  std::vector<double> out;
  out.reserve(dimension());
  for (const DenseTensor& t : comps_) out.insert(out.end(), t.entries().begin(), t.entries().end());
  return out;
}

double SymTensorTuple::squared_norm() const {
  double s = 0.0;
  for (const DenseTensor& t : comps_) s += t.squared_norm();
  return s;
}

double SymTensorTuple::norm() const { return std::sqrt(squared_norm()); }

void SymTensorTuple::require_same_signature(const SymTensorTuple& other) const {
  if (other.ranks() != ranks()) throw std::invalid_argument("tensor tuple signature mismatch");
}

SymTensorTuple& SymTensorTuple::operator+=(const SymTensorTuple& rhs) {
  require_same_signature(rhs);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += rhs.comps_[i];
  return *this;
}

SymTensorTuple& SymTensorTuple::operator-=(const SymTensorTuple& rhs) {
  require_same_signature(rhs);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= rhs.comps_[i];
  return *this;
}

SymTensorTuple& SymTensorTuple::operator*=(double s) {
  for (DenseTensor& t : comps_) t *= s;
  return *this;
}

DenseTensor outer_power(const Vec3& v, int alpha) {
  if (alpha < 1 || alpha > kMaxTensorRank) {
    throw std::invalid_argument("outer_power: rank must be in [1, " + std::to_string(kMaxTensorRank) + "], got " +
                                std::to_string(alpha));
  }
  const auto& k = kernels::active();
  std::vector<double> cur{v.x(), v.y(), v.z()};
  std::vector<double> next;
  for (int r = 1; r < alpha; ++r) {
    next.resize(cur.size() * 3);
    k.kron3(cur.data(), cur.size(), v.data(), next.data());
    cur.swap(next);
  }
  return DenseTensor(alpha, std::move(cur));
}

DenseTensor outer_power_derivative(const Vec3& v, const Vec3& w, int alpha) {
  if (alpha < 1 || alpha > kMaxTensorRank) throw std::invalid_argument("outer_power_derivative: bad rank");
  // D_{m+1} = D_m ⊗ v + P_m ⊗ w with P_m = ⊗^m v.
  const auto& k = kernels::active();
  std::vector<double> p{v.x(), v.y(), v.z()};
  std::vector<double> d{w.x(), w.y(), w.z()};
  std::vector<double> np, nd, tmp;
  for (int r = 1; r < alpha; ++r) {
    nd.resize(d.size() * 3);
    tmp.resize(d.size() * 3);
    k.kron3(d.data(), d.size(), v.data(), nd.data());
    k.kron3(p.data(), p.size(), w.data(), tmp.data());
    k.axpy(1.0, tmp.data(), nd.data(), nd.size());
    np.resize(p.size() * 3);
    k.kron3(p.data(), p.size(), v.data(), np.data());
    p.swap(np);
    d.swap(nd);
  }
  return DenseTensor(alpha, std::move(d));
}

DenseTensor invariant_tensor(int alpha) {
  check_rank(alpha);
  DenseTensor out(alpha);
  if (alpha == 0 || alpha % 2 == 1) return out;

  // Pairings of α positions in which paired positions carry equal index
  // values: one value at a time, the first free position of that value picks
  // a partner among the n − 1 others, so the count is Π (n_i − 1)!!.
  auto double_factorial = [](int n) {
    double f = 1.0;
    for (int i = n; i > 1; i -= 2) f *= i;
    return f;
  };
  auto compatible_pairings = [&](int n0, int n1, int n2) {
    if (n0 % 2 || n1 % 2 || n2 % 2) return 0.0;
    return double_factorial(n0 - 1) * double_factorial(n1 - 1) * double_factorial(n2 - 1);
  };
  const double all_pairings = double_factorial(alpha - 1);

  std::map<std::pair<int, int>, double> cache;
  const auto counts = index_counts(alpha);
  for (std::size_t f = 0; f < counts.size(); ++f) {
    const auto key = std::make_pair(counts[f][0], counts[f][1]);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const int n2 = alpha - key.first - key.second;
      it = cache.emplace(key, compatible_pairings(key.first, key.second, n2) / all_pairings).first;
    }
    out.data()[f] = it->second;
  }
  return out;
}

double inner(const DenseTensor& a, const DenseTensor& b) {
  if (a.rank() != b.rank()) {
    throw std::invalid_argument("inner: rank mismatch (" + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()) + ")");
  }
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double inner(const SymTensorTuple& a, const SymTensorTuple& b) {
  if (a.ranks() != b.ranks()) throw std::invalid_argument("inner: tensor tuple signature mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.component_count(); ++i) s += inner(a[i], b[i]);
  return s;
}

DenseTensor mode_multiply(const Mat3& m, const DenseTensor& t, int mode) {
  if (mode < 0 || mode >= t.rank()) throw std::invalid_argument("mode_multiply: mode outside tensor rank");
  const std::size_t outer = pow3(mode);
  const std::size_t inner_n = pow3(t.rank() - mode - 1);
  const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> mr = m;
  DenseTensor out(t.rank());
  kernels::active().mode_apply(mr.data(), t.data(), out.data(), outer, inner_n);
  return out;
}

DenseTensor mode1_multiply(const Mat3& m, const DenseTensor& t) {
  if (t.rank() < 1) throw std::invalid_argument("mode1_multiply: tensor rank must be at least 1");
  return mode_multiply(m, t, 0);
}

DenseTensor multiply_all_modes(const Mat3& m, const DenseTensor& t) {
  if (t.rank() == 0) return t;
  const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> mr = m;
  const auto& k = kernels::active();
  const std::size_t n = t.size();
  std::vector<double> a(t.entries().begin(), t.entries().end());
  std::vector<double> b(n);
  std::size_t outer = 1;
  std::size_t inner_n = n / 3;
  for (int mode = 0; mode < t.rank(); ++mode) {
    k.mode_apply(mr.data(), a.data(), b.data(), outer, inner_n);
    a.swap(b);
    outer *= 3;
    inner_n /= 3;
  }
  return DenseTensor(t.rank(), std::move(a));
}

DenseTensor rotate(const Rotation& r, const DenseTensor& t) { return multiply_all_modes(r.matrix(), t); }

SymTensorTuple rotate(const Rotation& r, const SymTensorTuple& t) {
  const Mat3 m = r.matrix();
  std::vector<DenseTensor> c;
  c.reserve(t.component_count());
  for (const DenseTensor& x : t.components()) c.push_back(multiply_all_modes(m, x));
  return SymTensorTuple(std::move(c));
}

DenseTensor symmetrize(const DenseTensor& t) {
  // The permutation average of an entry is the mean over its index class.
  const int alpha = t.rank();
  const auto counts = index_counts(alpha);
  const int stride = alpha + 1;
  std::vector<double> sum(static_cast<std::size_t>(stride * stride), 0.0);
  std::vector<double> num(sum.size(), 0.0);
  for (std::size_t f = 0; f < counts.size(); ++f) {
    const std::size_t c = static_cast<std::size_t>(counts[f][0] * stride + counts[f][1]);
    sum[c] += t.data()[f];
    num[c] += 1.0;
  }
  DenseTensor out(alpha);
  for (std::size_t f = 0; f < counts.size(); ++f) {
    const std::size_t c = static_cast<std::size_t>(counts[f][0] * stride + counts[f][1]);
    out.data()[f] = sum[c] / num[c];
  }
  return out;
}

}  // namespace symquot
