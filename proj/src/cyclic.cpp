#include "pdimer/cyclic.hpp"

#include <algorithm>
#include <sstream>

namespace pdimer {

int cyc_reduce(long long value, int n) {
  if (n < 1) throw InvalidInputError("cyclic modulus must be at least 1");
  long long r = value % n;
  if (r <= 0) r += n;
  return static_cast<int>(r);
}

CycIdx::CycIdx(int value, int n) : value_(value), n_(n) {
  if (n < 1) throw InvalidInputError("cyclic modulus must be at least 1");
  if (value < 1 || value > n)
    throw InvalidInputError("cyclic index " + std::to_string(value) + " out of range 1.." +
                            std::to_string(n));
}

Weight::Weight(int n) : counts_(static_cast<std::size_t>(n), 0) {
  if (n < 1) throw InvalidInputError("weight length must be at least 1");
}

std::int64_t Weight::at(int vertex) const {
  if (vertex < 1 || vertex > modulus()) throw InvalidInputError("weight index out of range");
  return counts_[static_cast<std::size_t>(vertex - 1)];
}

void Weight::set(int vertex, std::int64_t value) {
  if (vertex < 1 || vertex > modulus()) throw InvalidInputError("weight index out of range");
  if (value < 0) throw InvalidInputError("weight components must be nonnegative");
  counts_[static_cast<std::size_t>(vertex - 1)] = value;
}

void Weight::add_at(int vertex, std::int64_t delta) {
  if (vertex < 1 || vertex > modulus()) throw InvalidInputError("weight index out of range");
  std::int64_t& slot = counts_[static_cast<std::size_t>(vertex - 1)];
  std::int64_t out = 0;
  if (__builtin_add_overflow(slot, delta, &out) || out < 0)
    throw InvalidInputError("weight component overflow");
  slot = out;
}

Weight& Weight::operator+=(const Weight& other) {
  if (other.modulus() != modulus()) throw InvalidInputError("weight modulus mismatch");
  for (int v = 1; v <= modulus(); ++v) add_at(v, other.at(v));
  return *this;
}

bool Weight::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t Weight::min_component() const {
  return *std::min_element(counts_.begin(), counts_.end());
}

std::int64_t Weight::max_component() const {
  return *std::max_element(counts_.begin(), counts_.end());
}

std::int64_t Weight::total() const {
  std::int64_t sum = 0;
  for (std::int64_t c : counts_) {
    if (__builtin_add_overflow(sum, c, &sum)) throw InvalidInputError("weight total overflow");
  }
  return sum;
}

std::vector<int> Weight::support() const {
  std::vector<int> out;
  for (int v = 1; v <= modulus(); ++v)
    if (at(v) > 0) out.push_back(v);
  return out;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << "(";
  for (int v = 1; v <= modulus(); ++v) {
    if (v > 1) os << ",";
    os << at(v);
  }
  os << ")";
  return os.str();
}

Weight interval_vertices(CycIdx a, CycIdx b) {
  if (a.modulus() != b.modulus())
    throw InvalidInputError("interval_vertices: mismatched moduli");
  return interval_vertices(a.value(), b.value(), a.modulus());
}

Weight interval_vertices(int a, int b, int n) {
  CycIdx ca(a, n), cb(b, n);
  Weight w(n);
  if (a == b) return w;
  // (a,b)_0 = [a, b-1]
  for (int v = a; ; ++v) {
    int vv = cyc_reduce(v, n);
    w.add_at(vv, 1);
    if (vv == cyc_reduce(b - 1, n)) break;
  }
  return w;
}

Weight full_weight(int n) {
  if (n < 1) throw InvalidInputError("full_weight: n must be at least 1");
  Weight w(n);
  for (int v = 1; v <= n; ++v) w.set(v, 1);
  return w;
}

ScalarSplit weight_sub_scalar(const Weight& w) {
  std::int64_t m = w.min_component();
  Weight base(w.modulus());
  for (int v = 1; v <= w.modulus(); ++v) base.set(v, w.at(v) - m);
  return ScalarSplit{base, m};
}

Weight weight_minus(const Weight& a, const Weight& b, const std::string& context) {
  if (a.modulus() != b.modulus()) throw InvalidInputError(context + ": weight modulus mismatch");
  Weight out(a.modulus());
  for (int v = 1; v <= a.modulus(); ++v) {
    std::int64_t d = a.at(v) - b.at(v);
    if (d < 0)
      throw TheoremViolationError(context + ": difference negative at vertex " +
                                  std::to_string(v));
    out.set(v, d);
  }
  return out;
}

Weight weight_plus_scalar(const Weight& w, std::int64_t m) {
  Weight out = w;
  for (int v = 1; v <= w.modulus(); ++v) out.add_at(v, m);
  return out;
}

}  // namespace pdimer
