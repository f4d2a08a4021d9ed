#pragma once

#include <map>
#include <string>

namespace khs {

/// Laurent polynomial in one variable with integer coefficients.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int e, long long c = 1) {
    Laurent p;
    p.add(e, c);
    return p;
  }

  void add(int e, long long c) {
    if (c == 0) return;
    auto& x = coef_[e];
    x += c;
    if (x == 0) coef_.erase(e);
  }
  long long operator[](int e) const {
    auto it = coef_.find(e);
    return it == coef_.end() ? 0 : it->second;
  }
  const std::map<int, long long>& terms() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.coef_) add(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.coef_) add(e, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [e1, c1] : a.coef_)
      for (const auto& [e2, c2] : b.coef_) r.add(e1 + e2, c1 * c2);
    return r;
  }
  friend Laurent operator*(long long s, const Laurent& a) {
    Laurent r;
    for (const auto& [e, c] : a.coef_) r.add(e, s * c);
    return r;
  }
  /// Multiplication by var^k.
  Laurent shifted(int k) const {
    Laurent r;
    for (const auto& [e, c] : coef_) r.coef_[e + k] = c;
    return r;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.coef_ == b.coef_; }

  /// e.g. "q^-1 + q - 2q^3"; "0" for the zero polynomial.
  std::string str(const std::string& var = "q") const {
    if (coef_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : coef_) {
      long long a = c < 0 ? -c : c;
      if (out.empty()) out += c < 0 ? "-" : "";
      else out += c < 0 ? " - " : " + ";
      if (a != 1 || e == 0) out += std::to_string(a);
      if (e != 0) out += var + (e == 1 ? "" : "^" + std::to_string(e));
    }
    return out;
  }

 private:
  std::map<int, long long> coef_;
};

}  // namespace khs
