#include "kpzlab/treealg/tensor.hpp"

#include <algorithm>

namespace kpzlab::treealg {

PlusMonomial::PlusMonomial(const Tree& generator) {
  if (!generator.is_unit()) factors_.push_back(generator);
}

PlusMonomial::PlusMonomial(std::vector<Tree> factors) {
  for (auto& f : factors) {
    if (!f.is_unit()) factors_.push_back(std::move(f));
  }
  std::sort(factors_.begin(), factors_.end());
}

PlusMonomial operator*(const PlusMonomial& a, const PlusMonomial& b) {
  std::vector<Tree> f = a.factors_;
  f.insert(f.end(), b.factors_.begin(), b.factors_.end());
  return PlusMonomial(std::move(f));
}

std::string PlusMonomial::to_string(const TreeNamer& namer) const {
  if (factors_.empty()) return namer(Tree::unit());
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) out += '.';
    out += namer(factors_[i]);
  }
  return out;
}

void TensorElement::add(const Tree& left, const PlusMonomial& right, const Polynomial& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.emplace(Key{left, right}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial TensorElement::coefficient(const Tree& left, const PlusMonomial& right) const {
  auto it = terms_.find(Key{left, right});
  return it == terms_.end() ? Polynomial() : it->second;
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, -c);
  return *this;
}

TensorElement operator*(const Polynomial& s, const TensorElement& x) {
  TensorElement out;
  for (const auto& [k, c] : x.terms_) out.add(k.first, k.second, s * c);
  return out;
}

TensorElement operator*(const TensorElement& x, const TensorElement& y) {
  TensorElement out;
  for (const auto& [k1, c1] : x.terms_) {
    for (const auto& [k2, c2] : y.terms_) {
      out.add(k1.first * k2.first, k1.second * k2.second, c1 * c2);
    }
  }
  return out;
}

std::string TensorElement::to_string(const TreeNamer& namer) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    const bool negative = c.terms().size() == 1 && c.terms().begin()->second < 0;
    const Polynomial mag = negative ? -c : c;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    if (mag != Polynomial(1)) {
      out += mag.terms().size() == 1 ? mag.to_string() + " " : "(" + mag.to_string() + ") ";
    }
    out += namer(k.first) + "|" + k.second.to_string(namer);
  }
  return out;
}

}  // namespace kpzlab::treealg
