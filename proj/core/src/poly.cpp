#include "cartier/poly.hpp"

#include <algorithm>
#include <sstream>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

// Open-addressing accumulator map Monomial -> Int, the hot kernel of
// polynomial multiplication.  Linear probing, power-of-two capacity.
class Accum {
 public:
  explicit Accum(size_t expect) {
    size_t cap = 16;
    while (cap < expect * 2) cap <<= 1;
    mask_ = cap - 1;
    occupied_.assign(cap, 0);
    slots_.resize(cap);
  }

  void add(const Monomial& m, const Int& c) {
    size_t i = m.hash() & mask_;
    for (;;) {
      if (!occupied_[i]) {
        if (count_ * 10 >= (mask_ + 1) * 7) {
          grow();
          add(m, c);
          return;
        }
        occupied_[i] = 1;
        slots_[i].first = m;
        slots_[i].second = c;
        ++count_;
        return;
      }
      if (slots_[i].first == m) {
        slots_[i].second += c;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  void add_mul(const Monomial& m, const Int& c1, const Int& c2) {
    size_t i = m.hash() & mask_;
    for (;;) {
      if (!occupied_[i]) {
        if (count_ * 10 >= (mask_ + 1) * 7) {
          grow();
          add_mul(m, c1, c2);
          return;
        }
        occupied_[i] = 1;
        slots_[i].first = m;
        slots_[i].second = c1 * c2;
        ++count_;
        return;
      }
      if (slots_[i].first == m) {
        // fused accumulate: coeff += c1 * c2 without a temporary mpz alloc
        mpz_addmul(slots_[i].second.backend().data(),
                   c1.backend().data(), c2.backend().data());
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  std::vector<std::pair<Monomial, Int>> extract() {
    std::vector<std::pair<Monomial, Int>> out;
    out.reserve(count_);
    for (size_t i = 0; i <= mask_; ++i)
      if (occupied_[i] && slots_[i].second != 0) out.push_back(std::move(slots_[i]));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  void grow() {
    size_t old_cap = mask_ + 1;
    std::vector<std::pair<Monomial, Int>> old;
    old.reserve(count_);
    for (size_t i = 0; i < old_cap; ++i)
      if (occupied_[i]) old.push_back(std::move(slots_[i]));
    mask_ = old_cap * 2 - 1;
    occupied_.assign(old_cap * 2, 0);
    slots_.assign(old_cap * 2, {});
    count_ = 0;
    for (auto& [m, c] : old) {
      size_t i = m.hash() & mask_;
      while (occupied_[i]) i = (i + 1) & mask_;
      occupied_[i] = 1;
      slots_[i] = std::move(std::pair<Monomial, Int>(m, std::move(c)));
      ++count_;
    }
  }

  size_t mask_ = 0, count_ = 0;
  std::vector<char> occupied_;
  std::vector<std::pair<Monomial, Int>> slots_;
};

}  // namespace

Poly Poly::constant(int nvars, const Int& c) {
  Poly p{nvars, {}};
  if (c != 0) p.terms.push_back({Monomial{}, c});
  return p;
}

Poly Poly::var(int nvars, int i, unsigned e) {
  Poly p{nvars, {}};
  Monomial m;
  m.set_exp(i, e);
  p.terms.push_back({m, Int(1)});
  return p;
}

void Poly::normalize() {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Monomial, Int>> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return t.second == 0; }),
            out.end());
  terms = std::move(out);
}

std::string Poly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    os << c;
    for (int v = 0; v < nvars; ++v)
      if (m.exp(v)) {
        os << "*t" << v;
        if (m.exp(v) > 1) os << "^" << m.exp(v);
      }
    first = false;
  }
  return os.str();
}

Poly poly_add(const Poly& a, const Poly& b) {
  // sorted merge
  Poly r{a.nvars, {}};
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (a.terms[i].first == b.terms[j].first) {
      Int c = a.terms[i].second + b.terms[j].second;
      if (c != 0) r.terms.push_back({a.terms[i].first, std::move(c)});
      ++i, ++j;
    } else if (a.terms[i].first < b.terms[j].first) {
      r.terms.push_back(a.terms[i++]);
    } else {
      r.terms.push_back(b.terms[j++]);
    }
  }
  while (i < a.terms.size()) r.terms.push_back(a.terms[i++]);
  while (j < b.terms.size()) r.terms.push_back(b.terms[j++]);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, Int(-1))); }

Poly poly_scale(const Poly& a, const Int& s) {
  if (s == 0) return Poly::zero(a.nvars);
  Poly r{a.nvars, a.terms};
  for (auto& t : r.terms) t.second *= s;
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.nvars);
  const Poly& big = a.size() >= b.size() ? a : b;
  const Poly& small = a.size() >= b.size() ? b : a;
  Accum acc(big.size() * 2);
  for (const auto& [ms, cs] : small.terms)
    for (const auto& [mb, cb] : big.terms) acc.add_mul(ms * mb, cs, cb);
  Poly r{a.nvars, acc.extract()};
  return r;
}

Poly poly_sqr(const Poly& a) {
  if (a.is_zero()) return Poly::zero(a.nvars);
  Accum acc(a.size() * 4);
  for (size_t i = 0; i < a.terms.size(); ++i) {
    const auto& [mi, ci] = a.terms[i];
    acc.add_mul(mi * mi, ci, ci);
    Int ci2 = ci * 2;
    for (size_t j = i + 1; j < a.terms.size(); ++j)
      acc.add_mul(mi * a.terms[j].first, ci2, a.terms[j].second);
  }
  return Poly{a.nvars, acc.extract()};
}

Poly poly_pow(const Poly& a, unsigned long e) {
  if (e == 0) return Poly::constant(a.nvars, 1);
  if (e == 1) return a;
  Poly s = poly_sqr(poly_pow(a, e / 2));
  if (e & 1) s = poly_mul(s, a);
  return s;
}

namespace {

// add the mirror (block-swapped) of every strictly canonical term
Poly sym_expand(int nvars, std::vector<std::pair<Monomial, Int>> half) {
  size_t n = half.size();
  for (size_t i = 0; i < n; ++i) {
    if (half[i].first.w[0] == half[i].first.w[1]) continue;
    Monomial m = half[i].first;
    std::swap(m.w[0], m.w[1]);
    half.push_back({m, half[i].second});
  }
  Poly r{nvars, std::move(half)};
  r.normalize();
  return r;
}

}  // namespace

Poly poly_mul_sym(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.nvars);
  const Poly& big = a.size() >= b.size() ? a : b;
  const Poly& small = a.size() >= b.size() ? b : a;
  Accum acc(big.size() * 2);
  for (const auto& [ms, cs] : small.terms)
    for (const auto& [mb, cb] : big.terms) {
      Monomial m = ms * mb;
      if (m.w[0] >= m.w[1]) acc.add_mul(m, cs, cb);
    }
  return sym_expand(a.nvars, acc.extract());
}

Poly poly_sqr_sym(const Poly& a) {
  if (a.is_zero()) return Poly::zero(a.nvars);
  Accum acc(a.size() * 2);
  for (size_t i = 0; i < a.terms.size(); ++i) {
    const auto& [mi, ci] = a.terms[i];
    Monomial d = mi * mi;
    if (d.w[0] >= d.w[1]) acc.add_mul(d, ci, ci);
    Int ci2 = ci * 2;
    for (size_t j = i + 1; j < a.terms.size(); ++j) {
      Monomial m = mi * a.terms[j].first;
      if (m.w[0] >= m.w[1]) acc.add_mul(m, ci2, a.terms[j].second);
    }
  }
  return sym_expand(a.nvars, acc.extract());
}

Poly poly_pow_sym(const Poly& a, unsigned long e) {
  if (e == 0) return Poly::constant(a.nvars, 1);
  if (e == 1) return a;
  Poly s = poly_sqr_sym(poly_pow_sym(a, e / 2));
  if (e & 1) s = poly_mul_sym(s, a);
  return s;
}

Poly poly_div_exact(const Poly& a, const Int& d) {
  Poly r{a.nvars, a.terms};
  for (auto& [m, c] : r.terms) {
    if (c % d != 0)
      throw NonIntegral("coefficient " + c.str() + " not divisible by " + d.str());
    c /= d;
  }
  return r;
}

}  // namespace cartier
