#pragma once

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fwtsp {

// Permutation of {1..n}, stored 1-based in row form (index 0 unused).
//
// When a permutation is built from a single n-cycle (a1 a2 ... an) it also
// remembers the traversal order, i.e. the position of each vertex inside the
// generating cycle.  Arbitrary permutations carry no such order.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    check_size(n);
    Permutation p;
    p.images_.resize(n + 1);
    for (int i = 0; i <= n; ++i) p.images_[i] = i;
    return p;
  }

  // images holds n values, images[i-1] = image of i.
  static Permutation from_row(const std::vector<int>& images) {
    check_size(static_cast<int>(images.size()));
    const int n = static_cast<int>(images.size());
    Permutation p;
    p.images_.assign(n + 1, 0);
    std::vector<char> seen(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
      const int v = images[i - 1];
      if (v < 1 || v > n)
        throw std::invalid_argument("permutation image out of range: " + std::to_string(v));
      if (seen[v])
        throw std::invalid_argument("permutation image repeated: " + std::to_string(v));
      seen[v] = 1;
      p.images_[i] = v;
    }
    return p;
  }

  // Builds the permutation whose only moved points are the given disjoint
  // cycles; every cycle must have length >= 2.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Permutation p = identity(n);
    std::vector<char> used(n + 1, 0);
    for (const auto& c : cycles) {
      if (c.size() < 2) throw std::invalid_argument("cycle shorter than 2");
      for (std::size_t k = 0; k < c.size(); ++k) {
        const int v = c[k];
        if (v < 1 || v > n)
          throw std::invalid_argument("cycle vertex out of range: " + std::to_string(v));
        if (used[v])
          throw std::invalid_argument("cycles not disjoint at vertex " + std::to_string(v));
        used[v] = 1;
        p.images_[v] = c[(k + 1) % c.size()];
      }
    }
    return p;
  }

  static Permutation from_single_cycle(const std::vector<int>& cycle) {
    const int n = static_cast<int>(cycle.size());
    Permutation p = from_cycles(n, {cycle});
    p.order_.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) p.order_[cycle[k]] = k + 1;
    return p;
  }

  int n() const { return static_cast<int>(images_.size()) - 1; }

  int operator()(int v) const { return images_[v]; }

  // Position of v inside the generating n-cycle; 0 when unknown.
  int tour_position(int v) const {
    return order_.empty() ? 0 : order_[v];
  }

  std::vector<int> row() const {
    return std::vector<int>(images_.begin() + 1, images_.end());
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }

 private:
  static void check_size(int n) {
    if (n < 1) throw std::invalid_argument("permutation size must be positive");
  }

  std::vector<int> images_;
  std::vector<int> order_;
};

// Disjoint cycle decomposition; cycles are rotated to start at their smallest
// vertex and sorted by that vertex, fixed points listed separately.
struct CycleForm {
  std::vector<std::vector<int>> cycles;
  std::vector<int> fixed_points;
};

// r(i) = p(q(i)): q is applied first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> images(p.n());
  for (int i = 1; i <= p.n(); ++i) images[i - 1] = p(q(i));
  return Permutation::from_row(images);
}

inline Permutation inverse(const Permutation& p) {
  std::vector<int> images(p.n());
  for (int i = 1; i <= p.n(); ++i) images[p(i) - 1] = i;
  return Permutation::from_row(images);
}

inline CycleForm decompose(const Permutation& p) {
  CycleForm form;
  std::vector<char> seen(p.n() + 1, 0);
  for (int start = 1; start <= p.n(); ++start) {
    if (seen[start]) continue;
    if (p(start) == start) {
      seen[start] = 1;
      form.fixed_points.push_back(start);
      continue;
    }
    std::vector<int> cycle;
    for (int v = start; !seen[v]; v = p(v)) {
      seen[v] = 1;
      cycle.push_back(v);
    }
    form.cycles.push_back(std::move(cycle));
  }
  return form;
}

inline bool is_derangement(const Permutation& p) {
  for (int i = 1; i <= p.n(); ++i)
    if (p(i) == i) return false;
  return true;
}

// True iff p is a single cycle through all n vertices.
inline bool is_tour(const Permutation& p) {
  if (p.n() < 2) return false;
  int v = 1, steps = 0;
  do {
    v = p(v);
    ++steps;
  } while (v != 1 && steps <= p.n());
  return steps == p.n();
}

inline std::string cycle_to_string(const std::vector<int>& cycle) {
  std::string out = "(";
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(cycle[k]);
  }
  out += ')';
  return out;
}

// "(1 4 2 3)(5 7 8 6)"; fixed points are omitted, the identity prints "()".
inline std::string cycle_notation(const Permutation& p) {
  const CycleForm form = decompose(p);
  if (form.cycles.empty()) return "()";
  std::string out;
  for (const auto& c : form.cycles) out += cycle_to_string(c);
  return out;
}

// Parses cycle notation into a permutation of {1..n}.  Vertices are
// whitespace-separated integers, each parenthesized group is one cycle.
inline Permutation parse_cycles(std::string_view text, int n) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument("cycle notation, position " + std::to_string(i + 1) + ": " + what);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<int> cycle;
    while (true) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected vertex or ')'");
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > n) fail("vertex out of range");
        ++i;
      }
      if (v < 1) fail("vertex out of range");
      cycle.push_back(static_cast<int>(v));
    }
    if (cycle.size() == 1) fail("cycle of length 1");
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(n, cycles);
}

}  // namespace fwtsp
