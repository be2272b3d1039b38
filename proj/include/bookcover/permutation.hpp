#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bookcover/bigint.hpp"
#include "bookcover/errors.hpp"

namespace bookcover {

// Permutation of {0,...,n-1}. Products compose left to right:
// (p * q) maps x to q[p[x]], matching the right monodromy action on fibers,
// so that evaluating a concatenated path multiplies images in word order.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::uint32_t n) : img_(n) {
    std::iota(img_.begin(), img_.end(), 0u);
  }

  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (std::uint32_t v : img_) {
      if (v >= img_.size() || seen[v])
        throw MalformedInput("permutation image list is not a bijection");
      seen[v] = true;
    }
  }

  static Perm identity(std::uint32_t n) { return Perm(n); }

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator[](std::uint32_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::uint32_t x = 0; x < degree(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  // this, then other.
  Perm operator*(const Perm& other) const {
    if (degree() != other.degree())
      throw InternalError("permutation degree mismatch in product");
    std::vector<std::uint32_t> r(img_.size());
    for (std::uint32_t x = 0; x < degree(); ++x) r[x] = other.img_[img_[x]];
    Perm p;
    p.img_ = std::move(r);
    return p;
  }

  Perm inverse() const {
    std::vector<std::uint32_t> r(img_.size());
    for (std::uint32_t x = 0; x < degree(); ++x) r[img_[x]] = x;
    Perm p;
    p.img_ = std::move(r);
    return p;
  }

  // Multiplicative order: lcm of cycle lengths.
  Int order() const {
    Int result = 1;
    std::vector<bool> seen(img_.size(), false);
    for (std::uint32_t x = 0; x < degree(); ++x) {
      if (seen[x]) continue;
      std::uint64_t len = 0;
      for (std::uint32_t y = x; !seen[y]; y = img_[y]) {
        seen[y] = true;
        ++len;
      }
      result = big_lcm(result, Int(len));
    }
    return result;
  }

  std::uint32_t smallest_moved() const {
    for (std::uint32_t x = 0; x < degree(); ++x)
      if (img_[x] != x) return x;
    return degree();
  }

  friend auto operator<=>(const Perm&, const Perm&) = default;

  // Disjoint cycle notation, 1-based, fixed points omitted, cycles sorted by
  // smallest element and started there; identity prints as "()".
  std::string cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(img_.size(), false);
    bool any = false;
    for (std::uint32_t x = 0; x < degree(); ++x) {
      if (seen[x] || img_[x] == x) {
        seen[x] = true;
        continue;
      }
      any = true;
      out << '(';
      bool first = true;
      for (std::uint32_t y = x; !seen[y]; y = img_[y]) {
        seen[y] = true;
        if (!first) out << ' ';
        out << (y + 1);
        first = false;
      }
      out << ')';
    }
    return any ? out.str() : "()";
  }

  // Parses 1-based cycle notation, e.g. "(1 2)(3 4 5)". Whitespace or commas
  // separate points. "" and "()" denote the identity.
  static Perm parse_cycles(const std::string& text, std::uint32_t n) {
    Perm p(n);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) != 0))
        ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(')
        throw MalformedInput("cycle notation: expected '(' in \"" + text + "\"");
      ++i;
      std::vector<std::uint32_t> cycle;
      while (true) {
        skip_ws();
        if (i >= text.size())
          throw MalformedInput("cycle notation: unterminated cycle in \"" + text + "\"");
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (text[i] == ',') {
          ++i;
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(text[i])) == 0)
          throw MalformedInput("cycle notation: unexpected character in \"" + text + "\"");
        std::uint64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          ++i;
        }
        if (v == 0 || v > n)
          throw MalformedInput("cycle notation: point out of range in \"" + text + "\"");
        cycle.push_back(static_cast<std::uint32_t>(v - 1));
      }
      for (std::size_t k = 0; k + 1 < cycle.size(); ++k) {
        if (p.img_[cycle[k]] != cycle[k])
          throw MalformedInput("cycle notation: repeated point in \"" + text + "\"");
        p.img_[cycle[k]] = cycle[k + 1];
      }
      if (cycle.size() >= 2) {
        if (p.img_[cycle.back()] != cycle.back())
          throw MalformedInput("cycle notation: repeated point in \"" + text + "\"");
        p.img_[cycle.back()] = cycle.front();
      }
      skip_ws();
    }
    // Re-validate: overlapping cycles could have produced a non-bijection.
    return Perm(std::move(p.img_));
  }

 private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace bookcover
