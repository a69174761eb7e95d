#pragma once

#include <cstdint>
#include <string>

#include "guidecheck/effect/reglang.hpp"

namespace guidecheck {

/// The four-element / eight-element toy Büchi algebra over the one-letter
/// alphabet {a}: finite elements are unions of {ε} and a⁺; infinite elements
/// additionally may contain a^ω.
struct ToyFin {
  static constexpr std::uint8_t kEps = 1, kPlus = 2;
  std::uint8_t bits = 0;
  friend bool operator==(const ToyFin&, const ToyFin&) = default;
  friend auto operator<=>(const ToyFin&, const ToyFin&) = default;
};

struct ToyInf {
  static constexpr std::uint8_t kEps = 1, kPlus = 2, kOmega = 4;
  std::uint8_t bits = 0;
  friend bool operator==(const ToyInf&, const ToyInf&) = default;
  friend auto operator<=>(const ToyInf&, const ToyInf&) = default;
};

class ToyDomain {
 public:
  using Fin = ToyFin;
  using Inf = ToyInf;

  Fin bottom() const { return {}; }
  Fin unit() const { return {Fin::kEps}; }
  Fin letter(Event) const { return {Fin::kPlus}; }
  Fin from_language(const RegLang& l) const;

  bool is_bottom(const Fin& a) const { return a.bits == 0; }
  Fin join(const Fin& a, const Fin& b) const { return {std::uint8_t(a.bits | b.bits)}; }
  bool leq(const Fin& a, const Fin& b) const { return (a.bits & ~b.bits) == 0; }
  Fin concat(const Fin& a, const Fin& b) const;
  Fin star(const Fin& a) const;

  Inf inf_bottom() const { return {}; }
  bool is_bottom(const Inf& v) const { return v.bits == 0; }
  Inf join(const Inf& a, const Inf& b) const { return {std::uint8_t(a.bits | b.bits)}; }
  bool leq(const Inf& a, const Inf& b) const { return (a.bits & ~b.bits) == 0; }
  Inf concat(const Fin& a, const Inf& v) const;
  Inf omega(const Fin& a) const;

  Inf embed(const Fin& a) const { return {a.bits}; }
  Inf top() const { return {Inf::kEps | Inf::kPlus | Inf::kOmega}; }
  /// Greatest fixed point of X = a·X computed inside the eight-element
  /// lattice by downward iteration from the top element.
  Inf naive_gfp(const Fin& a) const;

  std::string show(const Fin& a) const;
  std::string show(const Inf& v) const;
};

}  // namespace guidecheck
