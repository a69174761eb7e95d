#include "guidecheck/effect/toy.hpp"

#include "guidecheck/error.hpp"

namespace guidecheck {

ToyFin ToyDomain::from_language(const RegLang& l) const {
  if (l.letters() != 1) throw UsageError("the toy domain is defined over a one-letter alphabet");
  std::uint8_t bits = 0;
  if (l.has_epsilon()) bits |= Fin::kEps;
  if (!l.nonempty().is_empty()) bits |= Fin::kPlus;
  return {bits};
}

ToyFin ToyDomain::concat(const Fin& a, const Fin& b) const {
  if (is_bottom(a) || is_bottom(b)) return {};
  std::uint8_t bits = 0;
  if ((a.bits & Fin::kEps) && (b.bits & Fin::kEps)) bits |= Fin::kEps;
  if ((a.bits | b.bits) & Fin::kPlus) bits |= Fin::kPlus;
  return {bits};
}

ToyFin ToyDomain::star(const Fin& a) const {
  return {std::uint8_t(Fin::kEps | (a.bits & Fin::kPlus))};
}

ToyInf ToyDomain::concat(const Fin& a, const Inf& v) const {
  if (is_bottom(a) || is_bottom(v)) return {};
  std::uint8_t bits = 0;
  const bool v_fin = v.bits & (Inf::kEps | Inf::kPlus);
  if ((a.bits & Fin::kEps) && (v.bits & Inf::kEps)) bits |= Inf::kEps;
  if (((a.bits & Fin::kPlus) && v_fin) || (v.bits & Inf::kPlus)) bits |= Inf::kPlus;
  if (v.bits & Inf::kOmega) bits |= Inf::kOmega;
  return {bits};
}

ToyInf ToyDomain::omega(const Fin& a) const {
  std::uint8_t bits = 0;
  if (a.bits & Fin::kEps) bits |= star(a).bits;
  if (a.bits & Fin::kPlus) bits |= Inf::kOmega;
  return {bits};
}

ToyInf ToyDomain::naive_gfp(const Fin& a) const {
  Inf x = top();
  while (true) {
    Inf next = concat(a, x);
    if (next == x) return x;
    x = next;
  }
}

std::string ToyDomain::show(const Fin& a) const {
  switch (a.bits) {
    case 0: return "{}";
    case Fin::kEps: return "{eps}";
    case Fin::kPlus: return "a+";
    default: return "a*";
  }
}

std::string ToyDomain::show(const Inf& v) const {
  std::string fin = show(Fin{std::uint8_t(v.bits & 3)});
  if (!(v.bits & Inf::kOmega)) return fin;
  if ((v.bits & 3) == 0) return "a^w";
  return fin + " | a^w";
}

}  // namespace guidecheck
