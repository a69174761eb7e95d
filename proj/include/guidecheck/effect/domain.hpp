#pragma once

#include <concepts>
#include <string>

#include "guidecheck/effect/alphabet.hpp"
#include "guidecheck/effect/reglang.hpp"

namespace guidecheck {

/// Contract for an effect domain: a pair of join-semilattices (finite traces,
/// finite-or-infinite traces) with concatenations, Kleene star, ω-iteration,
/// and abstraction of regular languages. Instances: OracleDomain,
/// ToyDomain, ProfileDomain.
template <class D>
concept BuchiAlgebra = requires(const D& d, const typename D::Fin& a, const typename D::Inf& v,
                                Event e, const RegLang& l) {
  requires std::equality_comparable<typename D::Fin>;
  requires std::equality_comparable<typename D::Inf>;
  { d.bottom() } -> std::same_as<typename D::Fin>;
  { d.unit() } -> std::same_as<typename D::Fin>;
  { d.letter(e) } -> std::same_as<typename D::Fin>;
  { d.from_language(l) } -> std::same_as<typename D::Fin>;
  { d.is_bottom(a) } -> std::convertible_to<bool>;
  { d.join(a, a) } -> std::same_as<typename D::Fin>;
  { d.leq(a, a) } -> std::convertible_to<bool>;
  { d.concat(a, a) } -> std::same_as<typename D::Fin>;
  { d.star(a) } -> std::same_as<typename D::Fin>;
  { d.inf_bottom() } -> std::same_as<typename D::Inf>;
  { d.is_bottom(v) } -> std::convertible_to<bool>;
  { d.join(v, v) } -> std::same_as<typename D::Inf>;
  { d.leq(v, v) } -> std::convertible_to<bool>;
  { d.concat(a, v) } -> std::same_as<typename D::Inf>;
  { d.omega(a) } -> std::same_as<typename D::Inf>;
  { d.show(a) } -> std::convertible_to<std::string>;
  { d.show(v) } -> std::convertible_to<std::string>;
};

}  // namespace guidecheck
