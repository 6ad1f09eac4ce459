// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace lipognn {

// The element subset this library understands. Everything outside it is
// rejected at parse time rather than guessed at.
enum class Element : std::uint8_t {
  B,
  C,
  N,
  O,
  F,
  Si,
  P,
  S,
  Cl,
  Br,
  I,
  H,
};

inline constexpr int kNumElements = 12;

struct ElementInfo {
  std::string_view symbol;
  double mass;
  // Allowed valence states, ascending; unused slots are 0.
  std::array<int, 3> valences;
  int n_valences;
  bool organic_subset;    // may be written without brackets
  bool aromatic_allowed;  // may be written lowercase
};

namespace detail {

inline constexpr std::array<ElementInfo, kNumElements> kElementTable = {{
    {"B", 10.811, {3, 0, 0}, 1, true, true},
    {"C", 12.011, {4, 0, 0}, 1, true, true},
    {"N", 14.007, {3, 0, 0}, 1, true, true},
    {"O", 15.999, {2, 0, 0}, 1, true, true},
    {"F", 18.998, {1, 0, 0}, 1, true, false},
    {"Si", 28.086, {4, 0, 0}, 1, false, false},
    {"P", 30.974, {3, 5, 0}, 2, true, true},
    {"S", 32.065, {2, 4, 6}, 3, true, true},
    {"Cl", 35.453, {1, 0, 0}, 1, true, false},
    {"Br", 79.904, {1, 0, 0}, 1, true, false},
    {"I", 126.904, {1, 0, 0}, 1, true, false},
    {"H", 1.008, {1, 0, 0}, 1, false, false},
}};

}  // namespace detail

inline const ElementInfo& element_info(Element e) {
  return detail::kElementTable[static_cast<std::size_t>(e)];
}

inline std::string_view symbol_of(Element e) { return element_info(e).symbol; }
inline double mass_of(Element e) { return element_info(e).mass; }

// Case-sensitive symbol lookup ("Cl" matches, "cl" does not).
inline std::optional<Element> element_from_symbol(std::string_view symbol) {
  for (int i = 0; i < kNumElements; ++i) {
    if (detail::kElementTable[i].symbol == symbol) {
      return static_cast<Element>(i);
    }
  }
  return std::nullopt;
}

inline bool is_halogen(Element e) {
  return e == Element::F || e == Element::Cl || e == Element::Br ||
         e == Element::I;
}

// Valence capacity adjusted for formal charge: a positive charge adds
// capacity on N and O (ammonium, oxonium), a negative charge removes one
// bonding slot on any element.
inline int adjusted_valence(Element e, int valence, int charge) {
  if (charge > 0 && (e == Element::N || e == Element::O)) {
    return valence + charge;
  }
  if (charge < 0) {
    return valence + charge;
  }
  return valence;
}

// Smallest allowed (charge-adjusted) valence >= bond_sum, or nullopt if the
// bond sum exceeds every allowed state.
inline std::optional<int> smallest_valence_at_least(Element e, int charge,
                                                    int bond_sum) {
  const ElementInfo& info = element_info(e);
  for (int i = 0; i < info.n_valences; ++i) {
    int v = adjusted_valence(e, info.valences[i], charge);
    if (v >= bond_sum) return v;
  }
  return std::nullopt;
}

}  // namespace lipognn
