#pragma once

#include <initializer_list>
#include <string_view>
#include <vector>

#include "splitpack/core.hpp"

namespace testing {

using splitpack::Rational;

inline Rational R(std::string_view text) { return Rational::parse(text); }

inline splitpack::Instance make(int k, std::initializer_list<std::string_view> sizes) {
  std::vector<Rational> v;
  for (auto s : sizes) v.push_back(Rational::parse(s));
  return splitpack::Instance(k, std::move(v));
}

// bins given as {{item, "part"}, ...}
struct Entry {
  std::size_t item;
  std::string_view part;
};
inline splitpack::Packing pack(std::initializer_list<std::initializer_list<Entry>> bins) {
  splitpack::Packing p;
  for (const auto& bin : bins) {
    splitpack::Bin& b = p.open_bin();
    for (const auto& e : bin) b.parts.push_back({e.item, Rational::parse(e.part)});
  }
  return p;
}

}  // namespace testing
