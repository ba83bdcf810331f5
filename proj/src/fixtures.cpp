#include "tamestrata/fixtures.hpp"

#include <map>

namespace ts {

namespace {

const std::map<std::pair<int, int>, std::vector<int>>& modulus_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{3, 7}, {1, 0, 2, 0, 0, 0, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{5, 5}, {3, 4, 0, 0, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{7, 4}, {3, 4, 5, 0, 1}},
      {{11, 1}, {9, 1}},
      {{11, 2}, {2, 7, 1}},
      {{11, 3}, {9, 2, 0, 1}},
      {{13, 1}, {11, 1}},
      {{13, 2}, {2, 12, 1}},
      {{13, 3}, {11, 2, 0, 1}},
  };
  return table;
}

}  // namespace

std::vector<int> default_modulus(int p, int f) {
  const auto& t = modulus_table();
  const auto it = t.find({p, f});
  if (it == t.end()) fail("BadDegree", "no default modulus for p=" + std::to_string(p) + ", f=" + std::to_string(f));
  return it->second;
}

FieldPtr default_field(int p, int f) { return FqField::make(p, f, default_modulus(p, f)); }

TowerPtr tower_from_generators(int p, int f, int e, const std::vector<std::vector<GaloisElement>>& gens,
                               std::uint32_t zeta) {
  TowerSpec spec;
  spec.kL = default_field(p, f);
  spec.base_degree = 1;
  spec.e_L = e;
  spec.zeta = zeta;
  std::vector<GaloisElement> all;
  for (int j = 0; j < f; ++j)
    for (int m = 0; m < e; ++m) all.push_back({j, m});
  spec.levels = {all};
  const TowerPtr full = Tower::make(spec);
  spec.levels.clear();
  for (const auto& g : gens) {
    std::vector<int> idx;
    for (const auto& x : g) idx.push_back(full->index_of(x));
    std::vector<GaloisElement> level;
    for (int h : full->generate(idx)) level.push_back(full->element(h));
    spec.levels.push_back(level);
  }
  spec.levels.push_back(all);
  return Tower::make(spec);
}

TowerPtr desk_tower() { return tower_from_generators(5, 2, 2, {{}, {{0, 1}}}); }

TowerPtr deep_tower() { return tower_from_generators(3, 2, 4, {{}, {{0, 2}}, {{0, 1}}}); }

TowerPtr standard_tower(int p, int e, int f, ChainShape shape) {
  switch (shape) {
    case ChainShape::Direct: return tower_from_generators(p, f, e, {{}});
    case ChainShape::UnramifiedMiddle: return tower_from_generators(p, f, e, {{}, {{0, 1}}});
    case ChainShape::RamifiedMiddle: return tower_from_generators(p, f, e, {{}, {{1, 0}}});
  }
  return nullptr;
}

std::vector<NamedTower> minimality_towers() {
  std::vector<NamedTower> out;
  auto add = [&](int p, int e, int f, ChainShape sh, const char* tag) {
    out.push_back({"p" + std::to_string(p) + "e" + std::to_string(e) + "f" + std::to_string(f) + tag,
                   standard_tower(p, e, f, sh)});
  };
  add(5, 2, 2, ChainShape::UnramifiedMiddle, "-unram");
  add(5, 2, 2, ChainShape::RamifiedMiddle, "-ram");
  add(3, 2, 2, ChainShape::UnramifiedMiddle, "-unram");
  add(3, 2, 2, ChainShape::RamifiedMiddle, "-ram");
  add(2, 3, 2, ChainShape::UnramifiedMiddle, "-unram");
  add(2, 3, 2, ChainShape::RamifiedMiddle, "-ram");
  add(5, 3, 2, ChainShape::UnramifiedMiddle, "-unram");
  add(5, 2, 1, ChainShape::Direct, "");
  add(3, 2, 1, ChainShape::Direct, "");
  add(2, 1, 2, ChainShape::Direct, "");
  add(3, 1, 2, ChainShape::Direct, "");
  return out;
}

std::uint32_t omega(const Tower& T) { return T.k().x(); }

}  // namespace ts
