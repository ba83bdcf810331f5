#pragma once

#include <string>
#include <vector>

#include "tamestrata/strata.hpp"

namespace ts {

// Default irreducible modulus (low to high) for p^f <= 3125, p <= 13.
// Throws BadDegree when the table has no entry.
std::vector<int> default_modulus(int p, int f);
FieldPtr default_field(int p, int f);

// Closes each generator list into a subgroup and appends the full group.
// k_F = F_p; zeta defaults to 1.
TowerPtr tower_from_generators(int p, int f, int e, const std::vector<std::vector<GaloisElement>>& gens,
                               std::uint32_t zeta = 1);

// p = 5, k_L = F_25 (x^2 + 4x + 2), e = 2; chain {1} < <(0,1)> < G.
TowerPtr desk_tower();
// p = 3, k_L = F_9, e = 4; chain {1} < <(0,2)> < <(0,1)> < G.
TowerPtr deep_tower();

enum class ChainShape { Direct, UnramifiedMiddle, RamifiedMiddle };
TowerPtr standard_tower(int p, int e, int f, ChainShape shape);

struct NamedTower {
  std::string name;
  TowerPtr tower;
};
// Towers with p in {2,3,5}, e in {1,2,3}, f in {1,2}.
std::vector<NamedTower> minimality_towers();

// omega: the class of x in k_L.
std::uint32_t omega(const Tower& T);

}  // namespace ts
