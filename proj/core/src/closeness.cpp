#include "btlab/field.hpp"
#include "btlab/residue_ring.hpp"

namespace btlab {

int closeness(const FieldDescriptor& a, const FieldDescriptor& b, int r_max, const Budget& budget) {
  if (r_max < 1) throw InvalidInput("closeness needs r_max >= 1");
  for (const auto* d : {&a, &b}) {
    if (const auto v = validate(*d); !v.empty()) throw InvalidInput("invalid descriptor: " + v.front().message);
  }
  if (a.residue_field_size() != b.residue_field_size()) return 0;
  if (normal_form(a) == normal_form(b)) return r_max;
  for (int R = 1; R <= r_max; ++R) {
    const auto ra = ResidueRing::build(a, R, budget);
    const auto rb = ResidueRing::build(b, R, budget);
    if (!rings_isomorphic(ra, rb, budget).isomorphic()) return R - 1;
  }
  return r_max;
}

}  // namespace btlab
