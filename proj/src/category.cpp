#include "polyagent/category.hpp"

namespace polyagent {

std::size_t FinCategory::morphism_index(const std::string& label) const {
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    if (morphisms[i].label == label) return i;
  }
  throw UnknownMorphism("no morphism '" + label + "' in category '" + objects.name + "'");
}

namespace {

std::size_t compose_or_throw(const FinCategory& c, std::size_t f, std::size_t g) {
  const std::size_t h = c.then_table[f][g];
  if (h == FinCategory::kUndefined) {
    throw InvalidCategory("composition table missing entry for '" +
                          c.morphisms[f].label + "' then '" + c.morphisms[g].label + "'");
  }
  return h;
}

}  // namespace

void validate_category(const FinCategory& c) {
  validate_finset(c.objects);
  const std::size_t n = c.morphisms.size();
  if (c.identities.size() != c.objects.size()) {
    throw InvalidCategory("one identity required per object");
  }
  for (const auto& m : c.morphisms) {
    if (m.dom >= c.objects.size() || m.cod >= c.objects.size()) {
      throw InvalidCategory("morphism '" + m.label + "' has out-of-range endpoints");
    }
  }
  for (std::size_t x = 0; x < c.identities.size(); ++x) {
    const std::size_t id = c.identities[x];
    if (id >= n || c.morphisms[id].dom != x || c.morphisms[id].cod != x) {
      throw InvalidCategory("identity of object '" + c.objects.label(x) +
                            "' is not an endomorphism of it");
    }
  }
  if (c.then_table.size() != n) {
    throw InvalidCategory("composition table must have one row per morphism");
  }
  for (const auto& row : c.then_table) {
    if (row.size() != n) throw InvalidCategory("composition table row has wrong width");
  }
  // closure and typing
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      const bool composable = c.morphisms[f].cod == c.morphisms[g].dom;
      const std::size_t h = c.then_table[f][g];
      if (!composable) {
        if (h != FinCategory::kUndefined) {
          throw InvalidCategory("composition defined for non-composable pair '" +
                                c.morphisms[f].label + "', '" + c.morphisms[g].label + "'");
        }
        continue;
      }
      if (h == FinCategory::kUndefined) {
        throw InvalidCategory("composition missing for composable pair '" +
                              c.morphisms[f].label + "', '" + c.morphisms[g].label + "'");
      }
      if (h >= n || c.morphisms[h].dom != c.morphisms[f].dom ||
          c.morphisms[h].cod != c.morphisms[g].cod) {
        throw InvalidCategory("composite of '" + c.morphisms[f].label + "' and '" +
                              c.morphisms[g].label + "' has wrong endpoints");
      }
    }
  }
  // unit laws
  for (std::size_t f = 0; f < n; ++f) {
    const std::size_t pre = c.identities[c.morphisms[f].dom];
    const std::size_t post = c.identities[c.morphisms[f].cod];
    if (compose_or_throw(c, pre, f) != f || compose_or_throw(c, f, post) != f) {
      throw InvalidCategory("identity laws fail at morphism '" + c.morphisms[f].label + "'");
    }
  }
  // associativity over all composable triples
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      if (c.morphisms[f].cod != c.morphisms[g].dom) continue;
      const std::size_t fg = c.then_table[f][g];
      for (std::size_t h = 0; h < n; ++h) {
        if (c.morphisms[g].cod != c.morphisms[h].dom) continue;
        const std::size_t gh = c.then_table[g][h];
        if (c.then_table[fg][h] != c.then_table[f][gh]) {
          throw InvalidCategory("associativity fails at ('" + c.morphisms[f].label +
                                "','" + c.morphisms[g].label + "','" +
                                c.morphisms[h].label + "')");
        }
      }
    }
  }
}

Polynomial category_to_poly(const FinCategory& c) {
  validate_category(c);
  Polynomial p;
  p.positions = c.objects;
  p.directions.resize(c.objects.size());
  for (std::size_t x = 0; x < c.objects.size(); ++x) {
    FinSet dirs;
    dirs.name = c.objects.label(x) + "-out";
    for (const auto& m : c.morphisms) {
      if (m.dom == x) dirs.elements.push_back(m.label);
    }
    p.directions[x] = std::move(dirs);
  }
  return p;
}

bool check_policy_composable(const FinCategory& c,
                             const std::vector<std::string>& labels) {
  std::vector<std::size_t> ms;
  ms.reserve(labels.size());
  for (const auto& l : labels) ms.push_back(c.morphism_index(l));
  for (std::size_t k = 0; k + 1 < ms.size(); ++k) {
    if (c.morphisms[ms[k]].cod != c.morphisms[ms[k + 1]].dom) return false;
  }
  return true;
}

}  // namespace polyagent
