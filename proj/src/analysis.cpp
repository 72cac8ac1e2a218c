#include "bagpdb/analysis.hpp"

#include <algorithm>
#include <numeric>

#include "bagpdb/errors.hpp"

namespace bagpdb {

namespace {

// Minimal union-find over atom indices.
struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

std::map<std::string, std::set<std::string>> compute_sg(const std::vector<Atom>& atoms) {
  std::map<std::string, std::set<std::string>> sg;
  for (const auto& atom : atoms)
    for (const auto& t : atom.args)
      if (t.is_variable()) sg[t.name].insert(atom.relation);
  return sg;
}

}  // namespace

QueryAnalysis analyze(const CQ& q) {
  QueryAnalysis out;
  out.sg = compute_sg(q.atoms);

  std::map<std::string, std::size_t> rel_count;
  for (const auto& atom : q.atoms) ++rel_count[atom.relation];
  for (const auto& [rel, n] : rel_count) out.self_join_width = std::max(out.self_join_width, n);
  out.self_join_free = out.self_join_width == 1;

  // Components: atoms sharing a variable are merged.
  const std::size_t n = q.atoms.size();
  Dsu dsu(n);
  std::map<std::string, std::size_t> first_atom_of_var;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : q.atoms[i].args) {
      if (!t.is_variable()) continue;
      auto [it, inserted] = first_atom_of_var.emplace(t.name, i);
      if (!inserted) dsu.unite(it->second, i);
    }
  }
  std::map<std::size_t, std::size_t> root_to_component;
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& atom = q.atoms[i];
    if (atom.is_ground()) {
      out.constant_atoms.push_back(atom);
      continue;
    }
    const std::size_t root = dsu.find(i);
    auto [it, inserted] = root_to_component.emplace(root, out.components.size());
    if (inserted) out.components.emplace_back();
    out.components[it->second].atoms.push_back(atom);
  }
  for (auto& comp : out.components) {
    std::set<std::string> vars;
    for (const auto& atom : comp.atoms)
      for (const auto& t : atom.args)
        if (t.is_variable()) vars.insert(t.name);
    for (const auto& v : q.bound_vars)
      if (vars.contains(v)) comp.variables.push_back(v);
  }

  for (auto x = out.sg.begin(); x != out.sg.end() && out.hierarchical; ++x) {
    for (auto y = std::next(x); y != out.sg.end(); ++y) {
      if (intersects(x->second, y->second) && !subset(x->second, y->second) &&
          !subset(y->second, x->second)) {
        out.hierarchical = false;
        out.non_hierarchical_pair = {x->first, y->first};
        break;
      }
    }
  }
  return out;
}

std::string maximal_variable(const Component& component) {
  const auto sg = compute_sg(component.atoms);
  // sg is a sorted map, so the first qualifying key is the lexicographic minimum.
  for (const auto& [x, sx] : sg) {
    const bool dominates = std::all_of(sg.begin(), sg.end(), [&](const auto& entry) {
      return subset(entry.second, sx);
    });
    if (dominates) return x;
  }
  throw PreconditionError("component " + to_string(component.as_query()) +
                          " has no maximal variable (it is not hierarchical)");
}

Fact ground_fact(const Atom& atom) {
  Fact f{atom.relation, {}};
  f.args.reserve(atom.args.size());
  for (const auto& t : atom.args) {
    if (!t.is_constant()) throw PreconditionError("atom " + to_string(atom) + " is not ground");
    f.args.push_back(t.name);
  }
  return f;
}

GroundingProfile substitute(const CQ& q, const std::map<std::string, std::string>& valuation) {
  GroundingProfile profile;
  for (const auto& atom : q.atoms) {
    Fact f{atom.relation, {}};
    for (const auto& t : atom.args) {
      if (t.is_constant()) {
        f.args.push_back(t.name);
        continue;
      }
      auto it = valuation.find(t.name);
      if (it == valuation.end()) {
        throw PreconditionError("valuation does not cover variable '" + t.name + "'");
      }
      f.args.push_back(it->second);
    }
    ++profile[std::move(f)];
  }
  return profile;
}

CQ bind_variable(const CQ& q, const std::string& variable, const std::string& value) {
  CQ out;
  for (const auto& v : q.bound_vars)
    if (v != variable) out.bound_vars.push_back(v);
  out.atoms = q.atoms;
  for (auto& atom : out.atoms)
    for (auto& t : atom.args)
      if (t.is_variable() && t.name == variable) t = Term::constant(value);
  return out;
}

}  // namespace bagpdb
