#pragma once

#include <string>
#include <vector>

#include "smallcancel/factor_group.hpp"
#include "smallcancel/set_algebra.hpp"

namespace smallcancel {

// Points with identical membership signatures across all members of the
// algebra form one atom; a function is measurable exactly when it is
// constant on every atom. Returns atom index per point.
inline std::vector<size_t> algebra_atoms(const SetAlgebra& a) {
  std::vector<size_t> atom(a.carrier_size());
  std::vector<std::vector<char>> sigs;
  for (size_t i = 0; i < a.carrier_size(); ++i) {
    std::vector<char> sig;
    sig.reserve(a.members().size());
    for (Mask m : a.members()) sig.push_back((m >> i) & 1);
    auto it = std::find(sigs.begin(), sigs.end(), sig);
    if (it == sigs.end()) {
      atom[i] = sigs.size();
      sigs.push_back(std::move(sig));
    } else {
      atom[i] = static_cast<size_t>(it - sigs.begin());
    }
  }
  return atom;
}

// The group of measurable functions X -> H under pointwise multiplication.
// Elements are named by their value rows: [h(x0),h(x1),...]. The returned
// table goes through the standard construction-time group validation.
inline FactorGroup measurable_function_group(const SetAlgebra& a, const FactorGroup& h,
                                             long long table_cap = 5000) {
  if (h.is_cyclic()) throw CheckError("measurable functions need a finite value group");
  if (a.carrier_size() == 0)
    throw CheckError("measurable functions need a nonempty carrier");
  const std::vector<size_t> atom = algebra_atoms(a);
  const size_t atoms = 1 + *std::max_element(atom.begin(), atom.end());
  long long count = 1;
  for (size_t i = 0; i < atoms; ++i) {
    count *= h.order();
    if (count > table_cap)
      throw ResourceError("measurable function group exceeds " + std::to_string(table_cap) +
                          " elements (" + std::to_string(atoms) + " atoms over a group of order " +
                          std::to_string(h.order()) + ")");
  }

  // Enumerate value assignments atom-by-atom, lexicographically by element
  // index, so the construction is deterministic.
  std::vector<std::vector<int>> funcs;
  std::vector<int> cur(atoms, 0);
  bool more = true;
  while (more) {
    funcs.push_back(cur);
    more = false;
    for (size_t i = atoms; i-- > 0;) {
      if (++cur[i] < h.order()) {
        more = true;
        break;
      }
      cur[i] = 0;
    }
  }
  auto name_of = [&](const std::vector<int>& f) {
    std::string s = "[";
    for (size_t p = 0; p < a.carrier_size(); ++p) {
      if (p) s += ",";
      s += h.element_name(f[atom[p]]);
    }
    return s + "]";
  };
  std::vector<std::string> names;
  names.reserve(funcs.size());
  for (const auto& f : funcs) names.push_back(name_of(f));
  std::vector<std::vector<std::string>> rows(funcs.size());
  for (size_t i = 0; i < funcs.size(); ++i) {
    rows[i].reserve(funcs.size());
    for (size_t j = 0; j < funcs.size(); ++j) {
      std::vector<int> prod(atoms);
      for (size_t t = 0; t < atoms; ++t) prod[t] = h.mul(funcs[i][t], funcs[j][t]);
      rows[i].push_back(name_of(prod));
    }
  }
  std::vector<int> id_func(atoms, h.identity());
  return FactorGroup::from_table(0, "Meas(" + h.name() + ")", std::move(names),
                                 name_of(id_func), rows);
}

}  // namespace smallcancel
