#include "ramification.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lfp::ram {

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool is_subgroup(const RamDatum& d, const std::vector<int>& ids) {
  if (!contains(ids, 0)) return false;
  for (int a : ids)
    for (int b : ids)
      if (!contains(ids, d.mul[a][b])) return false;
  return true;
}

}  // namespace

int RamDatum::inverse_of(int a) const {
  for (int b = 0; b < order(); ++b)
    if (mul[a][b] == 0) return b;
  throw invariant_error("RamDatum: element has no inverse");
}

RatOrInf RamDatum::depth_of(int a) const {
  if (a == 0) return RatOrInf::infinity();
  auto it = depth.find(a);
  if (it == depth.end())
    throw domain_error("RamDatum: depth queried for a non-inertia element");
  return RatOrInf::of(it->second);
}

void RamDatum::validate() const {
  int n = order();
  if (n == 0 || mul.size() != static_cast<size_t>(n))
    throw domain_error("RamDatum: empty or ragged multiplication table");
  for (const auto& row : mul) {
    if (row.size() != static_cast<size_t>(n))
      throw domain_error("RamDatum: ragged multiplication table");
    for (int v : row)
      if (v < 0 || v >= n) throw domain_error("RamDatum: table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (mul[0][a] != a || mul[a][0] != a)
      throw domain_error("RamDatum: element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw domain_error("RamDatum: multiplication is not associative");
  for (int a = 0; a < n; ++a) inverse_of(a);  // throws if missing

  if (!is_subgroup(*this, inertia)) throw domain_error("RamDatum: inertia is not a subgroup");
  for (int g = 0; g < n; ++g) {
    int gi = inverse_of(g);
    for (int a : inertia)
      if (!contains(inertia, mul[mul[g][a]][gi]))
        throw domain_error("RamDatum: inertia is not normal");
  }
  if (e != static_cast<std::int64_t>(inertia.size()))
    throw domain_error("RamDatum: e must equal |inertia|");
  if (e_base <= 0) throw domain_error("RamDatum: e_base must be positive");

  for (int a : inertia) {
    if (a == 0) continue;
    auto it = depth.find(a);
    if (it == depth.end()) throw domain_error("RamDatum: missing depth for an inertia element");
    if (it->second < Rat(0)) throw domain_error("RamDatum: negative depth");
    Rat scaled = it->second * Rat(e * e_base);
    if (!is_integer(scaled))
      throw domain_error("RamDatum: depth not in (1/(e*e_base))Z");
  }
  for (const auto& [a, dep] : depth) {
    if (!contains(inertia, a) || a == 0)
      throw domain_error("RamDatum: depth defined outside inertia\\{1}");
    if (depth.at(inverse_of(a)) != dep)
      throw domain_error("RamDatum: depth(s) != depth(s^-1)");
  }
  // Each level set must be a subgroup.
  std::vector<Rat> levels;
  for (const auto& [a, dep] : depth) levels.push_back(dep);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (const Rat& r : levels)
    if (!is_subgroup(*this, lower_group(*this, r)))
      throw domain_error("RamDatum: a lower-numbering level set is not a subgroup");
}

std::vector<int> lower_group(const RamDatum& d, const Rat& r) {
  if (r < Rat(0)) throw domain_error("lower_group: r must be >= 0");
  std::vector<int> out{0};
  for (int a : d.inertia) {
    if (a == 0) continue;
    if (d.depth.at(a) >= r) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PLFun hh_phi(const RamDatum& d) {
  // phi(x) = sum over inertia of min(depth(sigma), x), identity counting x.
  std::vector<Rat> ds;
  for (const auto& [a, dep] : d.depth)
    if (dep > Rat(0)) ds.push_back(dep);
  std::sort(ds.begin(), ds.end());
  std::vector<Rat> bs(ds);
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  std::vector<Rat> ss;
  for (size_t i = 0; i <= bs.size(); ++i) {
    // slope on (bs[i-1], bs[i]) = 1 + #{sigma : depth(sigma) >= bs[i]}
    std::int64_t cnt = 0;
    for (const Rat& dep : ds)
      if (i == bs.size() ? false : dep >= bs[i]) ++cnt;
    ss.push_back(Rat(1 + cnt));
  }
  return PLFun(std::move(bs), std::move(ss));
}

PLFun hh_psi(const RamDatum& d) { return hh_phi(d).inverse(); }

Breaks breaks(const RamDatum& d) {
  Breaks b;
  b.ell = Rat(0);
  b.c = Rat(0);
  for (const auto& [a, dep] : d.depth) {
    b.ell = std::max(b.ell, dep);
    b.c += dep;
  }
  b.u = hh_phi(d)(b.ell);
  if (b.c != b.u - b.ell)
    throw invariant_error("breaks: conductor shift != u - ell");
  return b;
}

std::vector<int> upper_group(const RamDatum& d, const Rat& s) {
  if (s < Rat(0)) throw domain_error("upper_group: s must be >= 0");
  return lower_group(d, hh_psi(d)(s));
}

RamDatum quotient_datum(const RamDatum& d, const std::vector<int>& n_ids) {
  // Check n_ids is a normal subgroup.
  if (!is_subgroup(d, n_ids)) throw domain_error("quotient_datum: N is not a subgroup");
  for (int g = 0; g < d.order(); ++g) {
    int gi = d.inverse_of(g);
    for (int a : n_ids)
      if (!contains(n_ids, d.mul[d.mul[g][a]][gi]))
        throw domain_error("quotient_datum: N is not normal");
  }

  // Sub-datum for L/K: group N with induced depths.
  std::vector<int> n_sorted(n_ids);
  std::sort(n_sorted.begin(), n_sorted.end());
  std::vector<int> n_inertia;
  for (int a : n_sorted)
    if (contains(d.inertia, a)) n_inertia.push_back(a);
  RamDatum sub;
  {
    std::map<int, int> reindex;
    for (size_t i = 0; i < n_sorted.size(); ++i) reindex[n_sorted[i]] = static_cast<int>(i);
    sub.elements.resize(n_sorted.size());
    sub.mul.assign(n_sorted.size(), std::vector<int>(n_sorted.size()));
    for (size_t i = 0; i < n_sorted.size(); ++i) {
      sub.elements[i] = d.elements[n_sorted[i]];
      for (size_t j = 0; j < n_sorted.size(); ++j)
        sub.mul[i][j] = reindex.at(d.mul[n_sorted[i]][n_sorted[j]]);
    }
    for (int a : n_inertia) {
      sub.inertia.push_back(reindex.at(a));
      if (a != 0) sub.depth[reindex.at(a)] = d.depth.at(a);
    }
    std::sort(sub.inertia.begin(), sub.inertia.end());
    sub.e = static_cast<std::int64_t>(sub.inertia.size());
    sub.e_base = d.e * d.e_base / sub.e;  // e(K/F)
  }
  PLFun phi_lk = hh_phi(sub);

  // Cosets of N.
  int n = d.order();
  std::vector<int> coset_of(n, -1);
  std::vector<std::vector<int>> cosets;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] != -1) continue;
    std::vector<int> cs;
    for (int h : n_sorted) {
      int x = d.mul[a][h];
      coset_of[x] = static_cast<int>(cosets.size());
      cs.push_back(x);
    }
    std::sort(cs.begin(), cs.end());
    cosets.push_back(cs);
  }
  // Reorder so the identity coset is element 0.
  {
    int idc = coset_of[0];
    if (idc != 0) {
      std::swap(cosets[0], cosets[idc]);
      for (int a = 0; a < n; ++a) {
        if (coset_of[a] == 0) coset_of[a] = idc;
        else if (coset_of[a] == idc) coset_of[a] = 0;
      }
    }
  }

  RamDatum q;
  int m = static_cast<int>(cosets.size());
  q.elements.resize(m);
  for (int i = 0; i < m; ++i) q.elements[i] = d.elements[cosets[i][0]] + "N";
  q.mul.assign(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      q.mul[i][j] = coset_of[d.mul[cosets[i][0]][cosets[j][0]]];
  for (int a : d.inertia)
    if (!contains(q.inertia, coset_of[a])) q.inertia.push_back(coset_of[a]);
  std::sort(q.inertia.begin(), q.inertia.end());
  q.e = static_cast<std::int64_t>(q.inertia.size());
  q.e_base = d.e_base;

  for (int ci : q.inertia) {
    if (ci == 0) continue;
    // Herbrand pushforward needs a constant depth multiset on the coset.
    bool have = false;
    Rat dep(0);
    for (int a : cosets[ci]) {
      if (!contains(d.inertia, a)) continue;
      Rat da = d.depth.at(a);
      if (!have) {
        dep = da;
        have = true;
      } else if (da != dep) {
        throw domain_error(
            "quotient_datum: coset depth multiset is not constant; realize the "
            "tower to compute quotient depths");
      }
    }
    if (!have) throw invariant_error("quotient_datum: inertia coset misses inertia");
    q.depth[ci] = phi_lk(dep);
  }
  q.validate();

  // The displayed exact sequence, checked on the whole depth grid:
  // image of Gamma(L/E)_r in the quotient equals Gamma(K/E)_{phi_{L/K}(r)}.
  Rat g = d.granularity();
  Rat top = breaks(d).ell + g;
  for (Rat r(0); r <= top; r += g) {
    std::set<int> img;
    for (int a : lower_group(d, r)) img.insert(coset_of[a]);
    std::vector<int> expect = lower_group(q, phi_lk(r));
    if (std::set<int>(expect.begin(), expect.end()) != img)
      throw invariant_error("quotient_datum: exact sequence violated at a grid point");
  }
  return q;
}

TfaeFlags check_tfae_combinatorial(const RamDatum& d, const Rat& s) {
  if (s < Rat(0)) throw domain_error("check_tfae: s must be >= 0");
  Breaks b = breaks(d);
  Rat psi_s = hh_psi(d)(s);
  TfaeFlags f;
  f.b1 = (b.c == s - psi_s);
  f.b2 = (psi_s >= b.ell) || (s >= b.u);
  f.b3 = true;
  for (const auto& [a, dep] : d.depth)
    if (dep > psi_s) f.b3 = false;
  return f;
}

RamDatum make_cyclic_datum(int n, const Rat& dep, std::int64_t e_base) {
  RamDatum d;
  d.elements.resize(n);
  d.mul.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    d.elements[i] = (i == 0) ? "1" : "s" + std::to_string(i);
    for (int j = 0; j < n; ++j) d.mul[i][j] = (i + j) % n;
    d.inertia.push_back(i);
    if (i != 0) d.depth[i] = dep;
  }
  d.e = n;
  d.e_base = e_base;
  d.validate();
  return d;
}

RamDatum make_trivial_datum() { return make_cyclic_datum(1, Rat(0)); }

RamDatum datum_from_upper_filtration(const std::vector<std::string>& elements,
                                     const std::vector<std::vector<int>>& mul,
                                     const std::map<Rat, std::set<int>>& filtration,
                                     std::int64_t e_base) {
  RamDatum d;
  d.elements = elements;
  d.mul = mul;
  for (int i = 0; i < d.order(); ++i) d.inertia.push_back(i);
  d.e = d.order();
  d.e_base = e_base;
  if (d.e == 1) {
    d.validate();
    return d;
  }

  // Upper breaks u_1 < ... < u_k with subgroups H_j alive on (u_{j-1}, u_j];
  // lower breaks follow from the slopes of phi: ell_1 = u_1/|H_1|,
  // ell_{j+1} = ell_j + (u_{j+1}-u_j)/|H_{j+1}|.
  std::vector<Rat> ubreaks;
  std::vector<std::set<int>> subs;
  for (const auto& [u, h] : filtration) {
    if (h.size() <= 1) continue;
    ubreaks.push_back(u);
    subs.push_back(h);
  }
  if (ubreaks.empty()) throw domain_error("datum_from_upper_filtration: no nontrivial levels");
  if (subs.front().size() != static_cast<size_t>(d.e))
    throw domain_error("datum_from_upper_filtration: first level must be the full group");
  std::vector<Rat> lbreaks;
  Rat ell = ubreaks[0] / Rat(static_cast<std::int64_t>(subs[0].size()));
  lbreaks.push_back(ell);
  for (size_t j = 1; j < ubreaks.size(); ++j) {
    ell += (ubreaks[j] - ubreaks[j - 1]) / Rat(static_cast<std::int64_t>(subs[j].size()));
    lbreaks.push_back(ell);
  }
  for (int a = 1; a < d.order(); ++a) {
    size_t last = 0;
    bool found = false;
    for (size_t j = 0; j < subs.size(); ++j)
      if (subs[j].count(a)) {
        last = j;
        found = true;
      }
    if (!found)
      throw domain_error("datum_from_upper_filtration: element missing from first level");
    d.depth[a] = lbreaks[last];
  }
  d.validate();
  return d;
}

}  // namespace lfp::ram
