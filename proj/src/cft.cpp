#include "cft.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lfp::cft {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

SnfResult smith_normal_form(std::vector<std::vector<i64>> A, int n) {
  int m = A.empty() ? 0 : static_cast<int>(A[0].size());
  SnfResult r;
  r.U.assign(n, std::vector<i64>(n, 0));
  r.Uinv.assign(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) r.U[i][i] = r.Uinv[i][i] = 1;

  auto row_op = [&](int dst, int src, i64 k) {  // row dst += k * row src
    for (int j = 0; j < m; ++j) A[dst][j] += k * A[src][j];
    for (int j = 0; j < n; ++j) r.U[dst][j] += k * r.U[src][j];
    for (int i = 0; i < n; ++i) r.Uinv[i][src] -= k * r.Uinv[i][dst];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(A[a], A[b]);
    std::swap(r.U[a], r.U[b]);
    for (int i = 0; i < n; ++i) std::swap(r.Uinv[i][a], r.Uinv[i][b]);
  };
  auto row_neg = [&](int a) {
    for (int j = 0; j < m; ++j) A[a][j] = -A[a][j];
    for (int j = 0; j < n; ++j) r.U[a][j] = -r.U[a][j];
    for (int i = 0; i < n; ++i) r.Uinv[i][a] = -r.Uinv[i][a];
  };
  auto col_op = [&](int dst, int src, i64 k) {
    for (int i = 0; i < n; ++i) A[i][dst] += k * A[i][src];
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < n; ++i) std::swap(A[i][a], A[i][b]);
  };

  int k = 0;
  int limit = std::min(n, m);
  while (k < limit) {
    // Locate a pivot of least absolute value in the trailing block.
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < m; ++j)
        if (A[i][j] != 0 && (pi == -1 || std::abs(A[i][j]) < best)) {
          pi = i;
          pj = j;
          best = std::abs(A[i][j]);
        }
    if (pi == -1) break;
    row_swap(k, pi);
    col_swap(k, pj);
    bool dirty = false;
    for (int i = k + 1; i < n; ++i) {
      if (A[i][k] == 0) continue;
      i64 q = A[i][k] / A[k][k];
      row_op(i, k, -q);
      if (A[i][k] != 0) dirty = true;
    }
    for (int j = k + 1; j < m; ++j) {
      if (A[k][j] == 0) continue;
      i64 q = A[k][j] / A[k][k];
      col_op(j, k, -q);
      if (A[k][j] != 0) dirty = true;
    }
    if (dirty) continue;  // smaller remainders appeared; retry this k
    if (A[k][k] < 0) row_neg(k);
    ++k;
  }
  // Divisibility chain d_1 | d_2 | ...
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < k; ++i) {
      if (A[i][i] != 0 && A[i + 1][i + 1] % A[i][i] == 0) continue;
      // Fold the (i, i+1) pair and re-reduce the 2x2 block.
      col_op(i, i + 1, 1);
      while (A[i + 1][i] != 0) {
        i64 q = A[i][i] / A[i + 1][i];
        row_op(i, i + 1, -q);
        row_swap(i, i + 1);
      }
      i64 q = A[i][i + 1] / A[i][i];
      col_op(i + 1, i, -q);
      if (A[i][i] < 0) row_neg(i);
      if (A[i + 1][i + 1] < 0) row_neg(i + 1);
      changed = true;
    }
  }
  r.diag.assign(n, 0);
  for (int i = 0; i < std::min(n, m); ++i) r.diag[i] = A[i][i] < 0 ? -A[i][i] : A[i][i];
  return r;
}

bool GenSet::contains(int n) const {
  if (tail_start > 0 && n >= tail_start) return true;
  return std::find(members.begin(), members.end(), n) != members.end();
}

int GenSet::max_listed() const {
  int mx = tail_start;
  for (int v : members) mx = std::max(mx, v);
  return mx;
}

UnitQuotient::UnitQuotient(int p, const GenSet& S, int N,
                           const std::vector<std::string>& extra_gen_words)
    : p_(p), N_(N), S_(S), own_words_(extra_gen_words) {
  if (!is_prime(p)) throw domain_error("unit_quotient: p must be prime");
  if (N <= std::max(2, S.max_listed() + 2))
    throw domain_error("unit_quotient: N must exceed max(S)+2");

  // Ambient generators: [t, zeta, g_1..g_{N-1}].
  int n = ambient_dim();
  std::vector<std::vector<i64>> cols;
  auto add_col = [&](const std::vector<i64>& c) { cols.push_back(c); };
  {
    std::vector<i64> c(n, 0);
    c[1] = p - 1;  // zeta^(p-1) = 1
    add_col(c);
  }
  for (int i = 1; i < N_; ++i) {
    std::vector<i64> c(n, 0);
    c[i + 1] = p;
    if (static_cast<std::int64_t>(i) * p < N_) c[i * p + 1] -= 1;  // g_i^p = g_{ip}
    add_col(c);
  }
  // U itself: t, zeta, 1+t^s for s in S.
  {
    std::vector<i64> c(n, 0);
    c[0] = 1;
    add_col(c);
  }
  {
    std::vector<i64> c(n, 0);
    c[1] = 1;
    add_col(c);
  }
  for (int s = 1; s < N_; ++s) {
    if (!S_.contains(s)) continue;
    std::vector<i64> c(n, 0);
    c[s + 1] = 1;
    add_col(c);
  }
  for (const std::string& w : own_words_) add_col(ambient_of_word(w));

  std::vector<std::vector<i64>> A(n, std::vector<i64>(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) A[i][j] = cols[j][i];
  SnfResult snf = smith_normal_form(std::move(A), n);
  uinv_ = snf.Uinv;
  for (int i = 0; i < n; ++i) {
    if (snf.diag[i] == 0)
      throw invariant_error("unit_quotient: quotient is infinite (missing relation)");
    if (snf.diag[i] > 1) {
      inv_.push_back(snf.diag[i]);
      proj_.push_back(snf.U[i]);
      surviving_rows_.push_back(i);
    }
  }
}

i64 UnitQuotient::order() const {
  i64 o = 1;
  for (i64 d : inv_) o *= d;
  return o;
}

std::vector<i64> UnitQuotient::ambient_of_word(const std::string& word) const {
  std::vector<i64> c(ambient_dim(), 0);
  if (word == "t") {
    c[0] = 1;
    return c;
  }
  if (word == "zeta") {
    c[1] = 1;
    return c;
  }
  // "1+t^n", "1+a*t^n", "1+t" (n = 1)
  if (word.rfind("1+", 0) == 0) {
    std::string rest = word.substr(2);
    i64 a = 1;
    auto star = rest.find("*t");
    if (star != std::string::npos) {
      a = std::stoll(rest.substr(0, star));
      rest = rest.substr(star + 1);
    }
    if (rest.rfind("t", 0) != 0) throw usage_error("bad generator word '" + word + "'");
    int nexp = 1;
    if (rest.size() > 1) {
      if (rest[1] != '^') throw usage_error("bad generator word '" + word + "'");
      nexp = std::stoi(rest.substr(2));
    }
    if (nexp < 1 || nexp >= N_)
      throw domain_error("generator word exponent out of range: '" + word + "'");
    // 1 + a t^n = (1+t^n)^a modulo higher levels; eliminate level by level.
    // Work with exact unit-series arithmetic over F_p.
    std::vector<int> u(N_, 0);
    u[0] = 1;
    u[nexp] = static_cast<int>(((a % p_) + p_) % p_);
    auto mul_times = [&](int i, i64 count) {  // u *= (1+t^i)^count, count >= 0
      for (i64 rep = 0; rep < count; ++rep) {
        std::vector<int> v(N_, 0);
        for (int x = 0; x < N_; ++x) {
          if (u[x] == 0) continue;
          v[x] = (v[x] + u[x]) % p_;
          if (x + i < N_) v[x + i] = (v[x + i] + u[x]) % p_;
        }
        u = v;
      }
    };
    std::vector<i64> coords(ambient_dim(), 0);
    for (int lvl = 1; lvl < N_; ++lvl) {
      if (u[lvl] == 0) continue;
      int coef = u[lvl];
      coords[lvl + 1] += coef;
      // Divide by (1+t^lvl)^coef: multiply by its inverse, which is the
      // (p^K - coef)-th power where p^K kills level lvl at precision N.
      i64 ordpow = 1;
      while (static_cast<i64>(lvl) * ordpow < N_) ordpow *= p_;
      mul_times(lvl, ordpow - coef);
    }
    return coords;
  }
  throw usage_error("bad generator word '" + word + "'");
}

std::vector<i64> UnitQuotient::class_of(const std::vector<i64>& ambient) const {
  if (ambient.size() != static_cast<size_t>(ambient_dim()))
    throw domain_error("class_of: wrong ambient dimension");
  std::vector<i64> y(inv_.size(), 0);
  for (size_t i = 0; i < inv_.size(); ++i) {
    i64 acc = 0;
    for (int j = 0; j < ambient_dim(); ++j) acc += proj_[i][j] * ambient[j];
    y[i] = ((acc % inv_[i]) + inv_[i]) % inv_[i];
  }
  return y;
}

std::vector<i64> UnitQuotient::class_of_word(const std::string& word) const {
  return class_of(ambient_of_word(word));
}

std::vector<std::vector<i64>> UnitQuotient::all_elements() const {
  std::vector<std::vector<i64>> out;
  std::vector<i64> cur(inv_.size(), 0);
  while (true) {
    out.push_back(cur);
    size_t k = 0;
    while (k < inv_.size()) {
      if (++cur[k] < inv_[k]) break;
      cur[k] = 0;
      ++k;
    }
    if (k == inv_.size()) break;
  }
  return out;
}

std::vector<i64> UnitQuotient::add(const std::vector<i64>& a, const std::vector<i64>& b) const {
  std::vector<i64> y(inv_.size());
  for (size_t i = 0; i < inv_.size(); ++i) y[i] = (a[i] + b[i]) % inv_[i];
  return y;
}

std::vector<i64> UnitQuotient::zero_class() const { return std::vector<i64>(inv_.size(), 0); }

UnitQuotient UnitQuotient::intermediate(const std::vector<std::string>& extra) const {
  std::vector<std::string> words = own_words_;
  words.insert(words.end(), extra.begin(), extra.end());
  return UnitQuotient(p_, S_, N_, words);
}

std::vector<i64> UnitQuotient::project_through(const UnitQuotient& smaller,
                                               const std::vector<i64>& cls) const {
  // Ambient preimage of cls via Uinv restricted to the surviving columns.
  std::vector<i64> amb(ambient_dim(), 0);
  for (size_t k = 0; k < cls.size(); ++k) {
    int col = surviving_rows_[k];
    for (int i = 0; i < ambient_dim(); ++i) amb[i] += uinv_[i][col] * cls[k];
  }
  return smaller.class_of(amb);
}

std::set<std::vector<i64>> UnitQuotient::subgroup(
    const std::vector<std::vector<i64>>& ambient_gens) const {
  std::set<std::vector<i64>> s;
  s.insert(zero_class());
  std::vector<std::vector<i64>> frontier{zero_class()};
  std::vector<std::vector<i64>> gens;
  for (const auto& g : ambient_gens) gens.push_back(class_of(g));
  while (!frontier.empty()) {
    std::vector<std::vector<i64>> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = add(x, g);
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return s;
}

AbelianRamification upper_filtration(const UnitQuotient& uq) {
  AbelianRamification out;
  out.last_break = Rat(0);
  for (int s = 1; s <= uq.N(); ++s) {
    std::vector<std::vector<i64>> gens;
    for (int i = s; i < uq.N(); ++i) {
      std::vector<i64> c(uq.ambient_dim(), 0);
      c[i + 1] = 1;
      gens.push_back(c);
    }
    out.filtration[Rat(s)] = uq.subgroup(gens);
  }
  // A break at s: the subgroup drops strictly after s.  last_break d is the
  // largest s with a nontrivial subgroup.
  for (int s = 1; s <= uq.N(); ++s) {
    const auto& cur = out.filtration.at(Rat(s));
    std::set<std::vector<i64>> nxt = (s < uq.N())
                                         ? out.filtration.at(Rat(s + 1))
                                         : std::set<std::vector<i64>>{uq.zero_class()};
    if (cur.size() > nxt.size()) out.breaks.push_back(Rat(s));
    if (cur.size() > 1) out.last_break = Rat(s);
  }
  return out;
}

ram::RamDatum ramdatum_of_quotient(const UnitQuotient& uq) {
  AbelianRamification fil = upper_filtration(uq);
  auto elems = uq.all_elements();
  std::map<std::vector<i64>, int> index;
  // element 0 must be the identity (zero class)
  std::vector<std::vector<i64>> ordered{uq.zero_class()};
  for (const auto& e : elems)
    if (e != uq.zero_class()) ordered.push_back(e);
  for (size_t i = 0; i < ordered.size(); ++i) index[ordered[i]] = static_cast<int>(i);

  std::vector<std::string> names;
  for (const auto& e : ordered) {
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    names.push_back(s + ")");
  }
  std::vector<std::vector<int>> mul(ordered.size(), std::vector<int>(ordered.size()));
  for (size_t i = 0; i < ordered.size(); ++i)
    for (size_t j = 0; j < ordered.size(); ++j)
      mul[i][j] = index.at(uq.add(ordered[i], ordered[j]));

  std::map<Rat, std::set<int>> filtration;
  for (const auto& [s, sub] : fil.filtration) {
    if (!is_integer(s))
      throw invariant_error("ramdatum_of_quotient: non-integral upper break (Hasse-Arf)");
    std::set<int> ids;
    for (const auto& e : sub) ids.insert(index.at(e));
    filtration[s] = ids;
  }
  return ram::datum_from_upper_filtration(names, mul, filtration);
}

CounterexampleReport counterexample_report(int p) {
  if (!is_prime(p) || p > 7)
    throw domain_error("counterexample_report: p must be a prime <= 7");
  GenSet S;
  if (p > 2) {
    S.tail_start = 3;
  } else {
    S.members = {2};
    S.tail_start = 4;
  }
  int N = 8;
  UnitQuotient uq(p, S, N);
  AbelianRamification fil = upper_filtration(uq);

  CounterexampleReport rep;
  rep.p = p;
  rep.quotient = uq.invariant_factors();
  rep.d = fil.last_break;

  auto gd = fil.filtration.at(rep.d);
  rep.gamma_d_order = static_cast<i64>(gd.size());
  // Cyclic iff some element has order = |subgroup|.
  rep.gamma_d_cyclic = false;
  for (const auto& e : gd) {
    i64 ord = 1;
    auto cur = e;
    while (cur != uq.zero_class()) {
      cur = uq.add(cur, e);
      ++ord;
    }
    if (ord == rep.gamma_d_order) rep.gamma_d_cyclic = true;
  }

  UnitQuotient uprime = uq.intermediate({"1+t"});
  rep.uprime_quotient = uprime.invariant_factors();
  AbelianRamification filp = upper_filtration(uprime);
  rep.uprime_break = filp.last_break;
  if (filp.breaks.size() != 1)
    throw invariant_error("counterexample_report: U' quotient should have a single break");

  // Natural surjection Gamma^d -> Gal(E'/F): compare |Gamma^d| with the size
  // of its image in the U' quotient.
  std::set<std::vector<i64>> image;
  for (const auto& e : gd) image.insert(uq.project_through(uprime, e));
  rep.surjection_iso =
      image.size() == gd.size() && static_cast<i64>(image.size()) == uprime.order();
  return rep;
}

}  // namespace lfp::cft
