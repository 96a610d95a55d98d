#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/quadratic.hpp"
#include "waveset/step_function.hpp"
#include "waveset/tiling.hpp"

namespace waveset {

using Matrix = std::vector<std::vector<Rational>>;

//! Permutation sigma: row index -> column index.
struct Diagonal {
  std::vector<std::size_t> sigma;

  friend bool operator==(const Diagonal& a, const Diagonal& b) {
    return a.sigma == b.sigma;
  }
  friend bool operator<(const Diagonal& a, const Diagonal& b) {
    return a.sigma < b.sigma;
  }
};

namespace detail {

inline void require_square_nonnegative(const Matrix& a) {
  for (const auto& row : a) {
    if (row.size() != a.size())
      throw NotSquare("matrix is not square: " + std::to_string(a.size()) +
                      " rows, a row of width " + std::to_string(row.size()));
    for (const auto& x : row)
      if (x.sign() < 0)
        throw NegativeEntry("negative entry " + x.to_string());
  }
}

//! Kuhn augmenting-path step on the positivity pattern.
inline bool try_augment(const std::vector<std::vector<std::size_t>>& adj,
                        std::size_t r, std::vector<long>& col_match,
                        std::vector<bool>& visited) {
  for (std::size_t c : adj[r]) {
    if (visited[c]) continue;
    visited[c] = true;
    if (col_match[c] < 0 ||
        try_augment(adj, static_cast<std::size_t>(col_match[c]), col_match,
                    visited)) {
      col_match[c] = static_cast<long>(r);
      return true;
    }
  }
  return false;
}

//! Can rows [first_row, n) be perfectly matched into columns outside
//! `taken`? Plain Kuhn; the matrices here are desk-sized.
inline bool feasible(const std::vector<std::vector<std::size_t>>& adj,
                     std::size_t first_row,
                     const std::vector<bool>& taken) {
  std::size_t n = adj.size();
  std::vector<long> col_match(n, -1);
  std::vector<std::vector<std::size_t>> filtered(n);
  for (std::size_t r = first_row; r < n; ++r)
    for (std::size_t c : adj[r])
      if (!taken[c]) filtered[r].push_back(c);
  for (std::size_t r = first_row; r < n; ++r) {
    std::vector<bool> visited(n, false);
    if (!try_augment(filtered, r, col_match, visited)) return false;
  }
  return true;
}

}  // namespace detail

//! Outcome of the exact row/column sum check, with the first failing line
//! as witness.
struct StochasticCheck {
  bool ok = true;
  bool row = true;        // witness line kind when !ok
  std::size_t index = 0;  // witness line index when !ok
  Rational sum;           // its sum
};

//! True iff the matrix is square, nonnegative and every row and column sums
//! to exactly 1.
inline StochasticCheck is_doubly_stochastic(const Matrix& a) {
  detail::require_square_nonnegative(a);
  StochasticCheck res;
  for (std::size_t r = 0; r < a.size(); ++r) {
    Rational s(0);
    for (const auto& x : a[r]) s += x;
    if (s != Rational(1)) return {false, true, r, s};
  }
  for (std::size_t c = 0; c < a.size(); ++c) {
    Rational s(0);
    for (const auto& row : a) s += row[c];
    if (s != Rational(1)) return {false, false, c, s};
  }
  return res;
}

//! A positive diagonal (permutation with strictly positive entries) found by
//! augmenting-path bipartite matching on the positivity pattern, resolved to
//! the lexicographically smallest such permutation. Returns nullopt only for
//! matrices that are not doubly stochastic: for doubly stochastic input the
//! existence is guaranteed, and its absence raises an internal error.
inline std::optional<Diagonal> positive_diagonal(const Matrix& a) {
  detail::require_square_nonnegative(a);
  std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (a[r][c].sign() > 0) adj[r].push_back(c);

  std::vector<bool> taken(n, false);
  if (!detail::feasible(adj, 0, taken)) {
    if (is_doubly_stochastic(a).ok)
      throw InternalError(
          "doubly stochastic matrix without positive diagonal");
    return std::nullopt;
  }
  // fix rows in order, taking the smallest feasible column each time
  Diagonal d;
  d.sigma.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    bool fixed = false;
    for (std::size_t c : adj[r]) {
      if (taken[c]) continue;
      taken[c] = true;
      if (detail::feasible(adj, r + 1, taken)) {
        d.sigma[r] = c;
        fixed = true;
        break;
      }
      taken[c] = false;
    }
    if (!fixed) throw InternalError("lexicographic matching lost feasibility");
  }
  return d;
}

//! Every positive diagonal by exhaustive enumeration, in lexicographic
//! order. Only for n <= 8 (test oracle scale).
inline std::vector<Diagonal> brute_force_diagonals(const Matrix& a) {
  detail::require_square_nonnegative(a);
  std::size_t n = a.size();
  if (n > 8) throw TooLarge("brute force limited to n <= 8");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<Diagonal> out;
  do {
    bool positive = true;
    for (std::size_t r = 0; r < n && positive; ++r)
      positive = a[r][perm[r]].sign() > 0;
    if (positive) out.push_back({perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---- cell complexes ----------------------------------------------------------

//! The "matrix form" of a tiling function's support: rows collect cells that
//! are exactly congruent under integer translation, columns under dyadic
//! dilation; the entry at (r, c) is the function value on the unique cell
//! the classes share, 0 when they share none.
struct CellMatrix {
  Matrix entries;
  std::vector<std::vector<Interval>> row_classes;
  std::vector<std::vector<Interval>> col_classes;
  std::vector<std::vector<std::optional<Interval>>> cells;  // [row][col]

  std::size_t size() const { return entries.size(); }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

//! Scans a cell pair for translation overlaps: every integer k that makes
//! them meet must make them coincide, else the complex is not exact.
inline std::optional<long> translation_congruence(const Cell& a,
                                                  const Cell& b,
                                                  bool same_cell) {
  std::optional<long> match;
  mpz_class k0 = (b.lo - a.hi).floor();
  mpz_class k1 = (b.hi - a.lo).ceil();
  for (mpz_class kz = k0; kz <= k1; kz = kz + 1) {
    if (same_cell && kz == 0) continue;
    Rational k{mpz_class(kz)};
    bool overlap = a.lo + k < b.hi && a.hi + k > b.lo;
    if (!overlap) continue;
    if (a.lo + k == b.lo && a.hi + k == b.hi) {
      match = static_cast<long>(kz.get_si());
    } else {
      throw PartialCongruence(
          "cells (" + a.lo.to_string() + ", " + a.hi.to_string() + "] and (" +
          b.lo.to_string() + ", " + b.hi.to_string() +
          "] overlap under translation by " + k.to_string() +
          " without being equal; refine breakpoints and retry");
    }
  }
  return match;
}

//! Same scan for dyadic dilation (only same-sign pairs can meet).
inline std::optional<long> dilation_congruence(const Cell& a, const Cell& b,
                                               bool same_cell) {
  bool a_pos = a.lo.sign() >= 0, b_pos = b.lo.sign() >= 0;
  if (a_pos != b_pos) return std::nullopt;
  Rational a_in = a_pos ? a.lo : a.hi.abs();
  Rational a_out = a_pos ? a.hi : a.lo.abs();
  Rational b_in = b_pos ? b.lo : b.hi.abs();
  Rational b_out = b_pos ? b.hi : b.lo.abs();
  std::optional<long> match;
  // 2^j a meets b iff 2^j a_out > b_in and 2^j a_in < b_out
  long j = min_pow2_exceeding(a_out, b_in);
  for (; a_in.mul_pow2(j) < b_out; ++j) {
    if (same_cell && j == 0) continue;
    if (a.lo.mul_pow2(j) == b.lo && a.hi.mul_pow2(j) == b.hi) {
      match = j;
    } else {
      throw PartialCongruence(
          "cells (" + a.lo.to_string() + ", " + a.hi.to_string() + "] and (" +
          b.lo.to_string() + ", " + b.hi.to_string() +
          "] overlap under dilation by 2^" + std::to_string(j) +
          " without being equal; refine breakpoints and retry");
    }
  }
  return match;
}

//! Deterministic class order: by the smallest (lo, hi) of the member cells.
inline std::vector<std::vector<std::size_t>> grouped_sorted(
    UnionFind& uf, const std::vector<Cell>& cells) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cells.size(); ++i)
    groups[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> classes;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end(),
              [&](std::size_t x, std::size_t y) {
                return cells[x].lo < cells[y].lo;
              });
    classes.push_back(members);
  }
  std::sort(classes.begin(), classes.end(),
            [&](const std::vector<std::size_t>& x,
                const std::vector<std::size_t>& y) {
              return cells[x.front()].lo < cells[y.front()].lo;
            });
  return classes;
}

}  // namespace detail

namespace detail {

inline IntervalSet cells_support(const std::vector<Cell>& cells) {
  std::vector<Interval> parts;
  for (const auto& c : cells) parts.push_back({c.lo, c.hi});
  return parts.empty() ? IntervalSet()
                       : IntervalSet::normalize(std::move(parts));
}

}  // namespace detail

//! Builds the exact cell complex of a cell decomposition whose pieces are
//! pairwise congruent-or-disjoint under both actions. PartialCongruence when
//! two cells overlap under an action without coinciding (the CLI offers a
//! breakpoint refinement pass for this); RaggedComplex when the class counts
//! differ or a row/column pair holds two cells. Accepts a raw decomposition
//! so that refined (non-canonical) cell lists survive.
inline CellMatrix build_cell_matrix(const std::vector<Cell>& cells) {
  if (cells.empty()) throw EmptyInput("cell matrix of the zero function");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!(cells[i].lo < cells[i].hi) || cells[i].value.sign() <= 0)
      throw MalformedInterval("bad cell in decomposition");
    if (i && cells[i].lo < cells[i - 1].hi)
      throw MalformedInterval("cells out of order in decomposition");
  }
  if (detail::cells_support(cells).closure_contains_zero())
    throw ContainsOrigin("cell matrix: support closure meets 0");

  detail::UnionFind trans_uf(cells.size()), dil_uf(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (detail::translation_congruence(cells[i], cells[j], i == j))
        trans_uf.unite(i, j);
      if (detail::dilation_congruence(cells[i], cells[j], i == j))
        dil_uf.unite(i, j);
    }

  auto rows = detail::grouped_sorted(trans_uf, cells);
  auto cols = detail::grouped_sorted(dil_uf, cells);
  if (rows.size() != cols.size())
    throw RaggedComplex("class counts differ: " + std::to_string(rows.size()) +
                        " translation classes vs " +
                        std::to_string(cols.size()) + " dilation classes");

  std::vector<std::size_t> row_of(cells.size()), col_of(cells.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i : rows[r]) row_of[i] = r;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i : cols[c]) col_of[i] = c;

  std::size_t n = rows.size();
  CellMatrix cm;
  cm.entries.assign(n, std::vector<Rational>(n, Rational(0)));
  cm.cells.assign(n, std::vector<std::optional<Interval>>(n));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::size_t r = row_of[i], c = col_of[i];
    if (cm.cells[r][c])
      throw RaggedComplex("two cells share row " + std::to_string(r) +
                          " and column " + std::to_string(c));
    cm.cells[r][c] = Interval{cells[i].lo, cells[i].hi};
    cm.entries[r][c] = cells[i].value;
  }
  for (const auto& members : rows) {
    std::vector<Interval> ivs;
    for (std::size_t i : members) ivs.push_back({cells[i].lo, cells[i].hi});
    cm.row_classes.push_back(ivs);
  }
  for (const auto& members : cols) {
    std::vector<Interval> ivs;
    for (std::size_t i : members) ivs.push_back({cells[i].lo, cells[i].hi});
    cm.col_classes.push_back(ivs);
  }
  return cm;
}

inline CellMatrix build_cell_matrix(const StepFunction& f) {
  return build_cell_matrix(f.cells());
}

//! One refinement pass: cuts every cell at all |k| <= K integer translates
//! and |j| <= J dyadic dilates of the breakpoint set. Values are unchanged;
//! the result is a finer decomposition of the same function (returned raw,
//! since the canonical StepFunction form would merge the cuts right back).
inline std::vector<Cell> refine_breakpoints(const StepFunction& f, long K,
                                            long J) {
  std::vector<Rational> base;
  for (const auto& c : f.cells()) {
    base.push_back(c.lo);
    base.push_back(c.hi);
  }
  std::vector<Rational> cuts;
  for (const auto& b : base)
    for (long k = -K; k <= K; ++k)
      for (long j = -J; j <= J; ++j)
        cuts.push_back(b.mul_pow2(j) + Rational(k));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Cell> out;
  for (const auto& c : f.cells()) {
    Rational lo = c.lo;
    for (const auto& x : cuts) {
      if (x <= lo) continue;
      if (x >= c.hi) break;
      out.push_back({lo, x, c.value});
      lo = x;
    }
    out.push_back({lo, c.hi, c.value});
  }
  return out;
}

// ---- the selection -------------------------------------------------------------

//! Result of the cell-level selection: the set G assembled from one cell per
//! row along a positive diagonal of the doubly stochastic cell matrix,
//! together with the verification that G restricted to the projections of
//! supp(f) has multiplicity exactly one both ways.
struct DarSelection {
  IntervalSet g;
  CellMatrix matrix;
  Diagonal diagonal;
  bool tau_multiplicity_one = false;
  bool d_multiplicity_one = false;
  WaveletSetReport wavelet_check;
};

inline DarSelection dar_select(const std::vector<Cell>& cells) {
  DarSelection out;
  out.matrix = build_cell_matrix(cells);
  StochasticCheck ds = is_doubly_stochastic(out.matrix.entries);
  if (!ds.ok)
    throw NotDoublyStochastic(std::string(ds.row ? "row " : "column ") +
                              std::to_string(ds.index) + " sums to " +
                              ds.sum.to_string());
  auto diag = positive_diagonal(out.matrix.entries);
  if (!diag) throw InternalError("positive diagonal must exist");
  out.diagonal = *diag;

  std::vector<Interval> chosen;
  for (std::size_t r = 0; r < out.matrix.size(); ++r) {
    const auto& cell = out.matrix.cells[r][out.diagonal.sigma[r]];
    if (!cell) throw InternalError("diagonal entry without a cell");
    chosen.push_back(*cell);
  }
  out.g = IntervalSet::normalize(std::move(chosen));

  IntervalSet supp = detail::cells_support(cells);
  if (!out.g.subset_of(supp))
    throw InternalError("selected set escapes the support");
  StepFunction tau_mult = translation_multiplicity(out.g);
  StepFunction d_mult = dilation_multiplicity(out.g);
  IntervalSet tau_dom = project_set(supp, Projection::Tau);
  // translation multiplicity lives on (0,1]; move the domain up from W
  {
    IntervalSet low = set_intersection(
        tau_dom, IntervalSet::single(Rational(-1), Rational(-1, 2)));
    tau_dom = set_union(low.act(0, Rational(1)),
                        set_difference(tau_dom, low));
  }
  IntervalSet d_dom = project_set(supp, Projection::D);
  out.tau_multiplicity_one = tau_mult.equals_on(Rational(1), tau_dom);
  out.d_multiplicity_one = d_mult.equals_on(Rational(1), d_dom);
  if (!out.tau_multiplicity_one || !out.d_multiplicity_one)
    throw InternalError("selected set misses the relative tiling identities");
  out.wavelet_check = is_wavelet_set(out.g);
  return out;
}

inline DarSelection dar_select(const StepFunction& f) {
  return dar_select(f.cells());
}

// ---- exact orbit exploration ---------------------------------------------------

//! One row of the truncated orbit matrix: a translation class of orbit
//! points, keyed by the exact dilation projection of xi + q.
struct OrbitRow {
  Quad d_value;
  Rational q;
  bool complete = false;  // the support annulus bounds the dilation sum
                          // inside the window
  Rational sum;
};

//! One column: a dilation class, keyed by the exact translation projection;
//! columns are always complete (translation sums of a bounded support are
//! finite).
struct OrbitColumn {
  Quad t_value;
  long j = 0;
  Rational sum;
};

struct OrbitReport {
  std::vector<OrbitRow> rows;
  std::vector<OrbitColumn> columns;
  Matrix entries;
  bool pairing_unique = true;  // the at-most-one-choice claim, checked exactly
  std::vector<std::string> violations;
  bool complete_sums_are_one = true;
  std::vector<std::size_t> block_rows;  // complete square sub-block, if any
  std::vector<std::size_t> block_columns;
  std::optional<Diagonal> block_diagonal;
};

namespace detail {

//! Smallest j with 2^j |x| > c for a Q(sqrt 2) magnitude, by exact doubling.
inline long min_pow2_exceeding_quad(const Quad& mag, const Rational& c) {
  long j = 0;
  Quad target(c);
  while (!(mag.mul_pow2(j) > target)) ++j;
  while (mag.mul_pow2(j - 1) > target) --j;
  return j;
}

}  // namespace detail

//! Desk-scale realization of the orbit matrix: enumerates, for an exactly
//! irrational xi in Q(sqrt 2), all pairs (j, q) with |j| <= window_J and
//! rational q such that f(2^j(xi + q)) > 0, taking one grid rational per
//! support cell (the grid denominator is 2^window_J times the lcm of f's
//! breakpoint denominators, fine enough that every cell holds a grid point).
//! Rows are keyed by the exact d-projection of xi + q, columns by the exact
//! tau-projection of 2^j(xi + q); the pairing uniqueness and the
//! doubly-stochastic line sums are verified at runtime and reported.
inline OrbitReport orbit_explore(const StepFunction& f, const Quad& xi,
                                 long window_J) {
  if (xi.is_rational()) throw RationalXi("orbit point must be irrational");
  if (window_J < 1) throw Error("orbit window must be >= 1");
  if (f.is_zero()) throw EmptyInput("orbit exploration of the zero function");
  auto [s_lo, s_hi] = f.support().magnitude_bounds();

  std::vector<Rational> bps;
  for (const auto& c : f.cells()) {
    bps.push_back(c.lo);
    bps.push_back(c.hi);
  }
  mpz_class denom_lcm = denominator_lcm(bps);
  mpz_class grid;  // D = 2^J * lcm
  mpz_mul_2exp(grid.get_mpz_t(), denom_lcm.get_mpz_t(),
               static_cast<mp_bitcnt_t>(window_J));
  Rational grid_step = Rational(1) / Rational(grid);

  struct QuadLess {
    bool operator()(const Quad& a, const Quad& b) const { return a < b; }
  };
  std::map<Quad, Rational, QuadLess> row_q;   // d-value -> q
  std::map<Quad, long, QuadLess> col_j;       // t-value -> j
  OrbitReport rep;

  for (long j = -window_J; j <= window_J; ++j) {
    for (const auto& c : f.cells()) {
      // q ranges over (2^-j lo - xi, 2^-j hi - xi]; take the first grid
      // rational strictly inside
      Quad left = Quad(c.lo).mul_pow2(-j) - xi;
      mpz_class n = left.scale(Rational(grid)).floor() + 1;
      Rational q = Rational(mpz_class(n)) * grid_step;
      Quad point = (xi + Quad(q)).mul_pow2(j);
      if (!(f.evaluate(point) == c.value))
        throw InternalError("orbit grid sample escaped its cell");
      Quad d_val = d_point(xi + Quad(q));
      Quad t_val = tau_point(point);
      if (auto it = row_q.find(d_val); it != row_q.end()) {
        if (!(it->second == q)) {
          rep.pairing_unique = false;
          rep.violations.push_back("d-projection " + d_val.to_string() +
                                   " reached by q=" + it->second.to_string() +
                                   " and q=" + q.to_string());
        }
      } else {
        row_q.emplace(d_val, q);
      }
      if (auto it = col_j.find(t_val); it != col_j.end()) {
        if (it->second != j) {
          rep.pairing_unique = false;
          rep.violations.push_back("tau-projection " + t_val.to_string() +
                                   " reached at levels " +
                                   std::to_string(it->second) + " and " +
                                   std::to_string(j));
        }
      } else {
        col_j.emplace(t_val, j);
      }
    }
  }

  for (const auto& [d_val, q] : row_q) {
    OrbitRow row;
    row.d_value = d_val;
    row.q = q;
    // dilation sum at xi + q runs over j with s_lo < 2^j |xi+q| <= s_hi
    Quad mag = (xi + Quad(q)).abs();
    long j_lo = detail::min_pow2_exceeding_quad(mag, s_lo);
    long j_hi = detail::min_pow2_exceeding_quad(mag, s_hi) - 1;
    row.complete = (j_lo >= -window_J) && (j_hi <= window_J);
    rep.rows.push_back(std::move(row));
  }
  for (const auto& [t_val, j] : col_j)
    rep.columns.push_back({t_val, j, Rational(0)});

  rep.entries.assign(rep.rows.size(),
                     std::vector<Rational>(rep.columns.size(), Rational(0)));
  for (std::size_t m = 0; m < rep.rows.size(); ++m) {
    for (std::size_t n = 0; n < rep.columns.size(); ++n) {
      Quad point =
          (xi + Quad(rep.rows[m].q)).mul_pow2(rep.columns[n].j);
      // the entry belongs to (m, n) only when both projections match
      if (tau_point(point) == rep.columns[n].t_value)
        rep.entries[m][n] = f.evaluate(point);
    }
  }
  for (std::size_t m = 0; m < rep.rows.size(); ++m) {
    Rational s(0);
    for (const auto& x : rep.entries[m]) s += x;
    rep.rows[m].sum = s;
    if (rep.rows[m].complete && s != Rational(1))
      rep.complete_sums_are_one = false;
  }
  for (std::size_t n = 0; n < rep.columns.size(); ++n) {
    Rational s(0);
    for (std::size_t m = 0; m < rep.rows.size(); ++m) s += rep.entries[m][n];
    rep.columns[n].sum = s;
    if (s != Rational(1)) rep.complete_sums_are_one = false;
  }

  // complete square sub-block: complete rows vs columns supported on them
  for (std::size_t m = 0; m < rep.rows.size(); ++m)
    if (rep.rows[m].complete) rep.block_rows.push_back(m);
  for (std::size_t n = 0; n < rep.columns.size(); ++n) {
    bool inside = true;
    for (std::size_t m = 0; m < rep.rows.size() && inside; ++m)
      if (rep.entries[m][n].sign() > 0 && !rep.rows[m].complete)
        inside = false;
    if (inside) rep.block_columns.push_back(n);
  }
  if (!rep.block_rows.empty() &&
      rep.block_rows.size() == rep.block_columns.size()) {
    Matrix block(rep.block_rows.size(),
                 std::vector<Rational>(rep.block_columns.size()));
    for (std::size_t i = 0; i < rep.block_rows.size(); ++i)
      for (std::size_t k = 0; k < rep.block_columns.size(); ++k)
        block[i][k] = rep.entries[rep.block_rows[i]][rep.block_columns[k]];
    rep.block_diagonal = positive_diagonal(block);
  }
  return rep;
}

}  // namespace waveset
