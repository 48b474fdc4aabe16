#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xsep/errors.hpp"
#include "xsep/scalar.hpp"

namespace xsep {

// Exact rational linear programming at desk scale:
//   minimize c.x  subject to  A x (<=|==|>=) b,  x >= 0.
// Two-phase tableau simplex with Bland's rule, so it terminates and every
// reported optimum is exact.
namespace lp {

enum class Rel { Le, Eq, Ge };

struct Row {
  std::vector<Rational> coef;
  Rel rel = Rel::Ge;
  Rational rhs{0};
};

struct Problem {
  std::size_t nvars = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective;  // empty means feasibility only

  Row& add(Rel rel, Rational rhs) {
    rows.push_back(Row{std::vector<Rational>(nvars, Rational(0)), rel, std::move(rhs)});
    return rows.back();
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value{0};
};

class Simplex {
 public:
  explicit Simplex(const Problem& p) : n_(p.nvars), m_(p.rows.size()) {
    // Columns: n structural, one slack/surplus per inequality row, then one
    // artificial per row (uniformly, which keeps the initial basis trivial),
    // then the rhs.
    slack_col_.assign(m_, SIZE_MAX);
    art_col_.assign(m_, SIZE_MAX);
    std::size_t cols = n_;
    for (std::size_t r = 0; r < m_; ++r)
      if (p.rows[r].rel != Rel::Eq) slack_col_[r] = cols++;
    first_art_ = cols;
    for (std::size_t r = 0; r < m_; ++r) art_col_[r] = cols++;
    total_ = cols;
    tab_.assign(m_, std::vector<Rational>(total_ + 1, Rational(0)));
    basis_.assign(m_, SIZE_MAX);
    for (std::size_t r = 0; r < m_; ++r) {
      const Row& row = p.rows[r];
      // Normalize so the rhs is nonnegative.
      Rational sgn = row.rhs < 0 ? Rational(-1) : Rational(1);
      for (std::size_t c = 0; c < n_; ++c) tab_[r][c] = sgn * row.coef[c];
      tab_[r][total_] = sgn * row.rhs;
      if (row.rel != Rel::Eq) {
        // <= gets +slack, >= gets -surplus (before sign normalization).
        Rational s = (row.rel == Rel::Le) ? Rational(1) : Rational(-1);
        tab_[r][slack_col_[r]] = sgn * s;
      }
      tab_[r][art_col_[r]] = 1;
      basis_[r] = art_col_[r];
    }
  }

  Result solve(const std::vector<Rational>& objective) {
    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> cost(total_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) cost[art_col_[r]] = 1;
    if (run(cost) == Status::Unbounded) throw Error("phase-1 LP cannot be unbounded");
    if (objective_value(cost) != 0) return Result{Status::Infeasible, {}, Rational(0)};
    drive_out_artificials();
    // Phase 2.
    std::vector<Rational> cost2(total_, Rational(0));
    for (std::size_t c = 0; c < objective.size() && c < n_; ++c) cost2[c] = objective[c];
    Status st = run(cost2, /*forbid_artificials=*/true);
    Result res;
    res.status = st;
    if (st != Status::Optimal) return res;
    res.x.assign(n_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) res.x[basis_[r]] = tab_[r][total_];
    res.value = objective_value(cost2);
    return res;
  }

 private:
  std::size_t n_, m_, total_ = 0, first_art_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_, slack_col_, art_col_;

  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational v(0);
    for (std::size_t r = 0; r < m_; ++r) v += cost[basis_[r]] * tab_[r][total_];
    return v;
  }

  // Reduced cost of column c under `cost` for the current basis.
  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t c) const {
    Rational v = cost[c];
    for (std::size_t r = 0; r < m_; ++r) v -= cost[basis_[r]] * tab_[r][c];
    return v;
  }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational piv = tab_[pr][pc];
    for (auto& v : tab_[pr]) v /= piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr || tab_[r][pc] == 0) continue;
      Rational f = tab_[r][pc];
      for (std::size_t c = 0; c <= total_; ++c) tab_[r][c] -= f * tab_[pr][c];
    }
    basis_[pr] = pc;
  }

  Status run(const std::vector<Rational>& cost, bool forbid_artificials = false) {
    for (;;) {
      // Bland: entering column = lowest index with negative reduced cost.
      std::size_t enter = SIZE_MAX;
      for (std::size_t c = 0; c < total_; ++c) {
        if (forbid_artificials && c >= first_art_) break;
        if (is_basic(c)) continue;
        if (reduced_cost(cost, c) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == SIZE_MAX) return Status::Optimal;
      // Ratio test; Bland ties broken by lowest basis column index.
      std::size_t leave = SIZE_MAX;
      Rational best(0);
      for (std::size_t r = 0; r < m_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rational ratio = tab_[r][total_] / tab_[r][enter];
        if (leave == SIZE_MAX || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == SIZE_MAX) return Status::Unbounded;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t c) const {
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] == c) return true;
    return false;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_art_) continue;
      // The artificial sits at zero; pivot any usable original column in.
      std::size_t pc = SIZE_MAX;
      for (std::size_t c = 0; c < first_art_; ++c)
        if (!is_basic(c) && tab_[r][c] != 0) {
          pc = c;
          break;
        }
      if (pc != SIZE_MAX) pivot(r, pc);
      // Otherwise the row is redundant; the artificial stays basic at zero
      // and phase 2 never moves it (its column is forbidden).
    }
  }
};

inline Result minimize(const Problem& p) {
  if (p.objective.size() != p.nvars) throw Error("objective size mismatch");
  return Simplex(p).solve(p.objective);
}

inline std::optional<std::vector<Rational>> find_feasible(const Problem& p) {
  Result r = Simplex(p).solve(std::vector<Rational>(p.nvars, Rational(0)));
  if (r.status != Status::Optimal) return std::nullopt;
  return r.x;
}

}  // namespace lp
}  // namespace xsep
