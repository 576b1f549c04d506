#pragma once

#include "geuler/costs.hpp"
#include "geuler/errors.hpp"
#include "geuler/grid.hpp"
#include "geuler/measures.hpp"
#include "geuler/scalar.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geuler {

/// Equality-form linear program min c.x subject to A.x = b, x >= 0, with
/// columns stored sparsely as (row, value) pairs.
template <class S>
struct SparseLp {
  std::size_t rows = 0;
  std::vector<S> rhs;
  std::vector<S> objective;
  std::vector<std::vector<std::pair<std::uint32_t, S>>> columns;

  std::size_t cols() const { return columns.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kResourceLimit };

inline const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kResourceLimit:
      return "resource-limit";
  }
  return "unknown";
}

template <class S>
struct LpSolution {
  LpStatus status = LpStatus::kResourceLimit;
  S objective_value{0};
  std::vector<S> x;     // primal values, one per column; valid when optimal
  std::vector<S> dual;  // row multipliers certifying optimality
  std::uint64_t iterations = 0;
  double seconds = 0.0;
};

struct SimplexOptions {
  double time_limit_seconds = 0.0;    // 0 disables the wall-clock budget
  std::uint64_t iteration_limit = 0;  // 0 disables
  bool partial_pricing = false;       // round-robin column scan; keeps Bland order when off
};

namespace detail {

/// Revised simplex working state: dense basis inverse, basic variable values,
/// and the working copy of the constraint system with nonnegative rhs.
template <class S>
class SimplexState {
 public:
  SimplexState(const SparseLp<S>& lp, const SimplexOptions& options)
      : options_(options), start_(std::chrono::steady_clock::now()) {
    rows_ = lp.rows;
    ncols_ = lp.cols();
    rhs_ = lp.rhs;
    columns_.resize(ncols_);
    for (std::size_t j = 0; j < ncols_; ++j) {
      columns_[j] = lp.columns[j];
    }
    // Normalize to rhs >= 0 so the all-artificial basis is feasible.
    std::vector<bool> flip(rows_, false);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (rhs_[r] < S(0)) {
        flip[r] = true;
        rhs_[r] = -rhs_[r];
      }
    }
    for (auto& col : columns_) {
      for (auto& [r, v] : col) {
        if (flip[r]) {
          v = -v;
        }
      }
    }
    row_kept_.resize(rows_);
    std::iota(row_kept_.begin(), row_kept_.end(), std::size_t{0});
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      basis_[r] = ncols_ + r;  // artificial for row r
    }
    binv_.assign(rows_, std::vector<S>(rows_, S(0)));
    for (std::size_t r = 0; r < rows_; ++r) {
      binv_[r][r] = S(1);
    }
    xb_ = rhs_;
  }

  /// Runs phase 1 then phase 2 and extracts the solution. `objective` has one
  /// entry per original column.
  LpSolution<S> solve(const std::vector<S>& objective) {
    LpSolution<S> result;
    if (!run_phase(phase1_costs(), /*phase1=*/true, result)) {
      return finish(result);
    }
    if (phase1_value() > feas_tol()) {
      result.status = LpStatus::kInfeasible;
      return finish(result);
    }
    drive_out_artificials();
    drop_redundant_rows();
    if (!run_phase(objective, /*phase1=*/false, result)) {
      return finish(result);
    }
    result.status = LpStatus::kOptimal;
    if constexpr (!ScalarOps<S>::exact) {
      refactorize(objective);
    }
    result.x.assign(ncols_, S(0));
    result.objective_value = S(0);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (basis_[r] < ncols_) {
        result.x[basis_[r]] = xb_[r];
        result.objective_value += objective[basis_[r]] * xb_[r];
      }
    }
    result.dual.assign(rows_, S(0));
    const std::vector<S> y = duals(objective);
    for (std::size_t r = 0; r < row_kept_.size(); ++r) {
      result.dual[row_kept_[r]] = y[r];
    }
    return finish(result);
  }

 private:
  static S feas_tol() {
    if constexpr (ScalarOps<S>::exact) {
      return S(0);
    } else {
      return ScalarOps<double>::kFeasTol;
    }
  }

  std::vector<S> phase1_costs() const { return std::vector<S>(ncols_, S(0)); }

  S phase1_value() const {
    S total(0);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (basis_[r] >= ncols_) {
        total += xb_[r];
      }
    }
    return total;
  }

  /// Dual vector for the given costs; artificial variables cost 1 in phase 1
  /// and 0 afterwards.
  std::vector<S> duals(const std::vector<S>& costs, bool phase1 = false) const {
    const std::size_t m = basis_.size();
    std::vector<S> y(m, S(0));
    for (std::size_t r = 0; r < m; ++r) {
      const S cb = basis_[r] < ncols_ ? costs[basis_[r]] : (phase1 ? S(1) : S(0));
      if (cb == S(0)) {
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) {
        y[k] += cb * binv_[r][k];
      }
    }
    return y;
  }

  S reduced_cost(const std::vector<S>& costs, const std::vector<S>& y, std::size_t j) const {
    S rc = costs[j];
    for (const auto& [r, v] : columns_[j]) {
      if (row_index_[r] != kDropped) {
        rc -= y[row_index_[r]] * v;
      }
    }
    return rc;
  }

  std::vector<S> direction(std::size_t j) const {
    const std::size_t m = basis_.size();
    std::vector<S> d(m, S(0));
    for (const auto& [r, v] : columns_[j]) {
      if (row_index_[r] == kDropped) {
        continue;
      }
      const std::size_t k = row_index_[r];
      for (std::size_t i = 0; i < m; ++i) {
        d[i] += binv_[i][k] * v;
      }
    }
    return d;
  }

  bool budget_exceeded() const {
    if (options_.time_limit_seconds > 0.0) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      if (std::chrono::duration<double>(elapsed).count() > options_.time_limit_seconds) {
        return true;
      }
    }
    return options_.iteration_limit != 0 && iterations_ >= options_.iteration_limit;
  }

  /// Returns false when a budget stops the phase; the result carries the
  /// resource-limit status in that case.
  bool run_phase(const std::vector<S>& costs, bool phase1, LpSolution<S>& result) {
    ensure_row_index();
    std::size_t scan_start = 0;
    while (true) {
      if (budget_exceeded()) {
        result.status = LpStatus::kResourceLimit;
        return false;
      }
      const std::vector<S> y = duals(costs, phase1);
      std::size_t entering = ncols_;
      for (std::size_t t = 0; t < ncols_; ++t) {
        const std::size_t j =
            options_.partial_pricing ? (scan_start + t) % ncols_ : t;
        if (in_basis_[j]) {
          continue;
        }
        if (reduced_cost(costs, y, j) < -feas_tol()) {
          entering = j;
          break;
        }
      }
      if (entering == ncols_) {
        return true;  // optimal for this phase
      }
      scan_start = entering + 1;
      pivot(entering, phase1);
      ++iterations_;
      result.iterations = iterations_;
      if constexpr (!ScalarOps<S>::exact) {
        if (iterations_ % 100 == 0) {
          refactorize(costs);
        }
      }
    }
  }

  void pivot(std::size_t entering, bool phase1) {
    const std::size_t m = basis_.size();
    const std::vector<S> d = direction(entering);
    const S pivot_tol = feas_tol();
    std::size_t leaving = m;
    S best_ratio(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (d[i] <= pivot_tol) {
        continue;
      }
      const S ratio = xb_[i] / d[i];
      if (leaving == m || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    // In phase 2 a zero-level artificial must leave before any step could
    // push it positive; prefer such a row at ratio zero.
    if (!phase1) {
      for (std::size_t i = 0; i < m; ++i) {
        if (basis_[i] >= ncols_ && d[i] != S(0) && ScalarOps<S>::is_zero(xb_[i])) {
          leaving = i;
          best_ratio = S(0);
          break;
        }
      }
    }
    if (leaving == m) {
      throw std::runtime_error("simplex: unbounded direction encountered");
    }
    const S theta = best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      xb_[i] -= theta * d[i];
    }
    xb_[leaving] = theta;
    // Elementary row transform keeps binv equal to the inverse of the basis.
    const S piv = d[leaving];
    for (std::size_t k = 0; k < m; ++k) {
      binv_[leaving][k] /= piv;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || d[i] == S(0)) {
        continue;
      }
      const S factor = d[i];
      for (std::size_t k = 0; k < m; ++k) {
        binv_[i][k] -= factor * binv_[leaving][k];
      }
    }
    in_basis_[entering] = true;
    if (basis_[leaving] < ncols_) {
      in_basis_[basis_[leaving]] = false;
    }
    basis_[leaving] = entering;
  }

  /// Swaps zero-level basic artificials for original columns where a nonzero
  /// tableau element exists.
  void drive_out_artificials() {
    const std::size_t m = basis_.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < ncols_) {
        continue;
      }
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (in_basis_[j]) {
          continue;
        }
        // Tableau element (binv * A_j) at row i, from row i of binv alone.
        S elem(0);
        for (const auto& [r, v] : columns_[j]) {
          if (row_index_[r] != kDropped) {
            elem += binv_[i][row_index_[r]] * v;
          }
        }
        if (ScalarOps<S>::is_zero(elem)) {
          continue;
        }
        // Zero-level pivot: the leaving artificial sits at value 0, so the
        // basis change moves no mass.
        const std::vector<S> d = direction(j);
        const S piv = d[i];
        for (std::size_t k = 0; k < m; ++k) {
          binv_[i][k] /= piv;
        }
        for (std::size_t r = 0; r < m; ++r) {
          if (r == i || d[r] == S(0)) {
            continue;
          }
          const S factor = d[r];
          for (std::size_t k = 0; k < m; ++k) {
            binv_[r][k] -= factor * binv_[i][k];
          }
        }
        in_basis_[j] = true;
        basis_[i] = j;
        break;
      }
    }
  }

  /// Rows whose artificial could not be driven out are linearly dependent on
  /// the others; remove them and rebuild the factorization.
  void drop_redundant_rows() {
    std::vector<bool> drop_phys(rows_, false);
    std::vector<std::size_t> new_basis;
    bool any = false;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] >= ncols_) {
        drop_phys[basis_[i] - ncols_] = true;
        any = true;
      } else {
        new_basis.push_back(basis_[i]);
      }
    }
    if (!any) {
      return;
    }
    std::vector<std::size_t> new_rows;
    for (std::size_t r : row_kept_) {
      if (!drop_phys[r]) {
        new_rows.push_back(r);
      }
    }
    row_kept_ = std::move(new_rows);
    basis_ = std::move(new_basis);
    rebuild_from_basis();
  }

  void ensure_row_index() {
    row_index_.assign(rows_, kDropped);
    for (std::size_t k = 0; k < row_kept_.size(); ++k) {
      row_index_[row_kept_[k]] = k;
    }
    if (in_basis_.size() != ncols_) {
      in_basis_.assign(ncols_, false);
      for (std::size_t v : basis_) {
        if (v < ncols_) {
          in_basis_[v] = true;
        }
      }
    }
  }

  /// Recomputes binv and the basic values from scratch by Gauss-Jordan
  /// elimination of the current basis matrix.
  void rebuild_from_basis() {
    ensure_row_index();
    const std::size_t m = row_kept_.size();
    std::vector<std::vector<S>> mat(m, std::vector<S>(2 * m, S(0)));
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t var = basis_[c];
      if (var < ncols_) {
        for (const auto& [r, v] : columns_[var]) {
          if (row_index_[r] != kDropped) {
            mat[row_index_[r]][c] = v;
          }
        }
      } else {
        mat[row_index_[var - ncols_]][c] = S(1);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      mat[i][m + i] = S(1);
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t p = c;
      if constexpr (ScalarOps<S>::exact) {
        while (p < m && mat[p][c] == S(0)) {
          ++p;
        }
      } else {
        for (std::size_t i = c + 1; i < m; ++i) {
          if (ScalarOps<S>::abs(mat[i][c]) > ScalarOps<S>::abs(mat[p][c])) {
            p = i;
          }
        }
      }
      if (p >= m || mat[p][c] == S(0)) {
        throw std::logic_error("simplex: singular basis during refactorization");
      }
      std::swap(mat[c], mat[p]);
      const S piv = mat[c][c];
      for (std::size_t k = 0; k < 2 * m; ++k) {
        mat[c][k] /= piv;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (i == c || mat[i][c] == S(0)) {
          continue;
        }
        const S factor = mat[i][c];
        for (std::size_t k = 0; k < 2 * m; ++k) {
          mat[i][k] -= factor * mat[c][k];
        }
      }
    }
    binv_.assign(m, std::vector<S>(m, S(0)));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        binv_[i][k] = mat[i][m + k];
      }
    }
    xb_.assign(m, S(0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        xb_[i] += binv_[i][k] * rhs_[row_kept_[k]];
      }
    }
  }

  void refactorize(const std::vector<S>&) { rebuild_from_basis(); }

  LpSolution<S>& finish(LpSolution<S>& result) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    result.seconds = std::chrono::duration<double>(elapsed).count();
    result.iterations = iterations_;
    return result;
  }

  static constexpr std::size_t kDropped = static_cast<std::size_t>(-1);

  SimplexOptions options_;
  std::chrono::steady_clock::time_point start_;
  std::size_t rows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<S> rhs_;
  std::vector<std::vector<std::pair<std::uint32_t, S>>> columns_;
  std::vector<std::size_t> row_kept_;   // physical row behind each working row
  std::vector<std::size_t> row_index_;  // physical row -> working row or kDropped
  std::vector<std::size_t> basis_;      // variable per working row; >= ncols_ is artificial
  std::vector<bool> in_basis_;
  std::vector<std::vector<S>> binv_;
  std::vector<S> xb_;
  std::uint64_t iterations_ = 0;
};

}  // namespace detail

/// Solves an equality-form LP by the two-phase revised simplex method.
/// Rational instantiations pivot by Bland's rule with exact arithmetic, so
/// the returned optimum is exact; float instantiations use the documented
/// tolerances and honor the wall-clock budget.
template <class S>
LpSolution<S> solve_lp(const SparseLp<S>& lp, const SimplexOptions& options = {}) {
  if (lp.rhs.size() != lp.rows) {
    throw std::invalid_argument("solve_lp: rhs size does not match row count");
  }
  if (lp.objective.size() != lp.cols()) {
    throw std::invalid_argument("solve_lp: objective size does not match column count");
  }
  for (const auto& col : lp.columns) {
    for (const auto& [r, v] : col) {
      if (r >= lp.rows) {
        throw std::invalid_argument("solve_lp: column entry references a row out of range");
      }
      (void)v;
    }
  }
  detail::SimplexState<S> state(lp, options);
  return state.solve(lp.objective);
}

struct AssemblyOptions {
  /// Keeps one aggregate-redundant marginal row per time block out of the
  /// system (all rows of block 0 stay). The default assembles every row and
  /// lets the solver detect dependencies.
  bool drop_redundant_rows = false;
  std::uint64_t path_cap = kDefaultPathCap;
};

/// Marginal-constrained transport LP over discrete paths. Row i*|grid|+k
/// pins the time-i marginal mass at grid point k to 1/|grid|; the full form
/// has one block per time point and columns restricted to paths satisfying
/// the endpoint condition, the reduced form drops the final time block and
/// folds the endpoint into the cost.
template <class S>
struct MmotLp {
  SpatialGrid grid;
  TimeGrid timegrid;
  EndpointMap endpoint;
  CostSpec cost;
  PlanForm form = PlanForm::kFull;
  std::vector<DiscretePath> columns;  // lexicographically sorted
  std::vector<S> objective;
  std::vector<std::vector<std::uint32_t>> column_rows;  // unit-coefficient rows per column
  std::vector<S> rhs;
  std::size_t row_count = 0;

  std::size_t cols() const { return columns.size(); }

  std::optional<std::size_t> column_index(const DiscretePath& path) const {
    const auto it = std::lower_bound(
        columns.begin(), columns.end(), path,
        [](const DiscretePath& a, const DiscretePath& b) { return a < b; });
    if (it == columns.end() || !(*it == path)) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - columns.begin());
  }

  SparseLp<S> to_sparse() const {
    SparseLp<S> lp;
    lp.rows = row_count;
    lp.rhs = rhs;
    lp.objective = objective;
    lp.columns.resize(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      lp.columns[j].reserve(column_rows[j].size());
      for (std::uint32_t r : column_rows[j]) {
        lp.columns[j].emplace_back(r, S(1));
      }
    }
    return lp;
  }
};

template <class S>
MmotLp<S> assemble_mmot_lp(const SpatialGrid& grid, const TimeGrid& timegrid,
                           const EndpointMap& endpoint, const CostSpec& cost, PlanForm form,
                           const AssemblyOptions& options = {}) {
  if (endpoint.size() != grid.size()) {
    throw std::invalid_argument("assemble_mmot_lp: endpoint map size does not match grid");
  }
  const std::size_t n = grid.size();
  const std::size_t blocks =
      form == PlanForm::kFull ? timegrid.point_count() : timegrid.point_count() - 1;
  if (blocks < 2) {
    throw std::invalid_argument("assemble_mmot_lp: need at least two time blocks");
  }

  std::vector<DiscretePath> paths;
  if (form == PlanForm::kFull) {
    paths = enumerate_paths(grid, timegrid, &endpoint, options.path_cap);
  } else {
    std::vector<Rat> reduced_times(timegrid.times().begin(), timegrid.times().end() - 1);
    paths = enumerate_paths(grid, TimeGrid(std::move(reduced_times)), nullptr, options.path_cap);
  }

  GridCost<S> grid_cost(cost, grid, timegrid,
                        cost.kind == CostKind::kReducedAction
                            ? std::optional<EndpointMap>(endpoint)
                            : std::nullopt);
  if (grid_cost.expected_length() != blocks) {
    throw std::invalid_argument("assemble_mmot_lp: cost '" + to_string(cost.kind) +
                                "' expects paths of length " +
                                std::to_string(grid_cost.expected_length()) +
                                ", formulation produces length " + std::to_string(blocks));
  }

  // Row layout: block-major, one row per (time block, grid point). With row
  // dropping enabled, the last grid point's row of every block after the
  // first is omitted; each block's mass total is implied by the others.
  std::vector<std::int64_t> row_id(blocks * n, -1);
  std::size_t row_count = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t k = 0; k < n; ++k) {
      if (options.drop_redundant_rows && b > 0 && k == n - 1) {
        continue;
      }
      row_id[b * n + k] = static_cast<std::int64_t>(row_count++);
    }
  }

  MmotLp<S> out{grid, timegrid, endpoint, cost, form, {}, {}, {}, {}, row_count};
  out.rhs.assign(row_count, ScalarOps<S>::from_rat(Rat(1, static_cast<int>(n))));
  out.columns.reserve(paths.size());
  out.objective.reserve(paths.size());
  out.column_rows.reserve(paths.size());
  for (auto& path : paths) {
    const std::optional<S> value = grid_cost(path);
    if (!value.has_value()) {
      continue;  // infinite cost: the column cannot carry mass
    }
    std::vector<std::uint32_t> rows;
    rows.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::int64_t id = row_id[b * n + static_cast<std::size_t>(path.indices[b])];
      if (id >= 0) {
        rows.push_back(static_cast<std::uint32_t>(id));
      }
    }
    out.columns.push_back(std::move(path));
    out.objective.push_back(*value);
    out.column_rows.push_back(std::move(rows));
  }
  if (out.columns.empty()) {
    throw std::invalid_argument("assemble_mmot_lp: every admissible path has infinite cost");
  }
  return out;
}

template <class S>
LpSolution<S> solve_mmot(const MmotLp<S>& mmot, const SimplexOptions& options = {}) {
  return solve_lp(mmot.to_sparse(), options);
}

/// Turns the primal solution of an MMOT LP into a transport plan; reduced
/// formulations yield reduced plans over the same time grid.
template <class S>
TransportPlan<S> solution_plan(const MmotLp<S>& mmot, const LpSolution<S>& solution) {
  if (solution.status != LpStatus::kOptimal) {
    throw std::invalid_argument("solution_plan: solution is not optimal");
  }
  if (solution.x.size() != mmot.cols()) {
    throw std::invalid_argument("solution_plan: solution size does not match column count");
  }
  typename TransportPlan<S>::Builder builder(mmot.grid, mmot.timegrid, mmot.form);
  for (std::size_t j = 0; j < mmot.cols(); ++j) {
    if (!ScalarOps<S>::negligible_mass(solution.x[j])) {
      builder.add(mmot.columns[j], solution.x[j]);
    }
  }
  return std::move(builder).build();
}

/// Feasibility check for a plan against the LP marginal system: every atom
/// path must be a column, and each row's mass must equal its rhs.
template <class S>
bool lp_feasible(const MmotLp<S>& mmot, const TransportPlan<S>& plan) {
  std::vector<S> row_mass(mmot.row_count, S(0));
  for (const auto& atom : plan.atoms()) {
    const auto j = mmot.column_index(atom.path);
    if (!j.has_value()) {
      return false;
    }
    for (std::uint32_t r : mmot.column_rows[*j]) {
      row_mass[r] += atom.mass;
    }
  }
  for (std::size_t r = 0; r < mmot.row_count; ++r) {
    if (!ScalarOps<S>::feasible_residual(row_mass[r] - mmot.rhs[r])) {
      return false;
    }
  }
  return true;
}

template <class S>
struct FaceInterval {
  S lower;
  S upper;
};

/// Range of the mass carried by one column over the optimal face, found by
/// pinning the objective to its optimal value with an equality row and then
/// minimizing and maximizing that coordinate.
template <class S>
FaceInterval<S> optimal_face_probe(const MmotLp<S>& mmot, const S& optimal_value,
                                   std::size_t column, const SimplexOptions& options = {}) {
  if (column >= mmot.cols()) {
    throw std::out_of_range("optimal_face_probe: column index out of range");
  }
  SparseLp<S> lp = mmot.to_sparse();
  const auto pin_row = static_cast<std::uint32_t>(lp.rows);
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    if (lp.objective[j] != S(0)) {
      lp.columns[j].emplace_back(pin_row, lp.objective[j]);
    }
  }
  lp.rows += 1;
  lp.rhs.push_back(optimal_value);

  std::vector<S> probe(lp.cols(), S(0));
  probe[column] = S(1);
  lp.objective = probe;
  const LpSolution<S> lo = solve_lp(lp, options);
  if (lo.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("optimal_face_probe: lower solve ended ") +
                             to_string(lo.status));
  }
  probe[column] = S(-1);
  lp.objective = probe;
  const LpSolution<S> hi = solve_lp(lp, options);
  if (hi.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("optimal_face_probe: upper solve ended ") +
                             to_string(hi.status));
  }
  return FaceInterval<S>{lo.objective_value, -hi.objective_value};
}

template <class S>
struct MongeSearchResult {
  S best_cost;
  TransportPlan<S> plan;
  std::uint64_t nodes = 0;
};

/// Exhaustive minimum over Monge competitors: plans of the form
/// (id, s_1, ..., s_{N-1}, endpoint) pushing the uniform measure forward
/// through per-time permutations s_i. Time 0 is the identity without loss of
/// generality and the final time is fixed by the endpoint condition.
template <class S>
MongeSearchResult<S> monge_bruteforce(const SpatialGrid& grid, const TimeGrid& timegrid,
                                      const EndpointMap& endpoint, const CostSpec& cost,
                                      std::uint64_t node_cap = kDefaultPathCap) {
  const std::size_t n = grid.size();
  const std::size_t nt = timegrid.point_count();
  if (nt < 2) {
    throw std::invalid_argument("monge_bruteforce: need at least two time points");
  }
  std::vector<std::vector<std::int32_t>> perms;
  {
    std::vector<std::int32_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  const std::size_t free_times = nt - 2;
  {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free_times; ++i) {
      if (total > node_cap / perms.size()) {
        throw ResourceLimitError("monge_bruteforce: search tree exceeds " +
                                 std::to_string(node_cap) + " nodes");
      }
      total *= perms.size();
    }
  }

  GridCost<S> grid_cost(cost, grid, timegrid,
                        cost.kind == CostKind::kReducedAction
                            ? std::optional<EndpointMap>(endpoint)
                            : std::nullopt);
  const bool separable = cost.kind == CostKind::kAction || cost.kind == CostKind::kReducedAction;
  const S mass = ScalarOps<S>::from_rat(Rat(1, static_cast<int>(n)));

  // choice[i] = permutation used at time i+1; the last slot is forced.
  std::vector<std::size_t> choice(free_times, 0);
  std::vector<std::vector<std::int32_t>> slices(nt);
  slices[0].resize(n);
  std::iota(slices[0].begin(), slices[0].end(), 0);
  slices[nt - 1].resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    slices[nt - 1][k] = endpoint.apply(static_cast<std::int32_t>(k));
  }

  // Kinetic increment of moving every atom from the slice at time `from` to
  // the slice at time `from + 1`.
  auto step_cost = [&](const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b,
                       std::size_t from) -> S {
    const S dt = ScalarOps<S>::from_rat(timegrid.step(from + 1));
    S total(0);
    for (std::size_t k = 0; k < n; ++k) {
      const S d = ScalarOps<S>::from_rat(grid.point(static_cast<std::size_t>(b[k])) -
                                         grid.point(static_cast<std::size_t>(a[k])));
      total += d * d / dt;
    }
    return total * mass;
  };

  auto leaf_cost = [&](std::optional<S>& out) {
    if (separable) {
      return;  // handled incrementally
    }
    S total(0);
    DiscretePath path;
    path.indices.resize(nt);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < nt; ++i) {
        path.indices[i] = slices[i][k];
      }
      const std::optional<S> c = grid_cost(path);
      if (!c.has_value()) {
        out = std::nullopt;
        return;
      }
      total += mass * *c;
    }
    out = total;
  };

  std::optional<S> best;
  std::vector<std::size_t> best_choice;
  std::uint64_t nodes = 0;
  std::vector<S> prefix(free_times + 2, S(0));

  // Depth-first search over the free time slices with incremental pruning
  // for separable costs.
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    ++nodes;
    if (depth == free_times) {
      S total(0);
      if (separable) {
        total = prefix[depth] +
                step_cost(slices[nt - 2], slices[nt - 1], nt - 2);
      } else {
        std::optional<S> leaf;
        leaf_cost(leaf);
        if (!leaf.has_value()) {
          return;
        }
        total = *leaf;
      }
      if (!best.has_value() || total < *best) {
        best = total;
        best_choice = choice;
      }
      return;
    }
    for (std::size_t p = 0; p < perms.size(); ++p) {
      choice[depth] = p;
      slices[depth + 1] = perms[p];
      if (separable) {
        prefix[depth + 1] =
            prefix[depth] + step_cost(slices[depth], slices[depth + 1], depth);
        if (best.has_value() && prefix[depth + 1] >= *best) {
          continue;
        }
      }
      self(self, depth + 1);
    }
  };
  dfs(dfs, 0);

  if (!best.has_value()) {
    throw std::runtime_error("monge_bruteforce: every Monge competitor has infinite cost");
  }
  for (std::size_t i = 0; i < free_times; ++i) {
    slices[i + 1] = perms[best_choice[i]];
  }
  typename TransportPlan<S>::Builder builder(grid, timegrid, PlanForm::kFull);
  for (std::size_t k = 0; k < n; ++k) {
    DiscretePath path;
    path.indices.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      path.indices[i] = slices[i][k];
    }
    builder.add(std::move(path), mass);
  }
  return MongeSearchResult<S>{*best, std::move(builder).build(), nodes};
}

}  // namespace geuler
