#include "suite_support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rsalg/render.hpp"

namespace rsalg::detail {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t error_index = n;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Sheet::PointCheck Sheet::check(Real a, Real b, Real scale, const Tolerance& tol) {
  if (!std::isfinite(a) || !std::isfinite(b)) return {false, INFINITY, INFINITY};
  const Real diff = std::abs(a - b);
  const bool relative_binds = tol.rel * scale >= tol.abs;
  const Real rel = relative_binds && diff > 0 ? diff / scale : 0;
  return {diff <= std::max<Real>(tol.abs, tol.rel * scale), static_cast<double>(diff), static_cast<double>(rel)};
}

void Sheet::record(std::size_t id, bool ok, double abs, double rel, const std::string& worst,
                   CaseFailure failure) {
  Row& r = rows_[id];
  ++r.checked;
  r.max_abs = std::max(r.max_abs, abs);
  if (r.worst.empty() || rel > r.max_rel) r.worst = worst;
  r.max_rel = std::max(r.max_rel, rel);
  if (ok) return;
  ++r.failed;
  if (r.failures.size() < kMaxListedFailures) r.failures.push_back(std::move(failure));
}

void Sheet::exact(std::size_t id, bool ok, const std::string& tree, const std::string& context,
                  const std::function<std::string()>& lhs, const std::function<std::string()>& rhs) {
  Row& r = rows_[id];
  ++r.checked;
  if (ok) return;
  ++r.failed;
  if (r.failures.size() < kMaxListedFailures) r.failures.push_back({tree, context, lhs(), rhs()});
}

void Sheet::exact_cases(std::size_t id, std::size_t cases) { rows_[id].checked += cases; }

namespace {
std::string join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}
}  // namespace

void Sheet::value(std::size_t id, Real lhs, Real rhs, const Tolerance& tol, const std::string& tree,
                  const std::string& context) {
  value_scaled(id, lhs, rhs, std::max(std::abs(lhs), std::abs(rhs)), tol, tree, context);
}

void Sheet::value_scaled(std::size_t id, Real lhs, Real rhs, Real scale, const Tolerance& tol,
                         const std::string& tree, const std::string& context) {
  const PointCheck c = check(lhs, rhs, scale, tol);
  record(id, c.ok, c.abs, c.rel, join(tree, context.empty() ? "" : "@ " + context),
         {tree, context, render(static_cast<double>(lhs)), render(static_cast<double>(rhs))});
}

void Sheet::field(std::size_t id, const Field& lhs, const Field& rhs,
                  const Tolerance& tol, const std::string& tree, const std::string& context,
                  const std::vector<std::size_t>& points,
                  const std::function<std::string(std::size_t)>& locate) {
  bool ok = true;
  double case_abs = 0, case_rel = 0, bad_abs = -1;
  std::size_t bad = 0, worst_point = points.empty() ? 0 : points.front();
  const std::size_t n = points.empty() ? lhs.size() : points.size();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t l = points.empty() ? j : points[j];
    const PointCheck c = check(lhs[l], rhs[l], std::max(std::abs(lhs[l]), std::abs(rhs[l])), tol);
    case_abs = std::max(case_abs, c.abs);
    if (c.rel > case_rel) {
      case_rel = c.rel;
      worst_point = l;
    }
    if (!c.ok && c.abs > bad_abs) {
      ok = false;
      bad_abs = c.abs;
      bad = l;
    }
  }
  auto where = [&](std::size_t l) { return locate ? locate(l) : "index " + std::to_string(l); };
  record(id, ok, case_abs, case_rel, join(tree, "@ " + join(context, where(worst_point))),
         ok ? CaseFailure{} : CaseFailure{tree, join(context, where(bad)), render(static_cast<double>(lhs[bad])), render(static_cast<double>(rhs[bad]))});
}

void Sheet::merge_into(std::vector<IdentityResult>& out) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    IdentityResult& o = out[i];
    if (r.checked == 0) continue;
    o.checked += r.checked;
    o.failed += r.failed;
    o.max_abs = std::max(o.max_abs, r.max_abs);
    if (o.worst.empty() || r.max_rel > o.max_rel) o.worst = r.worst;
    o.max_rel = std::max(o.max_rel, r.max_rel);
    for (const auto& f : r.failures) {
      if (o.failures.size() >= kMaxListedFailures) break;
      o.failures.push_back(f);
    }
  }
}

std::string render_point(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t a = 0; a < p.size(); ++a) s += (a ? "," : "") + std::to_string(p[a]);
  return s + ")";
}

std::vector<std::pair<std::string, std::string>> rule_settings(const RunConfig& cfg, const DegreeParams& params) {
  std::string scaling;
  for (std::size_t a = 0; a < params.scaling.size(); ++a) scaling += (a ? "," : "") + std::to_string(params.scaling[a]);
  return {{"rule", cfg.rules().name_str()},
          {"d", std::to_string(params.d)},
          {"alpha", render(params.alpha)},
          {"scaling", scaling},
          {"max_noises", std::to_string(cfg.noise_bound())},
          {"max_edges", std::to_string(cfg.edge_bound())},
          {"prep", cfg.prep},
          {"prep_c", render(cfg.prep_c)}};
}

}  // namespace rsalg::detail
