#include "premetric/identity.hpp"

#include <bit>
#include <fstream>
#include <future>
#include <mutex>
#include <random>
#include <set>

namespace premetric {

VarMask mask_full() { return VarMask().set(); }
VarMask mask_none() { return VarMask(); }

VarMask named_mask(const std::string& name) {
  VarMask m;
  if (name == "full") return mask_full();
  if (name == "none") return m;
  if (name == "24-var") {
    for (std::size_t f = 0; f < 18; ++f) m.set(f);
    return m;
  }
  if (name == "12-var") {
    for (std::size_t f = 0; f < 9; ++f) m.set(f);
    for (std::size_t i = 0; i < 3; ++i) m.set(9 + 4 * i);
    return m;
  }
  if (name == "6-var") {
    for (std::size_t i = 0; i < 3; ++i) {
      m.set(4 * i);
      m.set(9 + 4 * i);
    }
    return m;
  }
  throw Error(ErrorCode::ParseError, "unknown mask " + name);
}

std::string mask_variable_name(std::size_t flag) {
  const char block = "ABCD"[flag / 9];
  const std::size_t r = flag % 9;
  return std::string(1, block) + std::to_string(r / 3 + 1) + std::to_string(r % 3 + 1);
}

SymbolicKappa symbolic_kappa(const VarMask& mask) {
  SymbolicKappa out;
  std::vector<std::string> names;
  for (std::size_t f = 0; f < 36; ++f)
    if (mask.test(f)) {
      names.push_back(mask_variable_name(f));
      out.flags.push_back(f);
    }
  out.vars = make_vars(std::move(names));
  ABCDBlocks<PolyExpr> b;
  Mat<PolyExpr, 3>* blocks[4] = {&b.A, &b.B, &b.C, &b.D};
  for (std::size_t v = 0; v < out.flags.size(); ++v) {
    const std::size_t f = out.flags[v];
    const std::size_t r = f % 9;
    (*blocks[f / 9])[r / 3][r % 3] = PolyExpr(MultiPoly::variable(out.vars, v));
  }
  out.kappa = kappa_from_blocks(b);
  return out;
}

std::array<PolyExpr, 35> big_identity_all(const SymbolicKappa& k) {
  const PolyExpr d = det6(k.kappa);
  const PolyExpr d2 = d * d;
  const auto g = tamm_rubilar(k.kappa);
  const auto ga = tamm_rubilar(adjugate(k.kappa));
  std::array<PolyExpr, 35> out;
  for (std::size_t n = 0; n < 35; ++n) out[n] = PolyExpr::unfolded_sum(PolyExpr::unfolded_product(d2, g[n]), ga[n]);
  return out;
}

PolyExpr big_identity_polys(const Quad& q, const VarMask& mask) {
  for (std::size_t n = 1; n < 4; ++n)
    if (q[n - 1] > q[n] || q[0] < 0 || q[3] > 3) throw Error(ErrorCode::ParseError, "multi-index must be sorted over 0..3");
  return big_identity_all(symbolic_kappa(mask))[quad_index(q)];
}

std::vector<Rational> random_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-(1L << 16), 1L << 16);
  std::uniform_int_distribution<long> den(1, 1L << 16);
  std::vector<Rational> p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    p.push_back(std::move(q));
  }
  return p;
}

bool pit_verify(const std::vector<PolyExpr>& fs, int trials, std::uint64_t seed, PitStats* stats) {
  if (trials < 1) throw Error(ErrorCode::PreconditionFailed, "trials must be at least 1");
  std::size_t n = 0;
  for (const auto& f : fs)
    if (f.vars()) n = std::max(n, f.vars()->names.size());
  std::mt19937_64 rng(seed);
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    const auto point = random_point(n, rng);
    ExprEvaluator ev(point);
    bool trial_ok = true;
    for (const auto& f : fs)
      if (sgn(ev(f)) != 0) {
        trial_ok = false;
        break;
      }
    if (stats) {
      ++stats->trials_run;
      stats->failures += !trial_ok;
    }
    if (!trial_ok) {
      ok = false;
      break;
    }
  }
  return ok;
}

bool pit_verify(const PolyExpr& f, int trials, std::uint64_t seed) { return pit_verify(std::vector<PolyExpr>{f}, trials, seed); }

namespace {

struct TaylorContext {
  const TaylorOptions& opts;
  std::mutex mu;
  std::set<std::string> completed;
  std::ofstream checkpoint;

  bool is_completed(const std::string& path) {
    std::lock_guard<std::mutex> lock(mu);
    return completed.count(path) > 0;
  }
  void mark(const std::string& path) {
    if (!checkpoint.is_open()) return;
    std::lock_guard<std::mutex> lock(mu);
    checkpoint << path << '\n';
    checkpoint.flush();
  }
};

std::string child_path(const std::string& parent, const PolyExpr& f, std::size_t var, std::size_t k) {
  const std::string name = f.vars() ? f.vars()->names[var] : "v" + std::to_string(var);
  return (parent.empty() ? "" : parent + "/") + name + "=" + std::to_string(k);
}

void merge(TaylorStats& into, const TaylorStats& s) {
  into.nodes += s.nodes;
  into.direct_checks += s.direct_checks;
  into.resumed += s.resumed;
  into.raised_K += s.raised_K;
  into.max_depth = std::max(into.max_depth, s.max_depth);
}

bool verify_node(const PolyExpr& f, TaylorContext& ctx, const std::string& path, int depth, TaylorStats& st, bool top);

bool verify_slices(const PolyExpr& f, std::size_t var, std::vector<PolyExpr> slices, TaylorContext& ctx, const std::string& path,
                   int depth, TaylorStats& st, bool parallel) {
  if (!parallel || ctx.opts.jobs <= 1) {
    for (std::size_t k = 0; k < slices.size(); ++k)
      if (!verify_node(slices[k], ctx, child_path(path, f, var, k), depth + 1, st, false)) return false;
    return true;
  }
  bool ok = true;
  for (std::size_t start = 0; start < slices.size() && ok; start += static_cast<std::size_t>(ctx.opts.jobs)) {
    const std::size_t end = std::min(slices.size(), start + static_cast<std::size_t>(ctx.opts.jobs));
    std::vector<std::future<std::pair<bool, TaylorStats>>> futs;
    for (std::size_t k = start; k < end; ++k)
      futs.push_back(std::async(std::launch::async, [&, k] {
        TaylorStats s;
        const bool r = verify_node(slices[k], ctx, child_path(path, f, var, k), depth + 1, s, false);
        return std::make_pair(r, s);
      }));
    for (auto& fu : futs) {
      auto [r, s] = fu.get();
      merge(st, s);
      ok = ok && r;
    }
  }
  return ok;
}

bool verify_node(const PolyExpr& f, TaylorContext& ctx, const std::string& path, int depth, TaylorStats& st, bool top) {
  ctx.opts.deadline.check("taylor_zero_verify");
  ++st.nodes;
  st.max_depth = std::max(st.max_depth, depth);
  if (f.is_structural_zero()) return true;
  if (!path.empty() && ctx.is_completed(path)) {
    ++st.resumed;
    return true;
  }
  const std::uint64_t active = f.active_mask();
  bool ok;
  if (std::popcount(active) < ctx.opts.var_threshold) {
    ++st.direct_checks;
    ok = ctx.opts.direct_expander ? ctx.opts.direct_expander(f) : f.expand().is_zero();
  } else {
    std::size_t var = 0;
    int best = -1;
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if ((active >> v) & 1u) {
        const int d = f.degree_bound(v);
        if (d > best) {
          best = d;
          var = v;
        }
      }
    int k = ctx.opts.K;
    if (k <= best) {
      k = best + 1;
      ++st.raised_K;
    }
    ok = verify_slices(f, var, f.slices(var, static_cast<std::size_t>(k)), ctx, path, depth, st, top);
  }
  if (ok && !path.empty()) ctx.mark(path);
  return ok;
}

}  // namespace

bool taylor_zero_verify(const PolyExpr& f, const TaylorOptions& opts, TaylorStats* stats) {
  if (opts.K < 1 || opts.var_threshold < 1) throw Error(ErrorCode::PreconditionFailed, "K and var_threshold must be positive");
  TaylorContext ctx{opts, {}, {}, {}};
  if (!opts.checkpoint_path.empty()) {
    std::ifstream in(opts.checkpoint_path);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) ctx.completed.insert(line);
    ctx.checkpoint.open(opts.checkpoint_path, std::ios::app);
  }
  TaylorStats local;
  const bool ok = verify_node(f, ctx, "", 0, stats ? *stats : local, true);
  return ok;
}

}  // namespace premetric
