#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "premetric/claim2.hpp"
#include "premetric/closure.hpp"
#include "premetric/fresnel.hpp"
#include "premetric/groebner.hpp"
#include "premetric/identity.hpp"
#include "premetric/io.hpp"
#include "premetric/wavekernel.hpp"

namespace {

using namespace premetric;
using io::json;

struct Result {
  Result() = default;
  Result(json p, bool good = true) : payload(std::move(p)), ok(good) {}

  json payload;
  bool ok = true;
  std::string csv;  // replaces the generic flattening when set
};

struct Common {
  std::string medium;
  bool exact = false;
  std::string output = "json";
};

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  auto child = [&](const std::string& key) { return path.empty() ? key : path + "." + key; };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, child(k), rows);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t n = 0; n < j.size(); ++n) flatten(j[n], child(std::to_string(n)), rows);
  } else {
    rows.emplace_back(path, j.is_array() ? "" : cell(j));
  }
}

void emit(const Result& r, const std::string& format) {
  if (format == "json") {
    std::cout << io::dump(r.payload);
    return;
  }
  if (!r.csv.empty()) {
    std::cout << r.csv;
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(r.payload, "", rows);
  std::cout << "key,value\n";
  for (const auto& [k, v] : rows) std::cout << k << ',' << v << '\n';
}

json to_json(const Rational& x) { return io::scalar_to_json(x); }
json to_json(double x) { return io::scalar_to_json(x); }
json to_json(const Complex& x) { return io::scalar_to_json(x); }

template <class T>
json covector_json(const Covector4<T>& v) {
  return io::vector_to_json(v);
}

io::AnyOperator load_operator(const Common& c) {
  io::Medium m = io::parse_medium(io::read_json_file(c.medium));
  if (c.exact) {
    if (m.scalar != io::ScalarKind::Rational)
      throw Error(ErrorCode::PreconditionFailed, "--exact needs a medium with rational entries");
    return m.kappa;
  }
  if (m.scalar == io::ScalarKind::Rational)
    return AreaOperator<double>(convert<double>(std::get<AreaOperator<Rational>>(m.kappa).matrix()));
  return m.kappa;
}

AreaOperator<Rational> load_rational(const std::string& path) {
  io::Medium m = io::parse_medium(io::read_json_file(path));
  if (m.scalar != io::ScalarKind::Rational) throw Error(ErrorCode::PreconditionFailed, "this command needs a rational medium");
  return std::get<AreaOperator<Rational>>(m.kappa);
}

std::vector<Rational> parse_list(const std::string& text, std::size_t n, const char* what) {
  auto v = io::parse_rational_list(text);
  if (v.size() != n) throw Error(ErrorCode::ParseError, std::string(what) + " needs " + std::to_string(n) + " comma separated values");
  return v;
}

template <class T, std::size_t N>
Vec<T, N> to_vec(const std::vector<Rational>& v) {
  Vec<T, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = from_rational<T>(v[i]);
  return out;
}

template <class K>
struct scalar_of;
template <class T>
struct scalar_of<AreaOperator<T>> {
  using type = T;
};
template <class K>
using scalar_of_t = typename scalar_of<std::decay_t<K>>::type;

template <class T>
constexpr bool is_complex_v = ScalarTraits<T>::is_complex;

[[noreturn]] void complex_unsupported(const std::string& what) {
  throw Error(ErrorCode::ComplexUnsupported, what + " is defined for real media only");
}

Result medium_decompose(const Common& c) {
  return std::visit(
      [](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        if constexpr (is_complex_v<T>) {
          complex_unsupported("decomposition");
        } else {
          const auto d = decompose(k);
          return {json{{"principal", io::medium_to_json(io::make_medium(d.principal))},
                       {"skewon", io::medium_to_json(io::make_medium(d.skewon))},
                       {"axion", to_json(d.axion_coeff)}}};
        }
      },
      load_operator(c));
}

Result medium_blocks(const Common& c) {
  return std::visit([](const auto& k) -> Result { return {io::medium_to_json(io::make_medium(k, "blocks"))}; }, load_operator(c));
}

Result hodge_star_cmd(const std::string& metric, bool exact) {
  const auto g = io::parse_metric_spec(metric);
  if (exact) return {io::medium_to_json(io::make_medium(hodge_star(Metric4<Rational>(g))))};
  return {io::medium_to_json(io::make_medium(hodge_star(Metric4<double>(convert<double>(g)))))};
}

Result fresnel_tr(const Common& c) {
  return std::visit(
      [](const auto& k) -> Result {
        const auto g = tamm_rubilar(k);
        json comps = json::object();
        for (std::size_t n = 0; n < 35; ++n) comps[quad_key(sorted_quads()[n])] = to_json(g[n]);
        return {json{{"components", comps}}};
      },
      load_operator(c));
}

Result fresnel_eval_cmd(const Common& c, const std::string& xi_text) {
  const auto xi = parse_list(xi_text, 4, "--xi");
  return std::visit(
      [&](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        const auto x = to_vec<T, 4>(xi);
        return {json{{"xi", covector_json(x)}, {"value", to_json(fresnel_eval(tamm_rubilar(k), x))}}};
      },
      load_operator(c));
}

Result fresnel_roots_cmd(const Common& c, const std::string& q_text) {
  const auto q = parse_list(q_text, 3, "--q");
  return std::visit(
      [&](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        const auto p = quartic_in_xi0(tamm_rubilar(k), to_vec<T, 3>(q));
        auto roots = quartic_roots(p);
        std::sort(roots.begin(), roots.end(), [](const RootCluster& a, const RootCluster& b) {
          if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
          return a.value.imag() < b.value.imag();
        });
        json coeffs = json::array();
        for (const auto& x : p.c) coeffs.push_back(to_json(x));
        json list = json::array();
        for (const auto& r : roots) list.push_back(json{{"value", to_json(Complex(r.value.real() + 0.0, r.value.imag() + 0.0))}, {"multiplicity", r.multiplicity}});
        return {json{{"q", io::vector_to_json(to_vec<T, 3>(q))}, {"coefficients", coeffs}, {"roots", list}}};
      },
      load_operator(c));
}

Result fresnel_sample_cmd(const Common& c, const std::string& extent_text, int n) {
  if (n < 2) throw Error(ErrorCode::PreconditionFailed, "--n must be at least 2");
  const Rational extent = parse_rational(extent_text);
  if (sgn(extent) <= 0) throw Error(ErrorCode::NonPositiveParameter, "--extent must be positive");
  return std::visit(
      [&](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        if constexpr (is_complex_v<T>) {
          complex_unsupported("sampling");
        } else {
          const auto g = tamm_rubilar(k);
          std::vector<T> axis;
          for (int i = 0; i < n; ++i) axis.push_back(from_rational<T>(canonical(Rational(-extent + 2 * extent * i / (n - 1)))));
          Result r;
          json rows = json::array();
          std::string csv = "xi1,xi2,xi3,f\n";
          for (const T& x1 : axis)
            for (const T& x2 : axis)
              for (const T& x3 : axis) {
                const Covector4<T> xi{ScalarTraits<T>::one(), x1, x2, x3};
                const json row = json::array({to_json(x1), to_json(x2), to_json(x3), to_json(fresnel_eval(g, xi))});
                csv += cell(row[0]) + ',' + cell(row[1]) + ',' + cell(row[2]) + ',' + cell(row[3]) + '\n';
                rows.push_back(row);
              }
          r.payload = json{{"extent", to_json(from_rational<T>(extent))}, {"n", n}, {"samples", rows}};
          r.csv = std::move(csv);
          return r;
        }
      },
      load_operator(c));
}

std::array<int, 3> parse_signs(const std::string& text) {
  std::array<int, 3> out{};
  std::size_t n = 0;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if ((ch != '+' && ch != '-') || n == 3) throw Error(ErrorCode::ParseError, "--signs looks like +,-,+");
    out[n++] = ch == '+' ? 1 : -1;
  }
  if (n != 3) throw Error(ErrorCode::ParseError, "--signs needs three signs");
  return out;
}

json points_json(const std::vector<Vec<double, 3>>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(io::vector_to_json(p));
  return out;
}

Result fresnel_singular_cmd(const Common& c, const std::string& signs, double extent, int grid) {
  QuadrantSpec spec;
  spec.signs = parse_signs(signs);
  spec.extent = extent;
  spec.grid = grid;
  if (!(extent > 0) || grid < 1) throw Error(ErrorCode::NonPositiveParameter, "--extent and --grid must be positive");
  const auto run = std::visit(
      [&](const auto& k) -> SingularReport {
        using T = scalar_of_t<decltype(k)>;
        if constexpr (is_complex_v<T>) {
          complex_unsupported("singular point search");
        } else {
          return singular_points(convert<double>(tamm_rubilar(k)), spec);
        }
      },
      load_operator(c));
  return {json{{"points", points_json(run.points)}, {"isolated", points_json(run.isolated)}, {"non_isolated", run.non_isolated}}};
}

Result wavekernel_cmd(const Common& c, const std::string& xi_text) {
  const auto xi = parse_list(xi_text, 4, "--xi");
  return std::visit(
      [&](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        const auto rep = kernel_report(k, to_vec<T, 4>(xi));
        json basis = json::array();
        for (const auto& v : rep.kernel_basis) basis.push_back(covector_json(v));
        return {json{{"dim_ker_L", rep.dim_ker_L}, {"dim_V", rep.dim_V}, {"Q", io::matrix_to_json(rep.Q)}, {"kernel_basis", basis}}};
      },
      load_operator(c));
}

Result closure_check_cmd(const Common& c) {
  return std::visit(
      [](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        if constexpr (is_complex_v<T>) {
          complex_unsupported("the closure check");
        } else {
          const auto rep = closure_check(k);
          const bool skew_free = skewon_free_check(k);
          return {json{{"holds", rep.holds}, {"f", to_json(rep.f)}, {"residual", rep.residual}, {"skewon_free", skew_free}},
                  rep.holds};
        }
      },
      load_operator(c));
}

Result closure_reconstruct_cmd(const Common& c) {
  return std::visit(
      [](const auto& k) -> Result {
        using T = scalar_of_t<decltype(k)>;
        if constexpr (is_complex_v<T>) {
          complex_unsupported("metric reconstruction");
        } else {
          const auto rep = reconstruct_metric(k);
          const auto sig = signature(rep.g);
          return {json{{"g", io::matrix_to_json(rep.g.g())},
                       {"signature", {{"index", sig.index}, {"lorentzian", sig.lorentz}}},
                       {"sign_factor", rep.sign_factor},
                       {"f", to_json(rep.f)},
                       {"det_G", to_json(rep.det_G)},
                       {"star_match", rep.star_match ? to_json(*rep.star_match) : json(nullptr)},
                       {"chart", io::matrix_to_json(rep.chart)}}};
        }
      },
      load_operator(c));
}

Result invariance_cmd(const std::string& medium, const std::string& f_text, int trials, std::uint64_t seed) {
  const Rational f = parse_rational(f_text);
  std::vector<AreaOperator<Rational>> media;
  if (!medium.empty()) {
    media.push_back(load_rational(medium));
  } else {
    if (trials < 1) throw Error(ErrorCode::PreconditionFailed, "--trials must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    for (int t = 0; t < trials; ++t) {
      Mat<Rational, 6> m;
      for (auto& row : m)
        for (auto& x : row) x = canonical(Rational(num(rng), den(rng)));
      media.emplace_back(m);
    }
  }
  json failures = json::array();
  int passed = 0;
  for (std::size_t i = 0; i < media.size(); ++i) {
    const auto rep = invariance_suite(media[i], f);
    if (rep.all())
      ++passed;
    else
      failures.push_back(json{{"index", i}, {"failure", rep.failure}});
  }
  const bool ok = passed == static_cast<int>(media.size());
  return {json{{"media", media.size()}, {"passed", passed}, {"f", to_json(f)}, {"failures", failures}}, ok};
}

struct PolyidArgs {
  std::string component = "0000";
  std::string mode = "pit";
  int K = 5;
  int threshold = 27;
  std::uint64_t seed = 1;
  double budget = 0;
  int jobs = 1;
  std::string mask = "full";
  int trials = 20;
  std::string checkpoint;
};

Quad parse_quad(const std::string& key) {
  if (key.size() != 4) throw Error(ErrorCode::ParseError, "--component is four digits in 0..3, such as 0123");
  Quad q{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (key[i] < '0' || key[i] > '3') throw Error(ErrorCode::ParseError, "--component digits lie in 0..3");
    q[i] = key[i] - '0';
  }
  std::sort(q.begin(), q.end());
  return q;
}

Result polyid_cmd(const PolyidArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const VarMask mask = named_mask(a.mask);
  std::vector<std::size_t> picks;
  if (a.component == "all") {
    for (std::size_t n = 0; n < 35; ++n) picks.push_back(n);
  } else {
    picks.push_back(quad_index(parse_quad(a.component)));
  }
  const auto all = big_identity_all(symbolic_kappa(mask));
  std::vector<PolyExpr> exprs;
  for (std::size_t n : picks) exprs.push_back(all[n]);

  json stats;
  bool verified = true;
  if (a.mode == "pit") {
    PitStats st;
    verified = pit_verify(exprs, a.trials, a.seed, &st);
    stats = {{"trials_run", st.trials_run}, {"failures", st.failures}};
  } else {
    TaylorOptions opts;
    opts.K = a.K;
    opts.var_threshold = a.threshold;
    opts.jobs = a.jobs;
    if (a.budget > 0) opts.deadline = Deadline(std::chrono::duration<double>(a.budget));
    TaylorStats total;
    for (std::size_t i = 0; i < exprs.size() && verified; ++i) {
      if (!a.checkpoint.empty())
        opts.checkpoint_path = picks.size() == 1 ? a.checkpoint : a.checkpoint + "." + quad_key(sorted_quads()[picks[i]]);
      TaylorStats st;
      verified = taylor_zero_verify(exprs[i], opts, &st);
      total.nodes += st.nodes;
      total.direct_checks += st.direct_checks;
      total.resumed += st.resumed;
      total.raised_K += st.raised_K;
      total.max_depth = std::max(total.max_depth, st.max_depth);
    }
    stats = {{"nodes", total.nodes},         {"direct_checks", total.direct_checks}, {"resumed", total.resumed},
             {"max_depth", total.max_depth}, {"raised_K", total.raised_K}};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {json{{"component", a.component},
               {"mode", a.mode},
               {"mask", a.mask},
               {"variables", mask.count()},
               {"verified", verified},
               {"stats", stats},
               {"seconds", seconds}},
          verified};
}

MonomialOrder parse_order(const std::string& spec, const VarTablePtr& vars) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<std::size_t> perm;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::set<std::size_t> seen;
    for (std::string name; std::getline(ss, name, ',');) {
      const std::size_t v = vars->index_of(name);
      if (!seen.insert(v).second) throw Error(ErrorCode::ParseError, "variable " + name + " appears twice in --order");
      perm.push_back(v);
    }
    for (std::size_t v = 0; v < vars->names.size(); ++v)
      if (!seen.count(v)) perm.push_back(v);
  }
  if (kind == "lex") return MonomialOrder::lex(perm);
  if (kind == "grevlex") return MonomialOrder::grevlex(perm);
  throw Error(ErrorCode::ParseError, "--order is lex or grevlex, optionally followed by :x,y,...");
}

json readable(const std::vector<MultiPoly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

json stats_json(const GroebnerStats& s) {
  return {{"pairs_considered", s.pairs_considered},
          {"pairs_reduced", s.pairs_reduced},
          {"product_skips", s.product_skips},
          {"chain_skips", s.chain_skips}};
}

Result groebner_cmd(const std::string& gens_path, const std::string& order_spec, double budget) {
  const auto gens = io::polys_from_json(io::read_json_file(gens_path));
  if (gens.empty()) throw Error(ErrorCode::EmptyIdeal, "no generators given");
  const auto order = parse_order(order_spec, gens.front().vars());
  const Deadline deadline = budget > 0 ? Deadline(std::chrono::duration<double>(budget)) : Deadline();
  GroebnerStats stats;
  const auto gb = buchberger(gens, order, deadline, &stats);
  json out = io::polys_to_json(gb.polys);
  out["order"] = order_spec;
  out["basis"] = readable(gb.polys);
  out["stats"] = stats_json(stats);
  return {out};
}

Result claim2_cmd(const std::string& scale, const std::string& lambda, double budget) {
  Claim2Options opts;
  if (scale == "reduced")
    opts.scale = Claim2Scale::Reduced;
  else if (scale == "full")
    opts.scale = Claim2Scale::Full;
  else
    throw Error(ErrorCode::ParseError, "--claim2 is reduced or full");
  opts.lambda = parse_rational(lambda);
  if (budget > 0) opts.deadline = Deadline(std::chrono::duration<double>(budget));
  const auto rep = claim2_groebner_repro(opts);
  const bool ok = rep.matches_cube_root && rep.unique_real_solution;
  return {json{{"scale", to_string(rep.scale)},
               {"lambda", to_json(rep.lambda)},
               {"variables", rep.variables},
               {"equations", rep.equations},
               {"complex_basis", readable(rep.complex_basis.polys)},
               {"sos_rounds", rep.sos_rounds},
               {"real_constraints", readable(rep.real_constraints)},
               {"real_basis", readable(rep.real_basis.polys)},
               {"zero_dimensional", rep.zero_dimensional},
               {"unique_real_solution", rep.unique_real_solution},
               {"matches_cube_root", rep.matches_cube_root},
               {"t", rep.t ? to_json(*rep.t) : json(nullptr)},
               {"solution_verified", rep.solution_verified},
               {"stats", stats_json(rep.stats)},
               {"seconds", rep.seconds}},
          ok};
}

void add_common(CLI::App* cmd, Common& c, bool needs_medium = true) {
  auto* opt = cmd->add_option("--medium", c.medium, "medium JSON file");
  if (needs_medium) opt->required()->check(CLI::ExistingFile);
  cmd->add_flag("--exact", c.exact, "rational arithmetic throughout");
  cmd->add_option("--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Premetric electrodynamics toolkit"};
  app.require_subcommand(1);
  Common c;
  std::function<Result()> action;

  auto* medium = app.add_subcommand("medium", "constitutive tensors")->require_subcommand(1);
  auto* decomp = medium->add_subcommand("decompose", "principal, skewon and axion parts");
  add_common(decomp, c);
  decomp->callback([&] { action = [&] { return medium_decompose(c); }; });
  auto* blocks = medium->add_subcommand("blocks", "rewrite as A, B, C, D blocks");
  add_common(blocks, c);
  blocks->callback([&] { action = [&] { return medium_blocks(c); }; });

  std::string metric;
  auto* hodge = app.add_subcommand("hodge", "Hodge star media")->require_subcommand(1);
  auto* star = hodge->add_subcommand("star", "medium of a metric");
  add_common(star, c, false);
  star->add_option("--metric", metric, "minkowski, euclidean, diag:a,b,c,d or a file")->required();
  star->callback([&] { action = [&] { return hodge_star_cmd(metric, c.exact); }; });

  std::string xi, q, extent = "2", signs = "+,+,+";
  int n = 21, grid = 10;
  double sing_extent = 3.0;
  auto* fresnel = app.add_subcommand("fresnel", "Fresnel surfaces")->require_subcommand(1);
  auto* tr = fresnel->add_subcommand("tr", "Tamm-Rubilar components");
  add_common(tr, c);
  tr->callback([&] { action = [&] { return fresnel_tr(c); }; });
  auto* ev = fresnel->add_subcommand("eval", "evaluate the quartic at a covector");
  add_common(ev, c);
  ev->add_option("--xi", xi, "xi0,xi1,xi2,xi3")->required();
  ev->callback([&] { action = [&] { return fresnel_eval_cmd(c, xi); }; });
  auto* roots = fresnel->add_subcommand("roots", "roots in xi0 at fixed spatial part");
  add_common(roots, c);
  roots->add_option("--q", q, "q1,q2,q3")->required();
  roots->callback([&] { action = [&] { return fresnel_roots_cmd(c, q); }; });
  auto* sample = fresnel->add_subcommand("sample", "grid samples on the xi0 = 1 slice");
  add_common(sample, c);
  sample->add_option("--extent", extent, "half width of the grid");
  sample->add_option("--n", n, "points per axis");
  sample->callback([&] { action = [&] { return fresnel_sample_cmd(c, extent, n); }; });
  auto* singular = fresnel->add_subcommand("singular", "singular points of the xi0 = 1 slice");
  add_common(singular, c);
  singular->add_option("--signs", signs, "quadrant such as +,+,+");
  singular->add_option("--extent", sing_extent, "search box half width");
  singular->add_option("--grid", grid, "seeds per axis");
  singular->callback([&] { action = [&] { return fresnel_singular_cmd(c, signs, sing_extent, grid); }; });

  auto* wave = app.add_subcommand("wavekernel", "kernel of the wave operator")->require_subcommand(1);
  auto* report = wave->add_subcommand("report", "kernel dimensions at a covector");
  add_common(report, c);
  report->add_option("--xi", xi, "xi0,xi1,xi2,xi3")->required();
  report->callback([&] { action = [&] { return wavekernel_cmd(c, xi); }; });

  auto* closure = app.add_subcommand("closure", "closure condition")->require_subcommand(1);
  auto* check = closure->add_subcommand("check", "test kappa^2 = -f Id");
  add_common(check, c);
  check->callback([&] { action = [&] { return closure_check_cmd(c); }; });
  auto* recon = closure->add_subcommand("reconstruct", "metric of a closed medium");
  add_common(recon, c);
  recon->callback([&] { action = [&] { return closure_reconstruct_cmd(c); }; });

  std::string f_text = "2";
  int inv_trials = 50;
  std::uint64_t inv_seed = 1;
  auto* inv = app.add_subcommand("invariance", "identities of the Fresnel map")->require_subcommand(1);
  auto* run = inv->add_subcommand("run", "check all identities");
  add_common(run, c, false);
  run->add_option("--f", f_text, "scale and axion parameter");
  run->add_option("--trials", inv_trials, "random media when --medium is absent");
  run->add_option("--seed", inv_seed, "random seed");
  run->callback([&] { action = [&] { return invariance_cmd(c.medium, f_text, inv_trials, inv_seed); }; });

  PolyidArgs pa;
  auto* polyid = app.add_subcommand("polyid", "the adjugate identity as polynomials")->require_subcommand(1);
  auto* verify = polyid->add_subcommand("verify", "verify one component or all");
  add_common(verify, c, false);
  verify->add_option("--component", pa.component, "sorted index such as 0123, or all");
  verify->add_option("--mode", pa.mode, "pit or taylor")->check(CLI::IsMember({"pit", "taylor"}));
  verify->add_option("--k", pa.K, "Taylor slices per variable");
  verify->add_option("--threshold", pa.threshold, "expand directly below this many variables");
  verify->add_option("--seed", pa.seed, "random seed");
  verify->add_option("--budget", pa.budget, "seconds, 0 for none");
  verify->add_option("--jobs", pa.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--mask", pa.mask, "full, 24-var, 12-var, 6-var or none");
  verify->add_option("--trials", pa.trials, "evaluation points");
  verify->add_option("--checkpoint", pa.checkpoint, "resume file");
  verify->callback([&] { action = [&] { return polyid_cmd(pa); }; });

  std::string gens, order = "lex", claim2, lambda = "1";
  double budget = 86400;
  auto* groebner = app.add_subcommand("groebner", "Groebner bases")->require_subcommand(1);
  auto* grun = groebner->add_subcommand("run", "reduced basis of an ideal");
  add_common(grun, c, false);
  auto* gopt = grun->add_option("--gens", gens, "generator file")->check(CLI::ExistingFile);
  grun->add_option("--order", order, "lex or grevlex, optionally :x,y,...");
  auto* copt = grun->add_option("--claim2", claim2, "reduced or full")->check(CLI::IsMember({"reduced", "full"}));
  grun->add_option("--lambda", lambda, "Fresnel scale for --claim2");
  grun->add_option("--budget", budget, "seconds, 0 for none");
  gopt->excludes(copt);
  grun->callback([&] {
    if (gens.empty() && claim2.empty()) throw CLI::RequiredError("--gens or --claim2");
    action = [&] { return claim2.empty() ? groebner_cmd(gens, order, budget) : claim2_cmd(claim2, lambda, budget); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto fail = [](std::string_view code, const std::string& message) {
    std::cout << io::dump(json{{"error", {{"code", code}, {"message", message}}}});
    std::cerr << "premetric: " << message << '\n';
    return 1;
  };
  try {
    const Result r = action();
    emit(r, c.output);
    return r.ok ? 0 : 1;
  } catch (const Error& e) {
    const std::string_view code = to_string(e.code());
    std::string message = e.what();
    if (message.rfind(std::string(code) + ": ", 0) == 0) message.erase(0, code.size() + 2);
    return fail(code, message);
  } catch (const json::exception& e) {
    return fail(to_string(ErrorCode::ParseError), e.what());
  }
}
