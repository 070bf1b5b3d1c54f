#include "plc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace plc {

namespace {

constexpr const char* kVersion = "plcheck 0.1.0";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t check_stream(const std::string& check_id, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : check_id) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  return splitmix64(seed ^ h);
}

std::string now_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct SampleOutcome {
  bool ok = false;
  std::vector<double> values;
  std::string error;
};

using SampleFn = std::function<std::vector<double>(int)>;

std::vector<SampleOutcome> run_samples(int count, int threads, const SampleFn& fn) {
  std::vector<SampleOutcome> out(static_cast<size_t>(count));
  auto work = [&](int idx) {
    SampleOutcome& o = out[static_cast<size_t>(idx)];
    try {
      o.values = fn(idx);
      o.ok = true;
    } catch (const Error& e) {
      o.error = std::string(e.tag()) + ": " + e.what();
    } catch (const std::exception& e) {
      o.error = std::string("error: ") + e.what();
    }
  };
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    auto loop = [&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
    };
    std::vector<std::thread> pool;
    int workers = std::min(threads, count);
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (std::thread& th : pool) th.join();
  }
  return out;
}

ResidualStats aggregate(std::vector<double> v) {
  ResidualStats s;
  s.count = static_cast<int>(v.size());
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  s.median = v[v.size() / 2];
  return s;
}

double triple_scale(double a, double b, double c) {
  return (1.0 + a) * (1.0 + b) * (1.0 + c);
}

CartanForm effective_u(const RunConfig& cfg) {
  if (cfg.u.rank() == cfg.n - 1) return cfg.u;
  if (cfg.u.rank() == 0 || cfg.u.is_zero()) return CartanForm::zero(cfg.n - 1);
  throw ConfigInvalid("RunConfig: Cartan form rank does not match n-1");
}

struct BlockSpec {
  std::string name;
  double default_tol;
  bool lower_bound = false;
};

double effective_tol(const RunConfig& cfg, const std::string& check, const BlockSpec& spec) {
  auto it = cfg.tolerance_overrides.find(check + "." + spec.name);
  return it == cfg.tolerance_overrides.end() ? spec.default_tol : it->second;
}

CheckReport finish_report(const std::string& check_id, const RunConfig& cfg,
                          const std::vector<BlockSpec>& specs,
                          const std::vector<SampleOutcome>& outcomes) {
  CheckReport rep;
  rep.check_id = check_id;
  rep.version = kVersion;
  rep.timestamp = now_utc();

  std::vector<std::vector<double>> per_block(specs.size());
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const SampleOutcome& o = outcomes[i];
    if (!o.ok) {
      rep.sample_errors.push_back(std::to_string(i) + ": " + o.error);
      continue;
    }
    for (size_t b = 0; b < specs.size() && b < o.values.size(); ++b)
      per_block[b].push_back(o.values[b]);
  }
  rep.pass = rep.sample_errors.empty();
  for (size_t b = 0; b < specs.size(); ++b) {
    StatBlock block;
    block.name = specs[b].name;
    block.stats = aggregate(std::move(per_block[b]));
    block.tolerance = effective_tol(cfg, check_id, specs[b]);
    block.lower_bound = specs[b].lower_bound;
    block.pass = block.stats.count > 0 && (block.lower_bound ? block.stats.min >= block.tolerance
                                                            : block.stats.max <= block.tolerance);
    rep.pass = rep.pass && block.pass;
    rep.blocks.push_back(std::move(block));
  }

  Json echo;
  echo["n"] = cfg.n;
  echo["family"] = cfg.family == Family::generic ? "generic" : "special";
  echo["t"] = cfg.t;
  echo["u"] = cartan_form_to_json(effective_u(cfg));
  echo["seed"] = cfg.seed;
  echo["samples"] = cfg.samples;
  echo["threads"] = cfg.threads;
  echo["fd"] = Json{{"spatial", cfg.fd.spatial}, {"t_step", cfg.fd.t_step}};
  Json tols = Json::object();
  for (const StatBlock& b : rep.blocks) tols[b.name] = b.tolerance;
  echo["tolerances"] = tols;
  rep.config_echo = echo;
  return rep;
}

SpecialChart random_special_chart(int n, std::uint64_t seed) {
  std::mt19937_64 gen(splitmix64(seed ^ 0x5ca1ab1edeadbeefull));
  std::normal_distribution<double> dist(0.0, 1.0);
  SpecialChart c;
  c.h_coords = RVec(n);
  for (int k = 0; k < n; ++k) c.h_coords(k) = dist(gen);
  c.h_coords.array() -= c.h_coords.mean();
  c.upper = CMat::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int col = r + 1; col < n; ++col) c.upper(r, col) = Complex(dist(gen), dist(gen));
  double nrm = c.body().norm();
  if (nrm > 2.0) {
    c.h_coords *= 2.0 / nrm;
    c.upper *= 2.0 / nrm;
  }
  return c;
}

// ---- individual checks ----

CheckReport check_lemma1(const RunConfig& cfg) {
  PoissonParams params = PoissonParams::generic(cfg.t, effective_u(cfg));
  std::uint64_t stream = check_stream("lemma1", cfg.seed);
  std::vector<BlockSpec> specs{{"factorization_equivariance", 1e-10},
                               {"intertwine", 1e-10}};
  auto outcomes = run_samples(cfg.samples, cfg.threads, [&](int idx) {
    std::uint64_t s = stream + 3ull * static_cast<std::uint64_t>(idx);
    CoalgebraVector a(random_su_algebra(cfg.n, s));
    CMat g = random_su_element(cfg.n, s + 1);
    DualGroupElement ea = e_map(a, params);
    DressResult dr = dress(g, ea);
    CMat j = j_map(a, params.t);
    double r1 = (f_map(dr.dressed) - g * j * g.adjoint()).norm() / (1.0 + j.norm());
    DualGroupElement eg = e_map(coadjoint_act(g, a), params);
    double r2 = (eg.embedding() - dr.dressed.embedding()).norm() /
                (1.0 + ea.embedding().norm());
    return std::vector<double>{r1, r2};
  });
  return finish_report("lemma1", cfg, specs, outcomes);
}

CheckReport check_lemma2(const RunConfig& cfg) {
  PoissonParams params = PoissonParams::generic(cfg.t, effective_u(cfg));
  std::uint64_t stream = check_stream("lemma2", cfg.seed);
  std::vector<BlockSpec> specs{{"closedness", 1e-5}, {"contraction", 1e-6}};
  Form2 form = [&](const CoalgebraVector& base, const CoalgebraVector& x,
                   const CoalgebraVector& y) { return omega_eval(base, x, y, params, cfg.fd); };
  auto outcomes = run_samples(cfg.samples, cfg.threads, [&](int idx) {
    std::uint64_t s = stream + 8ull * static_cast<std::uint64_t>(idx);
    CoalgebraVector a(random_su_algebra(cfg.n, s));
    CoalgebraVector x(random_su_algebra(cfg.n, s + 1));
    CoalgebraVector y(random_su_algebra(cfg.n, s + 2));
    CoalgebraVector z(random_su_algebra(cfg.n, s + 3));
    CMat eps = random_su_algebra(cfg.n, s + 4);
    double closed = ext_deriv_residual(form, a, x, y, z, 1.25e-4) / (1.0 + a.norm());
    double contr = contraction_residual(a, eps, x, params, cfg.fd) /
                   triple_scale(a.norm(), x.norm(), eps.norm());
    return std::vector<double>{closed, contr};
  });
  return finish_report("lemma2", cfg, specs, outcomes);
}

CheckReport check_lemma3(const RunConfig& cfg) {
  CartanForm w = effective_u(cfg);
  std::uint64_t stream = check_stream("lemma3", cfg.seed);
  std::vector<BlockSpec> specs{{"closedness", 1e-12}, {"contraction", 1e-12}};
  auto outcomes = run_samples(cfg.samples, cfg.threads, [&](int idx) {
    std::uint64_t s = stream + 8ull * static_cast<std::uint64_t>(idx);
    SpecialChart a = random_special_chart(cfg.n, s);
    SpecialChart x = random_special_chart(cfg.n, s + 1);
    SpecialChart y = random_special_chart(cfg.n, s + 2);
    SpecialChart z = random_special_chart(cfg.n, s + 3);
    CMat eps = random_su_algebra(cfg.n, s + 4);
    // d Omega_w by the same trilinear difference quotient used for the
    // generic family; the coefficients are constant, so this is exact.
    const double h = 1e-3;
    auto shifted = [&](const SpecialChart& base, const SpecialChart& dir, double sgn) {
      SpecialChart out;
      out.h_coords = base.h_coords + sgn * h * dir.h_coords;
      out.upper = base.upper + sgn * h * dir.upper;
      return out;
    };
    auto deriv = [&](const SpecialChart& dir, const SpecialChart& p, const SpecialChart& q) {
      return (omega_w_eval(shifted(a, dir, 1.0), p, q, w) -
              omega_w_eval(shifted(a, dir, -1.0), p, q, w)) /
             (2.0 * h);
    };
    double closed = std::abs(deriv(x, y, z) - deriv(y, x, z) + deriv(z, x, y));
    double contr = contraction_residual_special(a, eps, x, w);
    return std::vector<double>{closed, contr};
  });
  return finish_report("lemma3", cfg, specs, outcomes);
}

CheckReport check_theorem1_moment(const RunConfig& cfg) {
  PoissonParams params = PoissonParams::generic(cfg.t, effective_u(cfg));
  std::uint64_t stream = check_stream("theorem1_moment", cfg.seed);
  std::vector<BlockSpec> specs{{"moment_condition", 1e-5}};
  auto outcomes = run_samples(cfg.samples, cfg.threads, [&](int idx) {
    std::uint64_t s = stream + 4ull * static_cast<std::uint64_t>(idx);
    CoalgebraVector a(random_su_algebra(cfg.n, s));
    CMat eps = random_su_algebra(cfg.n, s + 1);
    CMat eta = random_su_algebra(cfg.n, s + 2);
    OrbitPoint x = make_orbit_point(OrbitKind::dressing, a, params);
    double res = moment_residual_poisson(x, eps, eta, params, cfg.fd) /
                 triple_scale(a.norm(), eps.norm(), eta.norm());
    return std::vector<double>{res};
  });
  return finish_report("theorem1_moment", cfg, specs, outcomes);
}

CheckReport check_theorem1_nondegeneracy(const RunConfig& cfg) {
  PoissonParams params = PoissonParams::generic(cfg.t, effective_u(cfg));
  std::uint64_t stream = check_stream("theorem1_nondegeneracy", cfg.seed);
  std::vector<BlockSpec> specs{{"rank_defect", 0.5},
                               {"smallest_retained_sv", 1e-6, true}};
  int count = std::min(cfg.samples, 25);  // SVD suite; 25 regular points suffice
  auto outcomes = run_samples(count, cfg.threads, [&](int idx) {
    std::uint64_t s = stream + 2ull * static_cast<std::uint64_t>(idx);
    CoalgebraVector a = random_regular_point(cfg.n, s);
    OrbitPoint x = make_orbit_point(OrbitKind::dressing, a, params);
    RVec sv = form_singular_values(form_matrix(x, params, false, cfg.fd));
    int dim = orbit_dimension(a);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) >= 1e-6) ++rank;
    double smallest = dim >= 1 && dim <= sv.size() ? sv(dim - 1) : 0.0;
    return std::vector<double>{std::abs(static_cast<double>(rank - dim)), smallest};
  });
  return finish_report("theorem1_nondegeneracy", cfg, specs, outcomes);
}

CheckReport check_theorem1_invariance(const RunConfig& cfg) {
  std::uint64_t stream = check_stream("theorem1_invariance", cfg.seed);
  std::vector<BlockSpec> specs{{"kks_invariance", 1e-6}};
  auto outcomes = run_samples(cfg.group_elements, cfg.threads, [&](int idx) {
    std::uint64_t s = stream + 4ull * static_cast<std::uint64_t>(idx);
    CoalgebraVector a(random_su_algebra(cfg.n, s));
    CMat g = random_su_element(cfg.n, s + 1);
    CMat xi = random_su_algebra(cfg.n, s + 2);
    CMat eta = random_su_algebra(cfg.n, s + 3);
    double before = kks_eval(a, xi, eta);
    double after =
        kks_eval(coadjoint_act(g, a), g * xi * g.adjoint(), g * eta * g.adjoint());
    double res = std::abs(after - before) / triple_scale(a.norm(), xi.norm(), eta.norm());
    return std::vector<double>{res};
  });
  return finish_report("theorem1_invariance", cfg, specs, outcomes);
}

CheckReport check_convexity(const RunConfig& cfg) {
  PoissonParams params = PoissonParams::generic(cfg.t, effective_u(cfg));
  std::uint64_t stream = check_stream("convexity", cfg.seed);
  std::vector<BlockSpec> specs{{"dominant_spread", 1e-8}};
  CoalgebraVector base = random_regular_point(cfg.n, stream);
  RVec reference = dominant_project(base);
  auto outcomes = run_samples(cfg.orbit_count, cfg.threads, [&](int idx) {
    CMat g = idx == 0 ? CMat::Identity(cfg.n, cfg.n)
                      : random_su_element(cfg.n, splitmix64(stream) +
                                                     static_cast<std::uint64_t>(idx));
    OrbitPoint p = make_orbit_point(OrbitKind::dressing, coadjoint_act(g, base), params);
    double res = (dominant_project(p.coadjoint_rep) - reference).cwiseAbs().maxCoeff();
    return std::vector<double>{res};
  });
  return finish_report("convexity", cfg, specs, outcomes);
}

CheckReport check_gw_flow(const RunConfig& cfg) {
  std::uint64_t stream = check_stream("gw_flow", cfg.seed);
  std::vector<BlockSpec> specs{{"symplecto_max", 1e-3},
                               {"reversibility", 1e-6},
                               {"dual_route", 1e-5},
                               {"orbit_drift", 1e-6}};
  FlowConfig fc;
  fc.t_start = 0.5;
  fc.t_end = 0.1;
  fc.steps = cfg.flow_steps;
  fc.u = effective_u(cfg);
  fc.fd = cfg.fd;
  fc.halving_check = false;

  std::vector<SampleOutcome> outcomes(1);
  try {
    CoalgebraVector base = random_regular_point(cfg.n, stream);
    SymplectoReport sym = symplecto_residual(base, fc, cfg.flow_pairs, stream + 17);

    FlowConfig back = fc;
    std::swap(back.t_start, back.t_end);
    CoalgebraVector fwd = flow_endpoint(base, fc);
    CoalgebraVector ret = flow_endpoint(fwd, back);
    double rev = (ret.alpha() - base.alpha()).norm() / (1.0 + base.norm());

    PoissonParams mid = PoissonParams::generic(0.5 * (fc.t_start + fc.t_end), fc.u);
    double dual = 0.0;
    for (int k = 0; k < 3; ++k) {
      CoalgebraVector p =
          k == 0 ? base
                 : CoalgebraVector(random_su_algebra(cfg.n, stream + 23 +
                                                              static_cast<std::uint64_t>(k)));
      CoalgebraVector v1 = v_field(p, mid, cfg.fd, fc.quad_order);
      CoalgebraVector v2 = v_field_bivector_route(p, mid, cfg.fd);
      dual = std::max(dual, (v1.alpha() - v2.alpha()).norm() / (1.0 + p.norm()));
    }

    FlowConfig traced = fc;
    traced.halving_check = false;
    FlowResult res = integrate_flow({base}, traced);
    RVec dp0 = dominant_project(base);
    double drift = 0.0;
    for (const CoalgebraVector& p : res.trajectories.front().points)
      drift = std::max(drift, (dominant_project(p) - dp0).cwiseAbs().maxCoeff());

    outcomes[0].ok = true;
    outcomes[0].values = {sym.max_relative_residual, rev, dual, drift};
  } catch (const Error& e) {
    outcomes[0].error = std::string(e.tag()) + ": " + e.what();
  }
  return finish_report("gw_flow", cfg, specs, outcomes);
}

}  // namespace

void RunConfig::validate() const {
  if (n < 2 || n > 8) throw ConfigInvalid("RunConfig: n must lie in [2, 8]");
  if (samples < 1 || threads < 1 || group_elements < 1 || orbit_count < 1)
    throw ConfigInvalid("RunConfig: counts must be positive");
  if (family == Family::generic && std::abs(t) < tol::t_min)
    throw ParamOutOfRange("RunConfig: |t| below the exclusion threshold");
  effective_u(*this);  // throws on rank mismatch
}

std::vector<std::string> check_ids(Family family, int n) {
  if (family == Family::special) return {"lemma3"};
  std::vector<std::string> ids{"lemma1",          "lemma2",
                               "theorem1_moment", "theorem1_nondegeneracy",
                               "theorem1_invariance", "convexity"};
  if (n == 2) ids.push_back("gw_flow");
  return ids;
}

CheckReport run_check(const std::string& check_id, const RunConfig& config) {
  config.validate();
  if ((check_id == "lemma3") != (config.family == Family::special))
    throw ConfigInvalid("run_check: check id does not match the configured family");
  if (check_id == "lemma1") return check_lemma1(config);
  if (check_id == "lemma2") return check_lemma2(config);
  if (check_id == "lemma3") return check_lemma3(config);
  if (check_id == "theorem1_moment") return check_theorem1_moment(config);
  if (check_id == "theorem1_nondegeneracy") return check_theorem1_nondegeneracy(config);
  if (check_id == "theorem1_invariance") return check_theorem1_invariance(config);
  if (check_id == "convexity") return check_convexity(config);
  if (check_id == "gw_flow") return check_gw_flow(config);
  throw ConfigInvalid("unknown check id: " + check_id);
}

CartanForm random_cartan_form(int rank, std::uint64_t seed) {
  std::mt19937_64 gen(splitmix64(seed ^ 0xfeedfacecafef00dull));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RMat m(rank, rank);
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < rank; ++c) m(r, c) = dist(gen);
  return CartanForm(0.5 * (m - m.transpose()));
}

CoalgebraVector random_regular_point(int n, std::uint64_t seed, double gap) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    CoalgebraVector a(random_su_algebra(n, seed + 1000ull * static_cast<std::uint64_t>(attempt)));
    RVec ev = dominant_project(a);
    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i + 1 < ev.size(); ++i)
      min_gap = std::min(min_gap, ev(i) - ev(i + 1));
    if (min_gap >= gap) return a;
  }
  throw DegenerateRepresentation("random_regular_point: no regular sample found");
}

RunAllResult run_all(const GridConfig& config) {
  RunAllResult result;
  auto run_cfg = [&](int n, Family family, double t, const CartanForm& u) {
    RunConfig rc;
    rc.n = n;
    rc.family = family;
    rc.t = t;
    rc.u = u;
    rc.seed = config.seed;
    rc.samples = config.samples;
    rc.threads = config.threads;
    rc.flow_steps = config.flow_steps;
    rc.flow_pairs = config.flow_pairs;
    rc.tolerance_overrides = config.tolerance_overrides;
    return rc;
  };

  for (int n : config.ns) {
    std::vector<CartanForm> forms{CartanForm::zero(n - 1)};
    if (config.include_random_u)
      forms.push_back(random_cartan_form(n - 1, config.seed ^ static_cast<std::uint64_t>(n)));
    for (const CartanForm& u : forms) {
      bool first_t = true;
      for (double t : config.ts) {
        for (const std::string& id : check_ids(Family::generic, n)) {
          if (id == "gw_flow" && !first_t) continue;  // flow has its own t-interval
          result.reports.push_back(run_check(id, run_cfg(n, Family::generic, t, u)));
        }
        first_t = false;
      }
      if (config.include_special)
        result.reports.push_back(run_check("lemma3", run_cfg(n, Family::special, 0.0, u)));
    }
  }

  result.summary.total = static_cast<int>(result.reports.size());
  for (const CheckReport& r : result.reports)
    if (r.pass) ++result.summary.passed;
  result.summary.all_pass = result.summary.passed == result.summary.total;
  return result;
}

Json report_to_json(const CheckReport& report, bool include_timestamp) {
  Json j;
  j["check_id"] = report.check_id;
  j["config"] = report.config_echo;
  Json blocks = Json::array();
  for (const StatBlock& b : report.blocks) {
    Json jb;
    jb["name"] = b.name;
    jb["min"] = b.stats.min;
    jb["median"] = b.stats.median;
    jb["max"] = b.stats.max;
    jb["count"] = b.stats.count;
    jb["tolerance"] = b.tolerance;
    jb["lower_bound"] = b.lower_bound;
    jb["pass"] = b.pass;
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  j["sample_errors"] = report.sample_errors;
  j["pass"] = report.pass;
  j["version"] = report.version;
  if (include_timestamp) j["timestamp"] = report.timestamp;
  return j;
}

Json run_all_to_json(const RunAllResult& result, bool include_timestamp) {
  Json j;
  Json reports = Json::array();
  for (const CheckReport& r : result.reports)
    reports.push_back(report_to_json(r, include_timestamp));
  j["reports"] = reports;
  j["summary"] = Json{{"total", result.summary.total},
                      {"passed", result.summary.passed},
                      {"all_pass", result.summary.all_pass}};
  return j;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "check_id,n,family,t,block,min,median,max,count,tolerance,lower_bound,pass,errors\n";
  out.precision(17);
  for (const CheckReport& r : reports) {
    const Json& cfg = r.config_echo;
    for (const StatBlock& b : r.blocks) {
      out << r.check_id << ',' << cfg.at("n").get<int>() << ','
          << cfg.at("family").get<std::string>() << ',' << cfg.at("t").get<double>() << ','
          << b.name << ',' << b.stats.min << ',' << b.stats.median << ',' << b.stats.max << ','
          << b.stats.count << ',' << b.tolerance << ',' << (b.lower_bound ? 1 : 0) << ','
          << (b.pass ? 1 : 0) << ',' << r.sample_errors.size() << '\n';
    }
  }
  return out.str();
}

}  // namespace plc
