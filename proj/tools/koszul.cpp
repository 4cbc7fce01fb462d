// koszul: command-line front end. Every command prints one JSON report (or a
// plain-text rendering of it) on stdout.
//
// Exit codes: 0 success, 2 invalid input or usage, 3 conformance mismatch.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "koszul/io.hpp"
#include "koszul/koszul.hpp"

namespace {

using namespace koszul;
using io::json;

constexpr const char* kSchema = "koszul.report/1";

struct Inputs {
  std::string algebra, product, connection, metric, form, symbol, ideal, catalog;
};

struct Options {
  std::string format = "json";
  bool dump = false;
  bool timing = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t budget = 64;
  Inputs in;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KOSZUL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainViolation("KOSZUL_SEED is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

std::string file_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string digest(const Inputs& in, const std::vector<std::string>& extra) {
  std::uint64_t h = io::fnv1a("");
  auto feed = [&](const char* tag, const std::string& path) {
    if (path.empty()) return;
    h = io::fnv1a(std::string(tag) + "=" + file_text(path) + "\n", h);
  };
  feed("algebra", in.algebra);
  feed("product", in.product);
  feed("connection", in.connection);
  feed("metric", in.metric);
  feed("form", in.form);
  feed("symbol", in.symbol);
  feed("ideal", in.ideal);
  if (!in.catalog.empty()) h = io::fnv1a("catalog=" + in.catalog + "\n", h);
  for (const auto& e : extra) h = io::fnv1a(e + "\n", h);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// Input resolution ---------------------------------------------------------

std::optional<CatalogEntry> catalog_of(const Options& o) {
  if (o.in.catalog.empty()) return std::nullopt;
  return catalog_entry(o.in.catalog);
}

LieAlgebra load_lie(const Options& o) {
  if (!o.in.algebra.empty()) return io::algebra_from_json(io::read_file(o.in.algebra));
  if (!o.in.connection.empty()) return io::connection_from_json(io::read_file(o.in.connection)).base();
  if (auto e = catalog_of(o)) return e->lie;
  throw DomainViolation("an algebra is required: pass --algebra or --catalog");
}

BilinearProduct load_product(const Options& o) {
  if (!o.in.product.empty()) return io::product_from_json(io::read_file(o.in.product));
  if (auto e = catalog_of(o)) {
    if (!e->product) throw DomainViolation("catalog entry '" + e->name + "' has no product");
    return *e->product;
  }
  throw DomainViolation("a product is required: pass --product or --catalog");
}

InvariantConnection load_connection(const Options& o) {
  if (!o.in.connection.empty()) return io::connection_from_json(io::read_file(o.in.connection));
  if (!o.in.product.empty()) {
    auto p = io::product_from_json(io::read_file(o.in.product));
    return InvariantConnection(o.in.algebra.empty() ? commutator_bracket(p) : load_lie(o), p);
  }
  if (auto e = catalog_of(o)) return e->connection();
  throw DomainViolation("a connection is required: pass --connection, --product or --catalog");
}

BilinearForm load_metric(const Options& o, std::size_t m) {
  if (!o.in.metric.empty()) {
    auto g = io::form_from_json(io::read_file(o.in.metric));
    if (g.dim() != m) throw ShapeMismatch("metric dimension differs from the algebra");
    return g;
  }
  if (auto e = catalog_of(o); e && e->metric.dim() == m) return e->metric;
  return BilinearForm::identity(m);
}

std::optional<SymbolSpace> catalog_symbol(const std::string& name) {
  auto dims = [&](const std::string& prefix) -> std::optional<std::pair<std::size_t, std::size_t>> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = name.substr(prefix.size());
    auto x = rest.find('x');
    try {
      if (x == std::string::npos) {
        std::size_t m = std::stoul(rest);
        return std::make_pair(m, m);
      }
      return std::make_pair(std::stoul(rest.substr(0, x)), std::stoul(rest.substr(x + 1)));
    } catch (const std::exception&) {
      throw ParseError("bad symbol size in '" + name + "'");
    }
  };
  if (name == "so3") {
    std::vector<Matrix> maps;
    auto so = catalog::so3();
    for (std::size_t i = 0; i < 3; ++i) maps.push_back(so.lie.ad(i));
    return SymbolSpace::from_maps(3, 3, maps);
  }
  if (auto d = dims("full:")) return SymbolSpace::full(d->first, d->second);
  if (auto d = dims("zero:")) return SymbolSpace::zero(d->first, d->second);
  if (auto d = dims("symbol-of-fe-star:")) return symbol_of_fe_star(d->first);
  return std::nullopt;
}

SymbolSpace load_symbol(const Options& o) {
  if (!o.in.symbol.empty()) return io::symbol_from_json(io::read_file(o.in.symbol));
  if (!o.in.catalog.empty()) {
    if (auto s = catalog_symbol(o.in.catalog)) return *s;
    throw ParseError("unknown symbol '" + o.in.catalog + "' (so3, full:VxW, zero:VxW, symbol-of-fe-star:M)");
  }
  throw DomainViolation("a symbol is required: pass --symbol or --catalog");
}

// Result payloads ----------------------------------------------------------

json verdict_json(const ExistenceVerdict& v) {
  json j{{"exists", to_string(v.exists)}, {"invariant_value", v.invariant_value}};
  if (!v.certificate.empty()) j["certificate"] = v.certificate;
  if (!v.notes.empty()) j["notes"] = v.notes;
  if (v.witness_form) j["witness_form"] = io::to_json(*v.witness_form);
  if (v.witness_endomorphism) j["witness_endomorphism"] = io::to_json(*v.witness_endomorphism);
  if (v.witness_connection) j["witness_connection"] = io::to_json(*v.witness_connection);
  return j;
}

json space_json(const LinearSolutionSpace& s) {
  return json{{"ambient", to_string(s.ambient)}, {"dim", s.dim()}, {"basis", io::basis_json(s.basis)}};
}

json cohomology_json(const CohomologyReport& r) {
  json degrees = json::array();
  for (const auto& d : r.degrees)
    degrees.push_back(json{{"degree", d.degree}, {"cochains", d.cochains}, {"kernel", d.kernel},
                           {"image", d.image}, {"h", d.h}});
  return json{{"complex", r.complex}, {"c0_rule", r.c0_rule}, {"dims", r.dims()}, {"degrees", degrees}};
}

json run_invariants(const Options& o, const std::string& which, bool allow_torsion) {
  if (which == "rb") {
    auto c = load_connection(o);
    auto fe = solve_fe_star(c);
    return json{{"invariant", "rb_defect"}, {"value", r_b_defect(c)}, {"r_b", fe.r_b}, {"dim_W", fe.w.dim()},
                {"locally_flat", is_locally_flat(c).flat}};
  }
  if (which == "sb" || which == "sb+") {
    auto lie = load_lie(o);
    auto r = s_b(lie, load_metric(o, lie.dim()), which == "sb+", o.seed);
    json j = verdict_json(r.verdict);
    j["invariant"] = which == "sb" ? "s_b" : "s_b_plus";
    j["value"] = r.value;
    j["forms_dim"] = r.forms.dim();
    j["rank_method"] = r.witness.method;
    return j;
  }
  if (which == "s*b") {
    auto c = load_connection(o);
    auto r = s_star_b(c, load_metric(o, c.dim()), SStarOptions{!allow_torsion, o.seed});
    json j = verdict_json(r.verdict);
    j["invariant"] = "s_star_b";
    j["value"] = r.value;
    j["parallel_skew_forms_dim"] = r.forms.dim();
    return j;
  }
  if (which == "hessian") {
    auto c = load_connection(o);
    auto r = hessian_defect(c, o.seed);
    json j = verdict_json(r.verdict);
    j["invariant"] = "hessian_defect";
    j["value"] = r.defect;
    j["cocycles"] = space_json(r.cocycles);
    return j;
  }
  if (which == "flat") {
    auto lie = load_lie(o);
    std::vector<InvariantConnection> candidates;
    if (!o.in.connection.empty() || !o.in.product.empty()) candidates.push_back(load_connection(o));
    else if (auto e = catalog_of(o); e && e->product) candidates.push_back(e->connection());
    auto v = flat_existence(lie, candidates, FlatSearchOptions{o.budget, o.seed});
    json j = verdict_json(v);
    j["invariant"] = "flat_existence";
    j["budget"] = o.budget;
    return j;
  }
  if (which == "bimetric") {
    auto v = bi_invariant_metric(load_lie(o), o.seed);
    json j{{"exists", to_string(v.exists)}};
    if (v.certificate == "killing" || v.certificate == "identity") j["witness"] = v.certificate;
    json rest = verdict_json(v);
    rest.erase("exists");
    j.update(rest);
    return j;
  }
  if (which == "symplectic") {
    json j = verdict_json(left_symplectic_oracle(load_lie(o), o.seed));
    j["invariant"] = "left_symplectic";
    return j;
  }
  throw DomainViolation("--which must be rb, sb, sb+, s*b, hessian, flat, bimetric or symplectic");
}

json run_cohomology(const Options& o, const std::string& complex, const std::string& coeffs, std::size_t degree) {
  if (complex == "kv") {
    KvCoefficients c = coeffs == "scalar" ? KvCoefficients::scalar : KvCoefficients::adjoint;
    if (coeffs != "scalar" && coeffs != "adjoint") throw DomainViolation("--coeffs must be adjoint or scalar");
    return cohomology_json(kv_cohomology_dims(load_product(o), c, degree));
  }
  if (complex == "ce") {
    if (coeffs != "trivial" && coeffs != "adjoint") throw DomainViolation("--coeffs must be trivial or adjoint");
    return cohomology_json(ce_cohomology_dims(
        load_lie(o), coeffs == "trivial" ? CeCoefficients::trivial : CeCoefficients::adjoint, degree));
  }
  if (complex == "hochschild") return cohomology_json(hochschild_dims(load_product(o), degree));
  throw DomainViolation("--complex must be kv, ce or hochschild");
}

json run_spencer(const Options& o, const std::string& op, std::size_t trials) {
  auto a = load_symbol(o);
  if (op == "prolong") {
    auto p = prolong(a);
    return json{{"dim", a.dim()}, {"prolongation_dim", p.dim()}, {"order", p.order()},
                {"basis", io::basis_json(p.basis())}};
  }
  if (op == "cartan") {
    auto r = cartan_test(a);
    return json{{"prolongation_dim", r.prolongation_dim}, {"sum_aj", r.sum_aj}, {"aj", r.aj},
                {"quasi_regular", r.quasi_regular}};
  }
  auto cells = [](const SpencerReport& r) {
    json c = json::array();
    for (const auto& cell : r.cells)
      c.push_back(json{{"p", cell.p}, {"q", cell.q}, {"cochains", cell.cochains}, {"h", cell.h}});
    return json{{"prolongation_dims", r.prolongation_dims}, {"d_squared_zero", r.d_squared_zero}, {"cells", c}};
  };
  if (op == "cohomology") return cells(spencer_cohomology(a));
  if (op == "involutive") {
    auto v = is_involutive(a, trials, o.seed);
    json j{{"verdict", to_string(v.verdict)}, {"trials", trials}};
    if (v.quasi_regular_basis) j["quasi_regular_basis"] = io::to_json(*v.quasi_regular_basis);
    if (v.nonvanishing_cell)
      j["nonvanishing"] = json{{"p", v.nonvanishing_cell->first}, {"q", v.nonvanishing_cell->second}};
    j["cohomology"] = cells(v.cohomology);
    return j;
  }
  throw DomainViolation("--op must be prolong, cartan, cohomology or involutive");
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + item + "' in '" + s + "'");
    }
  }
  return out;
}

json doubles(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json run_statmodel(const std::string& family, const std::string& op, const std::string& theta_s, double alpha,
                   double tol, const std::string& grid_s) {
  auto model = stat::family_by_name(family);
  stat::Point theta = parse_doubles(theta_s);
  if (theta.size() != model.n_params)
    throw ShapeMismatch("--theta needs " + std::to_string(model.n_params) + " values for " + family);
  json j{{"family", model.family}, {"theta", doubles(theta)}};
  if (op == "fisher") {
    j["fisher"] = doubles(stat::fisher_information(model, theta));
  } else if (op == "alpha") {
    j["alpha"] = alpha;
    j["christoffels_lowered"] = doubles(stat::alpha_christoffels(model, theta, alpha));
  } else if (op == "curvature") {
    auto r = stat::alpha_curvature(model, theta, alpha);
    j["alpha"] = alpha;
    j["max_abs"] = r.max_abs;
    j["curvature"] = doubles(r.r);
  } else if (op == "defect") {
    std::vector<stat::Point> grid;
    if (!grid_s.empty()) {
      std::stringstream ss(grid_s);
      std::string pt;
      while (std::getline(ss, pt, ';')) grid.push_back(parse_doubles(pt));
    } else {
      grid.push_back(theta);
      for (std::size_t i = 0; i < theta.size(); ++i)
        for (double s : {-0.05, 0.05}) {
          auto p = theta;
          p[i] += s;
          grid.push_back(p);
        }
    }
    auto d = stat::exponential_defect_probe(model, grid, tol);
    j["grid_points"] = grid.size();
    j["tol"] = tol;
    j["exponential_like"] = d.exponential_like;
    j["max_curvature_minus1"] = d.max_curvature_minus;
    j["max_curvature_plus1"] = d.max_curvature_plus;
    j["max_torsion"] = d.max_torsion;
    j["best_alpha"] = d.best_alpha;
  } else {
    throw DomainViolation("--op must be fisher, alpha, curvature or defect");
  }
  return j;
}

json run_gauge(const Options& o, const std::string& op) {
  auto c = load_connection(o);
  if (op == "gauge") {
    auto g = load_metric(o, c.dim());
    auto sol = solve_gauge_equation(c, amari_dual(c, g));
    auto sym = parallel_forms(c, Symmetry::symmetric), skew = parallel_forms(c, Symmetry::skew);
    json j = space_json(sol);
    j["parallel_symmetric_dim"] = sym.dim();
    j["parallel_skew_dim"] = skew.dim();
    return j;
  }
  if (op == "fe-star") {
    auto fe = solve_fe_star(c);
    json j = space_json(fe.w);
    j["r_b"] = fe.r_b;
    j["shrink_steps"] = fe.shrink_steps;
    return j;
  }
  if (op == "g-nabla") {
    auto g = g_nabla_subalgebra(c);
    json j = space_json(g.space);
    j["is_subalgebra"] = g.is_subalgebra;
    j["product_is_kv"] = g.product_is_kv;
    return j;
  }
  if (op == "flatness") {
    auto f = is_locally_flat(c);
    json j{{"flat", f.flat}};
    if (!f.flat) j["failing_tensor"] = f.failing_tensor, j["index"] = f.index;
    return j;
  }
  throw DomainViolation("--op must be gauge, fe-star, g-nabla or flatness");
}

json run_check_lie(const Options& o) {
  auto lie = load_lie(o);
  auto k = killing_form(lie);
  return json{{"lie", true}, {"dim", lie.dim()}, {"abelian", lie.is_abelian()},
              {"killing_rank", k.rank()}, {"killing", io::to_json(k.matrix())}};
}

json dump_inputs(const Options& o) {
  json j = json::object();
  if (!o.in.algebra.empty()) j["algebra"] = io::to_json(io::algebra_from_json(io::read_file(o.in.algebra)));
  if (!o.in.product.empty()) j["product"] = io::to_json(io::product_from_json(io::read_file(o.in.product)));
  if (!o.in.connection.empty())
    j["connection"] = io::to_json(io::connection_from_json(io::read_file(o.in.connection)));
  if (!o.in.metric.empty()) j["metric"] = io::to_json(io::form_from_json(io::read_file(o.in.metric)));
  if (!o.in.form.empty()) j["form"] = io::to_json(io::form_from_json(io::read_file(o.in.form)));
  if (!o.in.symbol.empty()) j["symbol"] = io::to_json(io::symbol_from_json(io::read_file(o.in.symbol)));
  if (!o.in.ideal.empty()) j["ideal"] = json{{"basis", io::basis_json(io::ideal_from_json(io::read_file(o.in.ideal)))}};
  if (!o.in.catalog.empty()) {
    if (auto s = catalog_symbol(o.in.catalog)) {
      j["symbol"] = io::to_json(*s);
    } else {
      auto e = catalog_entry(o.in.catalog);
      j["algebra"] = io::to_json(e.lie);
      if (e.product) j["product"] = io::to_json(*e.product);
      j["metric"] = io::to_json(e.metric);
    }
  }
  return j;
}

void render_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const json& j, const Options& o) {
  if (o.format == "text")
    render_text(j, "", std::cout);
  else
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Koszul connections, gauge equations and their invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--dump", o.dump, "print the parsed inputs in canonical form and exit");
  app.add_flag("--timing", o.timing, "add wall-clock time to the report");
  app.add_option("--seed", seed_flag, "seed for randomized searches (default $KOSZUL_SEED or 24301)");
  app.add_option("--budget", o.budget, "random connections tried by flat searches");
  app.add_option("--algebra", o.in.algebra, "Lie algebra JSON file");
  app.add_option("--product", o.in.product, "bilinear product JSON file");
  app.add_option("--connection", o.in.connection, "connection JSON file");
  app.add_option("--metric", o.in.metric, "metric form JSON file");
  app.add_option("--form", o.in.form, "bilinear form JSON file");
  app.add_option("--catalog", o.in.catalog, "built-in example name");

  std::string which;
  bool allow_torsion = false;
  auto* inv = app.add_subcommand("invariants", "numerical invariants and existence verdicts");
  inv->add_option("--which", which, "rb|sb|sb+|s*b|hessian|flat|bimetric|symplectic")->required();
  inv->add_flag("--allow-torsion", allow_torsion, "evaluate s*b without the torsion-free requirement");

  std::string complex = "kv", coeffs = "adjoint";
  std::size_t max_degree = 3;
  auto* kv = app.add_subcommand("kv-cohomology", "KV, Chevalley-Eilenberg and Hochschild cohomology");
  kv->add_option("--complex", complex, "kv|ce|hochschild")->check(CLI::IsMember({"kv", "ce", "hochschild"}));
  kv->add_option("--coeffs", coeffs, "adjoint|scalar (kv), trivial|adjoint (ce)");
  kv->add_option("--max-degree", max_degree, "highest degree");

  std::string spencer_op;
  std::size_t trials = 64;
  auto* sp = app.add_subcommand("spencer", "prolongation, Cartan test, Spencer cohomology");
  sp->add_option("--symbol", o.in.symbol, "symbol JSON file");
  sp->add_option("--op", spencer_op, "prolong|cartan|cohomology|involutive")->required();
  sp->add_option("--trials", trials, "quasi-regular basis trials");

  auto* fm = app.add_subcommand("flat-models", "affine tower, completeness, right ideals");
  fm->require_subcommand(1);
  std::size_t tower_m = 1, steps = 1;
  auto* tower = fm->add_subcommand("tower", "dimensions of the structural tower");
  tower->add_option("--m", tower_m, "model dimension");
  tower->add_option("--steps", steps, "number of levels (<= 3)");
  auto* compl_cmd = fm->add_subcommand("completeness", "geometric completeness of an associative algebra");
  auto* ideal = fm->add_subcommand("ideal", "simple right ideal check");
  ideal->add_option("--ideal", o.in.ideal, "ideal basis JSON file")->required();

  std::string family, stat_op, theta, grid;
  double alpha = 0, tol = 1e-4;
  auto* st = app.add_subcommand("statmodel", "information geometry of finite models");
  st->add_option("--family", family, "bernoulli|categorical:N|categorical-logit:N|curved4")->required();
  st->add_option("--op", stat_op, "fisher|alpha|curvature|defect")->required();
  st->add_option("--theta", theta, "comma-separated parameters")->required();
  st->add_option("--alpha", alpha, "alpha");
  st->add_option("--tol", tol, "flatness tolerance for --op defect");
  st->add_option("--grid", grid, "semicolon-separated grid points for --op defect");

  auto* chk = app.add_subcommand("check-lie", "validate a Lie algebra");

  std::string gauge_op = "gauge";
  auto* gauge = app.add_subcommand("gauge", "gauge equation, FE*, G_nabla, flatness");
  gauge->add_option("--op", gauge_op, "gauge|fe-star|g-nabla|flatness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::vector<std::string> command{"koszul"};
  for (int i = 1; i < argc; ++i) command.emplace_back(argv[i]);

  try {
    o.seed = seed_flag ? *seed_flag : default_seed();
    auto start = std::chrono::steady_clock::now();
    json result;
    if (o.dump) {
      emit(dump_inputs(o), o);
      return 0;
    }
    if (inv->parsed()) result = run_invariants(o, which, allow_torsion);
    else if (kv->parsed()) result = run_cohomology(o, complex, coeffs, max_degree);
    else if (sp->parsed()) result = run_spencer(o, spencer_op, trials);
    else if (tower->parsed()) {
      auto t = tower_dims(tower_m, steps);
      json assoc = json::array();
      for (const auto& l : t.levels)
        assoc.push_back(l.algebra ? json(l.algebra->is_associative()) : json(nullptr));
      result = json{{"dims", t.dims}, {"associative", assoc}};
    } else if (compl_cmd->parsed()) {
      auto v = geometric_completeness(load_product(o), 256, o.seed);
      result = json{{"verdict", to_string(v.verdict)}, {"method", v.method}, {"certificate", v.certificate}};
      if (v.witness) result["witness"] = io::to_json(*v.witness);
    } else if (ideal->parsed()) {
      auto r = simple_right_ideal_check(load_product(o), io::ideal_from_json(io::read_file(o.in.ideal)));
      result = json{{"right_ideal", true}, {"simple", r.simple}, {"effective_pair", r.effective_pair},
                    {"two_sided_core", io::basis_json(r.core)}};
    } else if (st->parsed()) result = run_statmodel(family, stat_op, theta, alpha, tol, grid);
    else if (chk->parsed()) result = run_check_lie(o);
    else if (gauge->parsed()) result = run_gauge(o, gauge_op);

    json report{{"schema", kSchema}, {"command", command}, {"seed", o.seed},
                {"inputs_digest", digest(o.in, {family, theta, grid})}, {"result", result}};
    if (o.timing)
      report["timing_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(report, o);
    return 0;
  } catch (const Error& e) {
    json err{{"schema", kSchema}, {"command", command}, {"error", e.kind()}, {"message", e.what()}};
    if (auto* jv = dynamic_cast<const JacobiViolation*>(&e)) err["triple"] = jv->triple();
    if (auto* ri = dynamic_cast<const NotRightIdeal*>(&e))
      err["witness"] = json{{"ideal_index", ri->ideal_index()}, {"algebra_index", ri->algebra_index()}};
    emit(err, o);
    std::cerr << "koszul: " << e.kind() << ": " << e.what() << "\n";
    return e.kind() == "ConformanceMismatch" ? 3 : 2;
  }
}
