#include "fiberorder/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "fiberorder/error.hpp"
#include "fiberorder/factorization.hpp"
#include "fiberorder/fiber_models.hpp"
#include "fiberorder/flow.hpp"
#include "fiberorder/json_io.hpp"
#include "fiberorder/lifting.hpp"

namespace fiberorder::cli {

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string input = "-";
  std::string format = "json";
  std::size_t jobs = 1;
  // compare
  std::string space;
  int k = -1;
  int m = 0;
  // fiber
  std::string family;
  std::string params = "{}";
  std::string base;
  std::string emit;
  std::size_t cap = kDefaultFactorCap;
};

/// Rendered result of one instance: either JSON or preformatted text.
struct Output {
  Json json;
  std::string text;
  bool is_text = false;
};

Json error_json(const std::exception& e) {
  Json out;
  if (const auto* inf = dynamic_cast<const InfeasibleError*>(&e)) {
    out["error"] = std::string(error_name(inf->kind()));
    out["violated"] = subset_elements(inf->violated());
    return out;
  }
  if (const auto* fe = dynamic_cast<const Error*>(&e)) {
    out["error"] = std::string(error_name(fe->kind()));
  } else if (dynamic_cast<const Json::exception*>(&e) != nullptr) {
    out["error"] = "invalid_input";
  } else {
    out["error"] = "internal";
  }
  out["message"] = e.what();
  return out;
}

int exit_code_for(const std::exception& e) {
  if (const auto* fe = dynamic_cast<const Error*>(&e)) {
    return is_input_error(fe->kind()) ? kExitInput : kExitDomain;
  }
  if (dynamic_cast<const Json::exception*>(&e) != nullptr) return kExitInput;
  return kExitDomain;
}

void ensure(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InternalContradiction, "result failed revalidation: " + what);
}

void ensure_empty(const std::string& problem) { ensure(problem.empty(), problem); }

// ---- factor ----------------------------------------------------------------

Output run_factor(const Json& in, const Options& opt) {
  const FinitePoset p = poset_from_json(in);
  const auto f = irreducible_factorization(p, opt.cap);
  ensure_empty(validate_factorization(p, f));
  Output out;
  if (opt.format == "dot") {
    out.is_text = true;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      out.text += poset_to_dot(f.factors[i], "factor" + std::to_string(i + 1));
    }
    return out;
  }
  Json factors = Json::array();
  for (const auto& q : f.factors) factors.push_back(poset_to_json(q));
  const FinitePoset prod = product(f.factors);
  Json witness = Json::object();
  for (std::size_t i = 0; i < prod.size(); ++i) witness[prod.label(i)] = p.label(f.witness[i]);
  out.json["irreducible_factors"] = std::move(factors);
  out.json["witness"] = std::move(witness);
  return out;
}

// ---- compare ---------------------------------------------------------------

void check_grid(const std::vector<Rational>& v, int m) {
  if (m <= 0) return;
  for (const auto& x : v) {
    if (!x.has_denominator_dividing(m)) {
      throw Error(ErrorKind::InvalidPoint, x.str() + " is not a multiple of 1/" + std::to_string(m));
    }
  }
}

Output run_compare(const Json& in, const Options& opt) {
  if (!in.is_array() || in.size() != 2) {
    throw Error(ErrorKind::InvalidInput, "compare expects an array of two points");
  }
  const auto a = rationals_from_json(in[0]);
  const auto b = rationals_from_json(in[1]);
  check_grid(a, opt.m);
  check_grid(b, opt.m);
  Output out;
  Verdict verdict;
  if (opt.space == "ok") {
    OkPoint t{a}, s{b};
    if (t.values.size() != static_cast<std::size_t>(opt.k) || s.values.size() != t.values.size()) {
      throw Error(ErrorKind::DimensionMismatch, "O_k points need k coordinates");
    }
    validate_ok_point(t);
    validate_ok_point(s);
    verdict = ok_compare(t, s);
  } else {
    const std::size_t d = opt.k >= 0 && opt.k <= 20 ? std::size_t{1} << opt.k : 0;
    if (a.size() != d || b.size() != d) {
      throw Error(ErrorKind::DimensionMismatch, "P_k points need 2^k masses");
    }
    const PkPoint t = make_pk_point(opt.k, a);
    const PkPoint s = make_pk_point(opt.k, b);
    verdict = pk_compare_flow(t, s);
    if (opt.k <= kMaxUpsetK) {
      const Verdict by_upsets = pk_compare(t, s);
      ensure(by_upsets == verdict, "upset and flow comparators disagree");
    }
    if (auto gamma = pk_coupling(t, s)) {
      ensure(validate_coupling(t, s, *gamma), "coupling marginals");
      Json coupling = Json::array();
      for (const auto& g : *gamma) {
        coupling.push_back({{"from", subset_to_json(g.from)}, {"to", subset_to_json(g.to)},
                            {"mass", g.mass.str()}});
      }
      out.json["coupling"] = std::move(coupling);
    }
  }
  if (opt.format == "text") {
    out.is_text = true;
    out.text = std::string(verdict_name(verdict)) + "\n";
    return out;
  }
  Json result;
  result["verdict"] = std::string(verdict_name(verdict));
  result["le"] = is_le(verdict);
  result["ge"] = is_ge(verdict);
  if (out.json.contains("coupling")) result["coupling"] = out.json["coupling"];
  out.json = std::move(result);
  return out;
}

// ---- upsets ----------------------------------------------------------------

Output run_upsets(const Options& opt) {
  const auto& fams = enumerate_upsets(opt.k);
  Output out;
  Json families = Json::array();
  for (const auto& f : fams) {
    Json minimal = Json::array(), members = Json::array();
    for (auto a : f.minimal()) minimal.push_back(subset_to_json(a));
    for (auto a : f.members()) members.push_back(subset_to_json(a));
    families.push_back({{"minimal", minimal}, {"members", members}});
  }
  out.json["k"] = opt.k;
  out.json["count"] = fams.size();
  out.json["families"] = std::move(families);
  return out;
}

// ---- lift ------------------------------------------------------------------

LiftInstance instance_from_json(const Json& in) {
  LiftInstance inst;
  inst.n = static_cast<int>(integer_from_json(require(in, "n")));
  if (inst.n < 1 || inst.n > kMaxLiftN) throw Error(ErrorKind::InvalidInput, "n out of range");
  inst.c = rationals_from_json(require(in, "c"));
  const auto& alpha = require(in, "alpha");
  if (!alpha.is_array()) throw Error(ErrorKind::InvalidInput, "\"alpha\" must be an array");
  for (const auto& e : alpha) {
    const SubsetMask a = subset_from_json(require(e, "set"), inst.n);
    if (inst.alpha.count(a)) throw Error(ErrorKind::InvalidInput, "subset listed twice in alpha");
    inst.alpha[a] = rational_from_json(require(e, "value"));
  }
  validate_instance(inst);
  return inst;
}

Output run_lift(const Json& in, const Options&) {
  const LiftInstance inst = instance_from_json(in);
  const auto rep = solve_lift_report(inst);
  ensure_empty(validate_lift(inst, rep.solution));
  ensure(rep.flow_value == rep.cut_capacity, "max-flow/min-cut duality");
  Output out;
  Json beta = Json::array();
  for (const auto& [key, v] : rep.solution.beta) {
    beta.push_back({{"set", subset_to_json(key.first)}, {"i", key.second}, {"value", v.str()}});
  }
  out.json["beta"] = std::move(beta);
  out.json["delta"] = rep.delta.str();
  out.json["c_prime"] = rationals_to_json(rep.c_prime);
  out.json["M"] = rep.big_m.str();
  out.json["max_flow"] = rep.flow_value.str();
  out.json["min_cut"] = rep.cut_capacity.str();
  return out;
}

// ---- image -----------------------------------------------------------------

Output run_image(const Json& in, const Options&) {
  const auto k = strings_from_json(require(in, "K"));
  const auto l = strings_from_json(require(in, "L"));
  const auto& gj = require(in, "g");
  if (!gj.is_object()) throw Error(ErrorKind::InvalidInput, "\"g\" maps K labels to L labels");
  std::vector<std::string> g;
  for (const auto& x : k) {
    if (!gj.contains(x)) throw Error(ErrorKind::InvalidInput, "g is undefined at " + x);
    g.push_back(string_from_json(gj.at(x)));
  }
  if (gj.size() != k.size()) throw Error(ErrorKind::UnknownLabel, "g mentions a label outside K");
  const DiscreteSurjection s(k, l, g);

  std::vector<std::vector<std::size_t>> u;
  const auto& uj = require(in, "U");
  if (!uj.is_array()) throw Error(ErrorKind::InvalidInput, "\"U\" must be an array of sets");
  for (const auto& set : uj) {
    std::vector<std::size_t> ids;
    for (const auto& x : strings_from_json(set)) ids.push_back(s.k_index(x));
    u.push_back(std::move(ids));
  }
  const auto c = rationals_from_json(require(in, "c"));
  const auto& lj = require(in, "lambda");
  if (!lj.is_object()) throw Error(ErrorKind::InvalidInput, "\"lambda\" maps L labels to masses");
  DiscreteMeasure lambda{std::vector<Rational>(l.size())};
  for (const auto& [label, v] : lj.items()) lambda.mass[s.l_index(label)] = rational_from_json(v);

  Output out;
  const auto bad = image_violation(s, u, c, lambda);
  out.json["member"] = !bad.has_value();
  if (bad) {
    out.json["violated"] = subset_elements(*bad);
    return out;
  }
  const auto nu = construct_witness(s, u, c, lambda);
  ensure_empty(validate_witness(s, u, c, lambda, nu));
  Json witness = Json::object();
  for (std::size_t x = 0; x < k.size(); ++x) {
    if (!nu.mass[x].is_zero()) witness[k[x]] = nu.mass[x].str();
  }
  out.json["witness"] = std::move(witness);
  return out;
}

// ---- flow ------------------------------------------------------------------

Output run_flow(const Json& in, const Options&) {
  const auto vertices = strings_from_json(require(in, "vertices"));
  auto find = [&](const std::string& v) {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw Error(ErrorKind::InvalidNetwork, "unknown vertex " + v);
    return static_cast<std::size_t>(it - vertices.begin());
  };
  std::vector<Arc> arcs;
  const auto& aj = require(in, "arcs");
  if (!aj.is_array()) throw Error(ErrorKind::InvalidInput, "\"arcs\" must be an array");
  for (const auto& a : aj) {
    if (!a.is_array() || a.size() != 3) throw Error(ErrorKind::InvalidInput, "arcs are [u, v, capacity]");
    arcs.push_back({find(string_from_json(a[0])), find(string_from_json(a[1])), rational_from_json(a[2])});
  }
  const std::size_t src = find(string_from_json(require(in, "source")));
  const std::size_t snk = find(string_from_json(require(in, "sink")));
  const FlowNetwork net(vertices, std::move(arcs), src, snk);
  const auto r = max_flow(net);
  ensure_empty(validate_flow(net, r.flow));
  ensure(flow_value(net, r.flow) == r.value, "flow value");
  ensure(r.value == r.cut_capacity, "max-flow/min-cut duality");
  Output out;
  Json flow = Json::array();
  for (std::size_t e = 0; e < net.arcs().size(); ++e) {
    const auto& arc = net.arcs()[e];
    flow.push_back(Json::array({vertices[arc.from], vertices[arc.to], r.flow[e].str()}));
  }
  Json side = Json::array();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (r.source_side[v]) side.push_back(vertices[v]);
  }
  out.json["value"] = r.value.str();
  out.json["flow"] = std::move(flow);
  out.json["min_cut"] = {{"capacity", r.cut_capacity.str()}, {"source_side", side}};
  return out;
}

// ---- fiber -----------------------------------------------------------------

Json parse_inline(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    throw Error(ErrorKind::InvalidInput, std::string("--") + what + " is not valid JSON");
  }
}

std::unique_ptr<FiberModel> make_model(const Options& opt) {
  const Json params = parse_inline(opt.params, "params");
  const Json base = parse_inline(opt.base, "base");
  if (opt.family == "sigma") {
    SigmaMap map{strings_from_json(require(params, "M")), strings_from_json(require(params, "N")),
                 static_cast<int>(integer_from_json(require(params, "n")))};
    return std::make_unique<SigmaFiber>(std::move(map), strings_from_json(base));
  }
  const auto& gj = require(params, "g");
  StarMap map;
  map.k = strings_from_json(require(params, "K"));
  map.l = strings_from_json(require(params, "L"));
  if (!gj.is_object()) throw Error(ErrorKind::InvalidInput, "\"g\" maps K labels to L labels");
  for (const auto& x : map.k) {
    if (!gj.contains(x)) throw Error(ErrorKind::InvalidInput, "g is undefined at " + x);
    map.g.push_back(string_from_json(gj.at(x)));
  }
  map.varpi = string_from_json(require(params, "varpi"));
  map.m = string_from_json(require(params, "m"));
  return std::make_unique<StarFiber>(std::move(map), strings_from_json(base));
}

Output run_ball(const Options& opt) {
  const Json base = parse_inline(opt.base, "base");
  if (!base.is_array()) throw Error(ErrorKind::InvalidInput, "ball base is an array of points");
  std::vector<std::vector<Rational>> x;
  for (const auto& p : base) x.push_back(rationals_from_json(p));
  const auto d = ball_order_descriptor(x, opt.m > 0 ? opt.m : 1);
  Output out;
  if (opt.format == "dot") {
    out.is_text = true;
    out.text = poset_to_dot(d.grid, "ball");
    return out;
  }
  out.json["r"] = d.r;
  out.json["poset"] = poset_to_json(d.grid);
  return out;
}

Output run_fiber(const Options& opt) {
  if (opt.family == "ball") return run_ball(opt);
  const auto model = make_model(opt);
  const std::string emit = opt.emit.empty() ? (opt.m > 0 ? "poset" : "fiber") : opt.emit;
  Output out;
  if (emit == "fiber") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < model->size(); ++i) labels.push_back(model->label(i));
    auto pre = FinitePreorder::from_predicate(
        labels, [&](std::size_t a, std::size_t b) { return model->point_le(a, b); });
    auto q = quotient_to_poset(pre);
    Json classes = Json::array();
    for (std::size_t c = 0; c < q.poset.size(); ++c) {
      Json members = Json::array();
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (q.class_of[i] == c) members.push_back(labels[i]);
      }
      classes.push_back(std::move(members));
    }
    if (opt.format == "dot") {
      out.is_text = true;
      out.text = poset_to_dot(q.poset, "fiber");
      return out;
    }
    out.json["fiber"] = labels;
    out.json["classes"] = std::move(classes);
    out.json["class_order"] = poset_to_json(q.poset);
    return out;
  }
  if (emit == "brackets") {
    const BracketLattice lattice(*model);
    Json sets = Json::array();
    for (const auto& b : lattice.sets()) {
      Json members = Json::array();
      b.for_each([&](std::size_t z) { members.push_back(model->label(z)); });
      sets.push_back(std::move(members));
    }
    out.json["brackets"] = std::move(sets);
    return out;
  }
  if (opt.m <= 0) throw Error(ErrorKind::InvalidInput, "--emit poset needs --m");
  const auto fo = fiber_order(*model, opt.m);
  if (opt.format == "dot") {
    out.is_text = true;
    out.text = poset_to_dot(fo.poset, "fiber_order");
    return out;
  }
  out.json["poset"] = poset_to_json(fo.poset);
  return out;
}

// ---- driver ----------------------------------------------------------------

Json read_input(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

/// Whether the input is a batch of instances for `command`.
bool is_batch(const std::string& command, const Json& in) {
  if (!in.is_array()) return false;
  if (command != "compare") return true;
  // A single comparison is [[...], [...]]; a batch nests one level deeper.
  return !in.empty() && in[0].is_array() && !in[0].empty() && in[0][0].is_array();
}

struct Slot {
  Output output;
  Json error;
  int code = 0;
};

void emit(std::ostream& out, const Output& o) {
  if (o.is_text) {
    out << o.text;
  } else {
    out << o.json.dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fiber-order toolkit: poset factorization, dominance orders, measure lifting"};
  app.require_subcommand(1);
  Options opt;
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--json", opt.input, "Input file, '-' for stdin")->capture_default_str();
    sub->add_option("--jobs", opt.jobs, "Worker threads for batch input")
        ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
  };
  auto* factor = app.add_subcommand("factor", "Irreducible factorization of a connected poset");
  add_io(factor);
  factor->add_option("--format", opt.format)->check(CLI::IsMember({"json", "dot"}));
  factor->add_option("--cap", opt.cap, "Largest poset searched");

  auto* compare = app.add_subcommand("compare", "Compare two points of O_k or P_k");
  add_io(compare);
  compare->add_option("--space", opt.space)->required()->check(CLI::IsMember({"pk", "ok"}));
  compare->add_option("--k", opt.k)->required()->check(CLI::Range(0, 20));
  compare->add_option("--m", opt.m, "Require coordinates on the 1/m grid")->check(CLI::PositiveNumber);
  compare->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  auto* upsets = app.add_subcommand("upsets", "List the upward closed families over {1..k}");
  upsets->add_option("--k", opt.k)->required();

  auto* lift = app.add_subcommand("lift", "Split alpha over thresholds c");
  add_io(lift);
  auto* image = app.add_subcommand("image", "Image membership and witness measure");
  add_io(image);
  auto* flow = app.add_subcommand("flow", "Max-flow and min-cut of a rational network");
  add_io(flow);

  auto* fiber = app.add_subcommand("fiber", "Fibers, brackets and discretized fiber orders");
  fiber->add_option("--family", opt.family)->required()->check(CLI::IsMember({"sigma", "star", "ball"}));
  fiber->add_option("--params", opt.params, "Family parameters as JSON");
  fiber->add_option("--base", opt.base, "Base point as JSON")->required();
  fiber->add_option("--m", opt.m, "Grid denominator")->check(CLI::PositiveNumber);
  fiber->add_option("--emit", opt.emit)->check(CLI::IsMember({"fiber", "brackets", "poset"}));
  fiber->add_option("--format", opt.format)->check(CLI::IsMember({"json", "dot"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (upsets->parsed()) {
      emit(out, run_upsets(opt));
      return 0;
    }
    if (fiber->parsed()) {
      emit(out, run_fiber(opt));
      return 0;
    }
    std::string command;
    std::function<Output(const Json&, const Options&)> handler;
    if (factor->parsed()) {
      command = "factor";
      handler = run_factor;
    } else if (compare->parsed()) {
      command = "compare";
      handler = run_compare;
    } else if (lift->parsed()) {
      command = "lift";
      handler = run_lift;
    } else if (image->parsed()) {
      command = "image";
      handler = run_image;
    } else {
      command = "flow";
      handler = run_flow;
    }

    const Json input = read_input(opt.input, in);
    if (!is_batch(command, input)) {
      emit(out, handler(input, opt));
      return 0;
    }

    std::vector<Slot> slots(input.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < slots.size(); i = next++) {
        try {
          slots[i].output = handler(input[i], opt);
        } catch (const std::exception& e) {
          slots[i].error = error_json(e);
          slots[i].code = exit_code_for(e);
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(opt.jobs, slots.size()); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = 0;
    if (opt.format == "json") {
      Json all = Json::array();
      for (const auto& s : slots) all.push_back(s.code == 0 ? s.output.json : s.error);
      out << all.dump(2) << "\n";
    } else {
      for (const auto& s : slots) {
        if (s.code == 0) emit(out, s.output);
      }
    }
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].code == 0) continue;
      Json e = slots[i].error;
      e["index"] = i;
      err << e.dump() << "\n";
      code = std::max(code, slots[i].code);
    }
    return code;
  } catch (const std::exception& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace fiberorder::cli
