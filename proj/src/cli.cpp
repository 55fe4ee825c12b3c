#include "nhf/cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhf/instance.hpp"
#include "nhf/linalg.hpp"

namespace nhf {

using nlohmann::json;

namespace {

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json scalar(const Scalar& s, Field field) {
  if (field == Field::real) return num(s.real());
  return json::array({num(s.real()), num(s.imag())});
}

json vec(const Vector& v, Field field) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar(v(i), field));
  return out;
}

json columns(const Matrix& m, Field field) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec(m.col(c), field));
  return out;
}

json bounds_json(const FrameBounds& b) { return {{"lower", num(b.lower)}, {"upper", num(b.upper)}}; }

struct Options {
  std::string instance;
  std::uint64_t seed = 1;
  int trials = 200;
  double tol = tol::check;
  bool json_out = false;
  bool pretty = false;
  Selection select;
  std::string x = "x";
  std::string y = "y";
  std::string vector = "x";
  std::string theorem;
  // gen and axioms without an instance
  int dim = 4;
  int n = 2;
  int count = 6;
  std::string field = "real";
  std::string kind = "frame";
};

struct Outcome {
  json result = json::object();
  Report report;
};

InstanceFile require_instance(const Options& o) {
  if (o.instance.empty()) throw StructuralError("--instance is required for this command");
  return load_instance(o.instance);
}

ResolvedSpace require_sequence(const Options& o) {
  ResolvedSpace r = resolve(require_instance(o), o.select);
  if (!r.sequence) throw StructuralError("$.sequences: instance has no sequences");
  return r;
}

Vector named_vector(const InstanceFile& inst, const std::string& name) {
  auto it = inst.vectors.find(name);
  if (it == inst.vectors.end()) throw StructuralError("$.vectors: no vector named '" + name + "'");
  return it->second;
}

// ---------------------------------------------------------------------------

Outcome cmd_ninner(const Options& o) {
  const InstanceFile inst = require_instance(o);
  const ResolvedSpace r = resolve(inst, o.select);
  const Vector x = named_vector(inst, o.x);
  const Vector y = named_vector(inst, o.y);
  const InducedSpace& s = *r.space;
  const Scalar direct = s.inner(x, y);
  const Scalar induced = scalar_inner(s.project(x), s.project(y));
  Outcome out{{}, Report("ninner eval")};
  out.result = {{"n_inner", scalar(direct, s.field())},
                {"n_norm_x", num(s.norm(x))},
                {"n_norm_y", num(s.norm(y))},
                {"projected_inner", scalar(induced, s.field())}};
  const double scale = std::max(1.0, s.norm(x) * s.norm(y));
  out.report.add("induced_isometry", std::abs(direct - induced) / scale, o.tol);
  return out;
}

Outcome cmd_axioms(const Options& o) {
  AmbientSpace space;
  int n = o.n;
  if (!o.instance.empty()) {
    const InstanceFile inst = require_instance(o);
    if (!inst.ambient) throw StructuralError("$.ambient: instance has no ambient space");
    space = *inst.ambient;
    n = static_cast<int>(inst.fixed_tuple.size()) + 1;
  } else {
    space = AmbientSpace(o.dim, field_from_string(o.field));
  }
  Outcome out{{{"dimension", space.dimension}, {"n", n}, {"field", to_string(space.field)}},
              check_axioms(space, n, o.trials, o.seed, o.tol)};
  return out;
}

Outcome cmd_induced(const Options& o) {
  const ResolvedSpace r = resolve(require_instance(o), o.select);
  const InducedSpace& s = *r.space;
  double fixed_residual = 0.0;
  for (const auto& a : s.fixed().vectors())
    fixed_residual = std::max(fixed_residual, s.project(a).norm() / std::max(1.0, a.norm()));
  Outcome out{{}, Report("induced build")};
  out.result = {{"dimension", s.dimension()},
                {"ambient_dimension", s.ambient().dimension},
                {"n", s.fixed().arity()},
                {"conditioning", num(s.fixed().conditioning())},
                {"basis", columns(s.basis(), s.field())}};
  out.report.add("basis_orthonormal", s.basis_defect(), o.tol);
  out.report.add("fixed_tuple_projects_to_zero", fixed_residual, tol::conditioning);
  return out;
}

Outcome cmd_frame_bounds(const Options& o) {
  const ResolvedSpace r = require_sequence(o);
  const BoundsResult b = frame_bounds(*r.sequence);
  const Field f = r.space->field();
  Outcome out;
  out.result = bounds_json(b.bounds);
  out.result["witness_lower"] = vec(b.witness_lower, f);
  out.result["witness_upper"] = vec(b.witness_upper, f);
  out.report = verify_frame_inequality(*r.sequence, std::nullopt, b.bounds, o.trials, o.seed, o.tol);
  out.report.add_flag("is_frame", b.bounds.lower > 0.0,
                      b.bounds.lower > 0.0 ? "" : "lower bound is zero");
  return out;
}

Outcome cmd_kframe_bounds(const Options& o) {
  const ResolvedSpace r = require_sequence(o);
  const auto b = kframe_bounds(*r.sequence, r.k);
  Outcome out;
  out.result["present"] = b.has_value();
  out.result["range_defect"] = num(range_defect(r.sequence->synthesis_matrix(), r.k));
  if (!b) {
    out.report.add_flag("range_condition", false, "range(K) is not inside the synthesis range");
    return out;
  }
  out.result.update(bounds_json(b->bounds));
  out.report = verify_frame_inequality(*r.sequence, r.k, b->bounds, o.trials, o.seed, o.tol);
  out.report.add_flag("range_condition", true);
  return out;
}

Outcome cmd_atomic_check(const Options& o) {
  const ResolvedSpace r = require_sequence(o);
  const auto cert = is_atomic_system(r.sequence->synthesis_matrix(), r.k);
  const bool kframe = kframe_bounds(*r.sequence, r.k).has_value();
  Outcome out;
  out.result["present"] = cert.has_value();
  if (cert) {
    out.result["constant"] = num(cert->constant);
    out.result["bessel_bound"] = num(cert->bessel_bound);
    if (!cert->notes.empty()) out.result["notes"] = cert->notes;
  } else {
    out.result["range_defect"] = num(range_defect(r.sequence->synthesis_matrix(), r.k));
  }
  out.report.add_flag("range_condition", cert.has_value());
  out.report.add_flag("agrees_with_kframe_bounds", cert.has_value() == kframe);
  return out;
}

Outcome cmd_atomic_decompose(const Options& o) {
  const InstanceFile inst = require_instance(o);
  const ResolvedSpace r = resolve(inst, o.select);
  if (!r.sequence) throw StructuralError("$.sequences: instance has no sequences");
  const Vector f = r.space->project(named_vector(inst, o.vector));
  Outcome out;
  try {
    const CoefficientSequence c = atomic_decompose(*r.sequence, r.k, f);
    const Matrix& t = r.sequence->synthesis_matrix();
    const double constant = is_atomic_system(t, r.k)->constant;
    out.result = {{"coefficients", vec(c, r.space->field())},
                  {"constant", num(constant)},
                  {"coefficient_norm", num(c.norm())}};
    const double scale = std::max(1.0, (r.k * f).norm());
    out.report.add("reconstruction", (t * c - r.k * f).norm() / scale, o.tol);
    out.report.add("coefficient_bound", std::max(0.0, c.norm() - constant * f.norm()), o.tol);
  } catch (const RangeError& e) {
    out.result = {{"residual", num(e.residual())}};
    out.report.add_flag("range_condition", false, e.what());
  }
  return out;
}

Outcome cmd_atomic_dual(const Options& o) {
  const InstanceFile inst = require_instance(o);
  const ResolvedSpace r = resolve(inst, o.select);
  if (!r.sequence) throw StructuralError("$.sequences: instance has no sequences");
  Outcome out;
  try {
    const VectorSequence dual = kframe_dual(*r.sequence, r.k);
    json elements = json::array();
    for (const auto& g : dual.elements()) elements.push_back(vec(g, r.space->field()));
    out.result = {{"dual", elements}, {"bessel_bound", num(frame_bounds(dual).bounds.upper)}};
    out.report = verify_theorem(TheoremId::T3_9, resolve_theorem_input(inst, o.select), o.trials,
                                o.seed, o.tol);
  } catch (const RangeError& e) {
    out.result = {{"residual", num(e.residual())}};
    out.report.add_flag("range_condition", false, e.what());
  }
  return out;
}

Outcome cmd_local_atoms(const Options& o) {
  const ResolvedSpace r = require_sequence(o);
  const Matrix& t = r.sequence->synthesis_matrix();
  const Subspace y = r.subspace ? *r.subspace : default_subspace(t);
  Outcome out;
  try {
    const auto family = local_atom_dual(t, y);
    out.result = {{"subspace_dimension", y.dimension()},
                  {"constant", num(local_atom_constant(y, family))},
                  {"functional_bound", num(family.bound())},
                  {"frame_lower_bound_on_subspace", num(frame_lower_bound_on(t, y))},
                  {"dual", columns(family.dual_vectors(), r.space->field())}};
    out.report = verify_local_atoms(*r.sequence, y, family, o.trials, o.seed, o.tol);
  } catch (const RangeError& e) {
    out.result = {{"residual", num(e.residual())}};
    out.report.add_flag("subspace_in_range", false, e.what());
  }
  return out;
}

Outcome cmd_tensor_bounds(const Options& o) {
  const TensorInstance inst = resolve_tensor(require_instance(o), o.select);
  const TensorBoundsReport tb = tensor_frame_bounds(inst);
  Outcome out;
  const auto opt = [](const std::optional<BoundsResult>& b) -> json {
    return b ? bounds_json(b->bounds) : json(nullptr);
  };
  out.result = {{"left", opt(tb.left)},
                {"right", opt(tb.right)},
                {"assembled", opt(tb.assembled)},
                {"product", tb.product ? bounds_json(*tb.product) : json(nullptr)},
                {"failing_side", tb.failing_side}};
  const bool factors = tb.left && tb.right;
  const bool assembled = tb.assembled.has_value();
  out.report.add_flag("biconditional", factors == assembled);
  if (factors && assembled) {
    out.report.add("product_bounds", tb.product_gap, o.tol);
    out.report.append(verify_tensor_frame_inequality(
        inst.synthesis(), inst.op(), tb.assembled->bounds, inst.left().space().dimension(),
        inst.right().space().dimension(), o.trials, o.seed, o.tol, inst.field()));
  } else {
    out.report.add_flag("kframe_present", false, "failing side: " + tb.failing_side);
  }
  return out;
}

Outcome cmd_tensor_factorize(const Options& o) {
  const TensorInstance inst = resolve_tensor(require_instance(o), o.select);
  Outcome out;
  try {
    const FactorizedBounds fb = tensor_frame_factorize(inst);
    out.result = {{"left", bounds_json(fb.left)},
                  {"right", bounds_json(fb.right)},
                  {"left_witness", vec(fb.left_witness, inst.field())},
                  {"right_witness", vec(fb.right_witness, inst.field())}};
    out.report.append(verify_frame_inequality(inst.left().sequence, inst.left().k, fb.left,
                                              o.trials, o.seed, o.tol),
                      "left.");
    out.report.append(verify_frame_inequality(inst.right().sequence, inst.right().k, fb.right,
                                              o.trials, o.seed, o.tol),
                      "right.");
  } catch (const RangeError& e) {
    out.result = {{"residual", num(e.residual())}};
    out.report.add_flag("kframe_present", false, e.what());
  }
  return out;
}

Outcome cmd_verify(const Options& o) {
  const TheoremId id = parse_theorem_id(o.theorem);
  const TheoremInput input = resolve_theorem_input(require_instance(o), o.select);
  if (needs_tensor(id) && !input.right)
    throw StructuralError(std::string(to_string(id)) + " needs an instance with a tensor block");
  return Outcome{{{"theorem", to_string(id)}}, verify_theorem(id, input, o.trials, o.seed, o.tol)};
}

void print_text(std::ostream& out, const std::string& command, const Outcome& oc) {
  out << command << ": " << (oc.report.pass() ? "PASS" : "FAIL") << '\n';
  for (const auto& [key, value] : oc.result.items()) out << "  " << key << " = " << value.dump() << '\n';
  for (const Check& c : oc.report.checks()) {
    out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  violation "
        << num(c.worst_violation).dump() << " (tol " << num(c.tolerance).dump() << ")";
    if (!c.witness.empty()) out << "  " << c.witness;
    out << '\n';
  }
}

void add_common(CLI::App* sub, Options& o, bool needs_instance) {
  auto* inst = sub->add_option("--instance", o.instance, "instance JSON file");
  if (needs_instance) inst->required();
  sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sub->add_option("--trials", o.trials, "sampled trials")->capture_default_str()->check(
      CLI::PositiveNumber);
  sub->add_option("--tol", o.tol, "check tolerance")->capture_default_str();
  sub->add_flag("--json", o.json_out, "emit the report as compact JSON");
  sub->add_flag("--pretty", o.pretty, "emit the report as indented JSON");
  sub->add_option("--sequence", o.select.sequence, "sequence name (default: main)");
  sub->add_option("--operator", o.select.op, "operator name (default: K, else identity)");
  sub->add_option("--subspace", o.select.subspace, "subspace name (default: Y)");
}

}  // namespace

json report_json(const Report& report) {
  json checks = json::array();
  for (const Check& c : report.checks())
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"worst_violation", num(c.worst_violation)},
                      {"tolerance", num(c.tolerance)},
                      {"witness", c.witness}});
  return checks;
}

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Frames, K-frames and atomic systems on induced n-Hilbert spaces", "nhf"};
  app.require_subcommand(1);

  std::string command;
  std::function<Outcome(const Options&)> handler;
  const auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                        const std::string& full, std::function<Outcome(const Options&)> fn,
                        bool needs_instance = true) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    add_common(sub, o, needs_instance);
    sub->callback([&, full, fn] {
      command = full;
      handler = fn;
    });
    return sub;
  };
  const auto group = [&](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };

  CLI::App* ninner = group("ninner", "n-inner products");
  auto* ev = leaf(ninner, "eval", "evaluate <x, y | a_2..a_n>", "ninner eval", cmd_ninner);
  ev->add_option("--x", o.x, "first vector name")->capture_default_str();
  ev->add_option("--y", o.y, "second vector name")->capture_default_str();

  CLI::App* axioms = group("axioms", "n-inner product axioms");
  auto* ax = leaf(axioms, "check", "sample the axioms", "axioms check", cmd_axioms, false);
  ax->add_option("--dim", o.dim, "ambient dimension without an instance")->capture_default_str();
  ax->add_option("--n", o.n, "n without an instance")->capture_default_str();
  ax->add_option("--field", o.field, "real or complex")->capture_default_str();

  leaf(group("induced", "induced Hilbert space"), "build", "build H_F", "induced build",
       cmd_induced);
  leaf(group("frame", "frames"), "bounds", "optimal frame bounds", "frame bounds",
       cmd_frame_bounds);
  leaf(group("kframe", "K-frames"), "bounds", "optimal K-frame bounds", "kframe bounds",
       cmd_kframe_bounds);

  CLI::App* atomic = group("atomic", "atomic systems");
  leaf(atomic, "check", "atomic system certificate", "atomic check", cmd_atomic_check);
  auto* dec = leaf(atomic, "decompose", "minimal-norm decomposition of K f", "atomic decompose",
                   cmd_atomic_decompose);
  dec->add_option("--vector", o.vector, "vector name")->capture_default_str();
  leaf(atomic, "dual", "K-dual Bessel sequence", "atomic dual", cmd_atomic_dual);

  leaf(&app, "local-atoms", "local atoms for a subspace", "local-atoms", cmd_local_atoms);

  CLI::App* tensor = group("tensor", "tensor products");
  leaf(tensor, "bounds", "assembled and product bounds", "tensor bounds", cmd_tensor_bounds);
  leaf(tensor, "factorize", "factor bounds from the assembled bounds", "tensor factorize",
       cmd_tensor_factorize);

  auto* ver = leaf(&app, "verify", "check a theorem on an instance", "verify", cmd_verify);
  ver->add_option("id", o.theorem, "theorem id, e.g. T4_3")->required();

  bool gen_called = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--seed", o.seed, "random seed")->capture_default_str();
  gen->add_option("--dim", o.dim, "ambient dimension")->capture_default_str();
  gen->add_option("--n", o.n, "n")->capture_default_str();
  gen->add_option("--count", o.count, "sequence length")->capture_default_str();
  gen->add_option("--field", o.field, "real or complex")->capture_default_str();
  gen->add_option("--kind", o.kind, "frame, kframe, atomic or tensor")->capture_default_str();
  gen->add_flag("--json", o.json_out, "compact output");
  gen->add_flag("--pretty", o.pretty, "indented output (default)");
  gen->callback([&] { gen_called = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, err);
    if (code == 0) {
      out << help.str();
      return 0;
    }
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (gen_called) {
      GenSpec spec{o.dim, o.n, o.count, field_from_string(o.field), kind_from_string(o.kind)};
      const json inst = instance_to_json(gen_random(spec, o.seed));
      out << (o.json_out && !o.pretty ? inst.dump() : inst.dump(2)) << '\n';
      return 0;
    }
    Outcome oc = handler(o);
    if (command == "verify") command += " " + o.theorem;
    if (o.json_out || o.pretty) {
      json j = {{"command", command},
                {"instance", o.instance},
                {"seed", o.seed},
                {"trials", o.trials},
                {"tol", num(o.tol)},
                {"pass", oc.report.pass()},
                {"result", oc.result},
                {"checks", report_json(oc.report)}};
      out << (o.pretty ? j.dump(2) : j.dump()) << '\n';
    } else {
      print_text(out, command, oc);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    err << "wall time: " << elapsed.count() << " s\n";
    return oc.report.pass() ? 0 : 1;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace nhf
