#include "nhf/instance.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>

#include "nhf/random.hpp"

namespace nhf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw StructuralError(path + ": " + message);
}

double parse_real(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
      fail(path, "'" + s + "' is not a decimal number");
    return v;
  }
  fail(path, "expected a number");
}

Scalar parse_scalar(const json& j, Field field, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "complex entries are [re, im] pairs");
    const double re = parse_real(j[0], path + "[0]");
    const double im = parse_real(j[1], path + "[1]");
    if (field == Field::real && im != 0.0) fail(path, "imaginary part in a real instance");
    return {re, im};
  }
  return {parse_real(j, path), 0.0};
}

Vector parse_vector(const json& j, Field field, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of scalars");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        parse_scalar(j[i], field, path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix parse_matrix(const json& j, Field field, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 || !j[0].is_array() ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const Vector row = parse_vector(j[static_cast<std::size_t>(r)], field, row_path);
    if (row.size() != cols)
      fail(row_path, "row has " + std::to_string(row.size()) + " entries, expected " +
                         std::to_string(cols));
    m.row(r) = row.transpose();
  }
  return m;
}

std::vector<Vector> parse_vector_list(const json& j, Field field, Eigen::Index length,
                                      const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    Vector v = parse_vector(j[i], field, p);
    if (v.size() != length)
      fail(p, "vector has length " + std::to_string(v.size()) + ", ambient dimension is " +
                  std::to_string(length));
    out.push_back(std::move(v));
  }
  return out;
}

const json* member(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return nullptr;
  return &j.at(key);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

json scalar_json(const Scalar& s, Field field) {
  if (field == Field::real) return s.real();
  return json::array({s.real(), s.imag()});
}

json vector_json(const Vector& v, Field field) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i), field));
  return out;
}

json matrix_json(const Matrix& m, Field field) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose(), field));
  return out;
}

std::shared_ptr<InstanceFile> parse_side(const json& j, const std::filesystem::path& base_dir,
                                         const std::string& path) {
  if (j.is_string()) {
    const std::filesystem::path p = base_dir / j.get<std::string>();
    try {
      return std::make_shared<InstanceFile>(load_instance(p));
    } catch (const StructuralError& e) {
      fail(path, e.what());
    }
  }
  return std::make_shared<InstanceFile>(instance_from_json(j, base_dir));
}

std::string pick_sequence(const InstanceFile& inst, const std::string& requested) {
  if (!requested.empty()) {
    if (!inst.sequences.count(requested)) fail("$.sequences", "no sequence named '" + requested + "'");
    return requested;
  }
  if (inst.sequences.count("main")) return "main";
  if (inst.sequences.empty()) fail("$.sequences", "instance has no sequences");
  return inst.sequences.begin()->first;
}

}  // namespace

InstanceFile instance_from_json(const json& j, const std::filesystem::path& base_dir) {
  require_object(j, "$");
  InstanceFile inst;
  if (const json* v = member(j, "version")) {
    if (!v->is_string() || v->get<std::string>() != kInstanceVersion)
      fail("$.version", std::string("unsupported version, expected \"") + kInstanceVersion + "\"");
  } else {
    fail("$.version", "missing version tag");
  }

  if (const json* t = member(j, "tensor")) {
    require_object(*t, "$.tensor");
    if (!t->contains("left") || !t->contains("right"))
      fail("$.tensor", "tensor block needs both 'left' and 'right'");
    inst.tensor_left = parse_side(t->at("left"), base_dir, "$.tensor.left");
    inst.tensor_right = parse_side(t->at("right"), base_dir, "$.tensor.right");
  }

  const json* amb = member(j, "ambient");
  if (!amb) {
    if (!inst.has_tensor()) fail("$.ambient", "missing ambient block");
    return inst;
  }
  require_object(*amb, "$.ambient");
  if (!amb->contains("dimension") || !amb->at("dimension").is_number_integer())
    fail("$.ambient.dimension", "expected an integer");
  Field field = Field::real;
  if (amb->contains("field")) {
    if (!amb->at("field").is_string()) fail("$.ambient.field", "expected \"real\" or \"complex\"");
    try {
      field = field_from_string(amb->at("field").get<std::string>());
    } catch (const Error& e) {
      fail("$.ambient.field", e.what());
    }
  }
  const int dim = amb->at("dimension").get<int>();
  if (dim < 1) fail("$.ambient.dimension", "must be positive");
  inst.ambient = AmbientSpace(dim, field);

  const json* fixed = member(j, "fixed_tuple");
  if (!fixed) fail("$.fixed_tuple", "missing fixed tuple");
  inst.fixed_tuple = parse_vector_list(*fixed, field, dim, "$.fixed_tuple");

  if (const json* s = member(j, "sequences")) {
    require_object(*s, "$.sequences");
    for (const auto& [name, value] : s->items())
      inst.sequences[name] = parse_vector_list(value, field, dim, "$.sequences." + name);
  }
  if (const json* o = member(j, "operators")) {
    require_object(*o, "$.operators");
    for (const auto& [name, value] : o->items())
      inst.operators[name] = parse_matrix(value, field, "$.operators." + name);
  }
  if (const json* s = member(j, "subspaces")) {
    require_object(*s, "$.subspaces");
    for (const auto& [name, value] : s->items())
      inst.subspaces[name] = parse_matrix(value, field, "$.subspaces." + name);
  }
  if (const json* v = member(j, "vectors")) {
    require_object(*v, "$.vectors");
    for (const auto& [name, value] : v->items()) {
      const std::string p = "$.vectors." + name;
      Vector x = parse_vector(value, field, p);
      if (x.size() != dim)
        fail(p, "vector has length " + std::to_string(x.size()) + ", ambient dimension is " +
                    std::to_string(dim));
      inst.vectors[name] = std::move(x);
    }
  }
  if (const json* ind = member(j, "induced")) {
    require_object(*ind, "$.induced");
    if (!ind->contains("basis")) fail("$.induced.basis", "missing basis");
    inst.induced_basis = parse_matrix(ind->at("basis"), field, "$.induced.basis");
  }
  return inst;
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError(path.string() + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path.string() + ": malformed JSON: " + e.what());
  }
  try {
    return instance_from_json(j, path.parent_path());
  } catch (const StructuralError& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

json instance_to_json(const InstanceFile& inst) {
  json j;
  j["version"] = kInstanceVersion;
  if (inst.ambient) {
    const Field field = inst.ambient->field;
    j["ambient"] = {{"dimension", inst.ambient->dimension}, {"field", to_string(field)}};
    json fixed = json::array();
    for (const auto& v : inst.fixed_tuple) fixed.push_back(vector_json(v, field));
    j["fixed_tuple"] = fixed;
    json seqs = json::object();
    for (const auto& [name, list] : inst.sequences) {
      json arr = json::array();
      for (const auto& v : list) arr.push_back(vector_json(v, field));
      seqs[name] = arr;
    }
    j["sequences"] = seqs;
    json ops = json::object();
    for (const auto& [name, m] : inst.operators) ops[name] = matrix_json(m, field);
    j["operators"] = ops;
    if (!inst.subspaces.empty()) {
      json subs = json::object();
      for (const auto& [name, m] : inst.subspaces) subs[name] = matrix_json(m, field);
      j["subspaces"] = subs;
    }
    if (!inst.vectors.empty()) {
      json vecs = json::object();
      for (const auto& [name, v] : inst.vectors) vecs[name] = vector_json(v, field);
      j["vectors"] = vecs;
    }
    if (inst.induced_basis) j["induced"] = {{"basis", matrix_json(*inst.induced_basis, field)}};
  }
  if (inst.has_tensor())
    j["tensor"] = {{"left", instance_to_json(*inst.tensor_left)},
                   {"right", instance_to_json(*inst.tensor_right)}};
  return j;
}

ResolvedSpace resolve(const InstanceFile& inst, const Selection& sel) {
  if (!inst.ambient) fail("$.ambient", "instance has no ambient space");
  ResolvedSpace out;
  FixedTuple fixed(inst.fixed_tuple);
  out.space = std::make_shared<const InducedSpace>(
      inst.induced_basis ? InducedSpace::from_basis(*inst.ambient, fixed, *inst.induced_basis)
                         : InducedSpace::build(*inst.ambient, fixed));
  const Eigen::Index m = out.space->dimension();

  if (!inst.sequences.empty() || !sel.sequence.empty()) {
    const std::string name = pick_sequence(inst, sel.sequence);
    out.sequence.emplace(out.space, inst.sequences.at(name));
  }

  const std::string op_name = sel.op.empty() ? "K" : sel.op;
  if (auto it = inst.operators.find(op_name); it != inst.operators.end()) {
    if (it->second.rows() != m || it->second.cols() != m)
      fail("$.operators." + op_name, "operator is " + std::to_string(it->second.rows()) + " x " +
                                         std::to_string(it->second.cols()) +
                                         ", induced dimension is " + std::to_string(m));
    out.k = it->second;
  } else if (!sel.op.empty()) {
    fail("$.operators", "no operator named '" + sel.op + "'");
  } else {
    out.k = Operator::Identity(m, m);
  }

  const std::string sub_name = sel.subspace.empty() ? "Y" : sel.subspace;
  if (auto it = inst.subspaces.find(sub_name); it != inst.subspaces.end()) {
    if (it->second.rows() != m)
      fail("$.subspaces." + sub_name, "basis has " + std::to_string(it->second.rows()) +
                                          " rows, induced dimension is " + std::to_string(m));
    try {
      out.subspace.emplace(it->second);
    } catch (const StructuralError& e) {
      fail("$.subspaces." + sub_name, e.what());
    }
  } else if (!sel.subspace.empty()) {
    fail("$.subspaces", "no subspace named '" + sel.subspace + "'");
  }
  return out;
}

FactorBundle resolve_bundle(const InstanceFile& inst, const Selection& sel) {
  ResolvedSpace r = resolve(inst, sel);
  if (!r.sequence) fail("$.sequences", "instance has no sequences");
  return FactorBundle{std::move(*r.sequence), std::move(r.k)};
}

TensorInstance resolve_tensor(const InstanceFile& inst, const Selection& sel) {
  if (!inst.has_tensor()) fail("$.tensor", "instance has no tensor block");
  const auto side = [&](const InstanceFile& part, const char* path) {
    try {
      return resolve_bundle(part, sel);
    } catch (const StructuralError& e) {
      fail(path, e.what());
    }
  };
  return TensorInstance(side(*inst.tensor_left, "$.tensor.left"),
                        side(*inst.tensor_right, "$.tensor.right"));
}

TheoremInput resolve_theorem_input(const InstanceFile& inst, const Selection& sel) {
  if (inst.has_tensor()) {
    const TensorInstance t = resolve_tensor(inst, sel);
    TheoremInput in{t.left(), t.right(), {}, {}, {}, {}, {}};
    const auto op = [&](const char* name) -> std::optional<Operator> {
      if (auto it = inst.operators.find(name); it != inst.operators.end()) return it->second;
      return std::nullopt;
    };
    in.isometry_left = op("T1");
    in.isometry_right = op("T2");
    in.transform_left = op("L1");
    in.transform_right = op("L2");
    if (auto r = resolve(*inst.tensor_left, sel); r.subspace) in.subspace = r.subspace;
    return in;
  }
  ResolvedSpace r = resolve(inst, sel);
  if (!r.sequence) fail("$.sequences", "instance has no sequences");
  TheoremInput in{FactorBundle{*r.sequence, r.k}, {}, r.subspace, {}, {}, {}, {}};
  return in;
}

// ---------------------------------------------------------------------------

InstanceKind kind_from_string(const std::string& name) {
  if (name == "frame") return InstanceKind::frame;
  if (name == "kframe") return InstanceKind::kframe;
  if (name == "atomic") return InstanceKind::atomic;
  if (name == "tensor") return InstanceKind::tensor;
  throw StructuralError("unknown instance kind '" + name + "'");
}

namespace {

constexpr double kTupleConditioning = 1e-2;
constexpr int kTupleAttempts = 100;

InstanceFile gen_single(const GenSpec& spec, std::uint64_t seed, bool with_operator) {
  const Field field = spec.field;
  const int d = spec.dimension;
  InstanceFile inst;
  inst.ambient = AmbientSpace(d, field);

  std::vector<Vector> tuple;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kTupleAttempts)
      throw StructuralError("could not sample a well-conditioned fixed tuple");
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(attempt));
    tuple.clear();
    for (int k = 0; k < spec.n - 1; ++k) tuple.push_back(rng.gaussian_vector(d, field));
    if (FixedTuple(tuple).conditioning() >= kTupleConditioning) break;
  }
  inst.fixed_tuple = tuple;

  Rng rng = Rng::stream(seed, 1000);
  std::vector<Vector> elements;
  for (int i = 0; i < spec.count; ++i) elements.push_back(rng.gaussian_vector(d, field));
  inst.sequences["main"] = elements;
  inst.vectors["x"] = rng.gaussian_vector(d, field);
  inst.vectors["y"] = rng.gaussian_vector(d, field);

  const auto space = std::make_shared<const InducedSpace>(
      InducedSpace::build(*inst.ambient, FixedTuple(tuple)));
  const VectorSequence seq(space, elements);
  if (with_operator) {
    const Matrix r = rng.gaussian_matrix(spec.count, space->dimension(), field);
    inst.operators["K"] = seq.synthesis_matrix() * r;
  }
  return inst;
}

}  // namespace

InstanceFile gen_random(const GenSpec& spec, std::uint64_t seed) {
  if (spec.n < 2) throw StructuralError("n must be at least 2");
  if (spec.dimension < spec.n)
    throw StructuralError("dimension " + std::to_string(spec.dimension) +
                          " is smaller than n = " + std::to_string(spec.n));
  if (spec.count < 1) throw StructuralError("count must be at least 1");
  const int m = spec.dimension - (spec.n - 1);
  switch (spec.kind) {
    case InstanceKind::frame: {
      if (spec.count < m)
        throw StructuralError("a frame of the " + std::to_string(m) +
                              "-dimensional induced space needs count >= " + std::to_string(m));
      InstanceFile inst = gen_single(spec, seed, false);
      const auto r = resolve(inst);
      if (!(frame_bounds(*r.sequence).bounds.lower > 0.0))
        throw StructuralError("generated sequence is not a frame");
      return inst;
    }
    case InstanceKind::kframe:
    case InstanceKind::atomic: {
      InstanceFile inst = gen_single(spec, seed, true);
      const auto r = resolve(inst);
      if (!is_atomic_system(*r.sequence, r.k))
        throw StructuralError("generated operator range escapes the synthesis range");
      return inst;
    }
    case InstanceKind::tensor: {
      GenSpec side = spec;
      side.kind = InstanceKind::atomic;
      InstanceFile inst;
      inst.tensor_left = std::make_shared<InstanceFile>(gen_random(side, Rng::stream(seed, 1).next()));
      inst.tensor_right =
          std::make_shared<InstanceFile>(gen_random(side, Rng::stream(seed, 2).next()));
      return inst;
    }
  }
  throw StructuralError("unknown instance kind");
}

}  // namespace nhf
