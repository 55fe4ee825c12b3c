#ifndef NHF_INSTANCE_HPP
#define NHF_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nhf/verify.hpp"

// JSON instance files. One schema feeds every subcommand:
//
//   {
//     "version": "nhf-instance/1",
//     "ambient": {"dimension": 4, "field": "real"},
//     "fixed_tuple": [[...], ...],          ambient vectors a_2..a_n
//     "sequences": {"main": [[...], ...]},  ambient vectors
//     "operators": {"K": [[...], ...]},     m x m, induced coordinates, row-major
//     "subspaces": {"Y": [[...], ...]},     orthonormal basis columns, row-major
//     "vectors":   {"x": [...]},            ambient vectors
//     "induced":   {"basis": [[...], ...]}  optional stored basis, d x m
//     "tensor":    {"left": <instance or path>, "right": <instance or path>}
//   }
//
// Complex entries are [re, im] pairs. Real entries are plain numbers. Numbers
// may also be given as decimal strings. A file with a tensor block may omit
// everything else.
namespace nhf {

inline constexpr const char* kInstanceVersion = "nhf-instance/1";

struct InstanceFile {
  std::optional<AmbientSpace> ambient;
  std::vector<Vector> fixed_tuple;
  std::map<std::string, std::vector<Vector>> sequences;
  std::map<std::string, Matrix> operators;
  std::map<std::string, Matrix> subspaces;
  std::map<std::string, Vector> vectors;
  std::optional<Matrix> induced_basis;
  std::shared_ptr<InstanceFile> tensor_left;
  std::shared_ptr<InstanceFile> tensor_right;

  bool has_tensor() const { return tensor_left && tensor_right; }
};

/// Parses an instance. Relative tensor paths resolve against `base_dir`.
/// Errors are StructuralError with a JSON path such as "$.sequences.main[2]".
InstanceFile instance_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir = {});
InstanceFile load_instance(const std::filesystem::path& path);
nlohmann::json instance_to_json(const InstanceFile& inst);

/// Names picked when the caller does not ask for one: sequence "main", else
/// the first by name; operator "K", else the identity; subspace "Y".
struct Selection {
  std::string sequence;
  std::string op;
  std::string subspace;
};

/// Single-space view of an instance.
struct ResolvedSpace {
  std::shared_ptr<const InducedSpace> space;
  std::optional<VectorSequence> sequence;
  Operator k;
  std::optional<Subspace> subspace;
};
ResolvedSpace resolve(const InstanceFile& inst, const Selection& sel = {});

FactorBundle resolve_bundle(const InstanceFile& inst, const Selection& sel = {});
/// Throws StructuralError when the instance has no tensor block.
TensorInstance resolve_tensor(const InstanceFile& inst, const Selection& sel = {});

/// Theorem input: the tensor factors when present, otherwise the single
/// space. Operators T1, T2, L1, L2 of the top level override the verifier's
/// default isometries and transforms.
TheoremInput resolve_theorem_input(const InstanceFile& inst, const Selection& sel = {});

enum class InstanceKind { frame, kframe, atomic, tensor };
InstanceKind kind_from_string(const std::string& name);

struct GenSpec {
  int dimension = 4;
  int n = 2;
  int count = 6;
  Field field = Field::real;
  InstanceKind kind = InstanceKind::frame;
};

/// Seeded random instance. K is sampled as T R so range(K) lies in the
/// synthesis range, and fixed tuples are re-sampled until well conditioned.
/// Throws StructuralError for infeasible specs.
InstanceFile gen_random(const GenSpec& spec, std::uint64_t seed);

}  // namespace nhf

#endif  // NHF_INSTANCE_HPP
