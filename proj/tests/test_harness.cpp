#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nhf/cli.hpp"
#include "nhf/instance.hpp"

using namespace nhf;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = NHF_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nhf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

fs::path scratch(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("nhf_test_" + name);
  std::ofstream(p) << content;
  return p;
}

bool same_bits(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace

TEST_CASE("generated instances round-trip bit for bit") {
  for (auto kind : {InstanceKind::frame, InstanceKind::atomic, InstanceKind::tensor}) {
    for (Field field : {Field::real, Field::complex}) {
      const InstanceFile a = gen_random(GenSpec{5, 3, 6, field, kind}, 42);
      const json j = instance_to_json(a);
      const InstanceFile b = instance_from_json(json::parse(j.dump()));
      CHECK(instance_to_json(b) == j);
      const InstanceFile& sa = a.has_tensor() ? *a.tensor_left : a;
      const InstanceFile& sb = b.has_tensor() ? *b.tensor_left : b;
      for (const auto& [name, list] : sa.sequences)
        for (std::size_t i = 0; i < list.size(); ++i)
          CHECK(same_bits(list[i], sb.sequences.at(name)[i]));
      for (const auto& [name, m] : sa.operators) CHECK(same_bits(m, sb.operators.at(name)));
    }
  }
}

TEST_CASE("numbers may be written as decimal strings") {
  const json j = json::parse(R"({"version": "nhf-instance/1",
    "ambient": {"dimension": 3, "field": "complex"},
    "fixed_tuple": [["0", 0, "1"]],
    "sequences": {"main": [[1, [0, "0.5"], 0]]}})");
  const InstanceFile inst = instance_from_json(j);
  CHECK(inst.fixed_tuple[0](2) == Scalar(1.0));
  CHECK(inst.sequences.at("main")[0](1) == Scalar(0.0, 0.5));
}

TEST_CASE("errors name the offending JSON path") {
  const auto message = [](const char* text) {
    try {
      (void)instance_from_json(json::parse(text));
    } catch (const StructuralError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"ambient": {"dimension": 2}, "fixed_tuple": []})").find("$.version") == 0);
  CHECK(message(R"({"version": "nhf-instance/1", "ambient": {"dimension": 3},
      "fixed_tuple": [[0, 0, 1]], "sequences": {"main": [[1, 0, 0], [1, 0]]}})")
            .find("$.sequences.main[1]") == 0);
  CHECK(message(R"({"version": "nhf-instance/1", "ambient": {"dimension": 3},
      "fixed_tuple": [[0, 0, "x"]]})")
            .find("$.fixed_tuple[0][2]") == 0);
  CHECK(message(R"({"version": "nhf-instance/1", "ambient": {"dimension": 3, "field": "real"},
      "fixed_tuple": [[0, 0, [1, 2]]]})")
            .find("imaginary") != std::string::npos);
  CHECK(message(R"({"version": "nhf-instance/1", "tensor": {"left": "missing.json", "right": {}}})")
            .find("$.tensor.left") == 0);

  const InstanceFile inst = instance_from_json(json::parse(R"({"version": "nhf-instance/1",
      "ambient": {"dimension": 3}, "fixed_tuple": [[0, 0, 1]],
      "sequences": {"main": [[1, 0, 0]]}, "operators": {"K": [[1, 0, 0], [0, 1, 0]]}})"));
  try {
    (void)resolve(inst);
    FAIL("expected an operator shape error");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("$.operators.K") == 0);
  }
}

TEST_CASE("every shipped instance parses under the schema") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(kData)) {
    if (entry.path().extension() != ".json") continue;
    CHECK_NOTHROW((void)load_instance(entry.path()));
    ++count;
  }
  CHECK(count >= 8);
}

TEST_CASE("generator contracts") {
  const InstanceFile frame = gen_random(GenSpec{4, 3, 6, Field::real, InstanceKind::frame}, 7);
  CHECK(frame_bounds(*resolve(frame).sequence).bounds.lower > 0.0);
  const InstanceFile atomic = gen_random(GenSpec{5, 2, 3, Field::complex, InstanceKind::atomic}, 7);
  const auto r = resolve(atomic);
  CHECK(is_atomic_system(*r.sequence, r.k).has_value());
  CHECK(instance_to_json(gen_random(GenSpec{}, 9)) == instance_to_json(gen_random(GenSpec{}, 9)));
  CHECK(instance_to_json(gen_random(GenSpec{}, 9)) != instance_to_json(gen_random(GenSpec{}, 10)));
  CHECK_THROWS_AS(gen_random(GenSpec{2, 3, 4, Field::real, InstanceKind::frame}, 1), StructuralError);
  CHECK_THROWS_AS(gen_random(GenSpec{4, 2, 2, Field::real, InstanceKind::frame}, 1), StructuralError);
  CHECK_THROWS_AS(kind_from_string("banana"), StructuralError);
}

TEST_CASE("frame bounds on the e1, e2, e1 instance") {
  const Run r = run({"frame", "bounds", "--instance", data("e1_e2_e1.json"), "--json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["result"]["lower"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(j["result"]["upper"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(j["pass"] == true);
  CHECK(j["command"] == "frame bounds");
}

TEST_CASE("n-inner product from the command line") {
  const Run r = run({"ninner", "eval", "--instance", data("e1_e2_e1.json"), "--json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  // <(1,1,0), (1,0,1) | e3> = 1 - 0 = 1
  CHECK(j["result"]["n_inner"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("verify on Parseval factors exits 0") {
  const Run r = run({"verify", "T4_3", "--instance", data("parseval_pair.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify T4_3: PASS") == 0);
}

TEST_CASE("gen is byte-identical for a fixed seed") {
  const Run a = run({"gen", "--seed", "7", "--dim", "4", "--n", "3", "--count", "6"});
  const Run b = run({"gen", "--seed", "7", "--dim", "4", "--n", "3", "--count", "6"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("verify reports are byte-identical across runs") {
  const fs::path inst = scratch(
      "tensor.json", run({"gen", "--seed", "3", "--kind", "tensor", "--dim", "4", "--count", "4"}).out);
  for (const char* id : {"T3_2", "T4_3", "T4_8"}) {
    const Run a = run({"verify", id, "--instance", inst.string(), "--seed", "5", "--json"});
    const Run b = run({"verify", id, "--instance", inst.string(), "--seed", "5", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"frame", "bounds", "--instance", "/nonexistent/x.json"}).code == 2);
  CHECK(run({"frame", "bounds"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"gen", "--dim", "2", "--n", "3"}).code == 2);
  CHECK(run({"verify", "T9_9", "--instance", data("e1_e2_e1.json")}).code == 2);
  CHECK(run({"verify", "T4_3", "--instance", data("e1_e2_e1.json")}).code == 2);
  CHECK(run({"kframe", "bounds", "--instance", data("kframe_projection.json")}).code == 0);
  CHECK(run({"frame", "bounds", "--instance", data("kframe_projection.json")}).code == 1);
  const Run bad = run({"tensor", "bounds", "--instance", data("range_violation.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("failing side: right") != std::string::npos);
  const fs::path malformed = scratch("malformed.json", "{ not json");
  const Run m = run({"frame", "bounds", "--instance", malformed.string()});
  CHECK(m.code == 2);
  CHECK(m.err.find("malformed JSON") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("every subcommand runs on the shipped corpus") {
  const std::vector<std::vector<std::string>> single = {
      {"ninner", "eval"},     {"axioms", "check"},      {"induced", "build"},
      {"frame", "bounds"},    {"kframe", "bounds"},     {"atomic", "check"},
      {"atomic", "decompose"}, {"atomic", "dual"},      {"local-atoms"}};
  for (auto args : single) {
    args.push_back("--instance");
    args.push_back(data("random_atomic.json"));
    args.push_back("--trials");
    args.push_back("50");
    const Run r = run(args);
    CHECK_MESSAGE(r.code == 0, args[0], " ", r.out, r.err);
  }
  for (const char* sub : {"bounds", "factorize"}) {
    const Run r = run({"tensor", sub, "--instance", data("complex_tensor.json"), "--trials", "50"});
    CHECK_MESSAGE(r.code == 0, sub, " ", r.out, r.err);
  }
  const Run local = run({"local-atoms", "--instance", data("local_atoms_onb.json"), "--json"});
  CHECK(local.code == 0);
  const json j = json::parse(local.out);
  CHECK(j["result"]["constant"].get<double>() == doctest::Approx(1.0));
  const Run axioms = run({"axioms", "check", "--dim", "5", "--n", "3", "--field", "complex"});
  CHECK(axioms.code == 0);
}
