#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "cflobdd/cflobdd.hpp"

namespace cflobdd::cli {

namespace {

using json = nlohmann::ordered_json;

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

uint32_t default_max_level() {
  if (const char* env = std::getenv("CFLOBDD_MAX_LEVEL")) {
    try {
      return static_cast<uint32_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw ArgumentError(std::string("CFLOBDD_MAX_LEVEL is not a number: ") + env);
    }
  }
  return 24;
}

json size_json(const SizeReport& r) {
  return {{"groupings", r.groupings}, {"vertices", r.vertices}, {"edges", r.edges}, {"value_edges", r.value_edges}};
}

uint32_t log2_exact(uint64_t n, const char* what) {
  if (n == 0 || (n & (n - 1))) throw ArgumentError(std::string(what) + " must be a power of two");
  uint32_t l = 0;
  while ((uint64_t{1} << l) < n) ++l;
  return l;
}

Cflobdd xor_chain(Manager& m, uint32_t level) {
  uint64_t n = uint64_t{1} << level;
  Cflobdd acc = projection(m, level, 0);
  for (uint64_t i = 1; i < n; ++i) acc = xor_(m, acc, projection(m, level, i));
  return acc;
}

Cflobdd matmult_suite(Manager& m, uint32_t level) {
  Cflobdd h = hadamard(m, level);
  Cflobdd id = identity(m, level);
  std::vector<Cflobdd> nots(size_t{1} << (level - 1), not_matrix(m));
  Cflobdd x = tensor_all(m, nots);
  Cflobdd sum = plus(m, matrix_mult(m, h, id), matrix_mult(m, x, h));
  return plus(m, sum, matrix_mult(m, id, x));
}

/// Structure named by spec strings such as "hadamard:2" or "projection:3:5".
Cflobdd build_named(Manager& m, const std::string& spec, uint32_t max_level) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ArgumentError("empty structure spec");
  std::vector<uint64_t> nums;
  for (size_t i = 1; i < parts.size(); ++i) {
    try {
      nums.push_back(std::stoull(parts[i]));
    } catch (const std::exception&) {
      throw ArgumentError("bad number in structure spec: " + parts[i]);
    }
  }
  auto need = [&](size_t k) {
    if (nums.size() != k) throw ArgumentError(parts[0] + " takes " + std::to_string(k) + " numeric arguments");
  };
  auto level = [&](uint64_t l) {
    if (l > max_level) throw GuardError("level " + std::to_string(l) + " exceeds the limit " + std::to_string(max_level));
    return static_cast<uint32_t>(l);
  };
  const std::string& kind = parts[0];
  try {
    if (kind == "hadamard" && (need(1), true)) return hadamard(m, level(nums[0]));
    if (kind == "identity" && (need(1), true)) return identity(m, level(nums[0]));
    if (kind == "eq" && (need(1), true)) return eq_relation(m, level(nums[0]));
    if (kind == "add" && (need(1), true)) {
      level(nums[0] + 2);
      return add_relation(m, static_cast<uint32_t>(nums[0]));
    }
    if (kind == "constant" && (need(1), true)) return true_(m, level(nums[0]));
    if (kind == "projection" && (need(2), true)) return projection(m, level(nums[0]), nums[1]);
    if (kind == "xor" && (need(1), true)) {
      if (nums[0] > 16) throw GuardError("xor structures are limited to level 16");
      return xor_chain(m, level(nums[0]));
    }
    if (kind == "cnot" && (need(3), true))
      return cnot(m, level(nums[0]), static_cast<uint32_t>(nums[1]), static_cast<uint32_t>(nums[2]));
  } catch (const std::invalid_argument& e) {
    throw ArgumentError(e.what());
  } catch (const std::out_of_range& e) {
    throw ArgumentError(e.what());
  }
  throw ArgumentError("unknown structure kind: " + kind);
}

void emit(const json& j, bool as_json, const std::string& out_path, std::ostream& out) {
  std::string text;
  if (as_json) {
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& [k, v] : j.items()) {
      if (k == "steps") {
        os << "steps:\n";
        for (const auto& s : v)
          os << "  " << s["step"].get<std::string>() << ": groupings " << s["groupings"] << ", vertices "
             << s["vertices"] << ", edges " << s["edges"] << "\n";
      } else if (k == "samples") {
        os << "samples: " << v.size() << "\n";
      } else {
        os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
    text = os.str();
  }
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw ArgumentError("cannot open output file " + out_path);
  f << text;
}

BitString random_bits(std::mt19937_64& rng, uint32_t n, bool nonzero) {
  for (;;) {
    BitString b(n);
    for (uint32_t i = 0; i < n; ++i) b[i] = rng() & 1;
    if (!nonzero || std::find(b.begin(), b.end(), true) != b.end()) return b;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CFLOBDD library front end"};
  app.require_subcommand(1);
  uint32_t max_level = 0;
  uint64_t max_shots = 1000000;
  bool as_json = false;
  std::string out_path;
  uint64_t seed = 0;

  auto* bench = app.add_subcommand("bench", "Build a benchmark structure and report its size");
  std::string suite;
  uint32_t level = 0;
  uint64_t nvars = 0;
  bench->add_option("suite", suite, "xor | eq | add | hadamard | matmult")
      ->required()
      ->check(CLI::IsMember({"xor", "eq", "add", "hadamard", "matmult"}));
  bench->add_option("--level", level, "Level of the structure");
  bench->add_option("--nvars", nvars, "Number of variables (power of two)");

  auto* quantum = app.add_subcommand("quantum", "Run a quantum algorithm");
  std::string algo, secret, oracle = "balanced";
  uint32_t qubits = 0;
  uint64_t shots = 1, marked = 0, input = 0;
  bool marked_set = false, input_set = false, use_float = false;
  quantum->add_option("algo", algo, "ghz | bv | dj | simon | grover | qft")
      ->required()
      ->check(CLI::IsMember({"ghz", "bv", "dj", "simon", "grover", "qft"}));
  quantum->add_option("--qubits", qubits, "Problem size n")->required();
  quantum->add_option("--shots", shots, "Measurements drawn from the final state");
  quantum->add_option("--secret", secret, "Hidden bit string for bv and simon");
  quantum->add_option("--oracle", oracle, "constant0 | constant1 | balanced");
  quantum->add_option("--marked", marked, "Marked index for grover")->each([&](const std::string&) { marked_set = true; });
  quantum->add_option("--input", input, "Basis index for qft")->each([&](const std::string&) { input_set = true; });
  quantum->add_flag("--float", use_float, "qft with rounded floating-point terminals");

  auto* dump = app.add_subcommand("dump", "Serialize a structure");
  std::string structure, from_file;
  bool dot = false, text = false;
  dump->add_option("--structure", structure, "e.g. hadamard:2, projection:3:5, cnot:3:0:2");
  dump->add_option("--from", from_file, "Rebuild from a text dump and serialize it again");
  dump->add_flag("--dot", dot, "Graphviz output");
  dump->add_flag("--text", text, "Line-oriented text output");

  for (auto* sub : {bench, quantum}) {
    sub->add_flag("--json", as_json, "JSON output");
    sub->add_option("--seed", seed, "RNG seed");
  }
  for (auto* sub : {bench, quantum, dump}) {
    sub->add_option("--out", out_path, "Write to a file instead of stdout");
    sub->add_option("--max-level", max_level, "Largest level allowed (default 24 or CFLOBDD_MAX_LEVEL)");
  }
  quantum->add_option("--max-shots", max_shots, "Largest shot count allowed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    err << os.str();
    return bad_arguments;
  }

  try {
    if (max_level == 0) max_level = default_max_level();
    Manager m(seed);
    if (bench->parsed()) {
      if (nvars && level) throw ArgumentError("give either --level or --nvars");
      if (nvars) level = log2_exact(nvars, "--nvars");
      if (!nvars && !level && suite != "add") throw ArgumentError("--level or --nvars is required");
      uint32_t built_level = suite == "add" ? level + 2 : level;
      if (built_level > max_level)
        throw GuardError("level " + std::to_string(built_level) + " exceeds the limit " + std::to_string(max_level));
      if (suite == "xor" && level > 16) throw GuardError("xor suite is limited to 2^16 variables");
      if (suite == "matmult" && level > 12) throw GuardError("matmult suite is limited to level 12");
      if ((suite == "eq" || suite == "hadamard" || suite == "matmult") && level == 0)
        throw ArgumentError(suite + " needs level >= 1");
      auto t0 = std::chrono::steady_clock::now();
      Cflobdd c;
      if (suite == "xor") c = xor_chain(m, level);
      if (suite == "eq") c = eq_relation(m, level);
      if (suite == "add") c = add_relation(m, level);
      if (suite == "hadamard") c = hadamard(m, level);
      if (suite == "matmult") c = matmult_suite(m, level);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      SizeReport r = size_report(c);
      json j;
      j["suite"] = suite;
      j["params"] = {{"level", built_level}, {"nvars", uint64_t{1} << std::min<uint32_t>(built_level, 63)}};
      j.update(size_json(r));
      j["time_ms"] = ms;
      j["seed"] = seed;
      j["steps"] = json::array();
      j["samples"] = json::array();
      j["success"] = true;
      emit(j, as_json, out_path, out);
      return ok;
    }
    if (quantum->parsed()) {
      if (qubits == 0) throw ArgumentError("--qubits must be positive");
      if (shots > max_shots) throw GuardError("shots " + std::to_string(shots) + " exceed the limit " + std::to_string(max_shots));
      uint32_t register_qubits = algo == "simon" ? 16 : padded_qubits(algo == "grover" || algo == "qft" ? qubits : qubits + 1);
      if (qubits > (uint32_t{1} << 30) || matrix_level(register_qubits) > max_level)
        throw GuardError("matrix level for " + std::to_string(qubits) + " qubits exceeds the limit " + std::to_string(max_level));
      std::mt19937_64 input_rng(seed ^ 0x5eedULL);
      BitString s;
      if (algo == "bv" || algo == "simon") {
        s = secret.empty() ? random_bits(input_rng, qubits, algo == "simon") : string_to_bits(secret);
        if (s.size() != qubits) throw ArgumentError("--secret must have exactly --qubits bits");
      }
      if (algo == "simon" && qubits > 8) throw ArgumentError("simon supports at most 8 qubits");
      if (algo == "grover" && qubits > 20) throw GuardError("grover is limited to 20 qubits");
      if (algo == "qft" && qubits > 12) throw GuardError("qft is limited to 12 qubits");
      if (algo == "grover" && !marked_set) marked = input_rng() & ((uint64_t{1} << qubits) - 1);
      if (algo == "qft" && !input_set) input = input_rng() & ((uint64_t{1} << qubits) - 1);
      auto t0 = std::chrono::steady_clock::now();
      QuantumRun r;
      json params = {{"qubits", qubits}, {"shots", shots}};
      if (algo == "ghz") r = ghz(m, qubits, shots);
      if (algo == "bv") r = bv(m, qubits, s, shots), params["secret"] = bits_to_string(s);
      if (algo == "dj") r = dj(m, qubits, parse_dj_oracle(oracle), shots), params["oracle"] = oracle;
      if (algo == "simon") {
        params["secret"] = bits_to_string(s);
        try {
          r = simon(m, qubits, s);
        } catch (const SimonInconclusive& e) {
          err << e.what() << "\n";
          return inconclusive;
        }
      }
      if (algo == "grover") r = grover(m, qubits, marked, shots), params["marked"] = marked;
      if (algo == "qft") r = qft(m, qubits, input, shots, !use_float), params["input"] = input, params["exact"] = !use_float;
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      json j;
      j["algo"] = algo;
      j["params"] = params;
      j.update(size_json(size_report(r.state)));
      j["time_ms"] = ms;
      j["seed"] = seed;
      j["steps"] = json::array();
      for (const auto& st : r.steps) {
        json e = {{"step", st.step}};
        e.update(size_json(st.size));
        j["steps"].push_back(e);
      }
      j["samples"] = json::array();
      for (const auto& b : r.samples) j["samples"].push_back(bits_to_string(b));
      j["answer"] = r.answer;
      j["success"] = r.success;
      emit(j, as_json, out_path, out);
      return ok;
    }
    if (dump->parsed()) {
      if (dot == text) throw ArgumentError("choose exactly one of --dot and --text");
      if (structure.empty() == from_file.empty()) throw ArgumentError("give exactly one of --structure and --from");
      Cflobdd c;
      if (!from_file.empty()) {
        std::ifstream f(from_file);
        if (!f) throw ArgumentError("cannot read " + from_file);
        std::stringstream buf;
        buf << f.rdbuf();
        c = from_text(m, buf.str());
      } else {
        c = build_named(m, structure, max_level);
      }
      std::string body = dot ? to_dot(c) : to_text(c);
      if (out_path.empty()) {
        out << body;
      } else {
        std::ofstream f(out_path);
        if (!f) throw ArgumentError("cannot open output file " + out_path);
        f << body;
      }
      return ok;
    }
  } catch (const GuardError& e) {
    err << "resource limit: " << e.what() << "\n";
    return resource_guard;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return bad_arguments;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return bad_arguments;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return bad_arguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return bad_arguments;
  }
  return bad_arguments;
}

}  // namespace cflobdd::cli
