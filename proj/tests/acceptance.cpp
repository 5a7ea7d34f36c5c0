// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cflobdd/cflobdd.hpp"
#include "support/dense.hpp"

using namespace cflobdd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  Outcome& outcome() { return out_; }

 private:
  Outcome out_;
};

Outcome canonicity() {
  Check c;
  Manager m(1);
  std::mt19937_64 rng(1001);
  std::vector<dense::Expr> exprs;
  for (int i = 0; i < 500; ++i) exprs.push_back(dense::random_expr(m, 2, rng, 5));
  size_t equal_pairs = 0;
  for (size_t i = 0; i < exprs.size(); ++i) {
    c.expect(check_invariants(exprs[i].node).empty(), "non-canonical result for expression " + std::to_string(i));
    c.expect(dense::table_of(exprs[i].node) == exprs[i].table, "wrong function for expression " + std::to_string(i));
    for (size_t j = i + 1; j < exprs.size(); ++j) {
      bool same_table = exprs[i].table == exprs[j].table;
      bool same_handle = exprs[i].node == exprs[j].node;
      equal_pairs += same_table;
      c.expect(same_table == same_handle, "handle equality differs from function equality at pair " +
                                              std::to_string(i) + "," + std::to_string(j));
    }
  }
  std::vector<Cflobdd> built;
  for (uint32_t l = 0; l <= 3; ++l) {
    for (uint64_t i = 0; i < (uint64_t{1} << l); ++i) built.push_back(projection(m, l, i));
    built.push_back(true_(m, l));
    built.push_back(standard_basis_vector(m, l, (l == 3 ? 201 : 1) % (uint64_t{1} << (1u << l))));
    if (l >= 1) {
      built.push_back(eq_relation(m, l));
      built.push_back(hadamard(m, l));
      built.push_back(identity(m, l));
    }
    if (l >= 2) built.push_back(cnot(m, l, 0, 1));
  }
  built.push_back(add_relation(m, 1));
  for (int i = 0; i < 50; ++i) {
    DecisionTree t{3, {}};
    for (int p = 0; p < 256; ++p) t.leaves.push_back(Value(static_cast<int>(rng() % 4)));
    built.push_back(fold(m, t));
  }
  for (const auto& b : built) c.expect(fold(m, unfold(b)) == b, "fold(unfold(C)) != C");
  c.outcome().detail = c.outcome().pass ? "500 expressions, " + std::to_string(equal_pairs) + " equal pairs, " +
                                              std::to_string(built.size()) + " fold round trips"
                                        : c.outcome().detail;
  return c.outcome();
}

Outcome operations() {
  Check c;
  Manager m(2);
  std::mt19937_64 rng(2002);
  std::vector<dense::Expr> corpus;
  for (int i = 0; i < 50; ++i) corpus.push_back(dense::random_expr(m, i % 5 == 0 ? 1 : 2, rng, 4));
  size_t checks = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    uint32_t nvars = a.table.nvars;
    for (uint32_t v = 0; v < nvars; ++v) {
      c.expect(dense::table_of(restrict(m, a.node, v, false)) == a.table.restrict(v, false), "restrict to 0");
      c.expect(dense::table_of(restrict(m, a.node, v, true)) == a.table.restrict(v, true), "restrict to 1");
      c.expect(dense::table_of(exists(m, a.node, v)) == a.table.exists(v), "exists");
      checks += 3;
    }
    for (size_t j = 0; j < corpus.size(); ++j) {
      const auto& b = corpus[j];
      if (b.table.nvars != nvars) continue;
      for (unsigned code = 0; code < 16; ++code) {
        Cflobdd r = binary_apply_and_reduce(m, a.node, b.node, ops::boolean(code));
        c.expect(dense::table_of(r) == a.table.zip(b.table, code), "binary op " + std::to_string(code));
        ++checks;
      }
      const auto& e = corpus[(i + j + 1) % corpus.size()];
      if (e.table.nvars == nvars) {
        c.expect(dense::table_of(ite(m, a.node, b.node, e.node)) == a.table.ite(b.table, e.table), "ite");
        ++checks;
      }
    }
  }
  if (c.outcome().pass) c.outcome().detail = "50 functions, " + std::to_string(checks) + " oracle comparisons";
  return c.outcome();
}

Outcome exact_values() {
  Check c;
  Manager m(3);
  SizeReport eq = size_report(eq_relation(m, 1));
  c.expect(eq.vertices == 8 && eq.edges == 11, "EQ over two variables has " + std::to_string(eq.vertices) +
                                                   " vertices and " + std::to_string(eq.edges) + " edges");
  auto [proj, ren] = collapse_classes_leftmost(std::vector<int>{2, 2, 1, 1, 4, 1, 1});
  c.expect(proj == std::vector<int>{2, 1, 4} && ren == ReductionTuple{0, 0, 1, 1, 2, 1, 1}, "collapse example");

  auto v = [&](int i) { return projection(m, 2, i); };
  Cflobdd f = or_(m, and_(m, v(0), v(1)), and_(m, v(2), v(3)));
  auto counts = count_paths(m, f);
  c.expect(f.values() == std::vector<Value>{false, true} && counts == std::vector<mpz_class>{9, 7},
           "path counts of (w and x) or (y and z)");
  const Grouping* g = f.grouping();
  c.expect(path_counts(m, g->a) == std::vector<mpz_class>{3, 1}, "A-connection path counts");
  bool saw_three_one = false, saw_four = false;
  for (const Grouping* b : g->b) {
    saw_three_one |= path_counts(m, b) == std::vector<mpz_class>{3, 1};
    saw_four |= path_counts(m, b) == std::vector<mpz_class>{4};
  }
  c.expect(saw_three_one && saw_four, "B-connection path counts");
  c.expect(middle_probabilities(m, g, 1) == std::vector<mpq_class>{mpq_class(3, 7), mpq_class(4, 7)},
           "middle vertex probabilities");

  Cflobdd lex = or_(m, xor_(m, v(0), v(1)), and_(m, and_(m, v(0), v(1)), v(2)));
  c.expect(unfold_exits(lex.grouping()->a) == std::vector<uint32_t>{0, 1, 1, 2}, "lexicographic exits of A");
  c.expect(unfold_exits(lex.grouping()) ==
               std::vector<uint32_t>{0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1},
           "lexicographic exits at level 2");
  if (c.outcome().pass) c.outcome().detail = "EQ 8/11, collapse, paths [9,7], probabilities 3/7 4/7";
  return c.outcome();
}

bool constant_deltas(const std::vector<SizeReport>& r) {
  for (size_t i = 2; i < r.size(); ++i)
    if (r[i].vertices - r[i - 1].vertices != r[1].vertices - r[0].vertices ||
        r[i].edges - r[i - 1].edges != r[1].edges - r[0].edges)
      return false;
  return true;
}

Outcome growth() {
  Check c;
  Manager m(4);
  std::vector<SizeReport> h, id, eq, add, nd;
  for (uint32_t l = 3; l <= 16; ++l) {
    h.push_back(size_report(hadamard(m, l)));
    id.push_back(size_report(identity(m, l)));
    eq.push_back(size_report(eq_relation(m, l)));
    add.push_back(size_report(add_relation(m, l - 2)));
    nd.push_back(size_report(true_(m, l)));
  }
  c.expect(constant_deltas(h), "hadamard growth");
  c.expect(constant_deltas(id), "identity growth");
  c.expect(constant_deltas(eq), "equality growth");
  c.expect(constant_deltas(add), "addition growth");
  c.expect(constant_deltas(nd), "no-distinction growth");

  {
    Manager fresh;
    auto t0 = std::chrono::steady_clock::now();
    Cflobdd big = hadamard(fresh, 20);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(s < 1.0 && big.level() == 20, "hadamard(20) took " + std::to_string(s) + " s");
  }
  const uint32_t level = 15;
  Cflobdd x = false_(m, level);
  for (uint64_t i = 0; i < (uint64_t{1} << level); ++i) x = xor_(m, x, projection(m, level, i));
  uint64_t groupings = size_report(x).groupings;
  c.expect(groupings == 16, "xor over 2^15 variables has " + std::to_string(groupings) + " groupings");
  Assignment a(size_t{1} << level, false);
  a[7] = a[30000] = a[12345] = true;
  c.expect(interpret(x, a).as_bool(), "xor value");
  if (c.outcome().pass)
    c.outcome().detail = "per-level deltas: hadamard +" + std::to_string(h[1].vertices - h[0].vertices) + "/+" +
                         std::to_string(h[1].edges - h[0].edges) + ", equality +" +
                         std::to_string(eq[1].vertices - eq[0].vertices) + "/+" + std::to_string(eq[1].edges - eq[0].edges) +
                         ", addition +" + std::to_string(add[1].vertices - add[0].vertices) + "/+" +
                         std::to_string(add[1].edges - add[0].edges) + "; xor 16 groupings";
  return c.outcome();
}

Outcome matrices() {
  Check c;
  Manager m(5);
  c.expect(kronecker_v1(m, hadamard(m, 1), hadamard(m, 1)) == hadamard(m, 2), "kron(H1, H1) != H2");
  std::mt19937_64 rng(5005);
  for (int t = 0; t < 200; ++t) {
    dense::Matrix a(4, std::vector<long long>(4)), b = a;
    std::vector<Value> ea, eb;
    for (auto* mat : {&a, &b})
      for (auto& row : *mat)
        for (auto& x : row) x = static_cast<long long>(rng() % 9) - 4;
    for (int i = 0; i < 16; ++i) {
      ea.push_back(Value(static_cast<long>(a[i / 4][i % 4])));
      eb.push_back(Value(static_cast<long>(b[i / 4][i % 4])));
    }
    Cflobdd p = matrix_mult(m, matrix_from_dense(m, 2, ea), matrix_from_dense(m, 2, eb));
    dense::Matrix want = dense::matmul(a, b);
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col)
        c.expect(matrix_entry(p, r, col) == Value(static_cast<long>(want[r][col])), "random product " + std::to_string(t));
  }
  for (uint32_t l = 1; l <= 2; ++l) {
    mpz_class scale = mpz_class(1) << (1u << (l - 1));
    c.expect(matrix_mult(m, hadamard(m, l), hadamard(m, l)) == scalar_multiply(m, identity(m, l), Value(scale)),
             "H*H at level " + std::to_string(l));
  }
  const uint32_t n = 4, l = 3;
  Amplitude phase = Amplitude::root_of_unity(1, 2);
  auto exact = [&](const dense::Complex& z, const Value& like) {
    if (z == dense::Complex(1.0)) return from_integer(1, like);
    if (z == dense::Complex(0.0)) return from_integer(0, like);
    return Value(phase);
  };
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto check_gate = [&](const Cflobdd& g, const dense::Cmatrix& want, const std::string& name) {
        for (size_t r = 0; r < 16; ++r)
          for (size_t col = 0; col < 16; ++col) {
            Value got = matrix_entry(g, r, col);
            c.expect(got == exact(want[r][col], got), name + " " + std::to_string(i) + "," + std::to_string(j));
          }
      };
      if (i < j) check_gate(cnot(m, l, i, j), dense::cnot(n, i, j), "cnot");
      check_gate(controlled_phase(m, l, i, j, Value(phase)), dense::cphase(n, i, j, phase.to_complex()), "controlled phase");
      check_gate(swap_gate(m, l, i, j), dense::swap(n, i, j), "swap");
    }
  if (c.outcome().pass) c.outcome().detail = "kron, 200 products, H*H, CNOT/CP/Swap at 4 qubits";
  return c.outcome();
}

Outcome quantum_algorithms() {
  Check c;
  std::ostringstream notes;
  {
    Manager m(6001);
    QuantumRun r = ghz(m, 8, 1000);
    size_t zeros = 0, ones = 0;
    for (const auto& s : r.samples) {
      std::string b = bits_to_string(s);
      zeros += b == "00000000";
      ones += b == "11111111";
    }
    c.expect(zeros + ones == 1000, "GHZ support");
    c.expect(std::abs(zeros / 1000.0 - 0.5) <= 0.05 && std::abs(ones / 1000.0 - 0.5) <= 0.05, "GHZ frequencies");
    notes << "GHZ " << zeros << "/" << ones;
  }
  {
    Manager m(6002);
    int ok = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
      std::mt19937_64 rng(seed);
      BitString s(16);
      for (auto&& b : s) b = rng() & 1;
      m.reseed(seed);
      QuantumRun r = bv(m, 16, s, 1);
      ok += r.success && r.answer == bits_to_string(s);
    }
    c.expect(ok == 50, "BV " + std::to_string(ok) + "/50");
    notes << ", BV " << ok << "/50";
  }
  {
    Manager m(6003);
    for (auto k : {DjOracle::constant0, DjOracle::constant1, DjOracle::balanced}) {
      QuantumRun r = dj(m, 16, k, 1);
      c.expect(r.success, "DJ oracle verdict " + r.answer);
    }
    notes << ", DJ 3/3";
  }
  {
    Manager m(6004);
    int ok = 0;
    std::mt19937_64 rng(64);
    for (int t = 0; t < 50; ++t) {
      BitString s(6);
      do {
        for (auto&& b : s) b = rng() & 1;
      } while (std::none_of(s.begin(), s.end(), [](bool b) { return b; }));
      try {
        ok += simon(m, 6, s).success;
      } catch (const SimonInconclusive&) {
      }
    }
    c.expect(ok >= 48, "Simon " + std::to_string(ok) + "/50");
    notes << ", Simon " << ok << "/50";
  }
  {
    Manager m(6005);
    const uint32_t n = 4;
    const uint64_t w = 11;
    QuantumRun r = grover(m, n, w, 1000);
    dense::State ref(n);
    for (uint32_t q = 0; q < n; ++q) ref.h(q);
    for (int i = 0; i < 3; ++i) {
      ref.phase_flip(w);
      ref.diffuse();
    }
    for (uint64_t y = 0; y < 16; ++y)
      c.expect(std::abs(amplitude(r.state, y).to_complex() - ref.amp[y]) < 1e-9, "Grover amplitude " + std::to_string(y));
    size_t hits = 0;
    for (const auto& s : r.samples) hits += bits_to_string(s) == "1011";
    c.expect(hits >= 900, "Grover frequency " + std::to_string(hits) + "/1000");
    notes << ", Grover " << hits << "/1000";
  }
  {
    Manager m(6006);
    for (uint64_t x = 0; x < 8; ++x) {
      QuantumRun r = qft(m, 3, x, 1, true);
      for (uint64_t y = 0; y < 8; ++y) {
        Value got = amplitude(r.state, y << 1);
        auto want = std::polar(1 / std::sqrt(8.0), 2 * std::numbers::pi * double(x * y % 8) / 8);
        c.expect(got.is_amplitude() && std::abs(got.to_complex() - want) < 1e-12, "QFT amplitude");
        c.expect(got == Value(Amplitude::root_of_unity(x * y % 8, 3) * Amplitude::inv_sqrt2_pow(3)), "QFT exact");
      }
    }
    notes << ", QFT exact";
  }
  if (c.outcome().pass) c.outcome().detail = notes.str();
  return c.outcome();
}

uint64_t max_groupings(const QuantumRun& r) {
  uint64_t mx = 0;
  for (const auto& s : r.steps) mx = std::max(mx, s.size.groupings);
  return mx;
}

Outcome scale() {
  Check c;
  std::ostringstream notes;
  auto timed = [](const std::function<QuantumRun()>& f, double& secs) {
    auto t0 = std::chrono::steady_clock::now();
    QuantumRun r = f();
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  double s256 = 0, s1024 = 0;
  Manager m1(7001), m2(7002);
  QuantumRun g256 = timed([&] { return ghz(m1, 256, 10); }, s256);
  QuantumRun g1024 = timed([&] { return ghz(m2, 1024, 10); }, s1024);
  c.expect(g1024.success, "GHZ at 1024 qubits");
  c.expect(s1024 < 10.0, "GHZ at 1024 qubits took " + std::to_string(s1024) + " s");
  c.expect(max_groupings(g1024) * 256 < max_groupings(g256) * 1024, "GHZ grouping growth is not sub-linear");
  notes << "GHZ " << max_groupings(g256) << "->" << max_groupings(g1024) << " groupings, " << s1024 << " s";
  for (auto k : {DjOracle::constant0, DjOracle::constant1, DjOracle::balanced}) {
    Manager a(7003), b(7004);
    double t256 = 0, t1024 = 0;
    QuantumRun d256 = timed([&] { return dj(a, 256, k, 1); }, t256);
    QuantumRun d1024 = timed([&] { return dj(b, 1024, k, 1); }, t1024);
    c.expect(d1024.success, "DJ at 1024 qubits");
    c.expect(t1024 < 10.0, "DJ at 1024 qubits took " + std::to_string(t1024) + " s");
    c.expect(max_groupings(d1024) * 256 < max_groupings(d256) * 1024, "DJ grouping growth is not sub-linear");
    if (k == DjOracle::balanced)
      notes << "; DJ " << max_groupings(d256) << "->" << max_groupings(d1024) << " groupings, " << t1024 << " s";
  }
  if (c.outcome().pass) c.outcome().detail = notes.str();
  return c.outcome();
}

/// Copies a canonical structure into a mock arena, altering one grouping on the way.
struct Mutation {
  std::string invariant;
  size_t target = 0;
};

const Grouping* copy_mutated(MockArena& arena, const Cflobdd& base, const Mutation& mu, std::vector<Value>& values) {
  std::map<const Grouping*, const Grouping*> map;
  auto order = reachable(base.grouping());
  const Grouping* fork = arena.fork();
  const Grouping* dc = arena.dont_care();
  values = base.values();
  for (size_t idx = 0; idx < order.size(); ++idx) {
    const Grouping* g = order[idx];
    if (g->kind == Kind::fork) {
      map[g] = fork;
      continue;
    }
    if (g->kind == Kind::dont_care) {
      map[g] = dc;
      continue;
    }
    ReturnTuple art = g->art;
    std::vector<const Grouping*> b;
    for (const auto* x : g->b) b.push_back(map.at(x));
    std::vector<ReturnTuple> brt = g->brt;
    if (idx == mu.target) {
      if (mu.invariant == "Inv1") {
        if (art.size() >= 2)
          std::swap(art[0], art[1]);
        else
          art.push_back(0);
      } else if (mu.invariant == "Inv2a") {
        for (auto& t : brt)
          if (t.size() >= 2) {
            t[1] = t[0];
            break;
          }
      } else if (mu.invariant == "Inv2b") {
        for (auto& t : brt)
          for (auto& e : t) e = e == 0 ? 1 : e == 1 ? 0 : e;
      } else if (mu.invariant == "Inv4") {
        b[1] = b[0];
        brt[1] = brt[0];
      }
    }
    map[g] = arena.internal(g->level, map.at(g->a), art, b, brt, g->exits);
  }
  if (mu.invariant == "Inv6") values[1] = values[0];
  return map.at(base.grouping());
}

Outcome invariant_checker() {
  Check c;
  Manager m(8);
  std::mt19937_64 rng(8008);
  std::vector<Cflobdd> bases;
  while (bases.size() < 200) {
    uint32_t level = 1 + static_cast<uint32_t>(rng() % 3);
    Cflobdd f = dense::random_expr(m, level, rng, 5).node;
    if (f.values().size() == 2) bases.push_back(f);
  }
  std::map<std::string, size_t> flagged;
  const std::vector<std::string> kinds{"Inv1", "Inv2a", "Inv2b", "Inv4", "Inv6"};
  size_t made = 0;
  while (made < 10000) {
    const Cflobdd& base = bases[rng() % bases.size()];
    const std::string& kind = kinds[made % kinds.size()];
    auto order = reachable(base.grouping());
    std::vector<size_t> eligible;
    for (size_t i = 0; i < order.size(); ++i) {
      const Grouping* g = order[i];
      if (g->kind != Kind::internal) continue;
      bool wide = false;
      for (const auto& t : g->brt) wide |= t.size() >= 2;
      if (kind == "Inv1" || (kind == "Inv2a" && wide) || (kind == "Inv2b" && g->exits >= 2) ||
          (kind == "Inv4" && g->b.size() >= 2) || kind == "Inv6")
        eligible.push_back(i);
    }
    if (eligible.empty()) continue;
    Mutation mu{kind, eligible[rng() % eligible.size()]};
    MockArena arena;
    std::vector<Value> values;
    if (made < bases.size()) {
      const Grouping* clean = copy_mutated(arena, base, Mutation{"none", 0}, values);
      c.expect(check_invariants(*clean, values).empty(), "clean copy reported a violation");
    }
    const Grouping* root = copy_mutated(arena, base, mu, values);
    bool found = false;
    for (const auto& v : check_invariants(*root, values)) found |= v.invariant == kind;
    c.expect(found, kind + " injection not flagged");
    flagged[kind] += found;
    ++made;
  }
  if (c.outcome().pass) {
    std::ostringstream os;
    os << made << " mutants:";
    for (const auto& [k, n] : flagged) os << " " << k << " " << n;
    c.outcome().detail = os.str();
  }
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 10, canonicity},   {2, 30, operations},          {3, 10, exact_values}, {4, 60, growth},
      {5, 20, matrices},     {6, 120, quantum_algorithms}, {7, 20, scale},        {8, 60, invariant_checker},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && s > cr.budget_s) o = {false, "over the " + std::to_string(cr.budget_s) + " s budget"};
    failures += !o.pass;
    std::printf("criterion %d: %s (%s; %.2f s)\n", cr.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
