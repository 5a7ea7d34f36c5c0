#include "cflobdd/kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cflobdd/apply.hpp"

namespace cflobdd {

namespace {

void post_order(const Grouping* g, std::unordered_set<const Grouping*>& seen,
                std::vector<const Grouping*>& out) {
  if (!g || !seen.insert(g).second) return;
  post_order(g->a, seen, out);
  for (const auto* b : g->b) post_order(b, seen, out);
  out.push_back(g);
}

std::string tuple_str(const ReturnTuple& t) {
  std::string s = "[";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + "]";
}

}  // namespace

std::vector<const Grouping*> reachable(const Grouping* g) {
  std::unordered_set<const Grouping*> seen;
  std::vector<const Grouping*> out;
  post_order(g, seen, out);
  return out;
}

const Grouping* MockArena::fork() {
  Grouping g;
  g.kind = Kind::fork;
  g.exits = 2;
  g.id = next_id_++;
  store_.push_back(std::move(g));
  return &store_.back();
}

const Grouping* MockArena::dont_care() {
  Grouping g;
  g.kind = Kind::dont_care;
  g.exits = 1;
  g.id = next_id_++;
  store_.push_back(std::move(g));
  return &store_.back();
}

const Grouping* MockArena::internal(uint32_t level, const Grouping* a, ReturnTuple art,
                                    std::vector<const Grouping*> b, std::vector<ReturnTuple> brt,
                                    uint32_t exits) {
  Grouping g;
  g.kind = Kind::internal;
  g.level = level;
  g.a = a;
  g.art = std::move(art);
  g.b = std::move(b);
  g.brt = std::move(brt);
  g.exits = exits;
  g.id = next_id_++;
  store_.push_back(std::move(g));
  return &store_.back();
}

std::vector<Violation> check_invariants(const Grouping& root, const std::vector<Value>& values) {
  std::vector<Violation> out;
  auto report = [&](const char* inv, const Grouping* g, int64_t index, std::string detail) {
    out.push_back({inv, g ? g->id : 0, index, std::move(detail)});
  };
  std::vector<const Grouping*> order = reachable(&root);
  std::map<std::vector<int64_t>, int64_t> signatures;
  std::unordered_map<const Grouping*, int64_t> sig_of;
  for (const Grouping* g : order) {
    std::vector<int64_t> sig{static_cast<int64_t>(g->kind), g->level, g->exits};
    if (g->kind == Kind::fork || g->kind == Kind::dont_care) {
      uint32_t want = g->kind == Kind::fork ? 2 : 1;
      if (g->level != 0 || g->exits != want || g->a || !g->b.empty())
        report("Shape", g, -1, "malformed level-0 grouping");
    } else if (!g->a || g->level == 0 || g->a->level + 1 != g->level) {
      report("Shape", g, -1, "bad A-connection");
    } else {
      const uint32_t k = g->a->exits;
      bool identity = g->art.size() == k;
      for (size_t i = 0; identity && i < g->art.size(); ++i) identity = g->art[i] == i;
      if (!identity) report("Inv1", g, -1, "A return tuple " + tuple_str(g->art) + " is not [1.." + std::to_string(k) + "]");
      if (g->b.size() != k)
        report("Inv1", g, -1, std::to_string(g->b.size()) + " B-connections for " + std::to_string(k) + " middle vertices");
      if (g->brt.size() != g->b.size()) report("Shape", g, -1, "B return tuple count differs");
      std::vector<bool> hit(g->exits, false);
      int64_t running = -1;
      for (size_t i = 0; i < g->b.size() && i < g->brt.size(); ++i) {
        const auto& rt = g->brt[i];
        if (!g->b[i] || g->b[i]->level + 1 != g->level) {
          report("Shape", g, static_cast<int64_t>(i), "bad B-connection level");
          continue;
        }
        if (rt.size() != g->b[i]->exits)
          report("Shape", g, static_cast<int64_t>(i), "return tuple length differs from callee exits");
        std::unordered_set<uint32_t> seen;
        for (uint32_t e : rt) {
          if (e >= g->exits) {
            report("Inv2a", g, static_cast<int64_t>(i), "entry " + std::to_string(e + 1) + " exceeds exit count");
            continue;
          }
          if (!seen.insert(e).second)
            report("Inv2a", g, static_cast<int64_t>(i), "repeated entry " + std::to_string(e + 1));
          if (static_cast<int64_t>(e) > running) {
            if (static_cast<int64_t>(e) != running + 1)
              report("Inv2b", g, static_cast<int64_t>(i), "entry " + std::to_string(e + 1) + " skips past running maximum " + std::to_string(running + 1));
            running = e;
          }
          hit[e] = true;
        }
      }
      for (uint32_t e = 0; e < g->exits; ++e)
        if (!hit[e]) report("Coverage", g, e, "exit " + std::to_string(e + 1) + " is never reached");
      std::set<std::pair<const Grouping*, ReturnTuple>> pairs;
      for (size_t i = 0; i < g->b.size() && i < g->brt.size(); ++i)
        if (!pairs.insert({g->b[i], g->brt[i]}).second)
          report("Inv4", g, static_cast<int64_t>(i), "duplicate (B-connection, return tuple) pair");
      sig.push_back(sig_of.count(g->a) ? sig_of[g->a] : -1);
      for (uint32_t x : g->art) sig.push_back(x);
      for (size_t i = 0; i < g->b.size(); ++i) {
        sig.push_back(-2);
        sig.push_back(sig_of.count(g->b[i]) ? sig_of[g->b[i]] : -1);
        if (i < g->brt.size())
          for (uint32_t x : g->brt[i]) sig.push_back(x);
      }
    }
    auto [it, fresh] = signatures.try_emplace(sig, static_cast<int64_t>(signatures.size()));
    if (!fresh) report("Inv3", g, -1, "structurally equal to another stored grouping");
    sig_of[g] = it->second;
  }
  if (values.size() != root.exits)
    report("Inv5", &root, -1, std::to_string(values.size()) + " values for " + std::to_string(root.exits) + " exits");
  std::unordered_set<Value, ValueHash> seen;
  for (size_t i = 0; i < values.size(); ++i)
    if (!seen.insert(values[i]).second) report("Inv6", &root, static_cast<int64_t>(i), "repeated value " + values[i].str());
  return out;
}

std::vector<Violation> check_invariants(const Cflobdd& c) {
  return check_invariants(*c.grouping(), c.values());
}

uint32_t interpret_grouping(const Grouping* g, const Assignment& a, size_t offset) {
  switch (g->kind) {
    case Kind::fork: return a[offset] ? 1 : 0;
    case Kind::dont_care: return 0;
    case Kind::internal: break;
  }
  if (g->exits == 1) return 0;
  size_t half = size_t{1} << (g->level - 1);
  uint32_t i = interpret_grouping(g->a, a, offset);
  uint32_t j = interpret_grouping(g->b[i], a, offset + half);
  return g->brt[i][j];
}

Value interpret(const Cflobdd& c, const Assignment& a) {
  uint32_t lvl = c.level();
  if (lvl >= 63 || a.size() != (size_t{1} << lvl))
    throw std::invalid_argument("interpret: assignment length must be 2^level");
  return c.values()[interpret_grouping(c.grouping(), a, 0)];
}

namespace {

using LangVec = std::vector<std::vector<std::string>>;

const LangVec& denote(const Grouping* g, std::unordered_map<const Grouping*, LangVec>& memo) {
  auto it = memo.find(g);
  if (it != memo.end()) return it->second;
  LangVec out(g->exits);
  if (g->kind == Kind::fork) {
    out = {{"0"}, {"1"}};
  } else if (g->kind == Kind::dont_care) {
    out = {{"0", "1"}};
  } else {
    const LangVec& la = denote(g->a, memo);
    for (size_t i = 0; i < g->b.size(); ++i) {
      const LangVec& lb = denote(g->b[i], memo);
      for (size_t k = 0; k < lb.size(); ++k)
        for (const auto& s : la[i])
          for (const auto& t : lb[k]) out[g->brt[i][k]].push_back(s + t);
    }
    for (auto& set : out) std::sort(set.begin(), set.end());
  }
  return memo.emplace(g, std::move(out)).first->second;
}

}  // namespace

std::vector<std::vector<std::string>> denotation(const Grouping* g) {
  if (g->level > 4) throw std::invalid_argument("denotation: level must be <= 4");
  std::unordered_map<const Grouping*, LangVec> memo;
  return denote(g, memo);
}

std::vector<std::vector<std::string>> denotation(const Cflobdd& c) { return denotation(c.grouping()); }

namespace {

const std::vector<uint32_t>& unfold_rec(const Grouping* g,
                                        std::unordered_map<const Grouping*, std::vector<uint32_t>>& memo) {
  auto it = memo.find(g);
  if (it != memo.end()) return it->second;
  std::vector<uint32_t> out;
  if (g->kind == Kind::fork) {
    out = {0, 1};
  } else if (g->kind == Kind::dont_care) {
    out = {0, 0};
  } else {
    const auto& ta = unfold_rec(g->a, memo);
    std::vector<const std::vector<uint32_t>*> tb;
    for (const auto* b : g->b) tb.push_back(&unfold_rec(b, memo));
    size_t s = ta.size();
    out.resize(s * s);
    for (size_t hi = 0; hi < s; ++hi) {
      uint32_t mid = ta[hi];
      const auto& rt = g->brt[mid];
      const auto& lo = *tb[mid];
      for (size_t l = 0; l < s; ++l) out[hi * s + l] = rt[lo[l]];
    }
  }
  return memo.emplace(g, std::move(out)).first->second;
}

}  // namespace

std::vector<uint32_t> unfold_exits(const Grouping* g) {
  if (g->level > 4) throw std::invalid_argument("unfold: level must be <= 4");
  std::unordered_map<const Grouping*, std::vector<uint32_t>> memo;
  return unfold_rec(g, memo);
}

DecisionTree unfold(const Cflobdd& c) {
  DecisionTree t;
  t.level = c.level();
  auto exits = unfold_exits(c.grouping());
  t.leaves.reserve(exits.size());
  for (uint32_t e : exits) t.leaves.push_back(c.values()[e]);
  return t;
}

namespace {

struct Folder {
  Manager& m;
  std::map<std::vector<uint32_t>, FoldResult> memo;

  FoldResult run(uint32_t level, const uint32_t* p) {
    if (level == 0) {
      if (p[0] == p[1]) return {m.dont_care(), {p[0]}};
      return {m.fork(), {p[0], p[1]}};
    }
    size_t s = size_t{1} << (size_t{1} << (level - 1));
    std::vector<uint32_t> key;
    if (s <= 16) {
      key.assign(p, p + s * s);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    std::map<std::pair<const Grouping*, std::vector<uint32_t>>, uint32_t> classes;
    std::vector<const FoldResult*> reps;
    std::vector<FoldResult> blocks(s);
    std::vector<uint32_t> a_leaves(s);
    for (size_t b = 0; b < s; ++b) {
      blocks[b] = run(level - 1, p + b * s);
      auto [it, fresh] = classes.try_emplace({blocks[b].g, blocks[b].exit_labels},
                                             static_cast<uint32_t>(reps.size()));
      if (fresh) reps.push_back(&blocks[b]);
      a_leaves[b] = it->second;
    }
    FoldResult ar = run(level - 1, a_leaves.data());
    for (uint32_t j = 0; j < ar.exit_labels.size(); ++j)
      if (ar.exit_labels[j] != j) throw std::logic_error("fold: A-connection exits not in first-visit order");
    GroupingBuilder builder(level, ar.g);
    std::unordered_map<uint32_t, uint32_t> exit_of;
    FoldResult out;
    for (const FoldResult* r : reps) {
      ReturnTuple rt;
      for (uint32_t label : r->exit_labels) {
        auto [it, fresh] = exit_of.try_emplace(label, static_cast<uint32_t>(out.exit_labels.size()));
        if (fresh) out.exit_labels.push_back(label);
        rt.push_back(it->second);
      }
      builder.push_b_connection(r->g, std::move(rt));
    }
    out.g = builder.finish(m);
    if (!key.empty()) memo.emplace(std::move(key), out);
    return out;
  }
};

}  // namespace

FoldResult fold_labels(Manager& m, uint32_t level, const std::vector<uint32_t>& leaves) {
  if (level > 5 || leaves.size() != (size_t{1} << (size_t{1} << level)))
    throw std::invalid_argument("fold: leaf count must be 2^(2^level) with level <= 5");
  Folder f{m, {}};
  return f.run(level, leaves.data());
}

Cflobdd fold(Manager& m, const DecisionTree& t) {
  auto [distinct, labels] = collapse_values(t.leaves);
  FoldResult r = fold_labels(m, t.level, labels);
  std::vector<Value> vals;
  for (uint32_t label : r.exit_labels) vals.push_back(distinct[label]);
  return m.make(r.g, std::move(vals));
}

SizeReport size_report(const Grouping* g) {
  SizeReport r;
  for (const Grouping* x : reachable(g)) {
    ++r.groupings;
    r.vertices += 1 + x->middles() + x->exits;
    if (x->kind != Kind::internal) {
      r.edges += 2;
      continue;
    }
    r.edges += 1 + x->art.size();
    for (size_t i = 0; i < x->b.size(); ++i)
      r.edges += x->b[i]->exits == 1 ? 1 : 1 + (i < x->brt.size() ? x->brt[i].size() : 0);
  }
  return r;
}

SizeReport size_report(const Cflobdd& c) {
  SizeReport r = size_report(c.grouping());
  r.value_edges = c.values().size();
  return r;
}

std::vector<uint32_t> lex_first_visit_order(const Grouping* g) {
  if (g->level > 3) throw std::invalid_argument("lex_first_visit_order: level must be <= 3");
  std::vector<uint32_t> order;
  std::vector<bool> seen(g->exits, false);
  for (uint32_t e : unfold_exits(g))
    if (!seen[e]) {
      seen[e] = true;
      order.push_back(e);
    }
  return order;
}

std::vector<uint32_t> lex_first_visit_order(const Cflobdd& c) { return lex_first_visit_order(c.grouping()); }

std::string to_text(const Cflobdd& c) {
  auto order = reachable(c.grouping());
  std::unordered_map<const Grouping*, size_t> index;
  std::ostringstream os;
  for (const Grouping* g : order) {
    index[g] = index.size();
    os << "level:" << g->level << " kind:";
    if (g->kind == Kind::fork) {
      os << "F A:- ART:[] B:[] BRT:[] exits:2\n";
      continue;
    }
    if (g->kind == Kind::dont_care) {
      os << "D A:- ART:[] B:[] BRT:[] exits:1\n";
      continue;
    }
    os << "I A:" << index.at(g->a) << " ART:" << tuple_str(g->art) << " B:[";
    for (size_t i = 0; i < g->b.size(); ++i) os << (i ? " " : "") << index.at(g->b[i]);
    os << "] BRT:[";
    for (size_t i = 0; i < g->brt.size(); ++i) os << (i ? " " : "") << tuple_str(g->brt[i]);
    os << "] exits:" << g->exits << "\n";
  }
  os << "values:[";
  for (size_t i = 0; i < c.values().size(); ++i) os << (i ? " " : "") << c.values()[i].str();
  os << "]\n";
  return os.str();
}

namespace {

std::string field(const std::string& line, const std::string& key, size_t lineno) {
  size_t pos = line.find(key);
  if (pos == std::string::npos) throw ParseError(lineno, "missing field " + key);
  pos += key.size();
  if (pos < line.size() && line[pos] == '[') {
    int depth = 0;
    for (size_t i = pos; i < line.size(); ++i) {
      if (line[i] == '[') ++depth;
      if (line[i] == ']' && --depth == 0) return line.substr(pos + 1, i - pos - 1);
    }
    throw ParseError(lineno, "unbalanced brackets in " + key);
  }
  size_t end = line.find(' ', pos);
  return line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

uint64_t number(const std::string& s, size_t lineno) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
    throw ParseError(lineno, "expected a number, got '" + s + "'");
  return std::stoull(s);
}

ReturnTuple parse_tuple(const std::string& s, size_t lineno) {
  ReturnTuple t;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    uint64_t v = number(item, lineno);
    if (v == 0) throw ParseError(lineno, "tuple entries are 1-based");
    t.push_back(static_cast<uint32_t>(v - 1));
  }
  return t;
}

}  // namespace

Cflobdd from_text(Manager& m, const std::string& text) {
  std::vector<const Grouping*> ids;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("values:", 0) == 0) {
      if (ids.empty()) throw ParseError(lineno, "values line before any grouping");
      std::string body = field(line, "values:", lineno);
      std::vector<Value> vals;
      std::stringstream ss(body);
      std::string item;
      try {
        while (ss >> item) vals.push_back(Value::parse(item));
        return m.make(ids.back(), std::move(vals));
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    }
    if (line.rfind("level:", 0) != 0) throw ParseError(lineno, "expected 'level:' or 'values:'");
    Grouping g;
    g.level = static_cast<uint32_t>(number(field(line, "level:", lineno), lineno));
    std::string kind = field(line, "kind:", lineno);
    g.exits = static_cast<uint32_t>(number(field(line, "exits:", lineno), lineno));
    if (kind == "F") {
      g.kind = Kind::fork;
    } else if (kind == "D") {
      g.kind = Kind::dont_care;
    } else if (kind == "I") {
      g.kind = Kind::internal;
      auto ref = [&](const std::string& s) {
        uint64_t v = number(s, lineno);
        if (v >= ids.size()) throw ParseError(lineno, "reference to undefined grouping " + s);
        return ids[v];
      };
      g.a = ref(field(line, " A:", lineno));
      g.art = parse_tuple(field(line, "ART:", lineno), lineno);
      std::stringstream bs(field(line, " B:", lineno));
      std::string item;
      while (bs >> item) g.b.push_back(ref(item));
      std::stringstream rs(field(line, "BRT:", lineno));
      while (rs >> item) {
        if (item.size() < 2 || item.front() != '[' || item.back() != ']')
          throw ParseError(lineno, "malformed return tuple " + item);
        g.brt.push_back(parse_tuple(item.substr(1, item.size() - 2), lineno));
      }
    } else {
      throw ParseError(lineno, "unknown kind " + kind);
    }
    try {
      ids.push_back(m.intern(std::move(g)));
    } catch (const InvariantError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  throw ParseError(lineno, "missing values line");
}

std::string to_dot(const Cflobdd& c) {
  auto order = reachable(c.grouping());
  std::ostringstream os;
  os << "digraph cflobdd {\n  compound=true;\n  node [shape=circle, label=\"\", width=0.2];\n";
  for (const Grouping* g : order) {
    std::string n = "g" + std::to_string(g->id);
    os << "  subgraph cluster_" << n << " {\n    label=\"" << n << " L" << g->level << "\";\n";
    os << "    " << n << "_entry;\n";
    for (size_t i = 0; i < g->middles(); ++i) os << "    " << n << "_m" << i << ";\n";
    for (uint32_t e = 0; e < g->exits; ++e) os << "    " << n << "_x" << e << " [shape=doublecircle];\n";
    os << "  }\n";
  }
  for (const Grouping* g : order) {
    std::string n = "g" + std::to_string(g->id);
    if (g->kind == Kind::fork) {
      os << "  " << n << "_entry -> " << n << "_x0 [label=\"0\"];\n";
      os << "  " << n << "_entry -> " << n << "_x1 [label=\"1\"];\n";
      continue;
    }
    if (g->kind == Kind::dont_care) {
      os << "  " << n << "_entry -> " << n << "_x0 [label=\"0\"];\n";
      os << "  " << n << "_entry -> " << n << "_x0 [label=\"1\"];\n";
      continue;
    }
    std::string an = "g" + std::to_string(g->a->id);
    os << "  " << n << "_entry -> " << an << "_entry [style=solid];\n";
    for (size_t i = 0; i < g->art.size(); ++i)
      os << "  " << an << "_x" << i << " -> " << n << "_m" << g->art[i] << " [style=dotted];\n";
    for (size_t i = 0; i < g->b.size(); ++i) {
      std::string bn = "g" + std::to_string(g->b[i]->id);
      os << "  " << n << "_m" << i << " -> " << bn << "_entry [style=dashed];\n";
      for (size_t k = 0; k < g->brt[i].size(); ++k)
        os << "  " << bn << "_x" << k << " -> " << n << "_x" << g->brt[i][k] << " [style=dotted];\n";
    }
  }
  std::string top = "g" + std::to_string(c.grouping()->id);
  for (size_t e = 0; e < c.values().size(); ++e) {
    std::string label = c.values()[e].str();
    os << "  v" << e << " [shape=box, label=\"" << label << "\"];\n";
    os << "  " << top << "_x" << e << " -> v" << e << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cflobdd
