#include "retrace/automaton.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "json.hpp"
#include "retrace/classical.hpp"
#include "retrace/oracle.hpp"
#include "retrace/reordering.hpp"

namespace retrace {

namespace {

auto is_refined(AutomatonKind kind) -> bool {
  return kind == AutomatonKind::RefinedUnbounded || kind == AutomatonKind::RefinedTruncated;
}

auto normalize_list(const StateList& g, std::optional<TheoryTier> tier) -> StateList {
  if (!tier) return g;
  StateList out;
  out.reserve(g.size());
  for (const auto& e : g) out.push_back(normalize(e, *tier));
  return out;
}

auto label_of(AutomatonKind kind, const StateList& g) -> std::string {
  if (!is_refined(kind)) return render_regexp(g.front());
  std::string out = "[";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) out += ", ";
    out += render_regexp(g[i]);
  }
  out += "]";
  return out;
}

auto dedup(std::vector<StateList> lists) -> std::vector<StateList> {
  std::set<StateList, StateListLess> seen(lists.begin(), lists.end());
  return {seen.begin(), seen.end()};
}

}  // namespace

auto kind_name(AutomatonKind kind, std::optional<std::size_t> bound) -> std::string {
  switch (kind) {
    case AutomatonKind::ClassicalBrzozowski:
      return "classical-brzozowski";
    case AutomatonKind::ClassicalAntimirov:
      return "classical-antimirov";
    case AutomatonKind::ReorderBrzozowski:
      return "reorder-brzozowski";
    case AutomatonKind::ReorderAntimirov:
      return "reorder-antimirov";
    case AutomatonKind::RefinedUnbounded:
      return "refined-unbounded";
    case AutomatonKind::RefinedTruncated: {
      std::string out = "refined-truncated";
      if (bound) out += "(" + std::to_string(*bound) + ")";
      return out;
    }
  }
  return "unknown";
}

auto automaton_step(AutomatonKind kind, const StateList& key, LetterId a,
                    const IndependenceAlphabet& sigma, std::optional<TheoryTier> tier,
                    std::optional<std::size_t> bound) -> std::vector<StateList> {
  std::vector<StateList> raw;
  switch (kind) {
    case AutomatonKind::ClassicalBrzozowski:
      raw.push_back({brzozowski_derive(key.front(), a)});
      break;
    case AutomatonKind::ClassicalAntimirov:
      for (const auto& p : antimirov_step(key.front(), a)) raw.push_back({p});
      break;
    case AutomatonKind::ReorderBrzozowski:
      raw.push_back({brz_reorder_derive(key.front(), a, sigma)});
      break;
    case AutomatonKind::ReorderAntimirov:
      for (const auto& p : antimirov_reorder_step(key.front(), a, sigma)) raw.push_back({p});
      break;
    case AutomatonKind::RefinedUnbounded:
    case AutomatonKind::RefinedTruncated: {
      auto next = list_step(key, a, sigma,
                            kind == AutomatonKind::RefinedTruncated ? bound : std::nullopt);
      raw.assign(next.begin(), next.end());
      break;
    }
  }
  if (tier) {
    for (auto& g : raw) g = normalize_list(g, tier);
  }
  return dedup(std::move(raw));
}

auto state_final(AutomatonKind kind, const StateList& key) -> bool {
  if (!is_refined(kind)) return nullable(key.front());
  if (key.size() == 1) return nullable(key.front());
  return key.size() == 2 && nullable(key[0]) && nullable(key[1]);
}

auto build_automaton(const Regexp& e, const IndependenceAlphabet& sigma, AutomatonKind kind,
                     std::optional<std::size_t> bound, std::optional<TheoryTier> tier,
                     const ExplorationBudget& budget) -> Automaton {
  if (kind == AutomatonKind::RefinedTruncated && !bound) {
    throw std::invalid_argument("truncated refined automaton requires a bound");
  }
  Automaton m;
  m.kind = kind;
  m.bound = kind == AutomatonKind::RefinedTruncated ? bound : std::nullopt;
  m.tier = tier;
  m.alphabet = sigma;
  m.deterministic =
      kind == AutomatonKind::ClassicalBrzozowski || kind == AutomatonKind::ReorderBrzozowski;

  std::map<StateList, std::size_t, StateListLess> index;
  // Admits a state if the budget allows; returns its id, or nothing if full.
  auto admit = [&](const StateList& raw) -> std::optional<std::size_t> {
    StateList key = normalize_list(raw, tier);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (m.states.size() >= budget.max_states) {
      m.complete = false;
      return std::nullopt;
    }
    std::size_t id = m.states.size();
    index.emplace(key, id);
    m.states.push_back(key);
    m.labels.push_back(label_of(kind, raw));
    m.finals.push_back(state_final(kind, key));
    return id;
  };

  if (budget.max_states == 0) throw std::invalid_argument("state budget must be positive");
  StateList root = {e};
  m.initial = *admit(root);

  std::set<std::tuple<std::size_t, LetterId, std::size_t>> edges;
  std::deque<std::pair<std::size_t, std::size_t>> queue;  // (state, depth)
  queue.emplace_back(m.initial, 0);

  while (!queue.empty()) {
    auto [i, depth] = queue.front();
    queue.pop_front();
    const StateList key = m.states[i];
    bool at_depth_limit = budget.max_depth && depth >= *budget.max_depth;
    for (LetterId a = 0; a < sigma.size(); ++a) {
      auto succs = automaton_step(kind, key, a, sigma, std::nullopt, bound);
      if (at_depth_limit) {
        if (!succs.empty()) m.complete = false;
        continue;
      }
      for (const auto& s : succs) {
        std::size_t before = m.states.size();
        auto id = admit(s);
        if (!id) continue;
        if (edges.emplace(i, a, *id).second) {
          m.transitions.push_back({i, a, *id});
        }
        if (m.states.size() > before) {
          queue.emplace_back(*id, depth + 1);
        }
      }
    }
  }
  return m;
}

auto accepts(const Automaton& m, const Word& w) -> bool {
  std::set<StateList, StateListLess> frontier;
  frontier.insert(m.states[m.initial]);
  for (LetterId a : w) {
    std::set<StateList, StateListLess> next;
    for (const auto& key : frontier) {
      for (auto& s : automaton_step(m.kind, key, a, m.alphabet, m.tier, m.bound)) {
        next.insert(std::move(s));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) return false;
  }
  for (const auto& key : frontier) {
    if (state_final(m.kind, key)) return true;
  }
  return false;
}

auto bounded_language(const Automaton& m, std::size_t max_len, std::size_t cap) -> std::vector<Word> {
  if (max_len > cap) throw std::invalid_argument("length bound exceeds enumeration cap");
  std::size_t limit = max_len;
  std::map<StateList, std::map<LetterId, std::vector<StateList>>, StateListLess> memo;
  auto step = [&](const StateList& key, LetterId a) -> const std::vector<StateList>& {
    auto& row = memo[key];
    auto it = row.find(a);
    if (it == row.end()) {
      it = row.emplace(a, automaton_step(m.kind, key, a, m.alphabet, m.tier, m.bound)).first;
    }
    return it->second;
  };

  std::vector<Word> out;
  Word word;
  using Frontier = std::set<StateList, StateListLess>;
  auto walk = [&](auto&& self, const Frontier& frontier) -> void {
    for (const auto& key : frontier) {
      if (state_final(m.kind, key)) {
        out.push_back(word);
        break;
      }
    }
    if (word.size() >= limit) return;
    for (LetterId a = 0; a < m.alphabet.size(); ++a) {
      Frontier next;
      for (const auto& key : frontier) {
        for (const auto& s : step(key, a)) {
          if (!is_refined(m.kind) && s.front().kind() == ReKind::Zero) continue;
          next.insert(s);
        }
      }
      if (next.empty()) continue;
      word.push_back(a);
      self(self, next);
      word.pop_back();
    }
  };
  Frontier start;
  start.insert(m.states[m.initial]);
  walk(walk, start);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

auto export_dot(const Automaton& m) -> std::string {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::ostringstream os;
  os << "digraph retrace {\n";
  os << "  rankdir=LR;\n";
  os << "  node [fontname=\"monospace\"];\n";
  os << "  __start [shape=point, label=\"\"];\n";
  os << "  __start -> s" << m.initial << ";\n";
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    os << "  s" << i << " [label=\"" << escape(m.labels[i]) << "\", shape="
       << (m.finals[i] ? "doublecircle" : "circle") << "];\n";
  }
  for (const auto& t : m.transitions) {
    os << "  s" << t.from << " -> s" << t.to << " [label=\""
       << escape(m.alphabet.symbol(t.letter)) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

auto export_json(const Automaton& m) -> std::string {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(m.kind, m.bound);
  j["deterministic"] = m.deterministic;
  j["complete"] = m.complete;
  j["states"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    nlohmann::ordered_json s;
    s["id"] = i;
    s["label"] = m.labels[i];
    s["initial"] = i == m.initial;
    s["final"] = static_cast<bool>(m.finals[i]);
    j["states"].push_back(std::move(s));
  }
  j["transitions"] = nlohmann::ordered_json::array();
  for (const auto& t : m.transitions) {
    nlohmann::ordered_json e;
    e["from"] = t.from;
    e["letter"] = m.alphabet.symbol(t.letter);
    e["to"] = t.to;
    j["transitions"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace retrace
