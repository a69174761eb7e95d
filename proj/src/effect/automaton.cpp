#include "guidecheck/effect/automaton.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "guidecheck/error.hpp"

namespace guidecheck {

GuidelineAutomaton::GuidelineAutomaton(Alphabet sigma, std::vector<std::string> states,
                                       std::vector<Transition> transitions, StateSet initial,
                                       StateSet accepting)
    : sigma_(std::move(sigma)),
      states_(std::move(states)),
      transitions_(std::move(transitions)),
      initial_(initial),
      accepting_(accepting) {
  if (size() > kMaxStates) throw InputError("guideline automaton has more than 64 states");
  succ_.assign(static_cast<size_t>(size()) * sigma_.size(), 0);
  for (const auto& t : transitions_) {
    if (t.from < 0 || t.from >= size() || t.to < 0 || t.to >= size() || t.letter < 0 ||
        t.letter >= sigma_.size())
      throw InputError("transition refers to an undeclared state or letter");
    succ_[t.from * sigma_.size() + t.letter] |= bit(t.to);
  }
  if ((initial_ | accepting_) & ~all_states()) throw InputError("undeclared initial/accepting state");
  live_ = accepting_;
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < size(); ++q) {
      if (live_ & bit(q)) continue;
      for (Event a = 0; a < sigma_.size(); ++a)
        if (succ(q, a) & live_) {
          live_ |= bit(q);
          changed = true;
          break;
        }
    }
  }
}

StateSet GuidelineAutomaton::all_states() const {
  return size() == 64 ? ~StateSet{0} : bit(size()) - 1;
}

StateSet GuidelineAutomaton::post(StateSet from, Event a) const {
  StateSet out = 0;
  for (int q = 0; q < size(); ++q)
    if (from & bit(q)) out |= succ(q, a);
  return out;
}

StateSet GuidelineAutomaton::post(StateSet from, const Word& w) const {
  for (Event a : w) from = post(from, a);
  return from;
}

bool GuidelineAutomaton::accepts_finite(const Word& w) const {
  return (post(initial_, w) & accepting_) != 0;
}

int GuidelineAutomaton::violation_position(const Word& w) const {
  StateSet cur = initial_;
  if (!(cur & live_)) return 0;
  for (size_t i = 0; i < w.size(); ++i) {
    cur = post(cur, w[i]);
    if (!(cur & live_)) return static_cast<int>(i) + 1;
  }
  return -1;
}

StateSet GuidelineAutomaton::lasso_value(const Word& u, const Word& v) const {
  if (v.empty()) throw UsageError("lasso period must be nonempty");
  const int len = static_cast<int>(u.size() + v.size());
  const int n = size();
  auto letter_at = [&](int p) { return p < static_cast<int>(u.size()) ? u[p] : v[p - u.size()]; };
  auto next_pos = [&](int p) { return p + 1 < len ? p + 1 : static_cast<int>(u.size()); };
  const int nodes = n * len;
  std::vector<std::vector<int>> adj(nodes);
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < len; ++p) {
      StateSet s = succ(q, letter_at(p));
      for (int r = 0; r < n; ++r)
        if (s & bit(r)) adj[q * len + p].push_back(r * len + next_pos(p));
    }
  // Tarjan SCC; a node is good when it lies on a cycle through an accepting node.
  std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1), stack;
  std::vector<char> on(nodes, 0);
  int counter = 0, comps = 0;
  std::function<void(int)> dfs = [&](int x) {
    index[x] = low[x] = counter++;
    stack.push_back(x);
    on[x] = 1;
    for (int y : adj[x]) {
      if (index[y] < 0) {
        dfs(y);
        low[x] = std::min(low[x], low[y]);
      } else if (on[y]) {
        low[x] = std::min(low[x], index[y]);
      }
    }
    if (low[x] == index[x]) {
      while (true) {
        int y = stack.back();
        stack.pop_back();
        on[y] = 0;
        comp[y] = comps;
        if (y == x) break;
      }
      ++comps;
    }
  };
  for (int x = 0; x < nodes; ++x)
    if (index[x] < 0) dfs(x);
  std::vector<int> comp_size(comps, 0);
  std::vector<char> comp_acc(comps, 0), comp_cycle(comps, 0);
  for (int x = 0; x < nodes; ++x) {
    ++comp_size[comp[x]];
    if (accepting_ & bit(x / len)) comp_acc[comp[x]] = 1;
    for (int y : adj[x])
      if (y == x) comp_cycle[comp[x]] = 1;
  }
  std::vector<char> good(nodes, 0);
  for (int x = 0; x < nodes; ++x) {
    int c = comp[x];
    good[x] = comp_acc[c] && (comp_size[c] > 1 || comp_cycle[c]);
  }
  // Backward closure: nodes that can reach a good node.
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < nodes; ++x) {
      if (good[x]) continue;
      for (int y : adj[x])
        if (good[y]) {
          good[x] = changed = true;
          break;
        }
    }
  }
  StateSet out = 0;
  for (int q = 0; q < n; ++q)
    if (good[q * len]) out |= bit(q);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

[[noreturn]] void guideline_fail(const std::string& origin, int line, const std::string& msg) {
  throw InputError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

GuidelineAutomaton parse_guideline(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> alphabet, states;
  std::map<std::string, int> state_index;
  std::vector<std::pair<int, std::vector<std::string>>> inits, accs, trans;
  bool seen_alphabet = false, seen_states = false, seen_initial = false;
  auto fail = [&](int l, const std::string& msg) { guideline_fail(origin, l, msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto colon = line.find(':');
    std::istringstream words(colon == std::string::npos ? line : line.substr(colon + 1));
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);
    std::string key;
    std::istringstream head(colon == std::string::npos ? line : line.substr(0, colon));
    head >> key;
    std::string extra;
    if (head >> extra) fail(lineno, "malformed line");
    if (colon == std::string::npos) {
      if (!key.empty()) fail(lineno, "malformed line (expected 'key: values')");
      continue;
    }
    if (key == "alphabet") {
      if (seen_alphabet) fail(lineno, "duplicate alphabet line");
      seen_alphabet = true;
      alphabet = args;
    } else if (key == "states") {
      if (seen_states) fail(lineno, "duplicate states line");
      seen_states = true;
      for (auto& s : args) {
        if (state_index.count(s)) fail(lineno, "duplicate state '" + s + "'");
        state_index[s] = static_cast<int>(states.size());
        states.push_back(s);
      }
    } else if (key == "initial") {
      seen_initial = true;
      inits.emplace_back(lineno, args);
    } else if (key == "accepting") {
      accs.emplace_back(lineno, args);
    } else if (key == "trans") {
      if (args.size() != 3) fail(lineno, "transition needs 'from letter to'");
      trans.emplace_back(lineno, args);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!seen_alphabet) fail(lineno, "missing alphabet line");
  if (!seen_states) fail(lineno, "missing states line");
  Alphabet sigma;
  for (auto& a : alphabet) {
    if (sigma.find(a)) fail(0, "duplicate letter '" + a + "'");
    sigma.add(a);
  }
  auto state = [&](int l, const std::string& s) {
    auto it = state_index.find(s);
    if (it == state_index.end()) guideline_fail(origin, l, "undeclared state '" + s + "'");
    return it->second;
  };
  StateSet initial = 0, accepting = 0;
  for (auto& [l, args] : inits)
    for (auto& s : args) initial |= bit(state(l, s));
  for (auto& [l, args] : accs)
    for (auto& s : args) accepting |= bit(state(l, s));
  if (!seen_initial || initial == 0) fail(inits.empty() ? lineno : inits.back().first, "empty initial state set");
  std::vector<GuidelineAutomaton::Transition> ts;
  for (auto& [l, args] : trans) {
    auto a = sigma.find(args[1]);
    if (!a) fail(l, "undeclared letter '" + args[1] + "'");
    ts.push_back({state(l, args[0]), *a, state(l, args[2])});
  }
  if (states.size() > kMaxStates) fail(0, "more than 64 states");
  return GuidelineAutomaton(std::move(sigma), std::move(states), std::move(ts), initial, accepting);
}

GuidelineAutomaton load_guideline(const std::string& path) {
  return parse_guideline(read_file(path), path);
}

}  // namespace guidecheck
