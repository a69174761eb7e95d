#include "guidecheck/effect/reglang.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <set>

#include "guidecheck/error.hpp"

namespace guidecheck {

int Nfa::add_copy(const Nfa& other) {
  int offset = static_cast<int>(edges.size());
  for (size_t s = 0; s < other.edges.size(); ++s) {
    add_state(other.final[s]);
    for (auto [a, t] : other.edges[s]) edges.back().emplace_back(a, t + offset);
  }
  return offset;
}

RegLang RegLang::from_dfa(int k, std::vector<int> delta, std::vector<char> accepting) {
  const int n = static_cast<int>(accepting.size());
  // Moore partition refinement.
  std::vector<int> cls(n);
  for (int s = 0; s < n; ++s) cls[s] = accepting[s] ? 1 : 0;
  int count = -1;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (int a = 0; a < k; ++a) sig.push_back(cls[delta[s * k + a]]);
      auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[s] = it->second;
    }
    int c = static_cast<int>(ids.size());
    cls = std::move(next);
    if (c == count) break;
    count = c;
  }
  // Renumber reachable classes breadth-first from the start state.
  std::vector<int> rep(count, -1);
  for (int s = n - 1; s >= 0; --s) rep[cls[s]] = s;
  std::vector<int> order(count, -1);
  std::vector<int> queue{cls[0]};
  order[cls[0]] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    int c = queue[i];
    for (int a = 0; a < k; ++a) {
      int d = cls[delta[rep[c] * k + a]];
      if (order[d] < 0) {
        order[d] = static_cast<int>(queue.size());
        queue.push_back(d);
      }
    }
  }
  const int m = static_cast<int>(queue.size());
  std::vector<int> nd(static_cast<size_t>(m) * k);
  std::vector<char> na(m);
  for (int i = 0; i < m; ++i) {
    int s = rep[queue[i]];
    na[i] = accepting[s];
    for (int a = 0; a < k; ++a) nd[i * k + a] = order[cls[delta[s * k + a]]];
  }
  return RegLang(k, std::move(nd), std::move(na));
}

RegLang RegLang::empty(int k) { return from_dfa(k, std::vector<int>(k, 0), {0}); }

RegLang RegLang::epsilon(int k) {
  std::vector<int> d(2 * k, 1);
  return from_dfa(k, d, {1, 0});
}

RegLang RegLang::letter(int k, Event a) { return of_word(k, Word{a}); }

RegLang RegLang::universal(int k) { return from_dfa(k, std::vector<int>(k, 0), {1}); }

RegLang RegLang::of_word(int k, const Word& w) {
  // States 0..|w| follow the word, state |w|+1 is dead.
  const int n = static_cast<int>(w.size()) + 2;
  const int dead = n - 1;
  std::vector<int> d(static_cast<size_t>(n) * k, dead);
  std::vector<char> acc(n, 0);
  for (size_t i = 0; i < w.size(); ++i) d[i * k + w[i]] = static_cast<int>(i) + 1;
  acc[w.size()] = 1;
  return from_dfa(k, std::move(d), std::move(acc));
}

RegLang RegLang::of_words(int k, const std::vector<Word>& ws) {
  // Trie construction.
  std::vector<std::vector<int>> child{std::vector<int>(k, -1)};
  std::vector<char> acc{0};
  for (const auto& w : ws) {
    int s = 0;
    for (Event a : w) {
      if (child[s][a] < 0) {
        child[s][a] = static_cast<int>(child.size());
        child.emplace_back(k, -1);
        acc.push_back(0);
      }
      s = child[s][a];
    }
    acc[s] = 1;
  }
  const int dead = static_cast<int>(child.size());
  std::vector<int> d(static_cast<size_t>(dead + 1) * k, dead);
  for (int s = 0; s < dead; ++s)
    for (int a = 0; a < k; ++a)
      if (child[s][a] >= 0) d[s * k + a] = child[s][a];
  acc.push_back(0);
  return from_dfa(k, std::move(d), std::move(acc));
}

RegLang RegLang::determinize(const Nfa& nfa) {
  const int k = nfa.letters;
  auto closure = [&](std::vector<int> set) {
    std::vector<char> seen(nfa.edges.size(), 0);
    for (int s : set) seen[s] = 1;
    for (size_t i = 0; i < set.size(); ++i)
      for (auto [a, t] : nfa.edges[set[i]])
        if (a < 0 && !seen[t]) {
          seen[t] = 1;
          set.push_back(t);
        }
    std::sort(set.begin(), set.end());
    return set;
  };
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<int>(sets.size()));
    if (fresh) sets.push_back(std::move(s));
    return it->second;
  };
  intern(closure(nfa.starts));
  std::vector<int> delta;
  std::vector<char> acc;
  for (size_t i = 0; i < sets.size(); ++i) {
    const std::vector<int> cur = sets[i];
    bool f = false;
    for (int s : cur) f = f || nfa.final[s];
    acc.push_back(f);
    for (int a = 0; a < k; ++a) {
      std::vector<int> succ;
      for (int s : cur)
        for (auto [b, t] : nfa.edges[s])
          if (b == a) succ.push_back(t);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      delta.push_back(intern(closure(std::move(succ))));
    }
  }
  return from_dfa(k, std::move(delta), std::move(acc));
}

bool RegLang::contains(const Word& w) const {
  int s = 0;
  for (Event a : w) {
    if (a < 0 || a >= k_) return false;
    s = next(s, a);
  }
  return accepting(s);
}

bool RegLang::is_empty() const {
  // Canonical form: the empty language is the single rejecting state.
  return states() == 1 && !accepting(0);
}

template <class Pred>
RegLang RegLang::product(const RegLang& o, Pred keep) const {
  if (k_ != o.k_) throw UsageError("regular languages over different alphabets");
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs{{0, 0}};
  ids[{0, 0}] = 0;
  std::vector<int> delta;
  std::vector<char> acc;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    acc.push_back(keep(accepting(p), o.accepting(q)));
    for (int a = 0; a < k_; ++a) {
      std::pair<int, int> nx{next(p, a), o.next(q, a)};
      auto [it, fresh] = ids.emplace(nx, static_cast<int>(pairs.size()));
      if (fresh) pairs.push_back(nx);
      delta.push_back(it->second);
    }
  }
  return from_dfa(k_, std::move(delta), std::move(acc));
}

RegLang RegLang::unite(const RegLang& o) const {
  return product(o, [](bool a, bool b) { return a || b; });
}
RegLang RegLang::intersect(const RegLang& o) const {
  return product(o, [](bool a, bool b) { return a && b; });
}
RegLang RegLang::minus(const RegLang& o) const {
  return product(o, [](bool a, bool b) { return a && !b; });
}

bool RegLang::subset_of(const RegLang& o) const { return minus(o).is_empty(); }

Nfa RegLang::to_nfa() const {
  Nfa n(k_);
  for (int s = 0; s < states(); ++s) n.add_state(accepting(s));
  for (int s = 0; s < states(); ++s)
    for (int a = 0; a < k_; ++a) n.add_edge(s, a, next(s, a));
  n.starts = {0};
  return n;
}

RegLang RegLang::concat(const RegLang& o) const {
  if (k_ != o.k_) throw UsageError("regular languages over different alphabets");
  Nfa n = to_nfa();
  int off = n.add_copy(o.to_nfa());
  for (int s = 0; s < states(); ++s)
    if (accepting(s)) {
      n.final[s] = 0;
      n.add_edge(s, -1, off);
    }
  return determinize(n);
}

RegLang RegLang::star() const {
  Nfa n(k_);
  int start = n.add_state(true);
  int off = n.add_copy(to_nfa());
  n.add_edge(start, -1, off);
  for (int s = 0; s < states(); ++s)
    if (accepting(s)) n.add_edge(off + s, -1, start);
  n.starts = {start};
  return determinize(n);
}

RegLang RegLang::nonempty() const { return minus(epsilon(k_)); }

std::vector<Word> RegLang::words_up_to(int n) const {
  std::vector<Word> out;
  for (auto& w : guidecheck::words_up_to(k_, n))
    if (contains(w)) out.push_back(w);
  return out;
}

std::optional<Word> RegLang::shortest() const {
  std::vector<int> parent(states(), -2), via(states(), -1);
  std::deque<int> q{0};
  parent[0] = -1;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (accepting(s)) {
      Word w;
      for (int t = s; parent[t] >= 0; t = parent[t]) w.push_back(via[t]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int a = 0; a < k_; ++a) {
      int t = next(s, a);
      if (parent[t] == -2) {
        parent[t] = s;
        via[t] = a;
        q.push_back(t);
      }
    }
  }
  return std::nullopt;
}

namespace {

// Small regex tree used for rendering by state elimination.
struct Rx;
using RxPtr = std::shared_ptr<const Rx>;
struct Rx {
  enum Kind { Eps, Sym, Alt, Cat, Star } kind;
  Event sym = 0;
  std::vector<RxPtr> kids;
};

RxPtr eps() { return std::make_shared<Rx>(Rx{Rx::Eps, 0, {}}); }
RxPtr sym(Event a) { return std::make_shared<Rx>(Rx{Rx::Sym, a, {}}); }

std::string render(const RxPtr& r, const Alphabet& sigma, int prec);

bool same(const RxPtr& a, const RxPtr& b, const Alphabet& sigma) {
  return render(a, sigma, 0) == render(b, sigma, 0);
}

// nullptr encodes the empty language.
RxPtr alt(const RxPtr& a, const RxPtr& b, const Alphabet& sigma) {
  if (!a) return b;
  if (!b) return a;
  if (same(a, b, sigma)) return a;
  return std::make_shared<Rx>(Rx{Rx::Alt, 0, {a, b}});
}
RxPtr cat(const RxPtr& a, const RxPtr& b) {
  if (!a || !b) return nullptr;
  if (a->kind == Rx::Eps) return b;
  if (b->kind == Rx::Eps) return a;
  return std::make_shared<Rx>(Rx{Rx::Cat, 0, {a, b}});
}
RxPtr rx_star(const RxPtr& a) {
  if (!a || a->kind == Rx::Eps) return eps();
  if (a->kind == Rx::Star) return a;
  return std::make_shared<Rx>(Rx{Rx::Star, 0, {a}});
}

std::string render(const RxPtr& r, const Alphabet& sigma, int prec) {
  if (!r) return "{}";
  std::string s;
  int mine = 0;
  switch (r->kind) {
    case Rx::Eps: return "eps";
    case Rx::Sym: return sigma.name(r->sym);
    case Rx::Alt:
      mine = 0;
      s = render(r->kids[0], sigma, 0) + " | " + render(r->kids[1], sigma, 0);
      break;
    case Rx::Cat:
      mine = 1;
      s = render(r->kids[0], sigma, 1) + " " + render(r->kids[1], sigma, 1);
      break;
    case Rx::Star:
      mine = 2;
      s = render(r->kids[0], sigma, 2) + "*";
      break;
  }
  return mine < prec ? "(" + s + ")" : s;
}

}  // namespace

std::string RegLang::to_regex(const Alphabet& sigma) const {
  // Generalized NFA: states 0..n-1, source n, sink n+1.
  const int n = states();
  const int src = n, snk = n + 1;
  std::vector<std::vector<RxPtr>> r(n + 2, std::vector<RxPtr>(n + 2));
  // Only co-reachable states matter.
  std::vector<char> live(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (live[s]) continue;
      bool l = accepting(s);
      for (int a = 0; a < k_ && !l; ++a) l = live[next(s, a)];
      if (l) live[s] = changed = true;
    }
  }
  if (!live[0]) return "{}";
  for (int s = 0; s < n; ++s) {
    if (!live[s]) continue;
    for (int a = 0; a < k_; ++a)
      if (live[next(s, a)]) r[s][next(s, a)] = alt(r[s][next(s, a)], sym(a), sigma);
    if (accepting(s)) r[s][snk] = eps();
  }
  r[src][0] = eps();
  for (int x = 0; x < n; ++x) {
    if (!live[x]) continue;
    RxPtr loop = rx_star(r[x][x]);
    for (int i = 0; i < n + 2; ++i) {
      if (i == x || !r[i][x]) continue;
      for (int j = 0; j < n + 2; ++j) {
        if (j == x || !r[x][j]) continue;
        r[i][j] = alt(r[i][j], cat(cat(r[i][x], loop), r[x][j]), sigma);
      }
    }
    for (int i = 0; i < n + 2; ++i) r[i][x] = r[x][i] = nullptr;
  }
  return render(r[src][snk], sigma, 0);
}

namespace {

class RegexParser {
 public:
  RegexParser(const std::string& text, const Alphabet& sigma) : text_(text), sigma_(sigma) {
    lex();
  }

  RegLang parse() {
    if (toks_.empty()) throw InputError("empty regular expression");
    RegLang r = alternation();
    if (pos_ != toks_.size()) fail("unexpected '" + toks_[pos_] + "'");
    return r;
  }

 private:
  void lex() {
    size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '|' || c == '*' || c == '(' || c == ')') {
        toks_.emplace_back(1, c);
        ++i;
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) ||
                                    text_[j] == '_' || text_[j] == '$'))
          ++j;
        toks_.push_back(text_.substr(i, j - i));
        i = j;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("regex '" + text_ + "': " + msg);
  }

  bool at(const char* t) const { return pos_ < toks_.size() && toks_[pos_] == t; }

  RegLang alternation() {
    RegLang r = concatenation();
    while (at("|")) {
      ++pos_;
      r = r.unite(concatenation());
    }
    return r;
  }

  RegLang concatenation() {
    RegLang r = repetition();
    while (pos_ < toks_.size() && !at("|") && !at(")")) r = r.concat(repetition());
    return r;
  }

  RegLang repetition() {
    RegLang r = atom();
    while (at("*")) {
      ++pos_;
      r = r.star();
    }
    return r;
  }

  RegLang atom() {
    const int k = sigma_.size();
    if (pos_ >= toks_.size()) fail("unexpected end");
    const std::string& t = toks_[pos_++];
    if (t == "(") {
      RegLang r = alternation();
      if (!at(")")) fail("missing ')'");
      ++pos_;
      return r;
    }
    if (t == "eps") return RegLang::epsilon(k);
    if (t == "|" || t == "*" || t == ")") fail("unexpected '" + t + "'");
    auto e = sigma_.find(t);
    if (!e) fail("event '" + t + "' is not in the alphabet");
    return RegLang::letter(k, *e);
  }

  std::string text_;
  const Alphabet& sigma_;
  std::vector<std::string> toks_;
  size_t pos_ = 0;
};

}  // namespace

RegLang parse_regex(const std::string& text, const Alphabet& sigma) {
  return RegexParser(text, sigma).parse();
}

}  // namespace guidecheck
