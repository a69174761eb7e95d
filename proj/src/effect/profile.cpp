#include "guidecheck/effect/profile.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "guidecheck/error.hpp"

namespace guidecheck {

std::vector<std::tuple<int, int, int>> Profile::triples() const {
  std::vector<std::tuple<int, int, int>> out;
  const int n = static_cast<int>(zero.size());
  for (int q = 0; q < n; ++q)
    for (int b = 0; b < 2; ++b)
      for (int r = 0; r < n; ++r)
        if (has(q, b, r)) out.emplace_back(q, b, r);
  return out;
}

size_t ProfileHash::operator()(const Profile& p) const {
  size_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&](StateSet x) { h ^= std::hash<StateSet>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  for (auto x : p.zero) mix(x);
  for (auto x : p.one) mix(x);
  return h;
}

Profile compose(const Profile& p1, const Profile& p2) {
  const size_t n = p1.zero.size();
  if (p2.zero.size() != n) throw UsageError("profiles over different automata");
  Profile out{std::vector<StateSet>(n, 0), std::vector<StateSet>(n, 0)};
  for (size_t q = 0; q < n; ++q) {
    StateSet z = 0, o = 0;
    for (size_t r = 0; r < n; ++r) {
      StateSet b = StateSet{1} << r;
      if (p1.zero[q] & b) {
        z |= p2.zero[r];
        o |= p2.one[r];
      }
      if (p1.one[q] & b) o |= p2.zero[r] | p2.one[r];
    }
    out.zero[q] = z;
    out.one[q] = o;
  }
  return out;
}

Profile empty_word_profile(const GuidelineAutomaton& g) {
  const int n = g.size();
  Profile p{std::vector<StateSet>(n, 0), std::vector<StateSet>(n, 0)};
  for (int q = 0; q < n; ++q) ((g.accepting() & bit(q)) ? p.one : p.zero)[q] = bit(q);
  return p;
}

Profile letter_profile(const GuidelineAutomaton& g, Event a) {
  const int n = g.size();
  Profile p{std::vector<StateSet>(n, 0), std::vector<StateSet>(n, 0)};
  for (int q = 0; q < n; ++q) {
    StateSet s = g.succ(q, a);
    for (int r = 0; r < n; ++r) {
      if (!(s & bit(r))) continue;
      bool acc = (g.accepting() & (bit(q) | bit(r))) != 0;
      (acc ? p.one : p.zero)[q] |= bit(r);
    }
  }
  return p;
}

Profile profile_of_word(const GuidelineAutomaton& g, const Word& w) {
  Profile p = empty_word_profile(g);
  for (Event a : w) {
    if (a < 0 || a >= g.alphabet().size()) throw UsageError("letter outside the alphabet");
    p = compose(p, letter_profile(g, a));
  }
  return p;
}

ProfileMonoid::ProfileMonoid(GuidelineAutomaton g) : g_(std::move(g)) {
  profiles_.push_back(empty_word_profile(g_));
  witness_.push_back({});
  const int k = g_.alphabet().size();
  for (Event a = 0; a < k; ++a) letters_.push_back(intern(letter_profile(g_, a), Word{a}));
  for (size_t i = 1; i < profiles_.size(); ++i) {
    for (Event a = 0; a < k; ++a) {
      Word w = witness_[i];
      w.push_back(a);
      intern(compose(profiles_[i], profiles_[letters_[a]]), w);
    }
  }
  const size_t n = size();
  for (ProfileId x = 0; x < n; ++x) {
    const Profile& p = profiles_[x];
    bool acc = false;
    for (int q = 0; q < g_.size() && !acc; ++q)
      if (g_.initial() & bit(q)) acc = (p.reach(q) & g_.accepting()) != 0;
    accepting_.push_back(acc);
  }
  if (n <= 2048) {
    table_.assign(n * n, 0);
    for (ProfileId x = 0; x < n; ++x)
      for (ProfileId y = 0; y < n; ++y) {
        if (x == kUnit) table_[x * n + y] = y;
        else if (y == kUnit) table_[x * n + y] = x;
        else table_[x * n + y] = ids_.at(compose(profiles_[x], profiles_[y]));
      }
  }
  for (ProfileId x = 1; x < n; ++x)
    if (idempotent(x)) {
      idempotents_.push_back(x);
      StateSet w = 0;
      const Profile& e = profiles_[x];
      for (int q = 0; q < g_.size(); ++q)
        for (int r = 0; r < g_.size(); ++r)
          if ((e.reach(q) & bit(r)) && e.has(r, true, r)) w |= bit(q);
      idempotent_value_.push_back(w);
    }
  // Shortest period per loop value; (aa)^w and a^w share one.
  std::map<StateSet, Word> loops;
  for (ProfileId y = 1; y < n; ++y) {
    auto [it, fresh] = loops.try_emplace(omega_power(y), witness_[y]);
    if (!fresh && witness_[y].size() < it->second.size()) it->second = witness_[y];
  }
  std::set<StateSet> vals;
  for (ProfileId s = 0; s < n; ++s)
    for (const auto& [lv, lw] : loops) {
      StateSet v = act(s, lv);
      auto it = value_witness_.find(v);
      if (vals.insert(v).second)
        value_witness_[v] = {witness_[s], lw};
      else if (witness_[s].size() + lw.size() < it->second.first.size() + it->second.second.size())
        it->second = {witness_[s], lw};
    }
  values_.assign(vals.begin(), vals.end());
}

ProfileId ProfileMonoid::intern(const Profile& p, const Word& w) {
  auto it = ids_.find(p);
  if (it != ids_.end()) return it->second;
  if (profiles_.size() >= kMaxSize)
    throw InputError("guideline automaton is too large: profile monoid exceeds " +
                     std::to_string(kMaxSize) + " elements");
  ProfileId id = static_cast<ProfileId>(profiles_.size());
  profiles_.push_back(p);
  witness_.push_back(w);
  ids_.emplace(p, id);
  return id;
}

ProfileId ProfileMonoid::mul(ProfileId x, ProfileId y) const {
  const size_t n = size();
  if (!table_.empty()) return table_[x * n + y];
  if (x == kUnit) return y;
  if (y == kUnit) return x;
  return ids_.at(compose(profiles_[x], profiles_[y]));
}

ProfileId ProfileMonoid::of_word(const Word& w) const {
  ProfileId x = kUnit;
  for (Event a : w) {
    if (a < 0 || a >= static_cast<Event>(letters_.size())) throw UsageError("letter outside the alphabet");
    x = mul(x, letters_[a]);
  }
  return x;
}

StateSet ProfileMonoid::act(ProfileId p, StateSet x) const {
  if (p == kUnit) return x;
  const Profile& pr = profiles_[p];
  StateSet out = 0;
  for (int q = 0; q < g_.size(); ++q)
    if (pr.reach(q) & x) out |= bit(q);
  return out;
}

StateSet ProfileMonoid::omega_power(ProfileId p) const {
  if (p == kUnit) throw UsageError("omega power of the empty word");
  ProfileId x = p;
  while (!idempotent(x)) x = mul(x, p);
  auto it = std::lower_bound(idempotents_.begin(), idempotents_.end(), x);
  return idempotent_value_[it - idempotents_.begin()];
}

StateSet ProfileMonoid::lasso_value(const Word& u, const Word& v) const {
  if (v.empty()) throw UsageError("lasso period must be nonempty");
  return act(of_word(u), omega_power(of_word(v)));
}

FinAbs::FinAbs(const ProfileMonoid* owner, std::vector<ProfileId> ids)
    : owner_(owner), ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool FinAbs::contains(ProfileId x) const { return std::binary_search(ids_.begin(), ids_.end(), x); }

void ProfileDomain::check(const Fin& a) const {
  if (a.owner() && a.owner() != m_.get())
    throw UsageError("effect elements built over different guideline automata");
}

FinAbs ProfileDomain::of_ids(std::vector<ProfileId> ids) const {
  for (auto x : ids)
    if (x >= m_->size()) throw UsageError("profile id out of range");
  return Fin(m_.get(), std::move(ids));
}

FinAbs ProfileDomain::of_words(const std::vector<Word>& ws) const {
  std::vector<ProfileId> ids;
  for (auto& w : ws) ids.push_back(m_->of_word(w));
  return Fin(m_.get(), std::move(ids));
}

FinAbs ProfileDomain::from_language(const RegLang& l) const {
  const int k = alphabet().size();
  if (l.letters() != k) throw UsageError("language over a different alphabet");
  const size_t n = m_->size();
  std::vector<char> seen(static_cast<size_t>(l.states()) * n, 0);
  std::vector<std::pair<int, ProfileId>> queue{{0, ProfileMonoid::kUnit}};
  seen[0] = 1;
  std::vector<ProfileId> out;
  for (size_t i = 0; i < queue.size(); ++i) {
    auto [d, m] = queue[i];
    if (l.accepting(d)) out.push_back(m);
    for (Event a = 0; a < k; ++a) {
      int d2 = l.next(d, a);
      ProfileId m2 = m_->mul(m, m_->letter(a));
      char& s = seen[d2 * n + m2];
      if (!s) {
        s = 1;
        queue.emplace_back(d2, m2);
      }
    }
  }
  return Fin(m_.get(), std::move(out));
}

FinAbs ProfileDomain::join(const Fin& a, const Fin& b) const {
  check(a);
  check(b);
  std::vector<ProfileId> out;
  std::set_union(a.ids().begin(), a.ids().end(), b.ids().begin(), b.ids().end(),
                 std::back_inserter(out));
  return Fin(m_.get(), std::move(out));
}

bool ProfileDomain::leq(const Fin& a, const Fin& b) const {
  check(a);
  check(b);
  return std::includes(b.ids().begin(), b.ids().end(), a.ids().begin(), a.ids().end());
}

FinAbs ProfileDomain::concat(const Fin& a, const Fin& b) const {
  check(a);
  check(b);
  std::vector<ProfileId> out;
  out.reserve(a.ids().size() * b.ids().size());
  for (auto x : a.ids())
    for (auto y : b.ids()) out.push_back(m_->mul(x, y));
  return Fin(m_.get(), std::move(out));
}

FinAbs ProfileDomain::star(const Fin& a) const {
  check(a);
  Fin x = unit();
  while (true) {
    Fin next = join(unit(), concat(a, x));
    if (next == x) return x;
    x = std::move(next);
  }
}

std::vector<ProfileId> ProfileDomain::semigroup(const std::vector<ProfileId>& gens) const {
  std::vector<ProfileId> g;
  for (auto x : gens)
    if (x != ProfileMonoid::kUnit) g.push_back(x);
  std::vector<char> seen(m_->size(), 0);
  std::vector<ProfileId> out;
  for (auto x : g)
    if (!seen[x]) {
      seen[x] = 1;
      out.push_back(x);
    }
  for (size_t i = 0; i < out.size(); ++i)
    for (auto y : g) {
      ProfileId z = m_->mul(out[i], y);
      if (!seen[z]) {
        seen[z] = 1;
        out.push_back(z);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<StateSet> sorted_unique(std::vector<StateSet> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

MixAbs ProfileDomain::join(const Inf& a, const Inf& b) const {
  std::vector<StateSet> inf;
  std::set_union(a.inf.begin(), a.inf.end(), b.inf.begin(), b.inf.end(), std::back_inserter(inf));
  return Inf{join(a.fin, b.fin), std::move(inf)};
}

bool ProfileDomain::leq(const Inf& a, const Inf& b) const {
  return leq(a.fin, b.fin) && std::includes(b.inf.begin(), b.inf.end(), a.inf.begin(), a.inf.end());
}

MixAbs ProfileDomain::concat(const Fin& a, const Inf& v) const {
  check(a);
  std::vector<StateSet> inf;
  for (auto x : a.ids())
    for (auto val : v.inf) inf.push_back(m_->act(x, val));
  return Inf{concat(a, v.fin), sorted_unique(std::move(inf))};
}

MixAbs ProfileDomain::omega(const Fin& a) const {
  check(a);
  std::vector<ProfileId> s = semigroup(a.ids());
  std::vector<StateSet> inf;
  std::vector<StateSet> loops;
  for (auto e : s)
    if (m_->idempotent(e)) loops.push_back(m_->omega_power(e));
  loops = sorted_unique(std::move(loops));
  for (auto w : loops) {
    inf.push_back(w);
    for (auto x : s) inf.push_back(m_->act(x, w));
  }
  Fin fin = a.contains(ProfileMonoid::kUnit) ? star(a) : bottom();
  return Inf{std::move(fin), sorted_unique(std::move(inf))};
}

bool ProfileDomain::member(const Word& w, const Fin& a) const {
  check(a);
  return a.contains(m_->of_word(w));
}

bool ProfileDomain::member_lasso(const Word& u, const Word& v, const Inf& x) const {
  check(x.fin);
  return std::binary_search(x.inf.begin(), x.inf.end(), m_->lasso_value(u, v));
}

bool ProfileDomain::prefix_member(const Word& w, const Fin& a) const {
  check(a);
  ProfileId p = m_->of_word(w);
  for (ProfileId m = 0; m < m_->size(); ++m)
    if (a.contains(m_->mul(p, m))) return true;
  return false;
}

bool ProfileDomain::prefix_member(const Word& w, const Inf& v) const {
  if (prefix_member(w, v.fin)) return true;
  ProfileId p = m_->of_word(w);
  for (auto val : m_->values())
    if (std::binary_search(v.inf.begin(), v.inf.end(), m_->act(p, val))) return true;
  return false;
}

bool ProfileDomain::accepts(const Fin& a) const {
  check(a);
  for (auto x : a.ids())
    if (!m_->accepting(x)) return false;
  return true;
}

bool ProfileDomain::accepts(const Inf& v) const {
  if (!accepts(v.fin)) return false;
  for (auto val : v.inf)
    if (!(val & automaton().initial())) return false;
  return true;
}

std::vector<std::string> ProfileDomain::witnesses(const Fin& a) const {
  std::vector<std::pair<Word, std::string>> ws;
  for (auto x : a.ids()) ws.emplace_back(m_->witness(x), alphabet().show(m_->witness(x)));
  std::sort(ws.begin(), ws.end(), [](auto& l, auto& r) {
    return l.first.size() != r.first.size() ? l.first.size() < r.first.size() : l.first < r.first;
  });
  std::vector<std::string> out;
  for (auto& [w, s] : ws) out.push_back(s);
  return out;
}

std::vector<std::string> ProfileDomain::witnesses(const Inf& v) const {
  std::vector<std::string> out = witnesses(v.fin);
  for (auto val : v.inf) {
    auto& [u, loop] = m_->value_witness(val);
    std::string s = u.empty() ? "" : alphabet().show(u) + " ";
    out.push_back(s + "(" + alphabet().show(loop) + ")^w");
  }
  return out;
}

namespace {

std::string brace(const std::vector<std::string>& items) {
  std::string out = "{";
  for (size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "}";
}

}  // namespace

std::string ProfileDomain::show(const Fin& a) const { return brace(witnesses(a)); }
std::string ProfileDomain::show(const Inf& v) const { return brace(witnesses(v)); }

RegLang ProfileDomain::gamma(const Fin& a) const {
  check(a);
  const int k = alphabet().size();
  const size_t n = m_->size();
  std::vector<int> delta(n * k);
  std::vector<char> acc(n, 0);
  for (ProfileId x = 0; x < n; ++x) {
    acc[x] = a.contains(x);
    for (Event c = 0; c < k; ++c) delta[x * k + c] = static_cast<int>(m_->mul(x, m_->letter(c)));
  }
  return RegLang::from_dfa(k, std::move(delta), std::move(acc));
}

std::vector<std::pair<RegLang, RegLang>> ProfileDomain::gamma_pairs(StateSet value) const {
  std::vector<std::pair<RegLang, RegLang>> out;
  for (ProfileId s = 0; s < m_->size(); ++s)
    for (auto e : m_->idempotents())
      if (m_->act(s, m_->omega_power(e)) == value)
        out.emplace_back(gamma(of_ids({s})), gamma(of_ids({e})));
  return out;
}

}  // namespace guidecheck
