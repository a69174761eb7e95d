#include "guidecheck/effect/alphabet.hpp"

#include <sstream>

#include "guidecheck/error.hpp"

namespace guidecheck {

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) add(n);
}

std::optional<Event> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Event Alphabet::add(const std::string& name) {
  if (auto e = find(name)) return *e;
  Event e = size();
  names_.push_back(name);
  index_.emplace(name, e);
  return e;
}

std::string Alphabet::show(const Word& w) const {
  if (w.empty()) return "eps";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::parse_word(const std::string& text) const {
  std::istringstream in(text);
  Word w;
  std::string tok;
  while (in >> tok) {
    if (tok == "eps") continue;
    auto e = find(tok);
    if (!e) throw InputError("event '" + tok + "' is not in the alphabet");
    w.push_back(*e);
  }
  return w;
}

std::vector<Word> words_up_to(int k, int n) {
  std::vector<Word> out{Word{}};
  size_t begin = 0;
  for (int len = 1; len <= n; ++len) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (Event a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace guidecheck
