#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace guidecheck {

using Event = int;
using Word = std::vector<Event>;

/// A finite event alphabet. Events are identified by their index; the order
/// is the declaration order and fixes the lexicographic order on words.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Event a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Event> find(const std::string& name) const;
  Event add(const std::string& name);

  std::string show(const Word& w) const;
  Word parse_word(const std::string& text) const;

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Event> index_;
};

/// All words over k letters of length <= n, shortlex order.
std::vector<Word> words_up_to(int k, int n);

}  // namespace guidecheck
