#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guidecheck/effect/alphabet.hpp"
#include "guidecheck/infer/intrinsics.hpp"
#include "guidecheck/infer/region.hpp"
#include "guidecheck/lang/ast.hpp"

namespace guidecheck::interp {

using Loc = int;
using Value = Loc;
inline constexpr Value kNull = -1;

struct Object {
  std::string cls;
  std::map<std::string, Value> fields;
  std::string label;

  friend bool operator==(const Object&, const Object&) = default;
};

/// Locations are indices; the heap only grows.
using Heap = std::vector<Object>;
using Store = std::map<std::string, Value>;
/// Decisions for intrinsic calls with more than one option, in call order.
using ChoiceScript = std::vector<int>;

inline const std::string kEntryLabel = "<entry>";
inline const std::string kIntrinsicLabel = "<intrinsic>";

enum class StuckReason { CastFailed, NullDeref, ThrowNull, Unbound, NoIntrinsicOption };
std::string to_string(StuckReason r);

/// Evidence of divergence: a call configuration repeated on the call stack,
/// so repeating the choices of the cycle runs forever with trace stem·cycle^ω.
struct Lasso {
  Word stem;
  Word cycle;
  ChoiceScript stem_choices;
  ChoiceScript cycle_choices;
};

struct Outcome {
  enum Kind { Terminated, Thrown, OutOfFuel, Stuck };
  Kind kind = Terminated;
  Value value = kNull;  // result, or the thrown location
  Heap heap;
  Word trace;
  ChoiceScript script;  // decisions consumed
  // OutOfFuel
  bool script_exhausted = false;
  int pending_options = 0;
  std::optional<Lasso> lasso;
  // Stuck
  StuckReason reason = StuckReason::Unbound;
  SourcePos pos;
  std::string detail;

  std::string kind_name() const;
};

class Interpreter {
 public:
  /// `word_bound` caps the length of words an intrinsic may emit.
  explicit Interpreter(const fj::Program& p, const Intrinsics* intrinsics = nullptr, int word_bound = 2);

  const fj::Program& program() const { return p_; }
  const RegionMeta& meta() const { return meta_; }

  Outcome eval(const Store& s, const Heap& h, const fj::ExprPtr& e, int fuel,
               const ChoiceScript& script = {}) const;
  /// Calls cls.method on a fresh receiver and fresh arguments of the declared
  /// parameter classes, all labelled `<entry>`.
  Outcome run_entry(const std::string& cls, const std::string& method, int fuel,
                    const ChoiceScript& script = {}) const;

  /// Store and heap used by run_entry, with the call expression to evaluate.
  struct EntrySetup {
    Store store;
    Heap heap;
    fj::ExprPtr call;
  };
  EntrySetup entry_setup(const std::string& cls, const std::string& method) const;

 private:
  friend class Run;
  const fj::Program& p_;
  const Intrinsics* intrinsics_;
  int word_bound_;
  RegionMeta meta_;
};

struct Explored {
  ChoiceScript script;
  Outcome outcome;
};

/// Every maximal choice script up to length `fuel`, in lexicographic order.
std::vector<Explored> enumerate_traces(const Interpreter& in, const Store& s, const Heap& h,
                                       const fj::ExprPtr& e, int fuel);
std::vector<Explored> enumerate_traces(const Interpreter& in, const std::string& cls,
                                       const std::string& method, int fuel);

/// (v,h) ⊨ r
bool satisfies(Value v, const Heap& h, const Region& r, const RegionMeta& meta);
/// (s,h) ⊨ Γ
bool satisfies(const Store& s, const Heap& h, const std::map<std::string, Region>& gamma,
               const RegionMeta& meta);
/// h ⊨ F, checked for each object at the regions the object satisfies.
bool satisfies(const Heap& h, const FieldTyping& f, const RegionMeta& meta);

}  // namespace guidecheck::interp
