#include "guidecheck/infer/region.hpp"

#include "guidecheck/error.hpp"

namespace guidecheck {

std::string Region::str() const {
  switch (kind) {
    case Null: return "Null";
    case CreatedAt: return "CreatedAt(" + label + ")";
    case Unknown: return "Unknown";
  }
  return "";
}

Region parse_region(const std::string& text) {
  if (text == "Null") return Region::null();
  if (text == "Unknown") return Region::unknown();
  const std::string pre = "CreatedAt(";
  if (text.size() > pre.size() + 1 && text.compare(0, pre.size(), pre) == 0 && text.back() == ')')
    return Region::created_at(text.substr(pre.size(), text.size() - pre.size() - 1));
  throw InputError("invalid region '" + text + "'");
}

bool disjoint(const Region& a, const Region& b) {
  if (a.kind == Region::Unknown || b.kind == Region::Unknown) return false;
  return a != b;
}

std::string Sig::str() const {
  std::string out = "(" + cls + ", " + recv.str() + ", " + method + ", (";
  for (size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].str();
  return out + "))";
}

RegionMeta::RegionMeta(const fj::Program& p) {
  regions_.push_back(Region::null());
  cls_[Region::null()] = {fj::kNullType};
  for (const auto& [label, c] : p.labels()) {
    Region r = Region::created_at(label);
    regions_.push_back(r);
    cls_[r].insert(c);
  }
  auto names = p.class_names();
  std::set<std::string> all(names.begin(), names.end());
  all.insert(fj::kObject);
  regions_.push_back(Region::unknown());
  cls_[Region::unknown()] = std::move(all);
}

const std::set<std::string>& RegionMeta::cls(const Region& r) const {
  static const std::set<std::string> none;
  auto it = cls_.find(r);
  return it == cls_.end() ? none : it->second;
}

}  // namespace guidecheck
