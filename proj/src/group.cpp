#include "senslab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <set>
#include <sstream>

#include "senslab/errors.hpp"

namespace senslab {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::integers: return "int";
    case GroupKind::lattice: return "vec";
    case GroupKind::semidirect: return "semi";
  }
  return "?";
}

GroupElement GroupElement::lattice(const std::vector<std::int64_t>& ks) {
  if (ks.empty() || ks.size() > kMaxLatticeDim)
    throw InvalidArgument("lattice dimension must be in 1.." + std::to_string(kMaxLatticeDim));
  Vec v;
  v.dim = static_cast<std::uint8_t>(ks.size());
  std::copy(ks.begin(), ks.end(), v.ks.begin());
  return GroupElement(v);
}

GroupElement GroupElement::identity(GroupKind kind, std::size_t dim) {
  switch (kind) {
    case GroupKind::integers: return integer(0);
    case GroupKind::lattice: return lattice(std::vector<std::int64_t>(dim, 0));
    case GroupKind::semidirect: return semidirect(0, false);
  }
  return {};
}

GroupKind GroupElement::kind() const {
  switch (rep_.index()) {
    case 0: return GroupKind::integers;
    case 1: return GroupKind::lattice;
    default: return GroupKind::semidirect;
  }
}

std::size_t GroupElement::dim() const {
  if (const auto* v = as_vec()) return v->dim;
  return 1;
}

bool GroupElement::is_identity() const { return *this == identity(kind(), dim()); }

std::int64_t GroupElement::int_value() const {
  if (const auto* i = as_int()) return i->k;
  throw KindMismatch("expected an element of Z, got " + senslab::to_string(*this));
}

namespace {

[[noreturn]] void mismatch(const GroupElement& g, const GroupElement& h) {
  throw KindMismatch("cannot combine " + to_string(g) + " with " + to_string(h));
}

}  // namespace

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  if (g.kind() != h.kind() || g.dim() != h.dim()) mismatch(g, h);
  if (const auto* x = g.as_int()) return GroupElement::integer(x->k + h.as_int()->k);
  if (const auto* x = g.as_vec()) {
    GroupElement::Vec out = *x;
    for (std::size_t i = 0; i < out.dim; ++i) out.ks[i] += h.as_vec()->ks[i];
    return GroupElement(out);
  }
  // a^k b^f · a^k' b^f' = a^(k + (-1)^f k') b^(f xor f')
  const auto& x = *g.as_semi();
  const auto& y = *h.as_semi();
  return GroupElement::semidirect(x.k + (x.flip ? -y.k : y.k), x.flip != y.flip);
}

GroupElement inverse(const GroupElement& g) {
  if (const auto* x = g.as_int()) return GroupElement::integer(-x->k);
  if (const auto* x = g.as_vec()) {
    GroupElement::Vec out = *x;
    for (std::size_t i = 0; i < out.dim; ++i) out.ks[i] = -out.ks[i];
    return GroupElement(out);
  }
  // (a^k b)^-1 = a^k b; (a^k)^-1 = a^-k
  const auto& x = *g.as_semi();
  return x.flip ? g : GroupElement::semidirect(-x.k, false);
}

GroupElement power(const GroupElement& g, std::int64_t n) {
  GroupElement base = n < 0 ? inverse(g) : g;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  GroupElement result = GroupElement::identity(g.kind(), g.dim());
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

GroupElement commutator(const GroupElement& g, const GroupElement& h) {
  return inverse(g) * inverse(h) * g * h;
}

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  if (const auto* x = g.as_int()) {
    os << "Int(" << x->k << ")";
  } else if (const auto* v = g.as_vec()) {
    os << "Vec(";
    for (std::size_t i = 0; i < v->dim; ++i) os << (i ? "," : "") << v->ks[i];
    os << ")";
  } else {
    const auto& s = *g.as_semi();
    os << "Semi(" << s.k << "," << (s.flip ? 1 : 0) << ")";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << to_string(g); }

void to_json(nlohmann::json& j, const GroupElement& g) {
  if (const auto* x = g.as_int()) {
    j = {{"kind", "int"}, {"k", x->k}};
  } else if (const auto* v = g.as_vec()) {
    j = {{"kind", "vec"}, {"ks", std::vector<std::int64_t>(v->ks.begin(), v->ks.begin() + v->dim)}};
  } else {
    const auto& s = *g.as_semi();
    j = {{"kind", "semi"}, {"k", s.k}, {"flip", s.flip ? 1 : 0}};
  }
}

void from_json(const nlohmann::json& j, GroupElement& g) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "int") {
    g = GroupElement::integer(j.at("k").get<std::int64_t>());
  } else if (kind == "vec") {
    g = GroupElement::lattice(j.at("ks").get<std::vector<std::int64_t>>());
  } else if (kind == "semi") {
    const int flip = j.at("flip").get<int>();
    if (flip != 0 && flip != 1) throw InvalidArgument("flip must be 0 or 1");
    g = GroupElement::semidirect(j.at("k").get<std::int64_t>(), flip == 1);
  } else {
    throw InvalidArgument("unknown element kind '" + kind + "'");
  }
}

// ---------------------------------------------------------------------------

GroupSpec::GroupSpec(GroupKind kind, std::vector<GroupElement> generators, std::vector<std::string> names,
                     std::size_t dim)
    : kind_(kind), dim_(dim), generators_(std::move(generators)), names_(std::move(names)) {
  if (kind_ == GroupKind::lattice && (dim_ == 0 || dim_ > kMaxLatticeDim))
    throw InvalidArgument("lattice dimension must be in 1.." + std::to_string(kMaxLatticeDim));
  if (kind_ != GroupKind::lattice) dim_ = 1;
  if (generators_.empty()) throw InvalidArgument("generating set is empty");
  for (const auto& s : generators_) check_kind(s);
  if (names_.empty())
    for (const auto& s : generators_) names_.push_back(to_string(s));
  if (names_.size() != generators_.size()) throw InvalidArgument("generator names do not match generators");
}

GroupSpec GroupSpec::integers() { return GroupSpec(GroupKind::integers, {GroupElement::integer(1)}, {"t"}); }

GroupSpec GroupSpec::lattice(std::size_t dim) {
  std::vector<GroupElement> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::int64_t> e(dim, 0);
    e[i] = 1;
    gens.push_back(GroupElement::lattice(e));
    names.push_back("e" + std::to_string(i + 1));
  }
  return GroupSpec(GroupKind::lattice, std::move(gens), std::move(names), dim);
}

GroupSpec GroupSpec::semidirect(const std::vector<std::string>& generator_names) {
  std::vector<GroupElement> gens;
  for (const auto& n : generator_names) gens.push_back(parse_semidirect(n));
  return GroupSpec(GroupKind::semidirect, std::move(gens), generator_names);
}

GroupSpec GroupSpec::with_generators(std::vector<GroupElement> generators, std::vector<std::string> names) const {
  return GroupSpec(kind_, std::move(generators), std::move(names), dim_);
}

std::size_t GroupSpec::derived_length() const { return kind_ == GroupKind::semidirect ? 2 : 1; }

bool GroupSpec::in_derived(const GroupElement& g, std::size_t level) const {
  check_kind(g);
  if (level == 0) return true;
  if (kind_ != GroupKind::semidirect || level >= 2) return g.is_identity();
  // G^(1) = [G, G] = <a^2>
  const auto& s = *g.as_semi();
  return !s.flip && s.k % 2 == 0;
}

std::vector<DerivedLevel> GroupSpec::derived_series() const {
  if (kind_ == GroupKind::semidirect) return {{"G"}, {"<a^2>"}, {"1"}};
  return {{"G"}, {"1"}};
}

std::vector<GroupElement> GroupSpec::generation_witnesses() const {
  switch (kind_) {
    case GroupKind::integers: return {GroupElement::integer(1)};
    case GroupKind::lattice: return lattice(dim_).generators();
    case GroupKind::semidirect: return {GroupElement::semidirect(1, false), GroupElement::semidirect(0, true)};
  }
  return {};
}

void GroupSpec::check_kind(const GroupElement& g) const {
  if (g.kind() != kind_ || g.dim() != dim_)
    throw KindMismatch(to_string(g) + " is not an element of the " + std::string(senslab::to_string(kind_)) +
                       " group");
}

// ---------------------------------------------------------------------------

namespace {

class SemidirectParser {
 public:
  explicit SemidirectParser(std::string_view text) : text_(text) {}

  GroupElement parse() {
    GroupElement g = product();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return g;
  }

 private:
  GroupElement product() {
    GroupElement g = GroupElement::identity(GroupKind::semidirect);
    bool any = false;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ']') break;
      g = g * factor();
      any = true;
    }
    if (!any && text_ != "1") fail("empty element");
    return g;
  }

  GroupElement factor() {
    GroupElement base;
    const char c = text_[pos_];
    if (c == 'a' || c == 'b' || c == 'A') {
      ++pos_;
      base = c == 'a'   ? GroupElement::semidirect(1, false)
             : c == 'A' ? GroupElement::semidirect(-1, false)
                        : GroupElement::semidirect(0, true);
    } else if (c == '1') {
      ++pos_;
      base = GroupElement::identity(GroupKind::semidirect);
    } else if (c == '[') {
      ++pos_;
      const GroupElement x = product();
      expect(',');
      const GroupElement y = product();
      expect(']');
      base = commutator(x, y);
    } else if (c == '(') {
      ++pos_;
      base = product();
      expect(')');
    } else {
      fail("unexpected character");
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      std::int64_t e = 0;
      const auto* first = text_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), e);
      if (ec != std::errc{}) fail("bad exponent");
      pos_ += static_cast<std::size_t>(ptr - first);
      base = power(base, e);
    }
    return base;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("cannot parse element '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " +
                          what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupElement parse_semidirect(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty element");
  if (text == "1") return GroupElement::identity(GroupKind::semidirect);
  return SemidirectParser(text).parse();
}

GroupElement evaluate(const Word& w, const GroupSpec& spec) {
  GroupElement g = spec.identity();
  for (const auto& b : w.blocks) {
    if (b.gen >= spec.generators().size())
      throw InvalidArgument("generator index " + std::to_string(b.gen) + " out of range");
    g = g * power(spec.generators()[b.gen], b.exp);
  }
  return g;
}

std::vector<GroupElement> ball(const GroupSpec& spec, std::size_t radius) {
  return WordLengthTable(spec, radius).elements();
}

WordLengthTable::WordLengthTable(const GroupSpec& spec, std::size_t radius) : radius_(radius) {
  std::vector<GroupElement> steps;
  for (const auto& s : spec.generators()) {
    steps.push_back(s);
    steps.push_back(inverse(s));
  }
  std::set<GroupElement> seen{spec.identity()};
  std::vector<GroupElement> frontier{spec.identity()};
  std::vector<std::pair<GroupElement, std::size_t>> found{{spec.identity(), 0}};
  order_.push_back(spec.identity());
  for (std::size_t len = 1; len <= radius && !frontier.empty(); ++len) {
    std::set<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& s : steps) {
        GroupElement h = g * s;
        if (!seen.contains(h)) next.insert(std::move(h));
      }
    frontier.assign(next.begin(), next.end());
    for (const auto& h : frontier) {
      seen.insert(h);
      order_.push_back(h);
      found.emplace_back(h, len);
    }
  }
  std::sort(found.begin(), found.end());
  for (auto& [g, len] : found) {
    sorted_.push_back(g);
    lengths_.push_back(len);
  }
}

std::optional<std::size_t> WordLengthTable::find(const GroupElement& g) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), g);
  if (it == sorted_.end() || *it != g) return std::nullopt;
  return lengths_[static_cast<std::size_t>(it - sorted_.begin())];
}

std::size_t WordLengthTable::at(const GroupElement& g) const {
  if (auto len = find(g)) return *len;
  throw CapExceeded("word length of " + to_string(g) + " exceeds the enumeration radius " + std::to_string(radius_));
}

}  // namespace senslab
