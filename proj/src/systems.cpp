#include "senslab/systems.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "senslab/errors.hpp"

namespace senslab {

long double RotationSystem::golden() { return (std::sqrt(5.0L) - 1.0L) / 2.0L; }

RotationSystem::RotationSystem(long double alpha) : alpha_(alpha), group_(GroupSpec::integers()) {
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("rotation number must lie in (0, 1)");
}

RotationSystem::Point RotationSystem::act(const GroupElement& g, const Point& x) const {
  long double y = static_cast<long double>(x) + static_cast<long double>(g.int_value()) * alpha_;
  y -= std::floor(y);
  const double r = static_cast<double>(y);
  return r >= 1.0 ? 0.0 : r;
}

RotationSystem::Scalar RotationSystem::distance(const Point& x, const Point& y) const {
  const double d = std::fabs(x - y);
  return std::min(d, 1.0 - d);
}

std::vector<RotationSystem::Point> RotationSystem::ball_sample(const Point& p, const Scalar& eps,
                                                              std::size_t n) const {
  if (!(eps > 0)) throw InvalidArgument("ball radius must be positive");
  std::vector<Point> out;
  if (n == 0) return out;
  out.push_back(p);
  const std::size_t m = n / 2;
  const double r = std::min(eps, 0.5);
  for (std::size_t k = 1; k <= m && out.size() < n; ++k) {
    const double off = r * static_cast<double>(k) / static_cast<double>(m + 1);
    for (const double s : {off, -off}) {
      if (out.size() >= n) break;
      double y = p + s;
      y -= std::floor(y);
      out.push_back(y >= 1.0 ? 0.0 : y);
    }
  }
  return out;
}

std::vector<RotationSystem::Point> RotationSystem::dense_sample(std::size_t n) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<double>(i) / static_cast<double>(n));
  return out;
}

std::string RotationSystem::describe(const Point& x) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------

namespace {

void check_word(const std::string& w, bool allow_empty) {
  if (!allow_empty && w.empty()) throw InvalidArgument("shift tail period must be nonempty");
  for (const char c : w)
    if (c != '0' && c != '1') throw InvalidArgument("shift words use the characters 0 and 1");
}

void check_point(const ShiftPoint& x) {
  check_word(x.left, false);
  check_word(x.center, true);
  check_word(x.right, false);
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// Smallest |i| with x_i != y_i, if any.
std::optional<std::int64_t> first_disagreement(const ShiftPoint& x, const ShiftPoint& y) {
  check_point(x);
  check_point(y);
  const auto len = [](const std::string& s) { return static_cast<std::int64_t>(s.size()); };
  // Beyond these bounds both sequences are periodic with period dividing the lcm.
  const std::int64_t hi = std::max(x.offset + len(x.center), y.offset + len(y.center));
  const std::int64_t lo = std::min(x.offset, y.offset) - 1;
  const std::int64_t lcm_r = std::lcm(len(x.right), len(y.right));
  const std::int64_t lcm_l = std::lcm(len(x.left), len(y.left));
  const std::int64_t bound = std::max(iabs(hi) + lcm_r, iabs(lo) + lcm_l);
  for (std::int64_t k = 0; k <= bound; ++k)
    if (x.at(k) != y.at(k) || x.at(-k) != y.at(-k)) return k;
  return std::nullopt;
}

}  // namespace

ShiftPoint ShiftPoint::periodic(const std::string& word) {
  check_word(word, false);
  return ShiftPoint{word, "", word, 0};
}

int ShiftPoint::at(std::int64_t i) const {
  if (i < offset) {
    const auto n = static_cast<std::int64_t>(left.size());
    return left[static_cast<std::size_t>(((i - offset) % n + n) % n)] - '0';
  }
  const auto c = static_cast<std::size_t>(i - offset);
  if (c < center.size()) return center[c] - '0';
  return right[(c - center.size()) % right.size()] - '0';
}

std::string ShiftPoint::window(std::int64_t i, std::size_t len) const {
  std::string out(len, '0');
  for (std::size_t k = 0; k < len; ++k) out[k] = static_cast<char>('0' + at(i + static_cast<std::int64_t>(k)));
  return out;
}

bool same_sequence(const ShiftPoint& x, const ShiftPoint& y) { return !first_disagreement(x, y).has_value(); }

ShiftSystem::ShiftSystem(std::size_t complexity, std::int64_t sample_radius)
    : complexity_(complexity), sample_radius_(sample_radius), group_(GroupSpec::integers()) {
  if (complexity_ < 1 || complexity_ > 8) throw InvalidArgument("shift sample complexity must be in 1..8");
  if (sample_radius_ < 0) throw InvalidArgument("shift sample radius must be nonnegative");
}

ShiftSystem::Point ShiftSystem::act(const GroupElement& g, const Point& x) const {
  Point y = x;
  y.offset -= g.int_value();
  return y;
}

ShiftSystem::Scalar ShiftSystem::distance(const Point& x, const Point& y) const {
  const auto k = first_disagreement(x, y);
  if (!k) return Scalar(0);
  if (*k > 62) throw CapExceeded("shift distance 2^-" + std::to_string(*k) + " is below the representable range");
  return Scalar(1, std::int64_t{1} << *k);
}

std::int64_t ShiftSystem::agreement_radius(const Scalar& eps) {
  if (eps <= Scalar(0)) throw InvalidArgument("ball radius must be positive");
  std::int64_t j = 0;
  while (Scalar(1, std::int64_t{1} << j) >= eps) {
    if (++j > 62) throw CapExceeded("ball radius below 2^-62");
  }
  return j - 1;
}

std::vector<ShiftSystem::Point> ShiftSystem::ball_sample(const Point& p, const Scalar& eps, std::size_t n) const {
  const std::int64_t r = agreement_radius(eps);
  std::vector<Point> out;
  if (n == 0) return out;
  out.push_back(p);
  const std::string block = r >= 0 ? p.window(-r, static_cast<std::size_t>(2 * r + 1)) : "";
  std::vector<std::string> tails;
  for (std::size_t len = 1; len <= complexity_; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string w(len, '0');
      for (std::size_t i = 0; i < len; ++i)
        if ((bits >> (len - 1 - i)) & 1) w[i] = '1';
      tails.push_back(w);
    }
  for (const auto& l : tails)
    for (const auto& rt : tails) {
      if (out.size() >= n) return out;
      Point q{l, block, rt, r >= 0 ? -r : 0};
      bool fresh = true;
      for (const auto& seen : out)
        if (same_sequence(seen, q)) {
          fresh = false;
          break;
        }
      if (fresh) out.push_back(std::move(q));
    }
  return out;
}

std::vector<ShiftSystem::Point> ShiftSystem::dense_sample(std::size_t n) const {
  if (n < 2) return {Point::periodic("0")};
  std::size_t k = 0;
  while ((std::size_t{2} << k) <= n && k < 20) ++k;
  std::vector<Point> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
    std::string w(k, '0');
    for (std::size_t i = 0; i < k; ++i)
      if ((bits >> (k - 1 - i)) & 1) w[i] = '1';
    out.push_back(Point::periodic(w));
  }
  return out;
}

ShiftSystem::Point ShiftSystem::random_point(Rng& rng, std::int64_t radius) const {
  Point x;
  x.center.resize(static_cast<std::size_t>(2 * radius + 1));
  for (auto& c : x.center) c = rng.coin() ? '1' : '0';
  x.left = rng.coin() ? "1" : "0";
  x.right = rng.coin() ? "1" : "0";
  x.offset = -radius;
  return x;
}

std::string ShiftSystem::describe(const Point& x) const {
  return "(" + x.left + ")" + x.center + "(" + x.right + ")@" + std::to_string(x.offset);
}

std::vector<ShiftSystem::Point> ShiftSystem::bridge_points(const Point& u, const Point& v, const Scalar& eps) const {
  const std::int64_t r = agreement_radius(eps);
  if (r < 0) return {};
  const auto len = static_cast<std::size_t>(2 * r + 1);
  return {Point{"0", v.window(-r, len) + u.window(-r, len), "0", -r}};
}

// ---------------------------------------------------------------------------

OnePointSystem::OnePointSystem(GroupSpec spec, std::size_t cutoff, std::size_t sample_radius)
    : spec_(std::move(spec)), lengths_(spec_, cutoff), sample_radius_(sample_radius) {
  if (sample_radius_ > cutoff) throw InvalidArgument("sample radius exceeds the word-length cutoff");
}

OnePointSystem::Scalar OnePointSystem::psi(const Point& p) const {
  if (p.is_infinity()) return Scalar(0);
  return Scalar(1, static_cast<std::int64_t>(lengths_.at(*p.element)) + 1);
}

OnePointSystem::Point OnePointSystem::act(const GroupElement& g, const Point& p) const {
  spec_.check_kind(g);
  if (p.is_infinity()) return p;
  return Point::at(g * *p.element);
}

OnePointSystem::Scalar OnePointSystem::distance(const Point& p, const Point& q) const {
  if (p == q) return Scalar(0);
  if (p.is_infinity()) return psi(q);
  if (q.is_infinity()) return psi(p);
  return psi(p) + psi(q);
}

std::vector<OnePointSystem::Point> OnePointSystem::ball_sample(const Point& p, const Scalar& eps,
                                                              std::size_t n) const {
  if (eps <= Scalar(0)) throw InvalidArgument("ball radius must be positive");
  std::vector<Point> out;
  if (n == 0) return out;
  out.push_back(p);
  if (out.size() < n && !p.is_infinity() && distance(p, Point::infinity()) < eps) out.push_back(Point::infinity());
  for (const auto& h : lengths_.elements()) {
    if (out.size() >= n) break;
    const Point q = Point::at(h);
    if (q != p && distance(p, q) < eps) out.push_back(q);
  }
  return out;
}

std::vector<OnePointSystem::Point> OnePointSystem::dense_sample(std::size_t n) const {
  std::vector<Point> out;
  if (n == 0) return out;
  for (const auto& h : lengths_.elements()) {
    if (out.size() + 1 >= n) break;
    out.push_back(Point::at(h));
  }
  out.push_back(Point::infinity());
  return out;
}

std::vector<OnePointSystem::Point> OnePointSystem::ball_points(std::size_t radius) const {
  if (radius > lengths_.radius()) throw CapExceeded("ball radius exceeds the word-length cutoff");
  std::vector<Point> out;
  for (const auto& h : lengths_.elements()) {
    if (lengths_.at(h) > radius) break;
    out.push_back(Point::at(h));
  }
  out.push_back(Point::infinity());
  return out;
}

OnePointSystem::Point OnePointSystem::random_point(Rng& rng) const {
  const auto pts = ball_points(sample_radius_);
  return pts[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pts.size()) - 1))];
}

std::string OnePointSystem::describe(const Point& p) const {
  return p.is_infinity() ? "inf" : to_string(*p.element);
}

// ---------------------------------------------------------------------------

NormCompletionSystem::NormCompletionSystem(const PhiTable& phi, std::int64_t range)
    : table_(phi, range), group_(GroupSpec::integers()) {}

NormCompletionSystem::Point NormCompletionSystem::act(const GroupElement& g, const Point& m) const {
  return m + g.int_value();
}

NormCompletionSystem::Scalar NormCompletionSystem::distance(const Point& a, const Point& b) const {
  return invariant_metric(table_, a, b);
}

std::vector<NormCompletionSystem::Point> NormCompletionSystem::ball_sample(const Point& p, const Scalar& eps,
                                                                          std::size_t n) const {
  if (eps <= Scalar(0)) throw InvalidArgument("ball radius must be positive");
  std::vector<Point> out;
  if (n == 0) return out;
  out.push_back(p);
  for (std::int64_t d = 1; d <= table_.range() && out.size() < n; ++d) {
    if (table_.at(d).value >= eps) continue;
    out.push_back(p + d);
    if (out.size() < n) out.push_back(p - d);
  }
  return out;
}

std::vector<NormCompletionSystem::Point> NormCompletionSystem::dense_sample(std::size_t n) const {
  std::vector<Point> out;
  for (std::int64_t k = 0; out.size() < n; ++k) {
    out.push_back(k);
    if (k != 0 && out.size() < n) out.push_back(-k);
  }
  return out;
}

NormCompletionSystem::Scalar NormCompletionSystem::diameter() const { return table_.phi().default_cost(); }

NormCompletionSystem::Point NormCompletionSystem::random_point(Rng& rng) const {
  return rng.uniform_int(-table_.range() / 2, table_.range() / 2);
}

}  // namespace senslab
