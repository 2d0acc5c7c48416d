#include "brw/interval_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "brw/errors.hpp"

namespace brw {

bool Interval::contains(double t) const noexcept {
  const bool above = lower_closed ? t >= lower : t > lower;
  const bool below = upper_closed ? t <= upper : t < upper;
  return above && below;
}

LatticeRange lattice_points(const Interval& c, std::int64_t lo, std::int64_t hi) {
  LatticeRange r{lo, hi};
  if (c.lower != -kInf) {
    double f = std::ceil(c.lower);
    if (f == c.lower && !c.lower_closed) f += 1.0;
    if (f > static_cast<double>(hi)) return {};
    if (f > static_cast<double>(lo)) r.first = static_cast<std::int64_t>(f);
  }
  if (c.upper != kInf) {
    double f = std::floor(c.upper);
    if (f == c.upper && !c.upper_closed) f -= 1.0;
    if (f < static_cast<double>(lo)) return {};
    if (f < static_cast<double>(hi)) r.last = static_cast<std::int64_t>(f);
  }
  return r;
}

IntervalSet::IntervalSet(std::vector<Interval> components) {
  for (auto& c : components) {
    if (std::isnan(c.lower) || std::isnan(c.upper))
      throw std::invalid_argument("interval endpoint is NaN");
    if (!(c.lower < c.upper))
      throw std::invalid_argument("interval has empty interior");
    if (std::isinf(c.lower)) c.lower_closed = false;
    if (std::isinf(c.upper)) c.upper_closed = false;
  }
  std::sort(components.begin(), components.end(), [](const Interval& a, const Interval& b) {
    if (a.lower != b.lower) return a.lower < b.lower;
    return a.lower_closed && !b.lower_closed;
  });
  for (const auto& c : components) {
    if (components_.empty()) {
      components_.push_back(c);
      continue;
    }
    Interval& cur = components_.back();
    const bool joins = c.lower < cur.upper ||
                       (c.lower == cur.upper && (cur.upper_closed || c.lower_closed));
    if (!joins) {
      components_.push_back(c);
      continue;
    }
    if (c.lower == cur.lower) cur.lower_closed = cur.lower_closed || c.lower_closed;
    if (c.upper > cur.upper) {
      cur.upper = c.upper;
      cur.upper_closed = c.upper_closed;
    } else if (c.upper == cur.upper) {
      cur.upper_closed = cur.upper_closed || c.upper_closed;
    }
  }
}

IntervalSet IntervalSet::real_line() { return IntervalSet({Interval{}}); }

IntervalSet IntervalSet::closed(double lower, double upper) {
  return IntervalSet({Interval{lower, upper, true, true}});
}

IntervalSet IntervalSet::open(double lower, double upper) {
  return IntervalSet({Interval{lower, upper, false, false}});
}

IntervalSet IntervalSet::left_ray(double x) { return IntervalSet({Interval{-kInf, x, false, true}}); }

IntervalSet IntervalSet::right_ray(double x) { return IntervalSet({Interval{x, kInf, false, false}}); }

bool IntervalSet::is_real_line() const noexcept {
  return components_.size() == 1 && components_[0].lower == -kInf && components_[0].upper == kInf;
}

bool IntervalSet::is_bounded() const noexcept { return !has_half_line(); }

bool IntervalSet::has_half_line() const noexcept {
  return !components_.empty() &&
         (components_.front().lower == -kInf || components_.back().upper == kInf);
}

bool IntervalSet::contains(double t) const noexcept {
  return std::any_of(components_.begin(), components_.end(),
                     [t](const Interval& c) { return c.contains(t); });
}

double IntervalSet::max_abs_endpoint() const noexcept {
  double m = 0.0;
  for (const auto& c : components_) {
    if (std::isfinite(c.lower)) m = std::max(m, std::abs(c.lower));
    if (std::isfinite(c.upper)) m = std::max(m, std::abs(c.upper));
  }
  return m;
}

std::pair<double, double> IntervalSet::hull() const {
  if (components_.empty()) throw std::invalid_argument("hull of the empty set");
  return {components_.front().lower, components_.back().upper};
}

namespace {

template <class F>
IntervalSet map_endpoints(const IntervalSet& s, F f) {
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& c : s.components())
    out.push_back({f(c.lower), f(c.upper), c.lower_closed, c.upper_closed});
  return IntervalSet(std::move(out));
}

}  // namespace

IntervalSet shift(const IntervalSet& s, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("shift amount must be finite");
  return map_endpoints(s, [x](double e) { return std::isinf(e) ? e : e + x; });
}

IntervalSet scale(const IntervalSet& s, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale factor must be positive");
  return map_endpoints(s, [c](double e) { return std::isinf(e) ? e : e * c; });
}

IntervalSet mirror(const IntervalSet& s) {
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& c : s.components())
    out.push_back({-c.upper, -c.lower, c.upper_closed, c.lower_closed});
  return IntervalSet(std::move(out));
}

IntervalSet complement(const IntervalSet& s) {
  std::vector<Interval> out;
  double prev = -kInf;
  bool prev_closed = false;  // whether the previous component owns `prev`
  for (const auto& c : s.components()) {
    if (c.lower != -kInf) {
      if (prev == c.lower)
        throw DomainError("complement contains the isolated point " + std::to_string(prev));
      out.push_back({prev, c.lower, !prev_closed && prev != -kInf, !c.lower_closed});
    }
    prev = c.upper;
    prev_closed = c.upper_closed;
  }
  if (prev != kInf) out.push_back({prev, kInf, !prev_closed && prev != -kInf, false});
  return IntervalSet(std::move(out));
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all(a.components().begin(), a.components().end());
  all.insert(all.end(), b.components().begin(), b.components().end());
  return IntervalSet(std::move(all));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  // Pieces with empty interior (single shared endpoints) are dropped.
  std::vector<Interval> out;
  for (const auto& x : a.components()) {
    for (const auto& y : b.components()) {
      Interval r;
      if (x.lower > y.lower || (x.lower == y.lower && !x.lower_closed)) {
        r.lower = x.lower;
        r.lower_closed = x.lower_closed;
      } else {
        r.lower = y.lower;
        r.lower_closed = y.lower_closed;
      }
      if (x.upper < y.upper || (x.upper == y.upper && !x.upper_closed)) {
        r.upper = x.upper;
        r.upper_closed = x.upper_closed;
      } else {
        r.upper = y.upper;
        r.upper_closed = y.upper_closed;
      }
      if (r.lower < r.upper) out.push_back(r);
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet lattice_scaled(const IntervalSet& s, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("generation must be non-negative");
  if (n == 0) return s;
  return scale(s, std::sqrt(static_cast<double>(n)));
}

// --- text form -------------------------------------------------------------

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view text) : text_(text) {}

  IntervalSet parse() {
    skip_ws();
    if (at_end()) fail("empty set expression");
    if (consume_word("R")) return finish(IntervalSet::real_line());
    if (consume_word("{}") || consume_word("empty")) return finish(IntervalSet());
    std::vector<Interval> parts;
    parts.push_back(interval());
    skip_ws();
    while (!at_end()) {
      if (!consume_word("U")) fail("expected 'U' between intervals");
      parts.push_back(interval());
      skip_ws();
    }
    try {
      return IntervalSet(std::move(parts));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

 private:
  IntervalSet finish(IntervalSet s) {
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
    return s;
  }

  Interval interval() {
    skip_ws();
    Interval iv;
    const char open = peek();
    if (open != '(' && open != '[') fail("expected '(' or '['");
    iv.lower_closed = open == '[';
    ++pos_;
    iv.lower = number();
    skip_ws();
    if (peek() != ',') fail("expected ','");
    ++pos_;
    iv.upper = number();
    skip_ws();
    const char close = peek();
    if (close != ')' && close != ']') fail("expected ')' or ']'");
    iv.upper_closed = close == ']';
    ++pos_;
    if (!(iv.lower < iv.upper)) fail("interval has empty interior");
    if ((std::isinf(iv.lower) && iv.lower_closed) || (std::isinf(iv.upper) && iv.upper_closed))
      fail("infinite endpoint cannot be closed");
    return iv;
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ',' && text_[end] != ')' && text_[end] != ']' &&
           text_[end] != ' ' && text_[end] != '\t')
      ++end;
    std::string_view tok = text_.substr(start, end - start);
    if (tok.empty()) fail("expected a number");
    double sign = 1.0;
    std::string_view body = tok;
    if (body.front() == '+' || body.front() == '-') {
      sign = body.front() == '-' ? -1.0 : 1.0;
      body.remove_prefix(1);
    }
    double v = 0.0;
    if (body == "inf" || body == "infinity") {
      v = kInf;
    } else {
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc() || ptr != body.data() + body.size() || body.empty() ||
          !std::isfinite(v))
        fail("invalid number '" + std::string(tok) + "'");
    }
    pos_ = end;
    return sign * v;
  }

  bool consume_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_endpoint(double e) {
  if (e == kInf) return "+inf";
  if (e == -kInf) return "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e);
  return std::string(buf, ptr);
}

}  // namespace

IntervalSet parse_interval_set(std::string_view text) { return SetParser(text).parse(); }

std::string to_string(const IntervalSet& s) {
  if (s.is_empty()) return "{}";
  std::string out;
  for (const auto& c : s.components()) {
    if (!out.empty()) out += " U ";
    out += c.lower_closed ? '[' : '(';
    out += format_endpoint(c.lower);
    out += ',';
    out += format_endpoint(c.upper);
    out += c.upper_closed ? ']' : ')';
  }
  return out;
}

}  // namespace brw
