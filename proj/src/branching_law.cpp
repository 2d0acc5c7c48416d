#include "brw/branching_law.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "brw/errors.hpp"

namespace brw {

BranchingLaw::BranchingLaw(std::map<int, double> pmf) : pmf_(std::move(pmf)) {
  if (pmf_.empty()) throw std::invalid_argument("branching law has empty support");
  double total = 0.0;
  for (auto it = pmf_.begin(); it != pmf_.end();) {
    const auto [k, q] = *it;
    if (k < 2) throw std::invalid_argument("offspring counts must be >= 2, got " + std::to_string(k));
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("offspring probability outside [0,1]");
    total += q;
    if (q == 0.0) {
      it = pmf_.erase(it);
      continue;
    }
    ++it;
  }
  if (pmf_.empty()) throw std::invalid_argument("branching law has empty support");
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("offspring probabilities sum to " + std::to_string(total));

  double acc = 0.0;
  double second = 0.0;
  for (const auto& [k, q] : pmf_) {
    support_.push_back(k);
    acc += q;
    cdf_.push_back(acc);
    mean_ += k * q;
    second += static_cast<double>(k) * k * q;
  }
  cdf_.back() = 1.0;
  variance_ = std::max(0.0, second - mean_ * mean_);
}

BranchingLaw BranchingLaw::binary_ternary() { return BranchingLaw({{2, 0.5}, {3, 0.5}}); }

BranchingLaw BranchingLaw::deterministic(int k) { return BranchingLaw({{k, 1.0}}); }

double BranchingLaw::probability(int k) const noexcept {
  const auto it = pmf_.find(k);
  return it == pmf_.end() ? 0.0 : it->second;
}

int BranchingLaw::sample(Stream& rng) const {
  if (support_.size() == 1) return support_.front();
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return support_[static_cast<std::size_t>(std::min<std::ptrdiff_t>(
      it - cdf_.begin(), static_cast<std::ptrdiff_t>(support_.size()) - 1))];
}

BranchingLaw parse_branching_law(std::string_view text) {
  std::string s;
  std::vector<std::size_t> column;  // original column of each kept char
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ' ' || text[i] == '\t') continue;
    s.push_back(text[i]);
    column.push_back(i + 1);
  }
  if (s.empty()) throw ParseError("empty branching law", 1);
  auto col = [&](std::size_t i) { return i < column.size() ? column[i] : text.size() + 1; };

  std::map<int, double> pmf;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    const std::string_view item(s.data() + pos, end - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'k:prob'", col(pos));
    int k = 0;
    double q = 0.0;
    {
      auto [p, ec] = std::from_chars(item.data(), item.data() + colon, k);
      if (ec != std::errc() || p != item.data() + colon) throw ParseError("invalid offspring count", col(pos));
    }
    {
      auto [p, ec] = std::from_chars(item.data() + colon + 1, item.data() + item.size(), q);
      if (ec != std::errc() || p != item.data() + item.size() || colon + 1 == item.size())
        throw ParseError("invalid probability", col(pos + colon + 1));
    }
    if (pmf.contains(k)) throw ParseError("duplicate offspring count " + std::to_string(k), col(pos));
    pmf[k] = q;
    if (end == s.size()) break;
    pos = end + 1;
  }
  return BranchingLaw(std::move(pmf));
}

std::string to_string(const BranchingLaw& law) {
  std::string out;
  for (const auto& [k, q] : law.pmf()) {
    if (!out.empty()) out += ',';
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, q);
    out += std::to_string(k) + ":" + std::string(buf, p);
  }
  return out;
}

}  // namespace brw
