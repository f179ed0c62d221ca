#include "lowdefect/truncation.hpp"

#include <algorithm>
#include <set>

#include "lowdefect/sexpr.hpp"

namespace lowdefect {

bool SubstitutionPattern::all_star() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return !e.has_value(); });
}

std::uint64_t SubstitutionPattern::fixed_sum() const {
  std::uint64_t total = 0;
  for (const auto& e : entries_)
    if (e) total = checked_add(total, *e);
  return total;
}

bool SubstitutionPattern::matches(std::span<const std::uint64_t> tuple) const {
  if (tuple.size() != entries_.size())
    throw Error(Error::Kind::Range, "tuple arity does not match the pattern");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] && *entries_[i] != tuple[i]) return false;
  return true;
}

std::string SubstitutionPattern::to_string() const {
  std::string out = "(pattern";
  for (const auto& e : entries_) out += e ? " " + std::to_string(*e) : " *";
  return out + ")";
}

SubstitutionPattern SubstitutionPattern::from_sexpr_node(const SExpr& node) {
  if (node.is_atom || node.tag() != "pattern")
    throw ParseError("expected (pattern ...)", node.line, node.column);
  std::vector<std::optional<std::uint64_t>> entries;
  for (std::size_t i = 1; i < node.items.size(); ++i) {
    const SExpr& e = node.items[i];
    if (!e.is_atom || e.quoted)
      throw ParseError("pattern entries are integers or *", e.line, e.column);
    if (e.atom == "*") {
      entries.push_back(std::nullopt);
      continue;
    }
    std::uint64_t v = 0;
    for (char c : e.atom) {
      if (c < '0' || c > '9')
        throw ParseError("pattern entries are integers or *", e.line, e.column);
      std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
      if (v > (UINT64_MAX - digit) / 10)
        throw ParseError("pattern entry too large", e.line, e.column);
      v = v * 10 + digit;
    }
    entries.push_back(v);
  }
  return SubstitutionPattern(std::move(entries));
}

std::vector<std::vector<std::uint64_t>> pattern_members(const SubstitutionPattern& pattern,
                                                        std::uint64_t box_bound) {
  const auto& entries = pattern.entries();
  for (const auto& e : entries)
    if (e && *e > box_bound) return {};  // S(pattern) misses the box entirely
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> tuple(entries.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == entries.size()) {
      out.push_back(tuple);
      return;
    }
    if (entries[pos]) {
      tuple[pos] = *entries[pos];
      self(self, pos + 1);
      return;
    }
    for (std::uint64_t k = 0; k <= box_bound; ++k) {
      tuple[pos] = k;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

LowDefectTree::Node fold_leaf(const LowDefectTree::Node& n, unsigned variable, std::uint64_t k,
                              bool is_root, bool& found) {
  LowDefectTree::Node out;
  out.label = n.label;
  out.edge_label = n.edge_label;
  out.variable = is_root ? 0 : n.variable;
  for (const auto& c : n.children) {
    if (c.variable == variable) {
      if (!c.children.empty())
        throw Error(Error::Kind::Contract,
                    "variable x" + std::to_string(variable) +
                        " is not minimal in the nesting order");
      std::uint64_t value = checked_add(checked_mul(c.label, pow3_u64(k)), c.edge_label);
      out.label = checked_mul(out.label, value);
      found = true;
    } else {
      out.children.push_back(fold_leaf(c, variable, k, false, found));
    }
  }
  return out;
}

}  // namespace

LowDefectPair direct_truncate(const LowDefectPair& p, unsigned variable, std::uint64_t k) {
  if (variable < 1 || variable > p.degree())
    throw Error(Error::Kind::Range, "variable x" + std::to_string(variable) + " out of range");
  bool found = false;
  LowDefectTree::Node folded = fold_leaf(p.witness().root(), variable, k, true, found);
  if (!found)
    throw Error(Error::Kind::Range, "variable x" + std::to_string(variable) + " not in tree");
  LowDefectTree tree(std::move(folded));
  return LowDefectPair(tree.degree() == 0 ? std::move(tree) : tree.renumbered(),
                       checked_add(p.base_complexity(), checked_mul(3, k)));
}

LowDefectPair substitute(const LowDefectPair& p, const SubstitutionPattern& pattern) {
  if (pattern.arity() != p.degree())
    throw Error(Error::Kind::Range, "pattern arity does not match the pair degree");
  const auto& entries = pattern.entries();
  // Downward closure: fixing x requires fixing everything below it.
  for (unsigned v = 1; v <= p.degree(); ++v) {
    if (!entries[v - 1]) continue;
    for (unsigned u = 1; u <= p.degree(); ++u)
      if (!entries[u - 1] && p.polynomial().precedes(u, v))
        throw Error(Error::Kind::Contract,
                    "fixed set is not downward closed: x" + std::to_string(v) +
                        " is fixed but x" + std::to_string(u) + " below it is not");
  }
  LowDefectPair current = p;
  std::vector<unsigned> original(p.degree());  // current position -> original
  for (unsigned i = 0; i < p.degree(); ++i) original[i] = i + 1;
  while (true) {
    auto minimal = current.polynomial().minimal_variables();
    unsigned pick = 0;
    for (unsigned v : minimal)
      if (entries[original[v - 1] - 1]) {
        pick = v;
        break;
      }
    if (pick == 0) break;
    current = direct_truncate(current, pick, *entries[original[pick - 1] - 1]);
    original.erase(original.begin() + (pick - 1));
  }
  for (unsigned pos : original)
    if (entries[pos - 1])
      throw Error(Error::Kind::Contract, "fixed set could not be fully substituted");
  return current;
}

std::uint64_t find_K(const LowDefectPair& p, const Threshold& threshold) {
  if (p.degree() == 0)
    throw Error(Error::Kind::Contract, "find_K needs a pair of degree at least 1");
  if (threshold.compare(p.defect()) != std::strong_ordering::greater)
    throw Error(Error::Kind::Contract, "threshold must lie below the pair defect");
  auto minimal = p.polynomial().minimal_variables();
  std::vector<std::uint64_t> probe(p.degree(), 0);
  for (std::uint64_t K = 0;; ++K) {
    for (unsigned v : minimal) probe[v - 1] = K + 1;
    auto order = threshold.compare(p.defect_at(probe));
    bool done = threshold.mode() == Threshold::Mode::Strict
                    ? order != std::strong_ordering::less
                    : order == std::strong_ordering::greater;
    if (done) return K;
    if (K > 1000000)
      throw Error(Error::Kind::Resource, "probe scan did not terminate in 10^6 steps");
  }
}

namespace {

void truncate_rec(const LowDefectPair& pair, const Threshold& threshold,
                  const std::vector<unsigned>& original,
                  std::vector<std::optional<std::uint64_t>>& pattern,
                  TruncationResult& out,
                  std::set<std::vector<std::optional<std::uint64_t>>>& seen) {
  if (pair.degree() == 0) {
    if (threshold.admits(pair.defect()) && seen.insert(pattern).second) {
      out.patterns.push_back(SubstitutionPattern(pattern));
      out.pairs.push_back(pair);
    }
    return;
  }
  if (threshold.compare(pair.defect()) != std::strong_ordering::greater) {
    // delta(f, C) <= t: every remaining tuple already falls below the
    // threshold (strictly, since degree >= 1), so the open positions stay
    // as stars.
    if (seen.insert(pattern).second) {
      out.patterns.push_back(SubstitutionPattern(pattern));
      out.pairs.push_back(pair);
    }
    return;
  }
  std::uint64_t K = find_K(pair, threshold);
  for (unsigned v : pair.polynomial().minimal_variables()) {
    for (std::uint64_t k = 0; k <= K; ++k) {
      LowDefectPair child = direct_truncate(pair, v, k);
      std::vector<unsigned> child_original = original;
      child_original.erase(child_original.begin() + (v - 1));
      pattern[original[v - 1] - 1] = k;
      truncate_rec(child, threshold, child_original, pattern, out, seen);
      pattern[original[v - 1] - 1] = std::nullopt;
    }
  }
}

}  // namespace

TruncationResult truncate_pair(const LowDefectPair& p, const Threshold& threshold) {
  TruncationResult out{{}, {}, threshold};
  std::vector<std::optional<std::uint64_t>> pattern(p.degree());
  std::vector<unsigned> original(p.degree());
  for (unsigned i = 0; i < p.degree(); ++i) original[i] = i + 1;
  std::set<std::vector<std::optional<std::uint64_t>>> seen;
  truncate_rec(p, threshold, original, pattern, out, seen);
  return out;
}

}  // namespace lowdefect
