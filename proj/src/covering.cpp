#include "lowdefect/covering.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "lowdefect/sexpr.hpp"

namespace lowdefect {

CoveringSet::CoveringSet(std::vector<CoveringEntry> entries, Threshold threshold,
                         std::string provenance)
    : entries_(std::move(entries)),
      threshold_(std::move(threshold)),
      provenance_(std::move(provenance)) {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const CoveringEntry& a, const CoveringEntry& b) {
                     const std::string& ca = a.pair.witness().canonical_form();
                     const std::string& cb = b.pair.witness().canonical_form();
                     if (ca != cb) return ca < cb;
                     return a.pair.base_complexity() < b.pair.base_complexity();
                   });
  entries_.erase(std::unique(entries_.begin(), entries_.end(),
                             [](const CoveringEntry& a, const CoveringEntry& b) {
                               return a.pair.witness().canonical_form() ==
                                          b.pair.witness().canonical_form() &&
                                      a.pair.base_complexity() == b.pair.base_complexity();
                             }),
                 entries_.end());
}

CoveringSet base_covering(const Threshold& threshold, const ComplexityTable& table) {
  if (threshold.numerator() >= threshold.denominator())
    throw Error(Error::Kind::Contract,
                "base coverings need a threshold below 1 (finiteness is only known there)");
  std::vector<CoveringEntry> entries;
  for (std::uint64_t n : enumerate_leaders_below(threshold, table))
    entries.push_back({LowDefectPair::constant(n, table.complexity(n)), std::nullopt});
  return CoveringSet(std::move(entries), threshold,
                     "base enumeration, empirical up to limit " + std::to_string(table.limit()));
}

namespace {

void expand_pair(const LowDefectPair& pair, std::uint64_t limit,
                 std::map<std::uint64_t, unsigned long long>& best) {
  unsigned r = pair.degree();
  const LowDefectPolynomial& f = pair.polynomial();
  std::vector<std::uint64_t> ks(r, 0);
  auto record = [&](BigInt value, unsigned long long supposed) {
    // value * 3^j <= limit for the augmented variable's power j.
    std::uint64_t v = to_uint64(value);
    while (v <= limit) {
      auto it = best.find(v);
      if (it == best.end() || supposed < it->second) best[v] = supposed;
      if (v > limit / 3) break;
      v *= 3;
      supposed += 3;
    }
  };
  auto exponent_sum = [&] {
    std::uint64_t s = 0;
    for (std::uint64_t k : ks) s += k;
    return s;
  };
  auto rec = [&](auto&& self, unsigned pos) -> void {
    for (std::uint64_t k = 0;; ++k) {
      ks[pos] = k;
      for (unsigned i = pos + 1; i < r; ++i) ks[i] = 0;
      BigInt value = f.evaluate_at_powers(ks);
      if (value > limit) break;  // increasing in each variable
      if (pos + 1 == r)
        record(std::move(value), pair.base_complexity() + 3 * exponent_sum());
      else
        self(self, pos + 1);
    }
    ks[pos] = 0;
  };
  if (r == 0) {
    BigInt value = f.constant_term();
    if (value <= limit) record(std::move(value), pair.base_complexity());
    return;
  }
  rec(rec, 0);
}

}  // namespace

std::vector<Expansion> expand(const CoveringSet& covering, std::uint64_t limit) {
  std::map<std::uint64_t, unsigned long long> best;
  for (const auto& entry : covering.entries()) expand_pair(entry.pair, limit, best);
  std::vector<Expansion> out;
  out.reserve(best.size());
  for (const auto& [value, supposed] : best) out.push_back({value, supposed});
  return out;
}

VerificationReport verify_exact_representation(const CoveringSet& covering,
                                               const Threshold& threshold, std::uint64_t limit,
                                               const ComplexityTable& table) {
  if (limit > table.limit())
    throw Error(Error::Kind::Range, "verification limit exceeds the table limit");
  VerificationReport report;
  report.checked_limit = limit;
  auto values = expand(covering, limit);
  std::vector<bool> represented(limit + 1, false);
  for (const auto& e : values) {
    represented[e.value] = true;
    if (!threshold.admits(defect_of(e.value, table))) report.extraneous.push_back(e.value);
  }
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (!represented[n] && threshold.admits(defect_of(n, table))) report.missing.push_back(n);
  report.pass =
      report.missing.empty() && report.extraneous.empty() && report.inefficient.empty();
  return report;
}

VerificationReport verify_efficient_covering(const CoveringSet& covering,
                                             const Threshold& threshold, std::uint64_t limit,
                                             const ComplexityTable& table) {
  if (limit > table.limit())
    throw Error(Error::Kind::Range, "verification limit exceeds the table limit");
  VerificationReport report;
  report.checked_limit = limit;
  auto values = expand(covering, limit);
  std::map<std::uint64_t, unsigned long long> best;
  for (const auto& e : values) best[e.value] = e.supposed_complexity;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (!is_leader(n, table) || !threshold.admits(defect_of(n, table))) continue;
    auto it = best.find(n);
    if (it == best.end())
      report.missing.push_back(n);
    else if (it->second != table.complexity(n))
      report.inefficient.emplace_back(n, it->second);
  }
  report.pass =
      report.missing.empty() && report.extraneous.empty() && report.inefficient.empty();
  return report;
}

CoveringSet truncate_covering(const CoveringSet& covering, const Threshold& threshold) {
  std::vector<CoveringEntry> entries;
  for (const auto& entry : covering.entries()) {
    TruncationResult result = truncate_pair(entry.pair, threshold);
    for (std::size_t i = 0; i < result.pairs.size(); ++i)
      entries.push_back({result.pairs[i], result.patterns[i]});
  }
  return CoveringSet(std::move(entries), threshold,
                     "truncation of " + std::to_string(covering.size()) + " pairs at " +
                         threshold.to_string());
}

// ---------------------------------------------------------------------------
// File format.

namespace {

void write_node(std::ostream& out, const LowDefectTree::Node& n) {
  out << "(node " << n.label;
  for (const auto& c : n.children) {
    out << " (edge " << c.edge_label << " ";
    write_node(out, c);
    out << ")";
  }
  out << ")";
}

// Builds a table covering every label so C >= ||tree|| can be validated.
ComplexityTable validation_table(const CoveringSet& covering) {
  std::uint64_t max_label = 1;
  for (const auto& e : covering.entries())
    max_label = std::max(max_label, e.pair.witness().max_label());
  if (max_label > (std::uint64_t{1} << 22))
    throw Error(Error::Kind::Resource,
                "covering labels too large to validate (max " + std::to_string(max_label) + ")");
  return ComplexityTable::build(max_label);
}

}  // namespace

void save_covering(const CoveringSet& covering, std::ostream& out) {
  out << "(cover\n";
  out << "  (threshold \"" << covering.threshold().to_string() << "\")\n";
  out << "  (mode "
      << (covering.threshold().mode() == Threshold::Mode::Strict ? "strict" : "closed") << ")\n";
  for (const auto& entry : covering.entries()) {
    out << "  (pair (C " << entry.pair.base_complexity() << ") ";
    if (entry.origin) out << entry.origin->to_string() << " ";
    out << "(tree " << entry.pair.witness().canonical_form() << "))\n";
  }
  out << ")\n";
  if (!out) throw Error(Error::Kind::Io, "failed to write covering");
}

void save_covering_file(const CoveringSet& covering, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Error::Kind::Io, "cannot open " + path.string() + " for writing");
  save_covering(covering, out);
}

CoveringSet load_covering(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  SExpr root = parse_sexpr(buffer.str());
  if (root.is_atom || root.tag() != "cover")
    throw ParseError("expected (cover ...)", root.line, root.column);
  std::optional<Threshold> threshold;
  std::optional<Threshold::Mode> mode;
  struct PendingPair {
    unsigned long long c;
    LowDefectTree tree;
    std::optional<SubstitutionPattern> origin;
  };
  std::vector<PendingPair> pending;
  for (std::size_t i = 1; i < root.items.size(); ++i) {
    const SExpr& item = root.items[i];
    std::string_view tag = item.tag();
    if (tag == "threshold") {
      const SExpr& lit = item.at(1);
      if (!lit.is_atom || !lit.quoted)
        throw ParseError("threshold wants a quoted literal", lit.line, lit.column);
      threshold = Threshold::parse(lit.atom);
    } else if (tag == "mode") {
      const SExpr& m = item.at(1);
      if (m.is_atom && m.atom == "strict")
        mode = Threshold::Mode::Strict;
      else if (m.is_atom && m.atom == "closed")
        mode = Threshold::Mode::Closed;
      else
        throw ParseError("mode is strict or closed", m.line, m.column);
    } else if (tag == "pair") {
      std::optional<unsigned long long> c;
      std::optional<LowDefectTree> tree;
      std::optional<SubstitutionPattern> origin;
      for (std::size_t j = 1; j < item.items.size(); ++j) {
        const SExpr& field = item.items[j];
        std::string_view ftag = field.tag();
        if (ftag == "C") {
          const SExpr& v = field.at(1);
          if (!v.is_atom || v.quoted || v.atom.empty() ||
              v.atom.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("C wants a nonnegative integer", v.line, v.column);
          c = std::stoull(v.atom);
        } else if (ftag == "tree") {
          tree = LowDefectTree::from_sexpr_node(field.at(1));
        } else if (ftag == "pattern") {
          origin = SubstitutionPattern::from_sexpr_node(field);
        } else {
          throw ParseError("unknown pair field", field.line, field.column);
        }
      }
      if (!c || !tree) throw ParseError("pair needs (C ...) and (tree ...)", item.line, item.column);
      pending.push_back({*c, std::move(*tree), std::move(origin)});
    } else {
      throw ParseError("unknown covering element", item.line, item.column);
    }
  }
  if (!threshold) throw ParseError("covering lacks a threshold", root.line, root.column);
  if (!mode) throw ParseError("covering lacks a mode", root.line, root.column);

  std::vector<CoveringEntry> entries;
  for (auto& p : pending)
    entries.push_back({LowDefectPair(std::move(p.tree), p.c), std::move(p.origin)});
  CoveringSet covering(std::move(entries), threshold->with_mode(*mode), "loaded from file");

  if (!covering.entries().empty()) {
    ComplexityTable table = validation_table(covering);
    for (const auto& e : covering.entries()) {
      unsigned long long min_c = e.pair.witness().complexity(table);
      if (e.pair.base_complexity() < min_c)
        throw Error(Error::Kind::Structural,
                    "pair " + e.pair.to_string() + " declares C = " +
                        std::to_string(e.pair.base_complexity()) +
                        " below its tree complexity " + std::to_string(min_c));
    }
  }
  return covering;
}

CoveringSet load_covering_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Io, "cannot open " + path.string());
  return load_covering(in);
}

}  // namespace lowdefect
