#include "revgrp/claims.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace revgrp {

std::string Atom::str() const {
  std::string s(1, base);
  if (power == kInfPower)
    s += "inf";
  else if (power != 1)
    s += std::to_string(power);
  return s;
}

namespace {

Atom parse_atom(std::string_view tok, std::size_t line) {
  if (tok.empty()) throw ParseError("missing atom", line);
  Atom a;
  a.base = tok[0];
  if (a.base != 'G' && a.base != 'I' && a.base != 'R')
    throw ParseError("unknown atom '" + std::string(tok) + "'", line);
  std::string_view rest = tok.substr(1);
  if (rest.empty()) {
    a.power = 1;
  } else if (rest == "inf") {
    a.power = Atom::kInfPower;
  } else {
    std::uint32_t v = 0;
    for (char c : rest) {
      if (c < '0' || c > '9') throw ParseError("unknown atom '" + std::string(tok) + "'", line);
      v = v * 10 + static_cast<std::uint32_t>(c - '0');
      if (v > 1000) break;
    }
    if (v < 2 || v > 6)
      throw ParseError("atom '" + std::string(tok) + "' is outside the supported powers 2..6",
                       line);
    a.power = v;
  }
  if (a.base == 'G' && a.power != 1)
    throw ParseError("atom '" + std::string(tok) + "' is not supported", line);
  return a;
}

Rel parse_rel(std::string_view tok, std::size_t line) {
  if (tok == "=") return Rel::Eq;
  if (tok == "!=" || tok == "≠") return Rel::Ne;
  if (tok == "<=" || tok == "⊆") return Rel::Subset;
  throw ParseError("unknown relation '" + std::string(tok) + "'", line);
}

const char* rel_str(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Subset: return "<=";
  }
  return "?";
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

Claim make_claim(std::string spec, std::string_view predicate, std::size_t line,
                 std::string source = {}) {
  Claim c;
  c.spec = std::move(spec);
  c.source = std::move(source);

  auto toks = split_ws(predicate);
  if (toks.size() != 3 && toks.size() != 5)
    throw ParseError("predicate must be '<atom> <rel> <atom> [expect pass|fail]'", line);
  c.lhs = parse_atom(toks[0], line);
  c.rel = parse_rel(toks[1], line);
  c.rhs = parse_atom(toks[2], line);
  if (toks.size() == 5) {
    if (toks[3] != "expect" || (toks[4] != "pass" && toks[4] != "fail"))
      throw ParseError("trailing clause must be 'expect pass' or 'expect fail'", line);
    c.expect_pass = toks[4] == "pass";
  }
  c.predicate_text = c.lhs.str() + std::string(" ") + rel_str(c.rel) + " " + c.rhs.str();
  return c;
}

}  // namespace

std::vector<Claim> parse_claims(std::string_view text) {
  std::vector<Claim> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    if (line[b] == '#') continue;

    std::size_t sep = line.find("::");
    if (sep == std::string_view::npos)
      throw ParseError("missing '::' between group spec and predicate", line_no);

    GroupSpec spec;
    try {
      spec = parse_group_spec(line.substr(0, sep));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad group spec: ") + e.what(), line_no);
    } catch (const RangeError& e) {
      throw ParseError(std::string("bad group spec: ") + e.what(), line_no);
    }
    out.push_back(make_claim(spec.text, line.substr(sep + 2), line_no));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in suite: the finite survey rows, each tagged with the structural
// fact it encodes.
// ---------------------------------------------------------------------------

std::vector<Claim> builtin_suite() {
  std::vector<Claim> out;
  auto add = [&](const std::string& spec, std::string_view pred, const char* source) {
    out.push_back(make_claim(spec, pred, 0, source));
  };

  const char* sym_src = "symmetric groups: I^2 = G = R";
  for (int n = 1; n <= 7; ++n) {
    add("Sym(" + std::to_string(n) + ")", "I2 = G", sym_src);
    add("Sym(" + std::to_string(n) + ")", "R = G", sym_src);
  }

  const char* alt_sr_src = "alternating groups: I^2 = R";
  const char* alt_amb_src = "alternating groups: ambivalent only in degrees 1,2,5,6,10,14";
  for (int n = 3; n <= 10; ++n)
    add("Alt(" + std::to_string(n) + ")", "I2 = R", alt_sr_src);
  for (int n : {5, 6, 10}) add("Alt(" + std::to_string(n) + ")", "R = G", alt_amb_src);
  for (int n : {3, 4, 7, 8, 9})
    add("Alt(" + std::to_string(n) + ")", "R = G expect fail", alt_amb_src);

  const char* dih_src = "dihedral groups: I^2 = G = R";
  for (int n = 3; n <= 12; ++n) {
    add("Dih(" + std::to_string(n) + ")", "I2 = G", dih_src);
    add("Dih(" + std::to_string(n) + ")", "R = G", dih_src);
  }

  const char* q8_src = "quaternion group: I^2 != R = G";
  add("Q8", "I2 = I", q8_src);
  add("Q8", "I2 = R expect fail", q8_src);
  add("Q8", "R = G", q8_src);

  const char* cox_src = "finite Coxeter groups: I^2 = G = R";
  add("Hyperoct(3)", "I2 = G", cox_src);
  add("Hyperoct(3)", "R = G", cox_src);

  const char* gl_sr_src = "general linear groups, odd characteristic: I^2 = R";
  const char* gl_chain_src = "general linear groups, odd characteristic: I^4 = I^inf = R^2";
  for (const char* spec : {"GL(2,3)", "GL(2,5)", "GL(3,3)"}) {
    add(spec, "I2 = R", gl_sr_src);
    add(spec, "I4 = Iinf", gl_chain_src);
    add(spec, "R2 = Iinf", gl_chain_src);
  }

  const char* simple_src = "finite simple groups of even order: R^2 = G, PSU(3,9) excepted";
  add("PSL(2,7)", "R2 = G", simple_src);
  add("PSL(2,7)", "R = G expect fail", simple_src);

  const char* odd_src = "odd-order groups: R = {id} = I";
  add("Cyclic(9)", "R = I", odd_src);
  add("Cyclic(15)", "R = I", odd_src);
  // Nonabelian group of order 21: x -> x+1 and x -> 2x on Z/7 (2^3 = 1 mod 7).
  add("perm:7:[2,3,4,5,6,7,1];[2,4,6,1,3,5,7]", "R = I", odd_src);

  const char* ab_src = "abelian groups: R = I = I^inf";
  // C2 x C4 as a permutation group on 2 + 4 points.
  add("perm:6:[2,1,3,4,5,6];[1,2,4,5,6,3]", "R = I", ab_src);
  add("perm:6:[2,1,3,4,5,6];[1,2,4,5,6,3]", "I = Iinf", ab_src);

  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

const Analysis& AnalysisCache::get(const std::string& spec_text) {
  auto it = cache_.find(spec_text);
  if (it != cache_.end()) return *it->second;
  auto analysis =
      std::make_shared<const Analysis>(analyze(build_group(spec_text, limit_), cap_));
  auto [pos, inserted] = cache_.emplace(spec_text, std::move(analysis));
  return *pos->second;
}

namespace {

// nullptr with a note when the chain was capped before the atom is known.
const DenseBitset* atom_set(const Analysis& a, const Atom& atom, DenseBitset& scratch,
                            std::string& note) {
  const ProductChain& ch = atom.base == 'I' ? a.i_chain : a.r_chain;
  switch (atom.base) {
    case 'G':
      scratch = DenseBitset::full(a.group.order());
      return &scratch;
    case 'I':
    case 'R': {
      if (atom.power == 1) return atom.base == 'I' ? &a.involution_set : &a.rset;
      const DenseBitset* s =
          atom.power == Atom::kInfPower ? ch.limit_set() : ch.level_set(atom.power);
      if (s == nullptr)
        note = std::string(1, atom.base) +
               (atom.power == Atom::kInfPower ? "inf" : std::to_string(atom.power)) +
               " is unknown: chain capped at " + std::to_string(ch.levels.size()) +
               " levels without stabilizing";
      return s;
    }
  }
  return nullptr;
}

}  // namespace

ClaimResult evaluate_claim(const Claim& c, AnalysisCache& cache) {
  ClaimResult res;
  res.claim = c;

  const Analysis* a = nullptr;
  try {
    a = &cache.get(c.spec);
  } catch (const LimitExceeded& e) {
    res.verdict = Verdict::ResourceExceeded;
    res.note = e.what();
    res.matched = false;
    return res;
  }

  DenseBitset scratch_l, scratch_r;
  std::string note;
  const DenseBitset* lhs = atom_set(*a, c.lhs, scratch_l, note);
  const DenseBitset* rhs = lhs ? atom_set(*a, c.rhs, scratch_r, note) : nullptr;
  if (lhs == nullptr || rhs == nullptr) {
    res.verdict = Verdict::ResourceExceeded;
    res.note = note;
    res.matched = false;
    return res;
  }

  bool holds = false;
  std::optional<Elem> witness;
  switch (c.rel) {
    case Rel::Eq: {
      holds = *lhs == *rhs;
      if (!holds) {
        std::size_t w1 = lhs->first_not_in(*rhs);
        std::size_t w2 = rhs->first_not_in(*lhs);
        witness = static_cast<Elem>(std::min(w1, w2));
      }
      break;
    }
    case Rel::Ne: {
      holds = !(*lhs == *rhs);
      break;
    }
    case Rel::Subset: {
      std::size_t w = lhs->first_not_in(*rhs);
      holds = w == DenseBitset::npos;
      if (!holds) witness = static_cast<Elem>(w);
      break;
    }
  }

  res.verdict = holds ? Verdict::Pass : Verdict::Fail;
  res.matched = holds == c.expect_pass;
  if (witness) res.witness = a->group.element_repr(*witness);
  return res;
}

SuiteOutcome run_claims(const std::vector<Claim>& claims, AnalysisCache& cache) {
  SuiteOutcome out;
  out.results.reserve(claims.size());
  for (const auto& c : claims) {
    out.results.push_back(evaluate_claim(c, cache));
    const ClaimResult& r = out.results.back();
    if (!r.matched) out.all_matched = false;
    if (r.verdict == Verdict::ResourceExceeded) out.any_resource_exceeded = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::ResourceExceeded: return "resource-exceeded";
  }
  return "?";
}

}  // namespace

std::string claims_json_string(const SuiteOutcome& outcome) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : outcome.results) {
    nlohmann::ordered_json j;
    j["spec"] = r.claim.spec;
    j["predicate"] = r.claim.predicate_text;
    j["expected"] = r.claim.expect_pass ? "pass" : "fail";
    j["verdict"] = verdict_str(r.verdict);
    j["matched"] = r.matched;
    j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
    j["source"] = r.claim.source;
    j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string claims_table(const SuiteOutcome& outcome) {
  std::ostringstream os;
  std::size_t matched = 0;
  for (const auto& r : outcome.results) {
    const char* status = r.matched ? "ok      " : (r.verdict == Verdict::ResourceExceeded
                                                       ? "RESOURCE"
                                                       : "MISMATCH");
    if (r.matched) ++matched;
    std::string head = r.claim.spec + " :: " + r.claim.predicate_text;
    if (!r.claim.expect_pass) head += " expect fail";
    os << status << "  " << head;
    if (head.size() < 56) os << std::string(56 - head.size(), ' ');
    os << "  [" << verdict_str(r.verdict) << "]";
    if (r.witness) os << "  witness " << *r.witness;
    if (!r.note.empty()) os << "  (" << r.note << ")";
    if (!r.claim.source.empty()) os << "  -- " << r.claim.source;
    os << "\n";
  }
  os << matched << "/" << outcome.results.size() << " claims matched expectation\n";
  return os.str();
}

}  // namespace revgrp
