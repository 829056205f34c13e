#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revgrp/analysis.hpp"
#include "revgrp/claims.hpp"
#include "revgrp/errors.hpp"
#include "revgrp/group.hpp"
#include "revgrp/kernels.hpp"
#include "revgrp/matfp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitResource = 2;
constexpr int kExitUsage = 3;

struct Options {
  std::uint64_t limit = revgrp::kDefaultElementLimit;
  std::uint32_t max_power = revgrp::kDefaultChainCap;
  std::string json_path;
  bool quiet = false;
  std::vector<std::string> positional;
};

void print_usage() {
  std::cout << R"USAGE(revgrp - reversibility structure of finite groups

Usage: revgrp <command> [options] [args]

Commands:
  analyze <group-spec>            full reversibility report for one group
  reverse <group-spec> <element>  reversers of one element
  matrix-check <matrix-literal>   invariant factors and reversibility of a
                                  matrix over an odd prime field
  verify <claims-file>            evaluate claims from a file
  suite                           evaluate the built-in survey claims

Group specs:
  Sym(n) Alt(n) Dih(n) Q8 Cyclic(n) Hyperoct(n) PSL(2,p) GL(n,p) SL(n,p)
  perm:<degree>:[img,...];[img,...]...      (1-based image lists)
  cayley:<path>                             (order line + order x order table)

Elements are written in cycle notation "(1 2 3)", as image lists "[2,3,1]",
as matrix literals "[[2,0],[0,4]]", or as table labels ("i", "-k", ...).
Matrix literals for matrix-check carry the modulus: "p=7;[[2,0],[0,4]]".

Options:
  --limit N      element cap for group construction (default 2000000)
  --max-power K  product chain exponent cap, K >= 2 (default 12)
  --json PATH    also write a JSON report to PATH
  --quiet        suppress the human-readable stream (JSON unaffected)
  --help         this message

Exit codes: 0 success / all claims matched; 1 claim mismatch or falsified
invariant; 2 resource limit exceeded; 3 parse or usage error.
)USAGE";
}

Options parse_options(int argc, char** argv, int first) {
  Options o;
  for (int i = first; i < argc; ++i) {
    std::string arg = argv[i];
    auto need_value = [&](const char* flag) -> std::string {
      if (i + 1 >= argc) throw revgrp::ParseError(std::string(flag) + " needs a value", 0);
      return argv[++i];
    };
    if (arg == "--limit") {
      o.limit = std::stoull(need_value("--limit"));
      if (o.limit < 1) throw revgrp::ParseError("--limit must be positive", 0);
    } else if (arg == "--max-power") {
      o.max_power = static_cast<std::uint32_t>(std::stoul(need_value("--max-power")));
      if (o.max_power < 2) throw revgrp::ParseError("--max-power must be at least 2", 0);
    } else if (arg == "--json") {
      o.json_path = need_value("--json");
    } else if (arg == "--quiet") {
      o.quiet = true;
    } else if (arg == "--help" || arg == "-h") {
      print_usage();
      std::exit(kExitOk);
    } else if (!arg.empty() && arg[0] == '-') {
      throw revgrp::ParseError("unknown option '" + arg + "'", 0);
    } else {
      o.positional.push_back(std::move(arg));
    }
  }
  return o;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw revgrp::ParseError("cannot open output file " + path, 0);
  out << data;
}

int cmd_analyze(const Options& o) {
  if (o.positional.size() != 1)
    throw revgrp::ParseError("analyze takes exactly one group spec", 0);
  revgrp::Analysis a = revgrp::analyze(revgrp::build_group(o.positional[0], o.limit),
                                       o.max_power);
  if (!o.json_path.empty()) write_file(o.json_path, revgrp::report_json_string(a));
  if (!o.quiet) std::cout << revgrp::report_human(a);
  return kExitOk;
}

int cmd_reverse(const Options& o) {
  if (o.positional.size() != 2)
    throw revgrp::ParseError("reverse takes a group spec and an element", 0);
  revgrp::Group g = revgrp::build_group(o.positional[0], o.limit);
  auto f = g.element_from_text(o.positional[1]);
  if (!f)
    throw revgrp::ParseError("'" + o.positional[1] + "' is not an element of " + g.spec_text(),
                             0);

  revgrp::ReverserSet rs = revgrp::reversers(g, *f);
  std::uint64_t centralizer = revgrp::kernels::centralizer_order(g, *f);
  auto min_order = revgrp::min_reverser_order(g, *f);
  revgrp::DenseBitset invs = revgrp::kernels::involution_set(g);
  bool strongly = revgrp::is_strongly_reversible(g, invs, *f);

  if (!o.json_path.empty()) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["group"] = g.spec_text();
    j["element"] = g.element_repr(*f);
    j["element_order"] = g.order_of(*f);
    j["reversible"] = !rs.reversers.empty();
    j["strongly_reversible"] = strongly;
    j["centralizer_order"] = centralizer;
    j["reverser_count"] = rs.reversers.size();
    j["min_reverser_order"] = min_order ? nlohmann::ordered_json(*min_order)
                                        : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (revgrp::Elem h : rs.reversers) list.push_back(g.element_repr(h));
    j["reversers"] = std::move(list);
    write_file(o.json_path, j.dump(2) + "\n");
  }

  if (!o.quiet) {
    std::cout << "group: " << g.spec_text() << "  order " << g.order() << "\n";
    std::cout << "element: " << g.element_repr(*f) << "  order " << g.order_of(*f) << "\n";
    std::cout << "reversible: " << (rs.reversers.empty() ? "no" : "yes")
              << "   strongly reversible: " << (strongly ? "yes" : "no") << "\n";
    std::cout << "centralizer order: " << centralizer << "\n";
    std::cout << "reversers: " << rs.reversers.size();
    if (!rs.reversers.empty()) std::cout << " (one centralizer coset)";
    std::cout << "\n";
    const std::size_t show = std::min<std::size_t>(rs.reversers.size(), 16);
    for (std::size_t k = 0; k < show; ++k)
      std::cout << "  " << g.element_repr(rs.reversers[k]) << "\n";
    if (rs.reversers.size() > show)
      std::cout << "  ... (" << rs.reversers.size() - show << " more; use --json for all)\n";
    if (min_order) std::cout << "min reverser order: " << *min_order << "\n";
  }
  return kExitOk;
}

int cmd_matrix_check(const Options& o) {
  if (o.positional.size() != 1)
    throw revgrp::ParseError("matrix-check takes exactly one matrix literal", 0);
  revgrp::MatFp m = revgrp::parse_matrix_literal(o.positional[0]);
  bool reversible = revgrp::is_reversible_matrix(m);  // throws on singular input
  revgrp::InvariantFactors fac = revgrp::invariant_factors(m);

  if (!o.json_path.empty()) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["p"] = m.p;
    j["n"] = m.n;
    j["matrix"] = m.str();
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& f : fac.factors) {
      nlohmann::ordered_json e;
      e["poly"] = f.str();
      e["coefficients"] = f.c;
      e["reciprocal"] = revgrp::reciprocal_poly(f).str();
      e["self_reciprocal"] = revgrp::reciprocal_poly(f) == f;
      list.push_back(std::move(e));
    }
    j["invariant_factors"] = std::move(list);
    j["reversible"] = reversible;
    write_file(o.json_path, j.dump(2) + "\n");
  }

  if (!o.quiet) {
    std::cout << "p = " << m.p << ", dimension " << m.n << "\n";
    std::cout << "matrix: " << m.str() << "\n";
    std::cout << "invariant factors:\n";
    for (std::size_t k = 0; k < fac.factors.size(); ++k) {
      const auto& f = fac.factors[k];
      revgrp::PolyFp rec = revgrp::reciprocal_poly(f);
      std::cout << "  f" << k + 1 << " = " << f.str() << "   coefficients low-to-high [";
      for (std::size_t i = 0; i < f.c.size(); ++i) std::cout << (i ? "," : "") << f.c[i];
      std::cout << "]   reciprocal " << rec.str() << (rec == f ? "  (self-reciprocal)" : "")
                << "\n";
    }
    std::cout << "reversible: " << (reversible ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int claims_exit(const revgrp::SuiteOutcome& outcome) {
  if (outcome.any_resource_exceeded) return kExitResource;
  return outcome.all_matched ? kExitOk : kExitMismatch;
}

int cmd_verify(const Options& o) {
  if (o.positional.size() != 1)
    throw revgrp::ParseError("verify takes exactly one claims file", 0);
  std::ifstream in(o.positional[0]);
  if (!in) throw revgrp::ParseError("cannot open claims file " + o.positional[0], 0);
  std::stringstream buf;
  buf << in.rdbuf();
  std::vector<revgrp::Claim> claims = revgrp::parse_claims(buf.str());

  revgrp::AnalysisCache cache(o.limit, o.max_power);
  revgrp::SuiteOutcome outcome = revgrp::run_claims(claims, cache);
  if (!o.json_path.empty()) write_file(o.json_path, revgrp::claims_json_string(outcome));
  if (!o.quiet) std::cout << revgrp::claims_table(outcome);
  return claims_exit(outcome);
}

int cmd_suite(const Options& o) {
  if (!o.positional.empty()) throw revgrp::ParseError("suite takes no arguments", 0);
  revgrp::AnalysisCache cache(o.limit, o.max_power);
  revgrp::SuiteOutcome outcome = revgrp::run_claims(revgrp::builtin_suite(), cache);
  if (!o.json_path.empty()) write_file(o.json_path, revgrp::claims_json_string(outcome));
  if (!o.quiet) std::cout << revgrp::claims_table(outcome);
  return claims_exit(outcome);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage();
    return kExitUsage;
  }
  std::string cmd = argv[1];
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    print_usage();
    return kExitOk;
  }

  try {
    Options o = parse_options(argc, argv, 2);
    if (cmd == "analyze") return cmd_analyze(o);
    if (cmd == "reverse") return cmd_reverse(o);
    if (cmd == "matrix-check") return cmd_matrix_check(o);
    if (cmd == "verify") return cmd_verify(o);
    if (cmd == "suite") return cmd_suite(o);
    std::cerr << "error: unknown command '" << cmd << "'\n";
    return kExitUsage;
  } catch (const revgrp::LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const revgrp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const revgrp::RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const revgrp::InvalidTable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const revgrp::SingularMatrix& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  }
}
