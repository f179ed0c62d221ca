#include "cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "lowdefect/covering.hpp"
#include "lowdefect/defect.hpp"
#include "lowdefect/polynomial.hpp"
#include "lowdefect/truncation.hpp"

namespace lowdefect::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::Parse:
    case Error::Kind::Structural:
    case Error::Kind::Contract:
    case Error::Kind::Domain:
      return 2;
    case Error::Kind::Range:
    case Error::Kind::Resource:
    case Error::Kind::Build:
    case Error::Kind::Io:
      return 3;
  }
  return 3;
}

Threshold parse_threshold(const std::string& text, bool closed) {
  return Threshold::parse(text,
                          closed ? Threshold::Mode::Closed : Threshold::Mode::Strict);
}

void print_report(const VerificationReport& report) {
  std::cout << "limit " << report.checked_limit << "\n";
  for (auto n : report.missing) std::cout << "missing " << n << "\n";
  for (auto n : report.extraneous) std::cout << "extraneous " << n << "\n";
  for (auto& [n, supposed] : report.inefficient)
    std::cout << "inefficient " << n << " " << supposed << "\n";
  std::cout << "result " << (report.pass ? "pass" : "fail") << "\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"integer complexity, defects, and low-defect polynomial truncation"};
  app.require_subcommand(1);
  int exit_code = 0;

  // table build --limit N --out PATH
  auto* table_cmd = app.add_subcommand("table", "complexity table maintenance");
  table_cmd->require_subcommand(1);
  auto* build_cmd = table_cmd->add_subcommand("build", "build and save a table");
  std::uint64_t build_limit = 0;
  std::string build_out;
  std::uint64_t sum_cap = 0;
  build_cmd->add_option("--limit", build_limit, "largest n covered")->required();
  build_cmd->add_option("--out", build_out, "output path")->required();
  build_cmd->add_option("--sum-cap", sum_cap, "testing hook: fixed sum-split cap");
  build_cmd->callback([&] {
    ComplexityTable::BuildParams params;
    if (sum_cap > 0) params.sum_cap_override = sum_cap;
    ComplexityTable::build(build_limit, params).save_file(build_out);
    std::cerr << "wrote " << build_out << " (limit " << build_limit << ")\n";
  });

  // cpx N --table PATH
  auto* cpx_cmd = app.add_subcommand("cpx", "print ||n||");
  std::uint64_t cpx_n = 0;
  std::string cpx_table;
  cpx_cmd->add_option("n", cpx_n, "the number")->required();
  cpx_cmd->add_option("--table", cpx_table, "table file")->required();
  cpx_cmd->callback([&] {
    auto table = ComplexityTable::load_file(cpx_table);
    std::cout << table.complexity(cpx_n) << "\n";
  });

  // defect N --table PATH [--digits D]
  auto* defect_cmd = app.add_subcommand("defect", "print delta(n) exactly and in decimal");
  std::uint64_t defect_n = 0;
  std::string defect_table;
  unsigned digits = 6;
  defect_cmd->add_option("n", defect_n, "the number")->required();
  defect_cmd->add_option("--table", defect_table, "table file")->required();
  defect_cmd->add_option("--digits", digits, "decimal digits (display only)");
  defect_cmd->callback([&] {
    auto table = ComplexityTable::load_file(defect_table);
    auto d = defect_of(defect_n, table);
    std::cout << d.to_string() << " = " << d.decimal(digits) << " (" << digits << " digits)\n";
  });

  // leaders --below S [--closed] --limit N --table PATH
  auto* leaders_cmd = app.add_subcommand("leaders", "leaders with defect below a threshold");
  std::string leaders_below;
  bool leaders_closed = false;
  std::uint64_t leaders_limit = 0;
  std::string leaders_table;
  leaders_cmd->add_option("--below", leaders_below, "threshold (decimal or p/q)")->required();
  leaders_cmd->add_flag("--closed", leaders_closed, "use delta(n) <= threshold");
  leaders_cmd->add_option("--limit", leaders_limit, "largest n scanned")->required();
  leaders_cmd->add_option("--table", leaders_table, "table file")->required();
  leaders_cmd->callback([&] {
    auto table = ComplexityTable::load_file(leaders_table);
    if (leaders_limit > table.limit())
      throw Error(Error::Kind::Range, "limit exceeds the table limit");
    auto threshold = parse_threshold(leaders_below, leaders_closed);
    for (std::uint64_t n = 1; n <= leaders_limit; ++n)
      if (is_leader(n, table) && threshold.admits(defect_of(n, table)))
        std::cout << n << "\n";
  });

  // parse EXPR / canon EXPR
  auto* parse_cmd = app.add_subcommand("parse", "validate an expression and reprint it");
  std::string parse_text;
  parse_cmd->add_option("expr", parse_text, "low-defect expression")->required();
  parse_cmd->callback([&] { std::cout << parse_expression(parse_text).to_string() << "\n"; });

  auto* canon_cmd = app.add_subcommand("canon", "canonical tree of an expression");
  std::string canon_text;
  canon_cmd->add_option("expr", canon_text, "low-defect expression")->required();
  canon_cmd->callback(
      [&] { std::cout << tree_of(parse_expression(canon_text)).canonical_form() << "\n"; });

  // polycpx EXPR --table PATH
  auto* polycpx_cmd = app.add_subcommand("polycpx", "absolute base complexity of a polynomial");
  std::string polycpx_text, polycpx_table;
  polycpx_cmd->add_option("expr", polycpx_text, "low-defect expression")->required();
  polycpx_cmd->add_option("--table", polycpx_table, "table file")->required();
  polycpx_cmd->callback([&] {
    auto table = ComplexityTable::load_file(polycpx_table);
    auto poly = polynomial_of(tree_of(parse_expression(polycpx_text)));
    std::cout << absolute_base_complexity(poly, table) << "\n";
  });

  // truncate --cover IN --threshold S [--closed] --out OUT
  auto* truncate_cmd = app.add_subcommand("truncate", "truncate a covering to a defect");
  std::string trunc_in, trunc_threshold, trunc_out;
  bool trunc_closed = false;
  truncate_cmd->add_option("--cover", trunc_in, "input covering file")->required();
  truncate_cmd->add_option("--threshold", trunc_threshold, "defect cutoff")->required();
  truncate_cmd->add_flag("--closed", trunc_closed, "closed mode (delta <= s)");
  truncate_cmd->add_option("--out", trunc_out, "output covering file")->required();
  truncate_cmd->callback([&] {
    auto covering = load_covering_file(trunc_in);
    auto result = truncate_covering(covering, parse_threshold(trunc_threshold, trunc_closed));
    save_covering_file(result, trunc_out);
    std::cerr << "wrote " << trunc_out << " (" << result.size() << " pairs)\n";
  });

  // expand --cover IN --limit N --table PATH
  auto* expand_cmd = app.add_subcommand("expand", "numbers represented by a covering");
  std::string expand_in, expand_table;
  std::uint64_t expand_limit = 0;
  expand_cmd->add_option("--cover", expand_in, "covering file")->required();
  expand_cmd->add_option("--limit", expand_limit, "largest value listed")->required();
  expand_cmd->add_option("--table", expand_table, "table file")->required();
  expand_cmd->callback([&] {
    auto covering = load_covering_file(expand_in);
    auto table = ComplexityTable::load_file(expand_table);
    if (expand_limit > table.limit())
      throw Error(Error::Kind::Range, "limit exceeds the table limit");
    for (const auto& e : expand(covering, expand_limit))
      std::cout << e.value << " " << e.supposed_complexity << " "
                << table.complexity(e.value) << "\n";
  });

  // verify --cover IN --threshold S [--closed] --limit N --table PATH [--efficient]
  auto* verify_cmd = app.add_subcommand("verify", "check a covering against the table");
  std::string verify_in, verify_threshold, verify_table;
  std::uint64_t verify_limit = 0;
  bool verify_closed = false, verify_efficient = false;
  verify_cmd->add_option("--cover", verify_in, "covering file")->required();
  verify_cmd->add_option("--threshold", verify_threshold, "defect cutoff")->required();
  verify_cmd->add_flag("--closed", verify_closed, "closed mode (delta <= s)");
  verify_cmd->add_option("--limit", verify_limit, "largest n checked")->required();
  verify_cmd->add_option("--table", verify_table, "table file")->required();
  verify_cmd->add_flag("--efficient", verify_efficient,
                       "require efficient representation of every leader");
  verify_cmd->callback([&] {
    auto covering = load_covering_file(verify_in);
    auto table = ComplexityTable::load_file(verify_table);
    auto threshold = parse_threshold(verify_threshold, verify_closed);
    auto report = verify_efficient
                      ? verify_efficient_covering(covering, threshold, verify_limit, table)
                      : verify_exact_representation(covering, threshold, verify_limit, table);
    print_report(report);
    if (!report.pass) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}

}  // namespace lowdefect::cli
